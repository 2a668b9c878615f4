fn main() {
    std::process::exit(snake_dimers::cli::run(std::env::args_os()));
}
