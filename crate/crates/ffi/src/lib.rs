//! C interface to `snake-dimers`.
//!
//! Objects are opaque handles created by `sd_*_new`-style functions and
//! released with the matching `sd_*_free`. Every fallible call returns an
//! [`SdStatus`]; on failure [`sd_last_error`] describes the problem. Strings
//! handed out by the library are freed with [`sd_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use snake_dimers::cli::parse_labels;
use snake_dimers::dimer_covers::{count_covers_guarded, CountMethod};
use snake_dimers::duality_paths::{
    catalan_matching_graph, count_perfect_matchings, dual_word, euler_matching_graph, MatchingGraph,
};
use snake_dimers::snake_core::{build_snake, standard_labeling, SnakeGraph, SnakeWord, VertexLabeling};
use snake_dimers::twist_lattice::{build_lattice_guarded, TwistLattice};
use snake_dimers::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SdStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    InvalidWord = 3,
    InvalidLabeling = 4,
    Dimension = 5,
    GuardExceeded = 6,
    Unsupported = 7,
    InvalidPermutation = 8,
    InvalidCover = 9,
    Parse = 10,
    Overflow = 11,
    Internal = 12,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SdMethod {
    Auto = 0,
    Brute = 1,
    Matrix = 2,
}

/// A snake graph together with a vertex labeling.
pub struct SdSnake {
    graph: SnakeGraph,
    labels: VertexLabeling,
}

/// The face-twist lattice of a labeled snake graph.
pub struct SdLattice {
    lattice: TwistLattice,
}

/// A perfectly oriented bipartite graph with one source and one sink.
pub struct SdMatchingGraph {
    graph: MatchingGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SdStatus {
    match e {
        Error::InvalidWord(_) => SdStatus::InvalidWord,
        Error::InvalidLabeling(_) => SdStatus::InvalidLabeling,
        Error::Dimension(_) => SdStatus::Dimension,
        Error::GuardExceeded { .. } => SdStatus::GuardExceeded,
        Error::UnsupportedShape(_) | Error::NotDistributive(_) => SdStatus::Unsupported,
        Error::InvalidPermutation(_) | Error::InvalidCode(_) => SdStatus::InvalidPermutation,
        Error::InvalidCover(_) | Error::UnknownEdge(_) | Error::TwistRefused { .. } | Error::TileOutOfRange(_) => {
            SdStatus::InvalidCover
        }
        Error::Parse(_) | Error::InvalidDiagram(_) => SdStatus::Parse,
        Error::Internal(_) => SdStatus::Internal,
    }
}

fn fail(status: SdStatus, msg: &str) -> SdStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning library errors and panics into status codes.
fn guarded(f: impl FnOnce() -> Result<(), SdStatus>) -> SdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SdStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => fail(SdStatus::Internal, "panic inside snake-dimers"),
    }
}

fn lib<T>(r: snake_dimers::Result<T>) -> Result<T, SdStatus> {
    r.map_err(|e| fail(status_of(&e), &e.to_string()))
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, SdStatus> {
    if s.is_null() {
        return Err(fail(SdStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(SdStatus::InvalidUtf8, "string argument is not UTF-8"))
}

/// # Safety
/// `out` must be null or valid for writes.
unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), SdStatus> {
    if out.is_null() {
        return Err(fail(SdStatus::NullArgument, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// # Safety
/// `h` must be null or a live handle of type `T`.
unsafe fn handle<'a, T>(h: *const T) -> Result<&'a T, SdStatus> {
    h.as_ref().ok_or_else(|| fail(SdStatus::NullArgument, "null handle"))
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn sd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn sd_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the snake graph of `word` with its standard labeling.
///
/// # Safety
/// `word` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sd_snake_new(word: *const c_char, out: *mut *mut SdSnake) -> SdStatus {
    guarded(|| {
        let w: SnakeWord = lib(read_str(word)?.parse())?;
        let graph = build_snake(&w);
        let labels = standard_labeling(&graph);
        write_out(out, Box::into_raw(Box::new(SdSnake { graph, labels })))
    })
}

/// # Safety
/// `snake` must be null or a handle from [`sd_snake_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sd_snake_free(snake: *mut SdSnake) {
    if !snake.is_null() {
        drop(Box::from_raw(snake));
    }
}

/// Replaces the labeling: `standard`, `const:K`, or a comma list with one
/// entry per canonical-cover edge or one per vertex.
///
/// # Safety
/// `snake` must be a live handle and `labels` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn sd_snake_set_labels(snake: *mut SdSnake, labels: *const c_char) -> SdStatus {
    guarded(|| {
        let s = snake
            .as_mut()
            .ok_or_else(|| fail(SdStatus::NullArgument, "null handle"))?;
        s.labels = lib(parse_labels(&s.graph, read_str(labels)?))?;
        Ok(())
    })
}

/// Number of tiles, or 0 for a null handle.
///
/// # Safety
/// `snake` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sd_snake_tile_count(snake: *const SdSnake) -> usize {
    snake.as_ref().map_or(0, |s| s.graph.tile_count())
}

/// Counts mixed dimer covers, refusing exhaustive searches larger than `guard`.
/// Fails with `Overflow` when the count does not fit in 64 bits.
///
/// # Safety
/// `snake` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sd_snake_count_covers(
    snake: *const SdSnake,
    method: SdMethod,
    guard: u64,
    out: *mut u64,
) -> SdStatus {
    guarded(|| {
        let s = handle(snake)?;
        let n = lib(count_covers_guarded(&s.graph, &s.labels, method.into(), guard as u128))?;
        let n = u64::try_from(&n).map_err(|_| fail(SdStatus::Overflow, &format!("{n} does not fit in 64 bits")))?;
        write_out(out, n)
    })
}

/// Like [`sd_snake_count_covers`] but returns the count as a decimal string.
///
/// # Safety
/// `snake` must be a live handle and `out` valid for writes; free the result
/// with [`sd_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sd_snake_count_covers_decimal(
    snake: *const SdSnake,
    method: SdMethod,
    guard: u64,
    out: *mut *mut c_char,
) -> SdStatus {
    guarded(|| {
        let s = handle(snake)?;
        let n = lib(count_covers_guarded(&s.graph, &s.labels, method.into(), guard as u128))?;
        write_out(out, into_c_string(n.to_string()))
    })
}

/// The dual word as a new string.
///
/// # Safety
/// `snake` must be a live handle and `out` valid for writes; free the result
/// with [`sd_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sd_snake_dual_word(snake: *const SdSnake, out: *mut *mut c_char) -> SdStatus {
    guarded(|| {
        let s = handle(snake)?;
        write_out(out, into_c_string(dual_word(s.graph.word()).to_string()))
    })
}

/// Builds the face-twist lattice of the snake under its current labeling.
///
/// # Safety
/// `snake` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sd_lattice_new(snake: *const SdSnake, guard: u64, out: *mut *mut SdLattice) -> SdStatus {
    guarded(|| {
        let s = handle(snake)?;
        let lattice = lib(build_lattice_guarded(&s.graph, &s.labels, guard as u128))?;
        write_out(out, Box::into_raw(Box::new(SdLattice { lattice })))
    })
}

/// # Safety
/// `lattice` must be null or a handle from [`sd_lattice_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sd_lattice_free(lattice: *mut SdLattice) {
    if !lattice.is_null() {
        drop(Box::from_raw(lattice));
    }
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `lattice` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sd_lattice_len(lattice: *const SdLattice) -> usize {
    lattice.as_ref().map_or(0, |l| l.lattice.len())
}

/// Length of the longest chain.
///
/// # Safety
/// `lattice` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sd_lattice_height(lattice: *const SdLattice, out: *mut usize) -> SdStatus {
    guarded(|| {
        let l = handle(lattice)?;
        let d = l.lattice.diagram();
        write_out(out, d.ranks().iter().copied().max().unwrap_or(0))
    })
}

/// # Safety
/// `lattice` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sd_lattice_is_distributive(lattice: *const SdLattice, out: *mut bool) -> SdStatus {
    guarded(|| {
        let l = handle(lattice)?;
        write_out(out, l.lattice.diagram().is_distributive())
    })
}

/// Rank generating polynomial in `q`, as text.
///
/// # Safety
/// `lattice` must be a live handle and `out` valid for writes; free the
/// result with [`sd_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sd_lattice_rank_polynomial(lattice: *const SdLattice, out: *mut *mut c_char) -> SdStatus {
    guarded(|| {
        let l = handle(lattice)?;
        write_out(out, into_c_string(l.lattice.rank_polynomial().to_string()))
    })
}

/// Hasse diagram in Graphviz DOT.
///
/// # Safety
/// `lattice` must be a live handle and `out` valid for writes; free the
/// result with [`sd_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sd_lattice_to_dot(lattice: *const SdLattice, out: *mut *mut c_char) -> SdStatus {
    guarded(|| {
        let l = handle(lattice)?;
        write_out(out, into_c_string(l.lattice.diagram().to_dot()))
    })
}

/// Matching graph whose perfect matchings number the Euler number `E_n`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sd_matching_graph_euler(n: usize, out: *mut *mut SdMatchingGraph) -> SdStatus {
    guarded(|| {
        let graph = lib(euler_matching_graph(n))?;
        write_out(out, Box::into_raw(Box::new(SdMatchingGraph { graph })))
    })
}

/// Matching graph whose perfect matchings number the Catalan number `C_n`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sd_matching_graph_catalan(n: usize, out: *mut *mut SdMatchingGraph) -> SdStatus {
    guarded(|| {
        let graph = lib(catalan_matching_graph(n))?;
        write_out(out, Box::into_raw(Box::new(SdMatchingGraph { graph })))
    })
}

/// # Safety
/// `g` must be null or a handle from a `sd_matching_graph_*` constructor.
#[no_mangle]
pub unsafe extern "C" fn sd_matching_graph_free(g: *mut SdMatchingGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sd_matching_graph_vertex_count(g: *const SdMatchingGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.vertex_count())
}

/// Number of perfect matchings as a decimal string.
///
/// # Safety
/// `g` must be a live handle and `out` valid for writes; free the result
/// with [`sd_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sd_matching_graph_count(g: *const SdMatchingGraph, out: *mut *mut c_char) -> SdStatus {
    guarded(|| {
        let g = handle(g)?;
        write_out(out, into_c_string(count_perfect_matchings(&g.graph).to_string()))
    })
}

/// Graphviz DOT with the bipartition as fill colors.
///
/// # Safety
/// `g` must be a live handle and `out` valid for writes; free the result
/// with [`sd_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sd_matching_graph_to_dot(g: *const SdMatchingGraph, out: *mut *mut c_char) -> SdStatus {
    guarded(|| {
        let g = handle(g)?;
        write_out(out, into_c_string(g.graph.to_dot()))
    })
}

impl From<SdMethod> for CountMethod {
    fn from(m: SdMethod) -> Self {
        match m {
            SdMethod::Auto => CountMethod::Auto,
            SdMethod::Brute => CountMethod::Brute,
            SdMethod::Matrix => CountMethod::Matrix,
        }
    }
}
