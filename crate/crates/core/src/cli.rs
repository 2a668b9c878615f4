//! Command-line front end. [`run`] parses arguments, writes results to
//! standard out and diagnostics to standard error, and returns the exit
//! code: 0 on success, 2 for invalid input, 3 when a search guard refuses.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::dimer_covers::{
    count_covers_guarded, enumerate_covers_guarded, CountMethod, MixedDimerCover, DEFAULT_GUARD,
};
use crate::duality_paths::{
    catalan_matching_graph, count_perfect_matchings, dual_map, euler_matching_graph, matching_paths,
    network_for_chain, parse_chain, path_weight_matrix, perfectly_orient, MatchingGraph,
};
use crate::error::{Error, Result};
use crate::permutation_bridge::{
    alt_to_cover, cat_to_cover, catalan_graph, cover_to_alt, cover_to_cat, euler_graph, triangle, Permutation,
    TriangleKind,
};
use crate::snake_core::{build_snake, standard_labeling, SnakeGraph, SnakeWord, VertexLabeling};
use crate::transfer_matrices::{
    q_catalan_poly, q_euler_poly, straight_product, weighted_straight_product, weighted_zigzag_product,
    zigzag_product, LaurentMatrix, LaurentPoly, StraightWeights, ZigzagWeights,
};
use crate::twist_lattice::build_lattice_guarded;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_INTERNAL: i32 = 1;

#[derive(Debug, Parser)]
#[command(name = "snake-dimers", version, about = "Mixed dimer covers of snake graphs")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Snake word over {R, U}; the empty word is a single square.
    #[arg(long, global = true)]
    word: Option<String>,
    /// `standard`, `const:K`, or a comma list (one per canonical-cover edge or one per vertex).
    #[arg(long, global = true, default_value = "standard")]
    labels: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Refuse searches whose size bound exceeds this.
    #[arg(long, global = true, default_value_t = DEFAULT_GUARD)]
    guard: u128,
    #[arg(long, global = true, value_enum, default_value_t = Method::Auto)]
    method: Method,
    /// Evaluate polynomial output at this integer.
    #[arg(long, global = true, allow_negative_numbers = true)]
    q: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Matrix,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Shape {
    Straight,
    Zigzag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolyKind {
    Euler,
    Catalan,
    Rank,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TriangleArg {
    Entringer,
    Ballot,
    Seidel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Euler,
    Catalan,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count mixed dimer covers of `--word` under `--labels`.
    Count,
    /// List mixed dimer covers.
    Enumerate,
    /// Transfer-matrix product for a label sequence.
    Matrix {
        #[arg(value_enum)]
        shape: Shape,
        /// Comma-separated labels m0,...,mn.
        labels: String,
        /// Use symbolic edge weights.
        #[arg(long)]
        weighted: bool,
    },
    /// q-Euler or q-Catalan polynomial, or the rank polynomial of `--word`.
    Qpoly {
        #[arg(value_enum)]
        kind: PolyKind,
        n: Option<u32>,
    },
    /// Rows of a number triangle.
    Triangle {
        #[arg(value_enum)]
        kind: TriangleArg,
        rows: usize,
    },
    /// Alternating or 132-avoiding permutation to cover, or back.
    Bijection {
        #[arg(value_enum)]
        family: Family,
        /// Permutation as a digit string or comma list.
        #[arg(long, conflicts_with = "cover")]
        perm: Option<String>,
        /// Cover as comma-separated multiplicities in edge order.
        #[arg(long, requires = "n")]
        cover: Option<String>,
        /// Permutation length for `--cover`.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Face-twist lattice of `--word`.
    Hasse,
    /// Dual word, graph and transported labels of `--word`.
    Dual,
    /// Network of a factor chain such as "U11 L12 U23".
    Network {
        chain: String,
        /// Strand count for an empty chain.
        #[arg(long)]
        strands: Option<usize>,
        /// Perfectly orient between source S and sink T, given as S,T.
        #[arg(long)]
        orient: Option<String>,
    },
    /// Perfect matchings of the Euler or Catalan matching graph.
    Matchings {
        #[arg(value_enum)]
        family: Family,
        n: usize,
    },
}

/// Runs the command line with the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            if !text.ends_with('\n') {
                let _ = out.write_all(b"\n");
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::GuardExceeded { .. } => EXIT_GUARD,
        Error::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_INVALID,
    }
}

fn execute(cli: &Cli) -> Result<String> {
    let c = &cli.common;
    match &cli.command {
        Command::Count => {
            let (g, lab) = graph_and_labels(c)?;
            let n = count_covers_guarded(&g, &lab, c.method.into(), c.guard)?;
            Ok(match c.format {
                Format::Json => json!({ "word": g.word().to_string(), "count": big_json(&n) }).to_string(),
                _ => n.to_string(),
            })
        }
        Command::Enumerate => {
            let (g, lab) = graph_and_labels(c)?;
            let covers = enumerate_covers_guarded(&g, &lab, c.guard)?;
            Ok(match c.format {
                Format::Json => Value::Array(covers.iter().map(MixedDimerCover::to_json).collect()).to_string(),
                _ => covers.iter().map(|m| m.to_string()).collect::<Vec<_>>().join("\n"),
            })
        }
        Command::Matrix { shape, labels, weighted } => {
            let m = parse_u32_list(labels)?;
            if m.is_empty() {
                return Err(Error::InvalidLabeling("at least one label is needed".into()));
            }
            let tiles = m.len() - 1;
            let mat = match (shape, weighted) {
                (Shape::Straight, false) => straight_product(&m),
                (Shape::Zigzag, false) => zigzag_product(&m),
                (Shape::Straight, true) => weighted_straight_product(&m, &StraightWeights::symbolic(tiles))?,
                (Shape::Zigzag, true) => weighted_zigzag_product(&m, &ZigzagWeights::symbolic(tiles))?,
            };
            Ok(render_matrix(&mat, c.format))
        }
        Command::Qpoly { kind, n } => {
            let p = match kind {
                PolyKind::Euler => q_euler_poly(need_n(*n, 2)?),
                PolyKind::Catalan => q_catalan_poly(need_n(*n, 1)?),
                PolyKind::Rank => {
                    let (g, lab) = graph_and_labels(c)?;
                    build_lattice_guarded(&g, &lab, c.guard)?.rank_polynomial()
                }
            };
            render_poly(&p, c)
        }
        Command::Triangle { kind, rows } => {
            if *rows == 0 {
                return Err(Error::Parse("a triangle has at least one row".into()));
            }
            let t = triangle((*kind).into(), *rows);
            Ok(match c.format {
                Format::Json => Value::Array(
                    t.rows.iter().map(|r| Value::Array(r.iter().map(big_json).collect())).collect(),
                )
                .to_string(),
                _ => t.to_text(),
            })
        }
        Command::Bijection { family, perm, cover, n } => bijection(*family, perm.as_deref(), cover.as_deref(), *n, c),
        Command::Hasse => {
            let (g, lab) = graph_and_labels(c)?;
            let lat = build_lattice_guarded(&g, &lab, c.guard)?;
            let d = lat.diagram();
            Ok(match c.format {
                Format::Dot => d.to_dot(),
                Format::Json => d.to_json().to_string(),
                Format::Text => format!(
                    "elements {}\ncovers {}\nrank polynomial {}",
                    d.len(),
                    d.covers().len(),
                    lat.rank_polynomial()
                ),
            })
        }
        Command::Dual => {
            let (g, lab) = graph_and_labels(c)?;
            let dm = dual_map(&g);
            let dual_labels = dm.transport_labels(&g, &lab);
            Ok(match c.format {
                Format::Json => json!({
                    "word": g.word().to_string(),
                    "dual": dm.dual().word().to_string(),
                    "graph": dm.dual().to_json(Some(&dual_labels)),
                    "edge_map": dm.edge_map().iter().map(|(a, b)| json!([a.to_string(), b.to_string()])).collect::<Vec<_>>(),
                })
                .to_string(),
                _ => dm.dual().word().to_string(),
            })
        }
        Command::Network { chain, strands, orient } => {
            let factors = parse_chain(chain)?;
            let strands = match (strands, factors.first()) {
                (Some(s), _) => *s,
                (None, Some(f)) => f.a as usize + 1,
                (None, None) => return Err(Error::Dimension("an empty chain needs --strands".into())),
            };
            let net = network_for_chain(strands, &factors)?;
            match orient {
                None => {
                    let m = path_weight_matrix(&net);
                    Ok(match c.format {
                        Format::Json => json!({ "network": net.to_json(), "matrix": matrix_json(&m) }).to_string(),
                        _ => render_matrix(&m, c.format),
                    })
                }
                Some(pair) => {
                    let ports = parse_u32_list(pair)?;
                    let [s, t] = ports[..] else {
                        return Err(Error::Parse(format!("--orient takes S,T, got {pair:?}")));
                    };
                    let g = perfectly_orient(&net, s as usize, t as usize)?;
                    Ok(render_matching(&g, c.format))
                }
            }
        }
        Command::Matchings { family, n } => {
            let g = match family {
                Family::Euler => euler_matching_graph(*n)?,
                Family::Catalan => catalan_matching_graph(*n)?,
            };
            Ok(render_matching(&g, c.format))
        }
    }
}

fn bijection(
    family: Family,
    perm: Option<&str>,
    cover: Option<&str>,
    n: Option<usize>,
    c: &Common,
) -> Result<String> {
    if let Some(p) = perm {
        let sigma: Permutation = p.parse()?;
        let m = match family {
            Family::Euler => alt_to_cover(&sigma)?,
            Family::Catalan => cat_to_cover(&sigma)?,
        };
        return Ok(match c.format {
            Format::Json => m.to_json().to_string(),
            _ => m.to_string(),
        });
    }
    let (Some(dense), Some(n)) = (cover, n) else {
        return Err(Error::Parse("give --perm, or --cover with --n".into()));
    };
    let (g, _) = match family {
        Family::Euler => euler_graph(n)?,
        Family::Catalan => catalan_graph(n)?,
    };
    let values = parse_u32_list(dense)?;
    if values.len() != g.edges().len() {
        return Err(Error::InvalidCover(format!(
            "expected {} multiplicities, got {}",
            g.edges().len(),
            values.len()
        )));
    }
    let m = MixedDimerCover::from_dense(&g, &values);
    let sigma = match family {
        Family::Euler => cover_to_alt(&g, &m)?,
        Family::Catalan => cover_to_cat(&g, &m)?,
    };
    Ok(match c.format {
        Format::Json => json!(sigma.as_slice()).to_string(),
        _ => sigma.to_string(),
    })
}

fn graph_and_labels(c: &Common) -> Result<(SnakeGraph, VertexLabeling)> {
    let word_text = c
        .word
        .as_deref()
        .ok_or_else(|| Error::InvalidWord("--word is required".into()))?;
    let word: SnakeWord = word_text.trim().to_ascii_uppercase().parse()?;
    let g = build_snake(&word);
    let lab = parse_labels(&g, &c.labels)?;
    Ok((g, lab))
}

/// `standard`, `const:K`, or a comma list read per canonical-cover edge
/// when it has `tiles + 1` entries and per vertex when it has `2 * tiles + 2`.
pub fn parse_labels(g: &SnakeGraph, text: &str) -> Result<VertexLabeling> {
    let text = text.trim();
    if text == "standard" {
        return Ok(standard_labeling(g));
    }
    if let Some(k) = text.strip_prefix("const:") {
        let k = k
            .trim()
            .parse()
            .map_err(|_| Error::InvalidLabeling(format!("{text:?} needs a nonnegative integer")))?;
        return Ok(VertexLabeling::constant(g, k));
    }
    let values = parse_u32_list(text).map_err(|_| Error::InvalidLabeling(format!("cannot read labels {text:?}")))?;
    let tiles = g.tile_count();
    if values.len() == tiles + 1 {
        VertexLabeling::from_canonical_labels(g, &values)
    } else if values.len() == g.vertices().len() {
        VertexLabeling::from_vec(g, values)
    } else {
        Err(Error::InvalidLabeling(format!(
            "expected {} labels (one per canonical-cover edge) or {} (one per vertex), got {}",
            tiles + 1,
            g.vertices().len(),
            values.len()
        )))
    }
}

fn parse_u32_list(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("{t:?} is not a nonnegative integer"))))
        .collect()
}

fn need_n(n: Option<u32>, least: u32) -> Result<u32> {
    match n {
        Some(n) if n >= least => Ok(n),
        Some(n) => Err(Error::Parse(format!("n must be at least {least}, got {n}"))),
        None => Err(Error::Parse("this polynomial needs n".into())),
    }
}

fn big_json(n: &BigUint) -> Value {
    u64::try_from(n).map(Value::from).unwrap_or_else(|_| Value::String(n.to_string()))
}

fn matrix_json(m: &LaurentMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|p| Value::String(p.to_string())).collect()))
            .collect(),
    )
}

fn render_matrix(m: &LaurentMatrix, format: Format) -> String {
    match format {
        Format::Json => matrix_json(m).to_string(),
        _ => m.to_string(),
    }
}

fn render_poly(p: &LaurentPoly, c: &Common) -> Result<String> {
    if let Some(at) = c.q {
        let v = p.eval_integer("q", at)?;
        return Ok(match c.format {
            Format::Json => json!({ "q": at, "value": v.to_string() }).to_string(),
            _ => v.to_string(),
        });
    }
    Ok(match c.format {
        Format::Json => json!({ "polynomial": p.to_string() }).to_string(),
        _ => p.to_string(),
    })
}

fn render_matching(g: &MatchingGraph, format: Format) -> String {
    match format {
        Format::Dot => g.to_dot(),
        Format::Json => {
            let mut v = g.to_json();
            v["matchings"] = big_json(&count_perfect_matchings(g));
            v["paths"] = json!(matching_paths(g).len());
            v.to_string()
        }
        Format::Text => count_perfect_matchings(g).to_string(),
    }
}

impl From<Method> for CountMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Brute => CountMethod::Brute,
            Method::Matrix => CountMethod::Matrix,
            Method::Auto => CountMethod::Auto,
        }
    }
}

impl From<TriangleArg> for TriangleKind {
    fn from(t: TriangleArg) -> Self {
        match t {
            TriangleArg::Entringer => TriangleKind::Entringer,
            TriangleArg::Ballot => TriangleKind::Ballot,
            TriangleArg::Seidel => TriangleKind::Seidel,
        }
    }
}
