//! Transfer matrices for straight and zigzag snakes, integer and weighted,
//! and the q-Euler and q-Catalan specializations.

mod laurent;
mod matrix;

use std::collections::BTreeMap;

pub use laurent::{LaurentPoly, Monomial, Var};
pub use matrix::LaurentMatrix;

use crate::dimer_covers::MixedDimerCover;
use crate::error::{Error, Result};
use crate::snake_core::{tile_edge, Edge, Side, SnakeGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructuralKind {
    R,
    L,
    W,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightedKind {
    U,
    T,
    Wt,
}

/// `R_{a,b}`: entry `(i,j)` (1-based) is 1 iff `i + j <= b + 2`.
pub fn r_matrix(a: u32, b: u32) -> LaurentMatrix {
    let (a, b) = (a as usize, b as usize);
    LaurentMatrix::from_fn(a + 1, b + 1, |i, j| LaurentPoly::constant((i + j < b + 1) as i64))
}

/// `W_a`: the anti-diagonal permutation matrix.
pub fn w_matrix(a: u32) -> LaurentMatrix {
    let a = a as usize;
    LaurentMatrix::from_fn(a + 1, a + 1, |i, j| LaurentPoly::constant((i + j == a) as i64))
}

/// `L_{a,b} = W_a R_{a,b}`: the rows of `R_{a,b}` reversed.
pub fn l_matrix(a: u32, b: u32) -> LaurentMatrix {
    let r = r_matrix(a, b);
    LaurentMatrix::from_fn(r.rows(), r.cols(), |i, j| r.get(r.rows() - 1 - i, j).clone())
}

/// `U_{a,b} = R_{a,b} W_b`: entry `(i,j)` is 1 iff `i <= j`.
pub fn u_matrix(a: u32, b: u32) -> LaurentMatrix {
    let r = r_matrix(a, b);
    LaurentMatrix::from_fn(r.rows(), r.cols(), |i, j| r.get(i, r.cols() - 1 - j).clone())
}

pub fn structural_matrix(kind: StructuralKind, a: u32, b: u32) -> Result<LaurentMatrix> {
    match kind {
        StructuralKind::R => Ok(r_matrix(a, b)),
        StructuralKind::L => Ok(l_matrix(a, b)),
        StructuralKind::W if a == b => Ok(w_matrix(a)),
        StructuralKind::W => Err(Error::Dimension(format!("W needs a = b, got {a} and {b}"))),
    }
}

fn t_pow(t: &LaurentPoly, k: usize) -> LaurentPoly {
    t.pow(k as i64).expect("nonnegative power")
}

/// `U_n(t)`: entry `t^(n+2-i-j)` when `i + j <= n + 2`.
pub fn u_factor(n: u32, t: &LaurentPoly) -> LaurentMatrix {
    let n = n as usize;
    LaurentMatrix::from_fn(n + 1, n + 1, |i, j| {
        if i + j <= n {
            t_pow(t, n - i - j)
        } else {
            LaurentPoly::zero()
        }
    })
}

/// `T_{a,b}(t)`: diagonal `t^(i-1)`, padded to `(a+1) x (b+1)`.
pub fn t_factor(a: u32, b: u32, t: &LaurentPoly) -> LaurentMatrix {
    LaurentMatrix::from_fn(a as usize + 1, b as usize + 1, |i, j| {
        if i == j {
            t_pow(t, i)
        } else {
            LaurentPoly::zero()
        }
    })
}

/// `W_k(t)`: anti-diagonal with every entry `t^k`.
pub fn wt_factor(k: u32, t: &LaurentPoly) -> LaurentMatrix {
    let k = k as usize;
    let tk = t_pow(t, k);
    LaurentMatrix::from_fn(k + 1, k + 1, |i, j| {
        if i + j == k {
            tk.clone()
        } else {
            LaurentPoly::zero()
        }
    })
}

pub fn weighted_factor(kind: WeightedKind, a: u32, b: u32, t: &LaurentPoly) -> Result<LaurentMatrix> {
    match kind {
        WeightedKind::T => Ok(t_factor(a, b, t)),
        WeightedKind::U if a == b => Ok(u_factor(a, t)),
        WeightedKind::Wt if a == b => Ok(wt_factor(a, t)),
        _ => Err(Error::Dimension(format!("{kind:?} needs a = b, got {a} and {b}"))),
    }
}

/// `M_m = R_{m0,m0} R_{m0,m1} ... R_{m(n-1),mn}`.
pub fn straight_product(m: &[u32]) -> LaurentMatrix {
    assert!(!m.is_empty(), "labeling sequence must be nonempty");
    let mut factors = vec![r_matrix(m[0], m[0])];
    factors.extend(m.windows(2).map(|p| r_matrix(p[0], p[1])));
    LaurentMatrix::product(&factors).expect("chained dimensions")
}

/// `X_m = R_{m0,m0} R_{m0,m1} L_{m1,m2} L_{m2,m3} ...`.
pub fn zigzag_product(m: &[u32]) -> LaurentMatrix {
    assert!(!m.is_empty(), "labeling sequence must be nonempty");
    let mut factors = vec![r_matrix(m[0], m[0])];
    for (k, p) in m.windows(2).enumerate() {
        factors.push(if k == 0 {
            r_matrix(p[0], p[1])
        } else {
            l_matrix(p[0], p[1])
        });
    }
    LaurentMatrix::product(&factors).expect("chained dimensions")
}

/// Edge weights on the straight snake with `n` tiles: `vertical[k]` is `a_k` (left to right),
/// `top[k-1]` is `b_k` and `bottom[k-1]` is `c_k` for tile `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StraightWeights {
    pub vertical: Vec<LaurentPoly>,
    pub top: Vec<LaurentPoly>,
    pub bottom: Vec<LaurentPoly>,
}

impl StraightWeights {
    pub fn symbolic(tiles: usize) -> Self {
        StraightWeights {
            vertical: (0..=tiles).map(|k| LaurentPoly::var(&format!("a{k}"))).collect(),
            top: (1..=tiles).map(|k| LaurentPoly::var(&format!("b{k}"))).collect(),
            bottom: (1..=tiles).map(|k| LaurentPoly::var(&format!("c{k}"))).collect(),
        }
    }

    pub fn ones(tiles: usize) -> Self {
        StraightWeights {
            vertical: vec![LaurentPoly::one(); tiles + 1],
            top: vec![LaurentPoly::one(); tiles],
            bottom: vec![LaurentPoly::one(); tiles],
        }
    }

    pub fn tiles(&self) -> usize {
        self.top.len()
    }
}

/// Edge weights on the zigzag snake with `n` tiles: `a[0..=n]`, and `b[k-1]`, `c[k-1]` for tile `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZigzagWeights {
    pub a: Vec<LaurentPoly>,
    pub b: Vec<LaurentPoly>,
    pub c: Vec<LaurentPoly>,
}

impl ZigzagWeights {
    pub fn symbolic(tiles: usize) -> Self {
        ZigzagWeights {
            a: (0..=tiles).map(|k| LaurentPoly::var(&format!("a{k}"))).collect(),
            b: (1..=tiles).map(|k| LaurentPoly::var(&format!("b{k}"))).collect(),
            c: (1..=tiles).map(|k| LaurentPoly::var(&format!("c{k}"))).collect(),
        }
    }

    pub fn ones(tiles: usize) -> Self {
        ZigzagWeights {
            a: vec![LaurentPoly::one(); tiles + 1],
            b: vec![LaurentPoly::one(); tiles],
            c: vec![LaurentPoly::one(); tiles],
        }
    }

    pub fn tiles(&self) -> usize {
        self.b.len()
    }
}

fn check_weight_len(m: &[u32], tiles: usize) -> Result<()> {
    if m.len() != tiles + 1 {
        return Err(Error::Dimension(format!(
            "{} labels need weights for {} tiles, got {tiles}",
            m.len(),
            m.len().saturating_sub(1)
        )));
    }
    Ok(())
}

/// `U_{m0}(a0) * prod_k T_{m(k-1),mk}(b_k c_k) U_{mk}(a_k)`.
pub fn weighted_straight_product(m: &[u32], w: &StraightWeights) -> Result<LaurentMatrix> {
    check_weight_len(m, w.tiles())?;
    let mut factors = vec![u_factor(m[0], &w.vertical[0])];
    for k in 1..m.len() {
        let t = &w.top[k - 1] * &w.bottom[k - 1];
        factors.push(t_factor(m[k - 1], m[k], &t));
        factors.push(u_factor(m[k], &w.vertical[k]));
    }
    LaurentMatrix::product(&factors)
}

/// `U_{m0}(b1) T_{m0,m1}(a0 c1) U_{m1}(a1) * prod_{k>=2} W_{m(k-1)}(b_k) T(b_k^-1 c_k) U_{mk}(a_k)`.
pub fn weighted_zigzag_product(m: &[u32], w: &ZigzagWeights) -> Result<LaurentMatrix> {
    check_weight_len(m, w.tiles())?;
    if m.len() == 1 {
        return Ok(u_factor(m[0], &w.a[0]));
    }
    let mut factors = vec![
        u_factor(m[0], &w.b[0]),
        t_factor(m[0], m[1], &(&w.a[0] * &w.c[0])),
        u_factor(m[1], &w.a[1]),
    ];
    for k in 2..m.len() {
        let b = &w.b[k - 1];
        factors.push(wt_factor(m[k - 1], b));
        factors.push(t_factor(m[k - 1], m[k], &(&b.pow(-1)? * &w.c[k - 1])));
        factors.push(u_factor(m[k], &w.a[k]));
    }
    LaurentMatrix::product(&factors)
}

/// Edge weights for a graph; unlisted edges weigh 1.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeWeighting {
    weights: BTreeMap<Edge, LaurentPoly>,
}

impl EdgeWeighting {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, e: Edge, w: LaurentPoly) {
        self.weights.insert(e, w);
    }

    pub fn get(&self, e: &Edge) -> LaurentPoly {
        self.weights.get(e).cloned().unwrap_or_else(LaurentPoly::one)
    }

    /// Product of `weight(e)^m(e)` over the cover.
    pub fn cover_weight(&self, cover: &MixedDimerCover) -> LaurentPoly {
        cover
            .iter()
            .map(|(e, m)| self.get(&e).pow(m as i64).expect("nonnegative power"))
            .product()
    }
}

/// Places straight weights on `R^(n-1)`.
pub fn straight_edge_weighting(graph: &SnakeGraph, w: &StraightWeights) -> Result<EdgeWeighting> {
    if !graph.word().letters().iter().all(|&l| l == crate::snake_core::Letter::R)
        || graph.tile_count() != w.tiles()
    {
        return Err(Error::UnsupportedShape(format!(
            "straight weights for {} tiles do not fit {}",
            w.tiles(),
            graph.word()
        )));
    }
    let mut out = EdgeWeighting::new();
    for (k, &t) in graph.tiles().iter().enumerate() {
        out.set(tile_edge(t, Side::Left), w.vertical[k].clone());
        out.set(tile_edge(t, Side::Right), w.vertical[k + 1].clone());
        out.set(tile_edge(t, Side::Top), w.top[k].clone());
        out.set(tile_edge(t, Side::Bottom), w.bottom[k].clone());
    }
    Ok(out)
}

/// The named edges of `URUR...` with `n` tiles: odd tiles carry `b` at the
/// bottom and `c` on the right, even tiles `b` on the left and `c` on top;
/// `a_k` is the edge shared by tiles `k` and `k+1`, with `a_0` and `a_n` the
/// free ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZigzagEdges {
    pub a: Vec<Edge>,
    pub b: Vec<Edge>,
    pub c: Vec<Edge>,
}

pub fn zigzag_edges(tiles: usize) -> ZigzagEdges {
    let word = crate::snake_core::SnakeWord::zigzag(tiles);
    let graph = crate::snake_core::build_snake(&word);
    let mut out = ZigzagEdges {
        a: Vec::with_capacity(tiles + 1),
        b: Vec::with_capacity(tiles),
        c: Vec::with_capacity(tiles),
    };
    for (idx, &t) in graph.tiles().iter().enumerate() {
        let k = idx + 1;
        let (b_side, c_side, exit_side, entry_side) = if k % 2 == 1 {
            (Side::Bottom, Side::Right, Side::Top, Side::Left)
        } else {
            (Side::Left, Side::Top, Side::Right, Side::Bottom)
        };
        if k == 1 {
            out.a.push(tile_edge(t, entry_side));
        }
        out.b.push(tile_edge(t, b_side));
        out.c.push(tile_edge(t, c_side));
        out.a.push(tile_edge(t, exit_side));
    }
    out
}

/// Places zigzag weights on `URUR...` following [`zigzag_edges`].
pub fn zigzag_edge_weighting(graph: &SnakeGraph, w: &ZigzagWeights) -> Result<EdgeWeighting> {
    let expected = crate::snake_core::SnakeWord::zigzag(graph.tile_count());
    if graph.word() != &expected || graph.tile_count() != w.tiles() {
        return Err(Error::UnsupportedShape(format!(
            "zigzag weights for {} tiles do not fit {}",
            w.tiles(),
            graph.word()
        )));
    }
    let names = zigzag_edges(graph.tile_count());
    let mut out = EdgeWeighting::new();
    for (e, x) in names.a.iter().zip(&w.a) {
        out.set(*e, x.clone());
    }
    for (e, x) in names.b.iter().zip(&w.b) {
        out.set(*e, x.clone());
    }
    for (e, x) in names.c.iter().zip(&w.c) {
        out.set(*e, x.clone());
    }
    Ok(out)
}

/// Bottom weights `q^-1, q, q^-1, ...` read right to left, so every face weighs `q`.
pub fn q_euler_weights(tiles: usize) -> StraightWeights {
    let mut w = StraightWeights::ones(tiles);
    for k in 0..tiles {
        let from_right = tiles - 1 - k;
        w.bottom[k] = LaurentPoly::var_pow("q", if from_right % 2 == 0 { -1 } else { 1 });
    }
    w
}

/// `a = b = 1`, `c = q`.
pub fn q_catalan_weights(tiles: usize) -> ZigzagWeights {
    let mut w = ZigzagWeights::ones(tiles);
    for c in &mut w.c {
        *c = LaurentPoly::var("q");
    }
    w
}

/// The `(1,1)` entry of the q-weighted straight product.
pub fn q_euler_partition(n: u32) -> LaurentPoly {
    assert!(n >= 2, "q-Euler polynomials start at n = 2");
    let m: Vec<u32> = (1..n).collect();
    let w = q_euler_weights(m.len() - 1);
    weighted_straight_product(&m, &w).expect("weights sized to m").get(0, 0).clone()
}

/// The q-Euler polynomial: [`q_euler_partition`] times `q^floor(n^2/4)`.
pub fn q_euler_poly(n: u32) -> LaurentPoly {
    q_euler_partition(n).shift("q", (n as i64 * n as i64) / 4)
}

pub fn q_catalan_poly(n: u32) -> LaurentPoly {
    assert!(n >= 1, "q-Catalan polynomials start at n = 1");
    let m: Vec<u32> = (1..=n).collect();
    let w = q_catalan_weights(m.len() - 1);
    weighted_zigzag_product(&m, &w).expect("weights sized to m").get(0, 0).clone()
}

fn normalize_min(z: LaurentPoly) -> LaurentPoly {
    let low = z.min_exponent("q").unwrap_or(0);
    z.shift("q", -low)
}

/// Rank generating function of a straight snake with labels `m`, shifted so
/// the minimal cover has weight 1.
pub fn straight_rank_polynomial(m: &[u32]) -> LaurentPoly {
    let w = q_euler_weights(m.len() - 1);
    normalize_min(weighted_straight_product(m, &w).expect("weights sized to m").get(0, 0).clone())
}

/// Zigzag analogue of [`straight_rank_polynomial`].
pub fn zigzag_rank_polynomial(m: &[u32]) -> LaurentPoly {
    let w = q_catalan_weights(m.len() - 1);
    normalize_min(weighted_zigzag_product(m, &w).expect("weights sized to m").get(0, 0).clone())
}

/// Labels for covers with prescribed end multiplicities: the first and last entries become
/// `m0 + 1 - i` and `mn + 1 - j` (1-based `i`, `j`).
pub fn end_adjusted_labels(m: &[u32], i: usize, j: usize) -> Option<Vec<u32>> {
    if m.len() < 2 {
        return None;
    }
    let n = m.len() - 1;
    let first = (m[0] as i64 + 1).checked_sub(i as i64).filter(|&v| v >= 0)?;
    let last = (m[n] as i64 + 1).checked_sub(j as i64).filter(|&v| v >= 0)?;
    let mut out = m.to_vec();
    out[0] = first as u32;
    out[n] = last as u32;
    Some(out)
}
