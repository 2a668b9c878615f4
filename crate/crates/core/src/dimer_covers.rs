//! Mixed dimer covers: validation, exhaustive enumeration and counting.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::snake_core::{
    canonical_dimer_edges, tile_edge, Edge, Point, Side, SnakeGraph, SnakeWord, VertexLabeling,
};
use crate::transfer_matrices;

pub const DEFAULT_GUARD: u128 = 1_000_000;

/// Edge multiplicities; zero entries are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MixedDimerCover {
    mult: BTreeMap<Edge, u32>,
}

impl MixedDimerCover {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges(it: impl IntoIterator<Item = (Edge, u32)>) -> Self {
        let mut c = Self::new();
        for (e, m) in it {
            c.set(e, c.get(&e) + m);
        }
        c
    }

    pub fn from_dense(graph: &SnakeGraph, dense: &[u32]) -> Self {
        Self::from_edges(graph.edges().iter().copied().zip(dense.iter().copied()))
    }

    pub fn get(&self, e: &Edge) -> u32 {
        self.mult.get(e).copied().unwrap_or(0)
    }

    pub fn set(&mut self, e: Edge, m: u32) {
        if m == 0 {
            self.mult.remove(&e);
        } else {
            self.mult.insert(e, m);
        }
    }

    /// Positive entries in canonical edge order.
    pub fn iter(&self) -> impl Iterator<Item = (Edge, u32)> + '_ {
        self.mult.iter().map(|(e, m)| (*e, *m))
    }

    pub fn support_len(&self) -> usize {
        self.mult.len()
    }

    pub fn total(&self) -> u64 {
        self.mult.values().map(|&m| m as u64).sum()
    }

    pub fn degree(&self, p: Point) -> u64 {
        self.iter().filter(|(e, _)| e.has(p)).map(|(_, m)| m as u64).sum()
    }

    pub fn to_dense(&self, graph: &SnakeGraph) -> Vec<u32> {
        graph.edges().iter().map(|e| self.get(e)).collect()
    }

    /// Canonical one-line serialization, also used as lattice element identity.
    pub fn key(&self) -> String {
        self.to_string()
    }

    pub fn to_json(&self) -> Value {
        let edges: Vec<Value> = self
            .iter()
            .map(|(e, m)| json!([[e.lo().0, e.lo().1], [e.hi().0, e.hi().1], m]))
            .collect();
        json!({ "edges": edges })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse(format!("not a cover object: {v}"));
        let point = |p: &Value| -> Option<Point> {
            Some((p.get(0)?.as_i64()?, p.get(1)?.as_i64()?))
        };
        let mut c = Self::new();
        for item in v.get("edges").and_then(Value::as_array).ok_or_else(bad)? {
            let a = item.get(0).and_then(point).ok_or_else(bad)?;
            let b = item.get(1).and_then(point).ok_or_else(bad)?;
            let m = item.get(2).and_then(Value::as_u64).ok_or_else(bad)?;
            c.set(Edge::new(a, b), m as u32);
        }
        Ok(c)
    }
}

impl fmt::Display for MixedDimerCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(e, m)| format!("{e}x{m}")).collect();
        write!(f, "{{{}}}", parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub vertex: Point,
    pub label: u32,
    pub degree: u64,
}

impl Violation {
    /// Positive for surplus, negative for deficit.
    pub fn excess(&self) -> i64 {
        self.degree as i64 - self.label as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidityReport {
    pub violations: Vec<Violation>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_cover(
    graph: &SnakeGraph,
    labeling: &VertexLabeling,
    cover: &MixedDimerCover,
) -> Result<ValidityReport> {
    if let Some((e, _)) = cover.iter().find(|(e, _)| !graph.has_edge(e)) {
        return Err(Error::UnknownEdge(e.to_string()));
    }
    let mut degree = vec![0u64; graph.vertices().len()];
    for (e, m) in cover.iter() {
        degree[graph.vertex_id(e.lo()).unwrap()] += m as u64;
        degree[graph.vertex_id(e.hi()).unwrap()] += m as u64;
    }
    let violations = graph
        .vertices()
        .iter()
        .zip(labeling.as_slice())
        .zip(degree)
        .filter(|((_, &label), d)| *d != label as u64)
        .map(|((&vertex, &label), degree)| Violation {
            vertex,
            label,
            degree,
        })
        .collect();
    Ok(ValidityReport { violations })
}

/// Product over tiles of one plus the largest label on the tile.
pub fn search_bound(graph: &SnakeGraph, labeling: &VertexLabeling) -> u128 {
    graph.tiles().iter().fold(1u128, |acc, &t| {
        let top = crate::snake_core::tile_corners(t)
            .iter()
            .map(|&p| labeling.get(graph, p))
            .max()
            .unwrap();
        acc.saturating_mul(top as u128 + 1)
    })
}

struct Search {
    order: Vec<usize>,
    ends: Vec<(usize, usize)>,
    closes_lo: Vec<bool>,
    closes_hi: Vec<bool>,
    residual: Vec<i64>,
    values: Vec<u32>,
}

impl Search {
    fn new(graph: &SnakeGraph, labeling: &VertexLabeling) -> Self {
        let mut order = Vec::new();
        for &t in graph.tiles() {
            for side in [Side::Bottom, Side::Left, Side::Top, Side::Right] {
                let id = graph.edge_id(&tile_edge(t, side)).unwrap();
                if !order.contains(&id) {
                    order.push(id);
                }
            }
        }
        let ends: Vec<(usize, usize)> = order
            .iter()
            .map(|&id| {
                let e = graph.edges()[id];
                (graph.vertex_id(e.lo()).unwrap(), graph.vertex_id(e.hi()).unwrap())
            })
            .collect();
        let mut last = vec![0usize; graph.vertices().len()];
        for (pos, &(a, b)) in ends.iter().enumerate() {
            last[a] = pos;
            last[b] = pos;
        }
        let closes_lo = ends.iter().enumerate().map(|(p, &(a, _))| last[a] == p).collect();
        let closes_hi = ends.iter().enumerate().map(|(p, &(_, b))| last[b] == p).collect();
        Search {
            values: vec![0; order.len()],
            order,
            ends,
            closes_lo,
            closes_hi,
            residual: labeling.as_slice().iter().map(|&k| k as i64).collect(),
        }
    }

    fn run(&mut self, pos: usize, visit: &mut dyn FnMut(&[usize], &[u32])) {
        if pos == self.order.len() {
            visit(&self.order, &self.values);
            return;
        }
        let (a, b) = self.ends[pos];
        let cap = self.residual[a].min(self.residual[b]);
        if cap < 0 {
            return;
        }
        let forced_a = self.closes_lo[pos].then_some(self.residual[a]);
        let forced_b = self.closes_hi[pos].then_some(self.residual[b]);
        let (lo, hi) = match (forced_a, forced_b) {
            (Some(x), Some(y)) if x != y => return,
            (Some(x), _) | (None, Some(x)) => (x, x),
            (None, None) => (0, cap),
        };
        if hi > cap {
            return;
        }
        for val in lo..=hi {
            self.residual[a] -= val;
            self.residual[b] -= val;
            self.values[pos] = val as u32;
            self.run(pos + 1, visit);
            self.residual[a] += val;
            self.residual[b] += val;
        }
    }
}

fn check_guard(graph: &SnakeGraph, labeling: &VertexLabeling, guard: u128) -> Result<()> {
    let bound = search_bound(graph, labeling);
    if bound > guard {
        return Err(Error::GuardExceeded { bound, guard });
    }
    Ok(())
}

pub fn enumerate_covers(graph: &SnakeGraph, labeling: &VertexLabeling) -> Result<Vec<MixedDimerCover>> {
    enumerate_covers_guarded(graph, labeling, DEFAULT_GUARD)
}

/// All covers, sorted by their dense multiplicity vectors in global edge order.
pub fn enumerate_covers_guarded(
    graph: &SnakeGraph,
    labeling: &VertexLabeling,
    guard: u128,
) -> Result<Vec<MixedDimerCover>> {
    check_guard(graph, labeling, guard)?;
    let mut dense_all: Vec<Vec<u32>> = Vec::new();
    let width = graph.edges().len();
    Search::new(graph, labeling).run(0, &mut |order, values| {
        let mut dense = vec![0u32; width];
        for (&id, &v) in order.iter().zip(values) {
            dense[id] = v;
        }
        dense_all.push(dense);
    });
    dense_all.sort();
    Ok(dense_all
        .iter()
        .map(|d| MixedDimerCover::from_dense(graph, d))
        .collect())
}

fn brute_count(graph: &SnakeGraph, labeling: &VertexLabeling, guard: u128) -> Result<BigUint> {
    check_guard(graph, labeling, guard)?;
    let mut count: u128 = 0;
    Search::new(graph, labeling).run(0, &mut |_, _| count += 1);
    Ok(BigUint::from(count))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    Brute,
    Matrix,
    Auto,
}

/// Shapes the transfer-matrix engine handles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixShape {
    Straight,
    Zigzag,
}

/// Words of length at most one count as straight; alternating words of
/// either starting letter are zigzags up to reflection in `y = x`.
pub fn matrix_shape(word: &SnakeWord) -> Option<MatrixShape> {
    if word.is_straight() {
        Some(MatrixShape::Straight)
    } else if word.is_alternating() {
        Some(MatrixShape::Zigzag)
    } else {
        None
    }
}

fn matrix_count(graph: &SnakeGraph, labeling: &VertexLabeling) -> Result<BigUint> {
    let shape = matrix_shape(graph.word()).ok_or_else(|| {
        Error::UnsupportedShape(format!(
            "{} is neither straight nor zigzag",
            graph.word()
        ))
    })?;
    let m = labeling.canonical_sequence(graph).ok_or_else(|| {
        Error::UnsupportedShape(
            "matrix counting needs equal labels on each canonical-cover edge".into(),
        )
    })?;
    let product = match shape {
        MatrixShape::Straight => transfer_matrices::straight_product(&m),
        MatrixShape::Zigzag => transfer_matrices::zigzag_product(&m),
    };
    let entry = product.get(0, 0).to_biguint().ok_or_else(|| {
        Error::Internal("transfer-matrix entry is not a nonnegative integer".into())
    })?;
    Ok(entry)
}

pub fn count_covers(
    graph: &SnakeGraph,
    labeling: &VertexLabeling,
    method: CountMethod,
) -> Result<BigUint> {
    count_covers_guarded(graph, labeling, method, DEFAULT_GUARD)
}

pub fn count_covers_guarded(
    graph: &SnakeGraph,
    labeling: &VertexLabeling,
    method: CountMethod,
    guard: u128,
) -> Result<BigUint> {
    match method {
        CountMethod::Brute => brute_count(graph, labeling, guard),
        CountMethod::Matrix => matrix_count(graph, labeling),
        CountMethod::Auto => match matrix_count(graph, labeling) {
            Err(Error::UnsupportedShape(_)) => brute_count(graph, labeling, guard),
            other => other,
        },
    }
}

/// Completes a partial assignment by repeatedly solving the degree equation
/// at a vertex with a single unknown incident edge.
pub fn complete_by_degrees(
    graph: &SnakeGraph,
    labeling: &VertexLabeling,
    known: &BTreeMap<Edge, u32>,
) -> Result<MixedDimerCover> {
    let mut value: Vec<Option<u32>> = graph.edges().iter().map(|e| known.get(e).copied()).collect();
    if let Some(e) = known.keys().find(|e| !graph.has_edge(e)) {
        return Err(Error::UnknownEdge(e.to_string()));
    }
    loop {
        let mut progressed = false;
        for &v in graph.vertices() {
            let incident: Vec<usize> = graph
                .incident_edges(v)
                .iter()
                .map(|e| graph.edge_id(e).unwrap())
                .collect();
            let unknown: Vec<usize> = incident.iter().copied().filter(|&i| value[i].is_none()).collect();
            if unknown.len() != 1 {
                continue;
            }
            let used: i64 = incident.iter().filter_map(|&i| value[i]).map(i64::from).sum();
            let rest = labeling.get(graph, v) as i64 - used;
            if rest < 0 {
                return Err(Error::InvalidCover(format!("degree overflow at {v:?}")));
            }
            value[unknown[0]] = Some(rest as u32);
            progressed = true;
        }
        if !progressed {
            break;
        }
    }
    let dense: Vec<u32> = value
        .iter()
        .map(|v| v.ok_or_else(|| Error::InvalidCover("degrees do not determine every edge".into())))
        .collect::<Result<_>>()?;
    let cover = MixedDimerCover::from_dense(graph, &dense);
    if !validate_cover(graph, labeling, &cover)?.is_valid() {
        return Err(Error::InvalidCover("assignment violates a vertex degree".into()));
    }
    Ok(cover)
}

pub fn filter_by_final_edge(covers: &[MixedDimerCover], edge: &Edge, k: u32) -> Vec<MixedDimerCover> {
    covers.iter().filter(|c| c.get(edge) == k).cloned().collect()
}

/// The last edge of the canonical dimer cover; the rightmost vertical on a straight snake.
pub fn final_canonical_edge(graph: &SnakeGraph) -> Edge {
    *canonical_dimer_edges(graph).last().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::snake_core::{build_snake, canonical_dimer_cover, standard_labeling};

    fn graph(w: &str) -> SnakeGraph {
        SnakeGraph::from_word_str(w).unwrap()
    }

    #[test]
    fn zero_cover_on_zero_labels() {
        let g = graph("RU");
        let r = validate_cover(&g, &VertexLabeling::constant(&g, 0), &MixedDimerCover::new()).unwrap();
        assert!(r.is_valid());
    }

    #[test]
    fn canonical_cover_validity() {
        let g = graph("RRUR");
        let canonical = canonical_dimer_cover(&g);
        assert!(validate_cover(&g, &VertexLabeling::constant(&g, 1), &canonical).unwrap().is_valid());
        let r = validate_cover(&g, &standard_labeling(&g), &canonical).unwrap();
        assert!(!r.is_valid());
        assert!(r.violations.iter().all(|v| v.label > 1 && v.excess() < 0));
    }

    #[test]
    fn unknown_edge_is_structural() {
        let g = graph("");
        let c = MixedDimerCover::from_edges([(Edge::new((5, 5), (5, 6)), 1)]);
        assert!(matches!(
            validate_cover(&g, &VertexLabeling::constant(&g, 1), &c),
            Err(Error::UnknownEdge(_))
        ));
    }

    #[test]
    fn small_counts() {
        let g = build_snake(&SnakeWord::straight(2));
        let covers = enumerate_covers(&g, &standard_labeling(&g)).unwrap();
        assert_eq!(covers.len(), 5);
        let right = final_canonical_edge(&g);
        assert_eq!(filter_by_final_edge(&covers, &right, 0).len(), 0);
        assert_eq!(filter_by_final_edge(&covers, &right, 1).len(), 1);
        assert_eq!(filter_by_final_edge(&covers, &right, 3).len(), 2);

        let sq = graph("");
        let lab = VertexLabeling::from_canonical_labels(&sq, &[2, 3]).unwrap();
        assert_eq!(enumerate_covers(&sq, &lab).unwrap().len(), 3);
    }

    #[test]
    fn guard_refuses() {
        let g = build_snake(&SnakeWord::straight(9));
        let lab = VertexLabeling::constant(&g, 9);
        assert!(matches!(
            enumerate_covers(&g, &lab),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let g = graph("UR");
        for c in enumerate_covers(&g, &standard_labeling(&g)).unwrap() {
            assert_eq!(MixedDimerCover::from_json(&c.to_json()).unwrap(), c);
        }
    }

    #[test]
    fn matrix_rejects_general_words() {
        let g = graph("RRU");
        assert!(matches!(
            count_covers(&g, &standard_labeling(&g), CountMethod::Matrix),
            Err(Error::UnsupportedShape(_))
        ));
        assert_eq!(
            count_covers(&g, &standard_labeling(&g), CountMethod::Auto).unwrap(),
            count_covers(&g, &standard_labeling(&g), CountMethod::Brute).unwrap()
        );
    }
}
