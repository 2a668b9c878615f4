//! Snake graph duality by tile maps, mixed lattice paths, planar networks
//! and their perfectly oriented matching graphs.

mod matching;
mod network;

pub use matching::{
    catalan_matching_graph, count_perfect_matchings, euler_matching_graph, matching_paths,
    path_to_matching, perfectly_orient, MatchingGraph,
};
pub use network::{
    catalan_chain, euler_chain, network_for_chain, network_for_factors, parse_chain, path_weight_matrix, structural_product,
    BlockKind, Factor, Network,
};

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::dimer_covers::{enumerate_covers_guarded, MixedDimerCover, DEFAULT_GUARD};
use crate::error::{Error, Result};
use crate::permutation_bridge::LehmerCode;
use crate::snake_core::{
    build_snake, canonical_lattice_path, tile_corners, tile_edge, Edge, EdgePath, Letter, Point, Side, SnakeGraph,
    SnakeWord, VertexLabeling,
};

/// Flips the letters in odd (1-based) positions.
pub fn dual_word(w: &SnakeWord) -> SnakeWord {
    SnakeWord::new(
        w.letters()
            .iter()
            .enumerate()
            .map(|(i, l)| if i % 2 == 0 { l.flip() } else { *l })
            .collect(),
    )
}

/// Result of the composed tile maps on a snake graph.
#[derive(Debug, Clone)]
pub struct DualMap {
    dual: SnakeGraph,
    edge_map: BTreeMap<Edge, Edge>,
    vertex_map: BTreeMap<Point, Point>,
}

impl DualMap {
    pub fn dual(&self) -> &SnakeGraph {
        &self.dual
    }

    /// Original edge to dual edge; a bijection.
    pub fn edge_map(&self) -> &BTreeMap<Edge, Edge> {
        &self.edge_map
    }

    /// Where each vertex label ends up.
    pub fn vertex_map(&self) -> &BTreeMap<Point, Point> {
        &self.vertex_map
    }

    pub fn map_edge(&self, e: &Edge) -> Option<Edge> {
        self.edge_map.get(e).copied()
    }

    pub fn transport_labels(&self, source: &SnakeGraph, labeling: &VertexLabeling) -> VertexLabeling {
        let mut out = VertexLabeling::constant(&self.dual, 0);
        for &p in source.vertices() {
            out.set(&self.dual, self.vertex_map[&p], labeling.get(source, p));
        }
        out
    }

    pub fn transport_multiset(&self, m: &MixedDimerCover) -> MixedDimerCover {
        MixedDimerCover::from_edges(m.iter().map(|(e, k)| (self.edge_map[&e], k)))
    }

    /// Moves arbitrary per-edge data along the edge bijection.
    pub fn transport_edge_data<T: Clone>(&self, data: &BTreeMap<Edge, T>) -> BTreeMap<Edge, T> {
        data.iter()
            .filter_map(|(e, v)| self.edge_map.get(e).map(|d| (*d, v.clone())))
            .collect()
    }
}

/// Offset of `p` from the lower-left corner of the cut tile.
fn level(p: Point, corner: Point) -> i64 {
    (p.0 - corner.0) + (p.1 - corner.1)
}

fn reflect(p: Point, corner: Point) -> Point {
    (corner.0 + (p.1 - corner.1), corner.1 + (p.0 - corner.0))
}

/// Applies the tile map of each tile in order. Each cut runs along the
/// anti-diagonal of the tile; everything past it is reflected in the
/// diagonal, which swaps the labels at the tile's top-left and bottom-right.
pub fn dual_map(graph: &SnakeGraph) -> DualMap {
    let mut letters: Vec<Letter> = graph.word().letters().to_vec();
    let mut edge_map: BTreeMap<Edge, Edge> = graph.edges().iter().map(|&e| (e, e)).collect();
    let mut vertex_map: BTreeMap<Point, Point> = graph.vertices().iter().map(|&p| (p, p)).collect();
    for i in 0..graph.tile_count() {
        let corner = build_snake(&SnakeWord::new(letters.clone())).tiles()[i];
        for cur in edge_map.values_mut() {
            if level(cur.hi(), corner) > 1 {
                *cur = Edge::new(reflect(cur.lo(), corner), reflect(cur.hi(), corner));
            }
        }
        for cur in vertex_map.values_mut() {
            if level(*cur, corner) >= 1 {
                *cur = reflect(*cur, corner);
            }
        }
        for l in letters.iter_mut().skip(i) {
            *l = l.flip();
        }
    }
    DualMap {
        dual: build_snake(&SnakeWord::new(letters)),
        edge_map,
        vertex_map,
    }
}

/// Vertices `v_0, v_1, ...` of the canonical lattice path.
pub fn canonical_path_vertices(graph: &SnakeGraph) -> Vec<Point> {
    canonical_lattice_path(graph).vertices()
}

/// North-east paths from `start` to the top-right vertex using only edges
/// with positive remaining multiplicity, right steps tried first.
fn ne_paths(graph: &SnakeGraph, start: Point, budget: Option<&MixedDimerCover>) -> Vec<EdgePath> {
    let end = graph.top_right();
    let mut out = Vec::new();
    let mut steps = Vec::new();
    fn walk(
        graph: &SnakeGraph,
        at: Point,
        end: Point,
        start: Point,
        budget: Option<&MixedDimerCover>,
        used: &mut BTreeMap<Edge, u32>,
        steps: &mut Vec<Letter>,
        out: &mut Vec<EdgePath>,
    ) {
        if at == end {
            out.push(EdgePath::from_steps(start, steps));
            return;
        }
        for l in [Letter::R, Letter::U] {
            let (dx, dy) = l.step();
            let next = (at.0 + dx, at.1 + dy);
            let e = Edge::new(at, next);
            if !graph.has_edge(&e) {
                continue;
            }
            let u = used.get(&e).copied().unwrap_or(0);
            if budget.is_some_and(|b| b.get(&e) <= u) {
                continue;
            }
            used.insert(e, u + 1);
            steps.push(l);
            walk(graph, next, end, start, budget, used, steps, out);
            steps.pop();
            used.insert(e, u);
        }
    }
    walk(graph, start, end, start, budget, &mut BTreeMap::new(), &mut steps, &mut out);
    out
}

/// One decomposition into paths `L_0, ..., L_n`, where `L_i` runs from
/// `v_{n-i}` to the top-right vertex; found by depth-first peeling from the
/// longest path down.
pub fn decompose_mixed_path(graph: &SnakeGraph, multiset: &MixedDimerCover) -> Option<Vec<EdgePath>> {
    let vs = canonical_path_vertices(graph);
    let n = graph.tile_count();
    let expected: u64 = ((n + 1) * (n + 2) / 2) as u64;
    if multiset.total() != expected || multiset.iter().any(|(e, _)| !graph.has_edge(&e)) {
        return None;
    }
    fn peel(
        graph: &SnakeGraph,
        vs: &[Point],
        n: usize,
        i: usize,
        remaining: &mut MixedDimerCover,
        chosen: &mut Vec<EdgePath>,
    ) -> bool {
        let start = vs[n - i];
        for p in ne_paths(graph, start, Some(remaining)) {
            for e in &p.edges {
                remaining.set(*e, remaining.get(e) - 1);
            }
            chosen.push(p);
            if i == 0 || peel(graph, vs, n, i - 1, remaining, chosen) {
                return true;
            }
            let p = chosen.pop().unwrap();
            for e in &p.edges {
                remaining.set(*e, remaining.get(e) + 1);
            }
        }
        false
    }
    let mut remaining = multiset.clone();
    let mut chosen = Vec::with_capacity(n + 1);
    if peel(graph, &vs, n, n, &mut remaining, &mut chosen) {
        chosen.reverse();
        Some(chosen)
    } else {
        None
    }
}

pub fn is_mixed_lattice_path(graph: &SnakeGraph, multiset: &MixedDimerCover) -> bool {
    decompose_mixed_path(graph, multiset).is_some()
}

/// Mixed lattice paths as images of the covers of the dual graph (with its
/// standard labeling), sorted.
pub fn enumerate_mixed_paths(graph: &SnakeGraph) -> Result<Vec<MixedDimerCover>> {
    enumerate_mixed_paths_guarded(graph, DEFAULT_GUARD)
}

pub fn enumerate_mixed_paths_guarded(graph: &SnakeGraph, guard: u128) -> Result<Vec<MixedDimerCover>> {
    let dual = build_snake(&dual_word(graph.word()));
    let back = dual_map(&dual);
    if back.dual().word() != graph.word() {
        return Err(Error::Internal("duality is not an involution on words".into()));
    }
    let labeling = crate::snake_core::standard_labeling(&dual);
    let mut out: Vec<MixedDimerCover> = enumerate_covers_guarded(&dual, &labeling, guard)?
        .iter()
        .map(|c| back.transport_multiset(c))
        .collect();
    if let Some(bad) = out.iter().find(|m| !is_mixed_lattice_path(graph, m)) {
        return Err(Error::Internal(format!("dual image {bad} is not a mixed lattice path")));
    }
    out.sort_by_key(|m| m.to_dense(graph));
    Ok(out)
}

/// Mixed lattice paths built directly as unions of paths `L_0, ..., L_n`.
pub fn enumerate_mixed_paths_direct(graph: &SnakeGraph) -> Vec<MixedDimerCover> {
    let vs = canonical_path_vertices(graph);
    let n = graph.tile_count();
    let mut layer: HashSet<MixedDimerCover> = HashSet::from([MixedDimerCover::new()]);
    for i in 0..=n {
        let paths = ne_paths(graph, vs[n - i], None);
        let mut next = HashSet::with_capacity(layer.len() * paths.len());
        for m in &layer {
            for p in &paths {
                let mut m2 = m.clone();
                for e in &p.edges {
                    m2.set(*e, m2.get(e) + 1);
                }
                next.insert(m2);
            }
        }
        layer = next;
    }
    let mut out: Vec<MixedDimerCover> = layer.into_iter().collect();
    out.sort_by_key(|m| m.to_dense(graph));
    out
}

/// Words ending in U raise paths by turning up-then-right corners into
/// right-then-up ones; all other words the other way round.
fn bumps_down_right(graph: &SnakeGraph) -> bool {
    graph.word().letters().last() == Some(&Letter::U)
}

/// One upward flip in tile `tile`, if the corner it needs is present.
pub fn flip_up(graph: &SnakeGraph, multiset: &MixedDimerCover, tile: usize) -> Option<MixedDimerCover> {
    let corner = *graph.tiles().get(tile)?;
    let mut lower = [tile_edge(corner, Side::Bottom), tile_edge(corner, Side::Right)];
    let mut raise = [tile_edge(corner, Side::Left), tile_edge(corner, Side::Top)];
    if bumps_down_right(graph) {
        std::mem::swap(&mut lower, &mut raise);
    }
    if lower.iter().any(|e| multiset.get(e) == 0) {
        return None;
    }
    let mut out = multiset.clone();
    for e in lower {
        out.set(e, out.get(&e) - 1);
    }
    for e in raise {
        out.set(e, out.get(&e) + 1);
    }
    Some(out)
}

/// Cover pairs `(i, j)` of the flip order on `paths`.
pub fn flip_covers(graph: &SnakeGraph, paths: &[MixedDimerCover]) -> Vec<(usize, usize, usize)> {
    let index: BTreeMap<&MixedDimerCover, usize> = paths.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut out = Vec::new();
    for (i, m) in paths.iter().enumerate() {
        for t in 0..graph.tile_count() {
            if let Some(j) = flip_up(graph, m, t).and_then(|m2| index.get(&m2).copied()) {
                out.push((i, j, t));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Flow through the corner of each tile that an upward flip feeds: the
/// top-left one, or the bottom-right one for words ending in U. A flip in
/// a tile raises its own count by one and leaves every other count alone.
pub fn flip_counts(graph: &SnakeGraph, multiset: &MixedDimerCover) -> Vec<u32> {
    let pick = if bumps_down_right(graph) { 1 } else { 3 };
    graph
        .tiles()
        .iter()
        .map(|&c| {
            let v = tile_corners(c)[pick];
            [(v.0 - 1, v.1), (v.0, v.1 - 1)]
                .into_iter()
                .map(|u| Edge::new(u, v))
                .filter(|e| graph.has_edge(e))
                .map(|e| multiset.get(&e))
                .sum()
        })
        .collect()
}

/// Each cover paired with the Lehmer code read off its dual mixed lattice
/// path: flip counts per tile relative to the minimum, reversed, with a
/// trailing 0.
pub fn snake_permutation_map(
    graph: &SnakeGraph,
    labeling: &VertexLabeling,
) -> Result<Vec<(MixedDimerCover, LehmerCode)>> {
    let covers = enumerate_covers_guarded(graph, labeling, DEFAULT_GUARD)?;
    let dm = dual_map(graph);
    let counts: Vec<Vec<u32>> = covers
        .iter()
        .map(|c| flip_counts(dm.dual(), &dm.transport_multiset(c)))
        .collect();
    let tiles = graph.tile_count();
    let floor: Vec<u32> = (0..tiles)
        .map(|t| counts.iter().map(|a| a[t]).min().unwrap_or(0))
        .collect();
    if !counts.iter().any(|a| *a == floor) {
        return Err(Error::Internal("flip counts have no least element".into()));
    }
    let mut out = Vec::with_capacity(covers.len());
    for (c, a) in covers.into_iter().zip(&counts) {
        let rel: Vec<u32> = a.iter().zip(&floor).map(|(x, f)| x - f).collect();
        if let Some(t) = (0..tiles).find(|&t| rel[t] as usize > t + 1) {
            return Err(Error::InvalidLabeling(format!(
                "tile {} admits {} flips, more than its index allows",
                t + 1,
                rel[t]
            )));
        }
        let mut code: Vec<u32> = rel.into_iter().rev().collect();
        code.push(0);
        out.push((c, LehmerCode::new(code)?));
    }
    Ok(out)
}

/// The distinct Lehmer codes of [`snake_permutation_map`].
pub fn snake_permutation_set(graph: &SnakeGraph, labeling: &VertexLabeling) -> Result<BTreeSet<LehmerCode>> {
    Ok(snake_permutation_map(graph, labeling)?
        .into_iter()
        .map(|(_, code)| code)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permutation_bridge::{
        alternating_permutations, catalan_graph, catalan_permutations, euler_graph, lehmer_encode,
    };
    use crate::snake_core::{canonical_dimer_edges, standard_labeling};
    use crate::twist_lattice::build_lattice;

    fn graph(w: &str) -> SnakeGraph {
        SnakeGraph::from_word_str(w).unwrap()
    }

    #[test]
    fn dual_words() {
        let w: SnakeWord = "RRRR".parse().unwrap();
        assert_eq!(dual_word(&w).to_string(), "URUR");
        assert_eq!(dual_word(&"".parse().unwrap()).to_string(), "");
    }

    #[test]
    fn tile_map_example() {
        let g = graph("RR");
        let names = ["p", "q", "r", "x", "y", "z", "a", "b", "c", "d"];
        let mut data = BTreeMap::new();
        for (k, name) in names.iter().enumerate() {
            let e = match k {
                0..=2 => Edge::new((k as i64, 0), (k as i64 + 1, 0)),
                3..=5 => Edge::new((k as i64 - 3, 1), (k as i64 - 2, 1)),
                _ => Edge::new((k as i64 - 6, 0), (k as i64 - 6, 1)),
            };
            data.insert(e, *name);
        }
        let dm = dual_map(&g);
        let moved: BTreeMap<&str, String> = dm
            .transport_edge_data(&data)
            .into_iter()
            .map(|(e, n)| (n, e.to_string()))
            .collect();
        let expect = [
            ("p", "(0,0)-(1,0)"),
            ("a", "(0,0)-(0,1)"),
            ("q", "(0,1)-(0,2)"),
            ("x", "(1,0)-(1,1)"),
            ("b", "(0,1)-(1,1)"),
            ("y", "(0,2)-(1,2)"),
            ("r", "(1,1)-(2,1)"),
            ("c", "(1,1)-(1,2)"),
            ("d", "(1,2)-(2,2)"),
            ("z", "(2,1)-(2,2)"),
        ];
        for (n, e) in expect {
            assert_eq!(moved[n], e, "edge {n}");
        }
        let labels = dm.transport_labels(&g, &standard_labeling(&g));
        assert_eq!(labels, standard_labeling(dm.dual()));
    }

    #[test]
    fn canonical_cover_goes_to_canonical_path() {
        for len in 0..=8 {
            for w in SnakeWord::all_of_length(len) {
                let g = build_snake(&w);
                let dm = dual_map(&g);
                let image: BTreeSet<Edge> = canonical_dimer_edges(&g).iter().map(|e| dm.edge_map()[e]).collect();
                let path: BTreeSet<Edge> = canonical_lattice_path(dm.dual()).edges.into_iter().collect();
                assert_eq!(image, path, "word {w}");
            }
        }
    }

    #[test]
    fn straight_three_tiles_paths() {
        let g = graph("RR");
        let paths = enumerate_mixed_paths(&g).unwrap();
        assert_eq!(paths.len(), 14);
        assert_eq!(paths, enumerate_mixed_paths_direct(&g));
        let mut triples: Vec<Vec<u32>> = paths.iter().map(|m| flip_counts(&g, m)).collect();
        triples.sort();
        let printed = [
            [0, 0, 0], [0, 0, 1], [0, 1, 1], [0, 0, 2], [1, 1, 1], [0, 1, 2], [0, 0, 3],
            [1, 1, 2], [0, 2, 2], [0, 1, 3], [1, 2, 2], [1, 1, 3], [0, 2, 3], [1, 2, 3],
        ];
        let mut printed: Vec<Vec<u32>> = printed.iter().map(|t| t.to_vec()).collect();
        printed.sort();
        assert_eq!(triples, printed);
    }

    #[test]
    fn minimal_multiset_is_a_member() {
        let g = graph("RUR");
        let vs = canonical_path_vertices(&g);
        let n = g.tile_count();
        let mut m = MixedDimerCover::new();
        for i in 0..=n {
            for w in vs[n - i..].windows(2) {
                let e = Edge::new(w[0], w[1]);
                m.set(e, m.get(&e) + 1);
            }
        }
        assert!(is_mixed_lattice_path(&g, &m));
        let mut bad = m.clone();
        let e = canonical_lattice_path(&g).edges[0];
        bad.set(e, bad.get(&e) + 1);
        assert!(!is_mixed_lattice_path(&g, &bad));
    }

    fn codes(graph: &SnakeGraph, labeling: &VertexLabeling) -> BTreeSet<Vec<u32>> {
        snake_permutation_set(graph, labeling)
            .unwrap()
            .into_iter()
            .map(|c| c.entries().to_vec())
            .collect()
    }

    #[test]
    fn zigzag_codes_are_catalan_codes() {
        for n in 3..=6 {
            let (g, l) = catalan_graph(n).unwrap();
            let expect: BTreeSet<Vec<u32>> = catalan_permutations(n)
                .iter()
                .map(|p| lehmer_encode(p).entries().to_vec())
                .collect();
            assert_eq!(codes(&g, &l), expect, "n = {n}");
        }
    }

    #[test]
    fn straight_codes_shift_alternating_codes() {
        for n in 3..=8 {
            let (g, l) = euler_graph(n).unwrap();
            let expect: BTreeSet<Vec<u32>> = alternating_permutations(n)
                .iter()
                .map(|p| {
                    let c = lehmer_encode(p);
                    let e = c.entries();
                    e[..n - 1].iter().enumerate().map(|(k, &x)| x - (k % 2 == 0) as u32).collect()
                })
                .collect();
            assert_eq!(codes(&g, &l), expect, "n = {n}");
        }
    }

    #[test]
    fn single_dimer_codes_are_binary() {
        let g = graph("UUU");
        let set = codes(&g, &VertexLabeling::constant(&g, 1));
        assert!(set.iter().all(|c| c.iter().all(|&x| x <= 1)));
        assert!(set.contains(&vec![0, 0, 0, 0, 0]));
        assert!(set.contains(&vec![1, 1, 1, 1, 0]));
    }

    #[test]
    fn twists_become_flips_on_the_dual() {
        for len in 0..=4 {
          for w in SnakeWord::all_of_length(len) {
            let g = build_snake(&w);
            let lat = build_lattice(&g, &standard_labeling(&g)).unwrap();
            let dm = dual_map(&g);
            let paths = enumerate_mixed_paths(dm.dual()).unwrap();
            let index: BTreeMap<MixedDimerCover, usize> =
                paths.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let image: Vec<usize> = lat.elements().iter().map(|c| index[&dm.transport_multiset(c)]).collect();
            let mut twisted: Vec<(usize, usize)> =
                lat.diagram().covers().iter().map(|&(a, b)| (image[a], image[b])).collect();
            let mut flipped: Vec<(usize, usize)> =
                flip_covers(dm.dual(), &paths).into_iter().map(|(i, j, _)| (i, j)).collect();
            twisted.sort_unstable();
            flipped.sort_unstable();
            assert_eq!(twisted, flipped, "word {w}");
          }
        }
    }
}
