//! The face-twist order on mixed dimer covers.
//!
//! Vertices are colored so that the final vertex of the snake is black: the
//! bottom-right corner of the last tile when the word ends in `R` (or is
//! empty), the top-right corner when it ends in `U`. Walking a tile
//! counter-clockwise from its bottom-left corner, a side traversed from white
//! to black is odd, the others even. A positive twist lowers both odd sides by
//! one and raises both even sides.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::dimer_covers::{enumerate_covers_guarded, MixedDimerCover, DEFAULT_GUARD};
use crate::error::{Error, Result};
use crate::snake_core::{tile_corners, Edge, Letter, Point, SnakeGraph, VertexLabeling};
use crate::transfer_matrices::LaurentPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexColoring {
    colors: BTreeMap<Point, Color>,
}

impl VertexColoring {
    pub fn color(&self, p: Point) -> Option<Color> {
        self.colors.get(&p).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Point, Color)> + '_ {
        self.colors.iter().map(|(p, c)| (*p, *c))
    }

    /// Every color swapped.
    pub fn reversed(&self) -> Self {
        VertexColoring {
            colors: self.colors.iter().map(|(p, c)| (*p, c.flip())).collect(),
        }
    }

    /// Covers every vertex and gives adjacent vertices different colors.
    pub fn is_proper(&self, graph: &SnakeGraph) -> bool {
        graph.vertices().iter().all(|p| self.colors.contains_key(p))
            && graph
                .edges()
                .iter()
                .all(|e| self.color(e.lo()) != self.color(e.hi()))
    }
}

pub fn color_vertices(graph: &SnakeGraph) -> VertexColoring {
    let (x, y) = *graph.tiles().last().expect("a snake has at least one tile");
    let anchor = match graph.word().letters().last() {
        Some(Letter::U) => (x + 1, y + 1),
        _ => (x + 1, y),
    };
    let parity = (anchor.0 + anchor.1).rem_euclid(2);
    let colors = graph
        .vertices()
        .iter()
        .map(|&p| {
            let c = if (p.0 + p.1).rem_euclid(2) == parity {
                Color::Black
            } else {
                Color::White
            };
            (p, c)
        })
        .collect();
    VertexColoring { colors }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TwistDirection {
    Up,
    Down,
}

/// Odd and even sides of a tile.
pub fn face_sides(
    graph: &SnakeGraph,
    coloring: &VertexColoring,
    tile: usize,
) -> Result<([Edge; 2], [Edge; 2])> {
    let corner = *graph.tiles().get(tile).ok_or(Error::TileOutOfRange(tile))?;
    let c = tile_corners(corner);
    let mut odd = Vec::with_capacity(2);
    let mut even = Vec::with_capacity(2);
    for k in 0..4 {
        let (a, b) = (c[k], c[(k + 1) % 4]);
        let e = Edge::new(a, b);
        if coloring.color(a) == Some(Color::White) && coloring.color(b) == Some(Color::Black) {
            odd.push(e);
        } else {
            even.push(e);
        }
    }
    match (<[Edge; 2]>::try_from(odd), <[Edge; 2]>::try_from(even)) {
        (Ok(o), Ok(e)) => Ok((o, e)),
        _ => Err(Error::Internal(format!("coloring is not proper on tile {tile}"))),
    }
}

pub fn face_twist(
    graph: &SnakeGraph,
    coloring: &VertexColoring,
    cover: &MixedDimerCover,
    tile: usize,
    direction: TwistDirection,
) -> Result<MixedDimerCover> {
    let (odd, even) = face_sides(graph, coloring, tile)?;
    let (lower, raise) = match direction {
        TwistDirection::Up => (odd, even),
        TwistDirection::Down => (even, odd),
    };
    if let Some(e) = lower.iter().find(|e| cover.get(e) == 0) {
        return Err(Error::TwistRefused {
            tile,
            edge: e.to_string(),
        });
    }
    let mut out = cover.clone();
    for e in lower {
        out.set(e, out.get(&e) - 1);
    }
    for e in raise {
        out.set(e, out.get(&e) + 1);
    }
    Ok(out)
}

/// Cover relations of a finite poset, with principal down-sets and up-sets.
#[derive(Debug, Clone)]
pub struct HasseDiagram {
    labels: Vec<String>,
    covers: Vec<(usize, usize)>,
    ranks: Vec<usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    below: Vec<FixedBitSet>,
    above: Vec<FixedBitSet>,
}

impl HasseDiagram {
    /// Rejects cycles and transitive edges. The rank of an element is the
    /// length of the longest chain beneath it.
    pub fn new(labels: Vec<String>, covers: Vec<(usize, usize)>) -> Result<Self> {
        let n = labels.len();
        let mut covers = covers;
        covers.sort_unstable();
        covers.dedup();
        if let Some(&(a, b)) = covers.iter().find(|&&(a, b)| a >= n || b >= n || a == b) {
            return Err(Error::InvalidDiagram(format!("bad cover pair ({a}, {b})")));
        }
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for &(a, b) in &covers {
            up[a].push(b);
            down[b].push(a);
        }

        let mut indegree: Vec<usize> = down.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            topo.push(v);
            for &w in &up[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if topo.len() != n {
            return Err(Error::InvalidDiagram("cover relation has a cycle".into()));
        }

        let mut ranks = vec![0usize; n];
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for &v in &topo {
            below[v].insert(v);
            for &u in &down[v] {
                ranks[v] = ranks[v].max(ranks[u] + 1);
                let (bu, bv) = pick_two(&mut below, u, v);
                bv.union_with(bu);
            }
        }
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for &v in topo.iter().rev() {
            above[v].insert(v);
            for &w in &up[v] {
                let (aw, av) = pick_two(&mut above, w, v);
                av.union_with(aw);
            }
        }

        for &(a, b) in &covers {
            if down[b].iter().any(|&u| u != a && below[u].contains(a)) {
                return Err(Error::InvalidDiagram(format!(
                    "cover ({a}, {b}) is implied by transitivity"
                )));
            }
        }

        Ok(HasseDiagram {
            labels,
            covers,
            ranks,
            up,
            down,
            below,
            above,
        })
    }

    /// The chain `0 < 1 < ... < len`.
    pub fn chain(len: usize) -> Self {
        let labels = (0..=len).map(|i| i.to_string()).collect();
        let covers = (0..len).map(|i| (i, i + 1)).collect();
        Self::new(labels, covers).expect("a chain is a valid diagram")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::InvalidDiagram(format!(
                "{} labels for {} elements",
                labels.len(),
                self.len()
            )));
        }
        Ok(HasseDiagram {
            labels,
            ..self.clone()
        })
    }

    /// Sorted `(lower, upper)` pairs.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks[i]
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.down[i]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    pub fn down_set(&self, i: usize) -> &FixedBitSet {
        &self.below[i]
    }

    pub fn up_set(&self, i: usize) -> &FixedBitSet {
        &self.above[i]
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.down[i].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.up[i].is_empty()).collect()
    }

    pub fn minimum(&self) -> Option<usize> {
        unique(self.minimal_elements())
    }

    pub fn maximum(&self) -> Option<usize> {
        unique(self.maximal_elements())
    }

    /// Every cover raises the rank by exactly one.
    pub fn is_graded(&self) -> bool {
        self.covers.iter().all(|&(a, b)| self.ranks[b] == self.ranks[a] + 1)
    }

    /// Greatest common lower bound, if there is one.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let mut common = self.below[x].clone();
        common.intersect_with(&self.below[y]);
        extreme(&common, &self.ranks, &self.below, true)
    }

    /// Least common upper bound, if there is one.
    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        let mut common = self.above[x].clone();
        common.intersect_with(&self.above[y]);
        extreme(&common, &self.ranks, &self.above, false)
    }

    pub fn is_lattice(&self) -> bool {
        self.lattice_tables().is_some()
    }

    /// Full meet and join tables, or `None` if some pair lacks either.
    pub fn lattice_tables(&self) -> Option<LatticeTables> {
        let n = self.len();
        if n == 0 {
            return None;
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| self.ranks[i]);
        let meet = self.bound_table(&order, &self.down, &self.below)?;
        order.reverse();
        let join = self.bound_table(&order, &self.up, &self.above)?;
        Some(LatticeTables { n, meet, join })
    }

    /// Meets (or joins, with the order reversed). A bound of incomparable
    /// `x` and `y` is the largest of the bounds of `y` with the covers of
    /// `x`, provided it dominates all of them.
    fn bound_table(&self, order: &[usize], covers: &[Vec<usize>], principal: &[FixedBitSet]) -> Option<Vec<u32>> {
        let n = self.len();
        let size: Vec<usize> = principal.iter().map(|p| p.count_ones(..)).collect();
        let mut table = vec![u32::MAX; n * n];
        for &x in order {
            for y in 0..n {
                let b = if principal[y].contains(x) {
                    x
                } else if principal[x].contains(y) {
                    y
                } else {
                    let cands = covers[x].iter().map(|&c| table[c * n + y] as usize);
                    let best = cands.clone().max_by_key(|&c| size[c])?;
                    if !cands.clone().all(|c| principal[best].contains(c)) {
                        return None;
                    }
                    best
                };
                table[x * n + y] = b as u32;
            }
        }
        Some(table)
    }

    /// Checks `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)` for all `x`, `y` and every
    /// join-irreducible `z`. Every element is a join of join-irreducibles, so
    /// this decides the law on all triples.
    pub fn is_distributive(&self) -> bool {
        self.lattice_tables()
            .is_some_and(|t| t.distributive_failure_on(&self.join_irreducibles()).is_none())
    }

    /// The law checked literally on every triple.
    pub fn is_distributive_exhaustive(&self) -> bool {
        self.lattice_tables()
            .is_some_and(|t| t.distributive_failure().is_none())
    }

    /// Elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.down[i].len() == 1).collect()
    }

    /// Same elements, every cover reversed.
    pub fn dual(&self) -> Self {
        let covers = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        Self::new(self.labels.clone(), covers).expect("the dual of a diagram is a diagram")
    }

    pub fn rank_polynomial(&self) -> LaurentPoly {
        self.ranks
            .iter()
            .map(|&r| LaurentPoly::var_pow("q", r as i64))
            .sum()
    }

    /// Bottom-to-top DOT graph, one `rank=same` group per level.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{}\"];", dot_escape(l));
        }
        let top = self.ranks.iter().copied().max().unwrap_or(0);
        for r in 0..=top {
            let level: Vec<String> = (0..self.len())
                .filter(|&i| self.ranks[i] == r)
                .map(|i| format!("n{i};"))
                .collect();
            if !level.is_empty() {
                let _ = writeln!(s, "  {{ rank=same; {} }}", level.join(" "));
            }
        }
        for &(a, b) in &self.covers {
            let _ = writeln!(s, "  n{a} -> n{b};");
        }
        s.push_str("}\n");
        s
    }

    /// `{elements, covers, ranks}`.
    pub fn to_json(&self) -> Value {
        json!({
            "elements": self.labels,
            "covers": self.covers.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
            "ranks": self.ranks,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse("expected {elements, covers, ranks}".into());
        let labels = v["elements"]
            .as_array()
            .ok_or_else(bad)?
            .iter()
            .map(|x| x.as_str().map(str::to_owned).ok_or_else(bad))
            .collect::<Result<Vec<_>>>()?;
        let covers = v["covers"]
            .as_array()
            .ok_or_else(bad)?
            .iter()
            .map(|p| match (p[0].as_u64(), p[1].as_u64()) {
                (Some(a), Some(b)) => Ok((a as usize, b as usize)),
                _ => Err(bad()),
            })
            .collect::<Result<Vec<_>>>()?;
        let d = Self::new(labels, covers)?;
        if let Some(r) = v.get("ranks") {
            let ranks: Vec<usize> = serde_json::from_value(r.clone()).map_err(|_| bad())?;
            if ranks != d.ranks {
                return Err(Error::InvalidDiagram("ranks disagree with covers".into()));
            }
        }
        Ok(d)
    }
}

fn pick_two<T>(v: &mut [T], src: usize, dst: usize) -> (&T, &mut T) {
    assert_ne!(src, dst);
    if src < dst {
        let (a, b) = v.split_at_mut(dst);
        (&a[src], &mut b[0])
    } else {
        let (a, b) = v.split_at_mut(src);
        (&b[0], &mut a[dst])
    }
}

fn unique(v: Vec<usize>) -> Option<usize> {
    match v.as_slice() {
        [x] => Some(*x),
        _ => None,
    }
}

/// The element of `common` whose principal set equals `common`, if any.
fn extreme(common: &FixedBitSet, ranks: &[usize], principal: &[FixedBitSet], highest: bool) -> Option<usize> {
    let best = common.ones().max_by_key(|&i| {
        if highest {
            ranks[i] as i64
        } else {
            -(ranks[i] as i64)
        }
    })?;
    common.is_subset(&principal[best]).then_some(best)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Dense meet and join tables of a lattice.
#[derive(Debug, Clone)]
pub struct LatticeTables {
    n: usize,
    meet: Vec<u32>,
    join: Vec<u32>,
}

impl LatticeTables {
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.n + y] as usize
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.n + y] as usize
    }

    /// First triple violating the distributive law. Triples that satisfy
    /// it in any lattice are skipped: `y` and `z` comparable, either of them
    /// above `x`, or both below `x`.
    pub fn distributive_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        (0..n).into_par_iter().find_map_first(|x| {
            let mx = &self.meet[x * n..(x + 1) * n];
            let jx = &self.join[x * n..(x + 1) * n];
            let cand: Vec<u32> = (0..n as u32).filter(|&y| jx[y as usize] != y).collect();
            let apart: Vec<u32> = cand.iter().copied().filter(|&y| mx[y as usize] != y).collect();
            for (i, &y) in cand.iter().enumerate() {
                let y = y as usize;
                let zs: &[u32] = if mx[y] as usize == y {
                    &apart[apart.partition_point(|&z| (z as usize) <= y)..]
                } else {
                    &cand[i + 1..]
                };
                let jy = &self.join[y * n..(y + 1) * n];
                let mxy = mx[y] as usize;
                let row = &self.join[mxy * n..(mxy + 1) * n];
                for &z in zs {
                    let z = z as usize;
                    let j = jy[z] as usize;
                    if j != y && j != z && mx[j] != row[mx[z] as usize] {
                        return Some((x, y, z));
                    }
                }
            }
            None
        })
    }

    /// First violation with `z` drawn from `zs`.
    pub fn distributive_failure_on(&self, zs: &[usize]) -> Option<(usize, usize, usize)> {
        let n = self.n;
        (0..n).into_par_iter().find_map_first(|x| {
            let mx = &self.meet[x * n..(x + 1) * n];
            for y in 0..n {
                let row = &self.join[mx[y] as usize * n..(mx[y] as usize + 1) * n];
                for &z in zs {
                    if mx[self.join(y, z)] != row[mx[z] as usize] {
                        return Some((x, y, z));
                    }
                }
            }
            None
        })
    }
}

/// A finite poset stored as principal down-sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    below: Vec<FixedBitSet>,
}

impl FinitePoset {
    /// `relation[i][j]` means `i <= j`.
    pub fn new(labels: Vec<String>, relation: &[Vec<bool>]) -> Result<Self> {
        let n = labels.len();
        if relation.len() != n || relation.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidDiagram("relation matrix has the wrong size".into()));
        }
        for i in 0..n {
            if !relation[i][i] {
                return Err(Error::InvalidDiagram(format!("{i} is not related to itself")));
            }
            for j in 0..n {
                if i != j && relation[i][j] && relation[j][i] {
                    return Err(Error::InvalidDiagram(format!("{i} and {j} violate antisymmetry")));
                }
                for k in 0..n {
                    if relation[i][j] && relation[j][k] && !relation[i][k] {
                        return Err(Error::InvalidDiagram(format!(
                            "{i} <= {j} <= {k} violates transitivity"
                        )));
                    }
                }
            }
        }
        let below = (0..n)
            .map(|j| {
                let mut s = FixedBitSet::with_capacity(n);
                s.extend((0..n).filter(|&i| relation[i][j]));
                s
            })
            .collect();
        Ok(FinitePoset { labels, below })
    }

    /// A `k`-element chain.
    pub fn chain(k: usize) -> Self {
        let labels = (0..k).map(|i| i.to_string()).collect();
        let relation: Vec<Vec<bool>> = (0..k).map(|i| (0..k).map(|j| i <= j).collect()).collect();
        Self::new(labels, &relation).expect("a chain is a poset")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    pub fn relation_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.len())
            .map(|i| (0..self.len()).map(|j| self.leq(i, j)).collect())
            .collect()
    }

    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b
                    && self.leq(a, b)
                    && !(0..n).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b))
                {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn to_hasse(&self) -> HasseDiagram {
        HasseDiagram::new(self.labels.clone(), self.covers()).expect("poset covers form a diagram")
    }

    /// Number of elements at each rank, rank being the longest chain beneath.
    pub fn rank_profile(&self) -> Vec<usize> {
        let h = self.to_hasse();
        let top = h.ranks().iter().copied().max().map_or(0, |r| r + 1);
        let mut profile = vec![0; top];
        for &r in h.ranks() {
            profile[r] += 1;
        }
        profile
    }

    /// All down-closed subsets, ordered by size and then by membership.
    pub fn ideals(&self) -> Vec<FixedBitSet> {
        let n = self.len();
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        let mut frontier = vec![FixedBitSet::with_capacity(n)];
        seen.insert(frontier[0].clone());
        let mut all = frontier.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for ideal in &frontier {
                for p in 0..n {
                    if !ideal.contains(p) && self.below[p].ones().all(|q| q == p || ideal.contains(q)) {
                        let mut bigger = ideal.clone();
                        bigger.insert(p);
                        if seen.insert(bigger.clone()) {
                            next.push(bigger);
                        }
                    }
                }
            }
            next.sort_by_key(|s| s.ones().collect::<Vec<_>>());
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all
    }
}

/// The lattice of order ideals, in the order of [`FinitePoset::ideals`].
pub fn ideal_lattice(poset: &FinitePoset) -> HasseDiagram {
    let ideals = poset.ideals();
    let index: HashMap<&FixedBitSet, usize> = ideals.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut covers = Vec::new();
    for (i, ideal) in ideals.iter().enumerate() {
        for p in 0..poset.len() {
            if ideal.contains(p) {
                continue;
            }
            let mut bigger = ideal.clone();
            bigger.insert(p);
            if let Some(&j) = index.get(&bigger) {
                covers.push((i, j));
            }
        }
    }
    let labels = ideals
        .iter()
        .map(|s| {
            let names: Vec<&str> = s.ones().map(|p| poset.labels[p].as_str()).collect();
            format!("{{{}}}", names.join(","))
        })
        .collect();
    HasseDiagram::new(labels, covers).expect("ideal inclusions form a diagram")
}

/// Join-irreducibles of a distributive lattice with the induced order.
pub fn birkhoff_poset(lattice: &HasseDiagram) -> Result<FinitePoset> {
    Ok(birkhoff_round_trip(lattice)?.poset)
}

/// A distributive lattice, its poset of join-irreducibles, the ideal lattice
/// of that poset, and an isomorphism between the two lattices.
#[derive(Debug, Clone)]
pub struct BirkhoffDecomposition {
    pub poset: FinitePoset,
    /// Lattice element behind each poset element.
    pub join_irreducibles: Vec<usize>,
    pub ideal_lattice: HasseDiagram,
    /// Lattice element `x` goes to ideal `iso[x]`.
    pub iso: Vec<usize>,
}

/// Sends each element to the set of join-irreducibles below it and checks
/// that this is a bijection onto the order ideals carrying covers to covers.
pub fn birkhoff_round_trip(lattice: &HasseDiagram) -> Result<BirkhoffDecomposition> {
    if lattice.minimum().is_none() || lattice.maximum().is_none() {
        return Err(Error::NotDistributive("no unique minimum and maximum".into()));
    }
    let ji = lattice.join_irreducibles();
    let labels = ji.iter().map(|&x| lattice.label(x).to_owned()).collect();
    let relation: Vec<Vec<bool>> = ji
        .iter()
        .map(|&a| ji.iter().map(|&b| lattice.leq(a, b)).collect())
        .collect();
    let poset = FinitePoset::new(labels, &relation)?;
    let ideals = poset.ideals();
    if ideals.len() != lattice.len() {
        return Err(Error::NotDistributive(format!(
            "{} elements but {} order ideals of join-irreducibles",
            lattice.len(),
            ideals.len()
        )));
    }
    let index: HashMap<&FixedBitSet, usize> = ideals.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut iso = vec![usize::MAX; lattice.len()];
    let mut hit = vec![false; ideals.len()];
    for (x, slot) in iso.iter_mut().enumerate() {
        let mut set = FixedBitSet::with_capacity(ji.len());
        set.extend((0..ji.len()).filter(|&p| lattice.leq(ji[p], x)));
        let i = *index
            .get(&set)
            .ok_or_else(|| Error::Internal("join-irreducibles below an element are not an ideal".into()))?;
        if std::mem::replace(&mut hit[i], true) {
            return Err(Error::NotDistributive(format!(
                "two elements share the join-irreducibles {:?}",
                set.ones().collect::<Vec<_>>()
            )));
        }
        *slot = i;
    }
    let ideal_lattice = ideal_lattice(&poset);
    let mut mapped: Vec<(usize, usize)> = lattice.covers().iter().map(|&(a, b)| (iso[a], iso[b])).collect();
    mapped.sort_unstable();
    if mapped != ideal_lattice.covers() {
        return Err(Error::NotDistributive("cover relations do not match the ideal lattice".into()));
    }
    Ok(BirkhoffDecomposition {
        poset,
        join_irreducibles: ji,
        ideal_lattice,
        iso,
    })
}

/// The covers of a labeled snake graph under face twists.
#[derive(Debug, Clone)]
pub struct TwistLattice {
    elements: Vec<MixedDimerCover>,
    index: HashMap<MixedDimerCover, usize>,
    twist_tiles: BTreeMap<(usize, usize), usize>,
    diagram: HasseDiagram,
    coloring: VertexColoring,
}

impl TwistLattice {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements ordered by rank, then by dense multiplicity vector.
    pub fn elements(&self) -> &[MixedDimerCover] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &MixedDimerCover {
        &self.elements[i]
    }

    pub fn index_of(&self, cover: &MixedDimerCover) -> Option<usize> {
        self.index.get(cover).copied()
    }

    pub fn diagram(&self) -> &HasseDiagram {
        &self.diagram
    }

    pub fn coloring(&self) -> &VertexColoring {
        &self.coloring
    }

    /// Tile whose positive twist carries `lower` to `upper`.
    pub fn twist_tile(&self, lower: usize, upper: usize) -> Option<usize> {
        self.twist_tiles.get(&(lower, upper)).copied()
    }

    pub fn minimum(&self) -> usize {
        0
    }

    pub fn maximum(&self) -> usize {
        self.diagram.maximum().expect("twist lattices have a maximum")
    }

    pub fn rank_polynomial(&self) -> LaurentPoly {
        self.diagram.rank_polynomial()
    }
}

pub fn build_lattice(graph: &SnakeGraph, labeling: &VertexLabeling) -> Result<TwistLattice> {
    build_lattice_guarded(graph, labeling, DEFAULT_GUARD)
}

pub fn build_lattice_guarded(
    graph: &SnakeGraph,
    labeling: &VertexLabeling,
    guard: u128,
) -> Result<TwistLattice> {
    build_lattice_with_coloring(graph, labeling, &color_vertices(graph), guard)
}

/// Breadth-first search by positive twists from the unique cover that admits
/// no negative twist.
pub fn build_lattice_with_coloring(
    graph: &SnakeGraph,
    labeling: &VertexLabeling,
    coloring: &VertexColoring,
    guard: u128,
) -> Result<TwistLattice> {
    if !coloring.is_proper(graph) {
        return Err(Error::Internal("coloring is not a proper two-coloring".into()));
    }
    let covers = enumerate_covers_guarded(graph, labeling, guard)?;
    if covers.is_empty() {
        return Err(Error::InvalidLabeling("the labeling admits no cover".into()));
    }
    let found: HashMap<&MixedDimerCover, usize> = covers.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let tiles = graph.tile_count();

    let minima: Vec<usize> = (0..covers.len())
        .filter(|&i| {
            (0..tiles).all(|t| face_twist(graph, coloring, &covers[i], t, TwistDirection::Down).is_err())
        })
        .collect();
    let start = unique(minima.clone()).ok_or_else(|| {
        Error::Internal(format!("expected one cover without negative twists, found {}", minima.len()))
    })?;

    let mut dist = vec![usize::MAX; covers.len()];
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    let mut arcs: Vec<(usize, usize, usize)> = Vec::new();
    while let Some(i) = queue.pop_front() {
        for t in 0..tiles {
            let Ok(next) = face_twist(graph, coloring, &covers[i], t, TwistDirection::Up) else {
                continue;
            };
            let j = *found
                .get(&next)
                .ok_or_else(|| Error::Internal(format!("twist at tile {t} left the cover set")))?;
            arcs.push((i, j, t));
            if dist[j] == usize::MAX {
                dist[j] = dist[i] + 1;
                queue.push_back(j);
            }
        }
    }
    if dist.contains(&usize::MAX) {
        return Err(Error::Internal("some covers are unreachable from the minimum".into()));
    }

    let mut order: Vec<usize> = (0..covers.len()).collect();
    order.sort_by_key(|&i| (dist[i], i));
    let mut position = vec![0; covers.len()];
    for (p, &i) in order.iter().enumerate() {
        position[i] = p;
    }
    let elements: Vec<MixedDimerCover> = order.iter().map(|&i| covers[i].clone()).collect();
    let twist_tiles: BTreeMap<(usize, usize), usize> = arcs
        .iter()
        .map(|&(a, b, t)| ((position[a], position[b]), t))
        .collect();
    let labels = elements.iter().map(ToString::to_string).collect();
    let diagram = HasseDiagram::new(labels, twist_tiles.keys().copied().collect())?;
    if (0..elements.len()).any(|p| diagram.rank(p) != dist[order[p]]) {
        return Err(Error::Internal("twist distance and chain length disagree".into()));
    }
    let index = elements.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    Ok(TwistLattice {
        elements,
        index,
        twist_tiles,
        diagram,
        coloring: coloring.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::snake_core::{standard_labeling, tile_edge, Side, SnakeWord};

    fn lattice(word: &str) -> TwistLattice {
        let g = SnakeGraph::from_word_str(word).unwrap();
        build_lattice(&g, &standard_labeling(&g)).unwrap()
    }

    #[test]
    fn straight_coloring_blackens_bottom_right() {
        let g = SnakeGraph::from_word_str("RRR").unwrap();
        let c = color_vertices(&g);
        assert_eq!(c.color((4, 0)), Some(Color::Black));
        assert!(c.is_proper(&g));
    }

    #[test]
    fn zigzag_colorings() {
        let g = SnakeGraph::from_word_str("URUR").unwrap();
        let c = color_vertices(&g);
        let (x, y) = *g.tiles().last().unwrap();
        assert_eq!(c.color((x + 1, y)), Some(Color::Black));
        let g = SnakeGraph::from_word_str("RURU").unwrap();
        let c = color_vertices(&g);
        let (x, y) = *g.tiles().last().unwrap();
        assert_eq!(c.color((x + 1, y + 1)), Some(Color::Black));
    }

    #[test]
    fn twist_moves_one_unit_around_the_face() {
        let g = SnakeGraph::from_word_str("").unwrap();
        let c = color_vertices(&g);
        let (odd, even) = face_sides(&g, &c, 0).unwrap();
        let cover = MixedDimerCover::from_edges(odd.iter().map(|&e| (e, 2)).chain(even.iter().map(|&e| (e, 1))));
        let up = face_twist(&g, &c, &cover, 0, TwistDirection::Up).unwrap();
        for e in odd {
            assert_eq!(up.get(&e), 1);
        }
        for e in even {
            assert_eq!(up.get(&e), 2);
        }
        assert_eq!(face_twist(&g, &c, &up, 0, TwistDirection::Down).unwrap(), cover);
    }

    #[test]
    fn refusal_names_the_blocking_edge() {
        let g = SnakeGraph::from_word_str("").unwrap();
        let c = color_vertices(&g);
        let cover = MixedDimerCover::from_edges([
            (tile_edge((0, 0), Side::Left), 1),
            (tile_edge((0, 0), Side::Right), 1),
        ]);
        let up = face_twist(&g, &c, &cover, 0, TwistDirection::Up);
        let down = face_twist(&g, &c, &cover, 0, TwistDirection::Down);
        assert!(matches!(up, Err(Error::TwistRefused { tile: 0, .. })) ^ matches!(down, Err(Error::TwistRefused { tile: 0, .. })));
        assert!(matches!(
            face_twist(&g, &c, &cover, 3, TwistDirection::Up),
            Err(Error::TileOutOfRange(3))
        ));
    }

    #[test]
    fn straight_three_tiles() {
        let l = lattice("RR");
        assert_eq!(l.len(), 16);
        assert_eq!(
            l.rank_polynomial().to_string(),
            "1 + 2*q + 3*q^2 + 4*q^3 + 3*q^4 + 2*q^5 + q^6"
        );
        assert!(l.diagram().is_distributive());
        assert!(l.diagram().is_distributive_exhaustive());
    }

    #[test]
    fn zigzag_three_tiles() {
        let g = SnakeGraph::from_word_str("UR").unwrap();
        let (_, lab) = crate::permutation_bridge::zigzag_standard(3);
        let l = build_lattice(&g, &lab).unwrap();
        assert_eq!(l.len(), 14);
        assert_eq!(l.rank_polynomial(), crate::transfer_matrices::q_catalan_poly(4));
    }

    #[test]
    fn constant_zero_is_a_point() {
        let g = SnakeGraph::from_word_str("RU").unwrap();
        let l = build_lattice(&g, &VertexLabeling::constant(&g, 0)).unwrap();
        assert_eq!(l.len(), 1);
        assert!(l.diagram().covers().is_empty());
        assert_eq!(l.rank_polynomial(), LaurentPoly::one());
    }

    #[test]
    fn chain_decomposes_to_chain() {
        for k in 0..5 {
            let p = birkhoff_poset(&HasseDiagram::chain(k)).unwrap();
            assert_eq!(p.len(), k);
            assert_eq!(p.rank_profile(), vec![1; k]);
        }
    }

    #[test]
    fn pentagon_is_rejected() {
        let labels = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
        let h = HasseDiagram::new(labels, vec![(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap();
        assert!(h.is_lattice());
        assert!(!h.is_distributive());
        assert!(!h.is_distributive_exhaustive());
        assert!(matches!(birkhoff_poset(&h), Err(Error::NotDistributive(_))));
    }

    #[test]
    fn transitive_edges_are_rejected() {
        let labels = ["0", "1", "2"].map(String::from).to_vec();
        assert!(HasseDiagram::new(labels.clone(), vec![(0, 1), (1, 2), (0, 2)]).is_err());
        assert!(HasseDiagram::new(labels, vec![(0, 1), (1, 2), (2, 0)]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let d = lattice("RU").diagram().clone();
        let back = HasseDiagram::from_json(&d.to_json()).unwrap();
        assert_eq!(back.covers(), d.covers());
        assert_eq!(back.labels(), d.labels());
    }

    #[test]
    fn reversed_coloring_gives_the_dual() {
        for w in SnakeWord::all_of_length(3) {
            let g = crate::snake_core::build_snake(&w);
            let lab = standard_labeling(&g);
            let l = build_lattice(&g, &lab).unwrap();
            let r = build_lattice_with_coloring(&g, &lab, &l.coloring().reversed(), DEFAULT_GUARD).unwrap();
            let mut flipped: Vec<(usize, usize)> = r
                .diagram()
                .covers()
                .iter()
                .map(|&(a, b)| (l.index_of(r.element(b)).unwrap(), l.index_of(r.element(a)).unwrap()))
                .collect();
            flipped.sort_unstable();
            assert_eq!(flipped, l.diagram().covers());
        }
    }
}
