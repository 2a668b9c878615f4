//! Snake graphs built from words over `{R, U}`, with their standard
//! labeling, canonical dimer cover and canonical lattice path.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::dimer_covers::MixedDimerCover;
use crate::error::{Error, Result};

/// A lattice point `(x, y)`.
pub type Point = (i64, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    R,
    U,
}

impl Letter {
    pub fn flip(self) -> Letter {
        match self {
            Letter::R => Letter::U,
            Letter::U => Letter::R,
        }
    }

    pub fn step(self) -> Point {
        match self {
            Letter::R => (1, 0),
            Letter::U => (0, 1),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::R => 'R',
            Letter::U => 'U',
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SnakeWord(Vec<Letter>);

impl SnakeWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        SnakeWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of tiles of the snake built from this word.
    pub fn tile_count(&self) -> usize {
        self.0.len() + 1
    }

    /// `R^(n-1)`: the straight snake with `n` tiles.
    pub fn straight(tiles: usize) -> Self {
        assert!(tiles >= 1, "a snake has at least one tile");
        SnakeWord(vec![Letter::R; tiles - 1])
    }

    /// `URUR...`: the zigzag snake with `n` tiles.
    pub fn zigzag(tiles: usize) -> Self {
        assert!(tiles >= 1, "a snake has at least one tile");
        SnakeWord(
            (0..tiles - 1)
                .map(|i| if i % 2 == 0 { Letter::U } else { Letter::R })
                .collect(),
        )
    }

    /// All words of the given length, in lexicographic order with `R < U`.
    pub fn all_of_length(len: usize) -> Vec<SnakeWord> {
        (0..1u64 << len)
            .map(|bits| {
                SnakeWord(
                    (0..len)
                        .map(|i| {
                            if bits >> (len - 1 - i) & 1 == 1 {
                                Letter::U
                            } else {
                                Letter::R
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }

    /// True when the final tile continues a straight segment.
    pub fn ends_straight(&self) -> bool {
        let n = self.0.len();
        n <= 1 || self.0[n - 1] == self.0[n - 2]
    }

    pub fn is_straight(&self) -> bool {
        self.0.windows(2).all(|p| p[0] == p[1])
    }

    /// Alternating word of length at least two.
    pub fn is_alternating(&self) -> bool {
        self.0.len() >= 2 && self.0.windows(2).all(|p| p[0] != p[1])
    }

    /// The mirror image across the diagonal `y = x`.
    pub fn transpose(&self) -> SnakeWord {
        SnakeWord(self.0.iter().map(|l| l.flip()).collect())
    }
}

impl fmt::Display for SnakeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for SnakeWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'R' => Ok(Letter::R),
                'U' => Ok(Letter::U),
                other => Err(Error::InvalidWord(format!(
                    "unexpected character {other:?} in {s:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(SnakeWord)
    }
}

/// An undirected lattice edge stored with its endpoints sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(Point, Point);

impl Edge {
    pub fn new(a: Point, b: Point) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn lo(&self) -> Point {
        self.0
    }

    pub fn hi(&self) -> Point {
        self.1
    }

    pub fn is_horizontal(&self) -> bool {
        self.0 .1 == self.1 .1
    }

    pub fn is_vertical(&self) -> bool {
        self.0 .0 == self.1 .0
    }

    pub fn has(&self, p: Point) -> bool {
        self.0 == p || self.1 == p
    }

    pub fn other(&self, p: Point) -> Point {
        if self.0 == p {
            self.1
        } else {
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{})-({},{})",
            self.0 .0, self.0 .1, self.1 .0, self.1 .1
        )
    }
}

/// The four sides of a unit tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Bottom,
    Right,
    Top,
    Left,
}

pub fn tile_edge(corner: Point, side: Side) -> Edge {
    let (x, y) = corner;
    match side {
        Side::Bottom => Edge::new((x, y), (x + 1, y)),
        Side::Right => Edge::new((x + 1, y), (x + 1, y + 1)),
        Side::Top => Edge::new((x, y + 1), (x + 1, y + 1)),
        Side::Left => Edge::new((x, y), (x, y + 1)),
    }
}

/// Corners of a tile in counter-clockwise order from the bottom-left.
pub fn tile_corners(corner: Point) -> [Point; 4] {
    let (x, y) = corner;
    [(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnakeGraph {
    word: SnakeWord,
    tiles: Vec<Point>,
    vertices: Vec<Point>,
    edges: Vec<Edge>,
    vertex_index: BTreeMap<Point, usize>,
    edge_index: BTreeMap<Edge, usize>,
}

pub fn build_snake(word: &SnakeWord) -> SnakeGraph {
    let mut tiles = vec![(0i64, 0i64)];
    for l in word.letters() {
        let (x, y) = *tiles.last().unwrap();
        let (dx, dy) = l.step();
        tiles.push((x + dx, y + dy));
    }
    let mut vertices = BTreeSet::new();
    let mut edges = BTreeSet::new();
    for &t in &tiles {
        vertices.extend(tile_corners(t));
        for side in [Side::Bottom, Side::Right, Side::Top, Side::Left] {
            edges.insert(tile_edge(t, side));
        }
    }
    let vertices: Vec<Point> = vertices.into_iter().collect();
    let edges: Vec<Edge> = edges.into_iter().collect();
    let vertex_index = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edge_index = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    SnakeGraph {
        word: word.clone(),
        tiles,
        vertices,
        edges,
        vertex_index,
        edge_index,
    }
}

impl SnakeGraph {
    pub fn from_word_str(s: &str) -> Result<Self> {
        Ok(build_snake(&s.parse()?))
    }

    pub fn word(&self) -> &SnakeWord {
        &self.word
    }

    /// Lower-left corners, in snake order.
    pub fn tiles(&self) -> &[Point] {
        &self.tiles
    }

    pub fn tile_count(&self) -> usize {
        self.tiles.len()
    }

    /// Vertices in sorted order.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Edges in sorted order; this is the global edge order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_id(&self, p: Point) -> Option<usize> {
        self.vertex_index.get(&p).copied()
    }

    pub fn edge_id(&self, e: &Edge) -> Option<usize> {
        self.edge_index.get(e).copied()
    }

    pub fn has_edge(&self, e: &Edge) -> bool {
        self.edge_index.contains_key(e)
    }

    pub fn neighbors(&self, p: Point) -> Vec<Point> {
        let (x, y) = p;
        [(x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)]
            .into_iter()
            .filter(|&q| self.has_edge(&Edge::new(p, q)))
            .collect()
    }

    pub fn incident_edges(&self, p: Point) -> Vec<Edge> {
        self.neighbors(p).into_iter().map(|q| Edge::new(p, q)).collect()
    }

    /// Indices of the tiles containing an edge (one or two).
    pub fn tiles_of_edge(&self, e: &Edge) -> Vec<usize> {
        self.tiles
            .iter()
            .enumerate()
            .filter(|(_, &t)| {
                [Side::Bottom, Side::Right, Side::Top, Side::Left]
                    .iter()
                    .any(|&s| tile_edge(t, s) == *e)
            })
            .map(|(i, _)| i)
            .collect()
    }

    pub fn bottom_left(&self) -> Point {
        (0, 0)
    }

    pub fn top_right(&self) -> Point {
        let (x, y) = *self.tiles.last().unwrap();
        (x + 1, y + 1)
    }

    pub fn to_json(&self, labeling: Option<&VertexLabeling>) -> Value {
        let vertices: Vec<Value> = self.vertices.iter().map(|&(x, y)| json!([x, y])).collect();
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|e| json!([[e.lo().0, e.lo().1], [e.hi().0, e.hi().1]]))
            .collect();
        let mut obj = json!({
            "word": self.word.to_string(),
            "vertices": vertices,
            "edges": edges,
        });
        if let Some(lab) = labeling {
            let labels: serde_json::Map<String, Value> = self
                .vertices
                .iter()
                .map(|&(x, y)| (format!("{x},{y}"), json!(lab.get(self, (x, y)))))
                .collect();
            obj["labels"] = Value::Object(labels);
        }
        obj
    }
}

/// Vertex labels `n(v)` indexed by the graph's vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexLabeling {
    labels: Vec<u32>,
}

impl VertexLabeling {
    pub fn from_vec(graph: &SnakeGraph, labels: Vec<u32>) -> Result<Self> {
        if labels.len() != graph.vertices().len() {
            return Err(Error::InvalidLabeling(format!(
                "expected {} vertex labels, got {}",
                graph.vertices().len(),
                labels.len()
            )));
        }
        Ok(VertexLabeling { labels })
    }

    pub fn constant(graph: &SnakeGraph, k: u32) -> Self {
        VertexLabeling {
            labels: vec![k; graph.vertices().len()],
        }
    }

    /// Labels both endpoints of the k-th canonical-cover edge with `per_edge[k]`.
    pub fn from_canonical_labels(graph: &SnakeGraph, per_edge: &[u32]) -> Result<Self> {
        let canonical = canonical_dimer_edges(graph);
        if per_edge.len() != canonical.len() {
            return Err(Error::InvalidLabeling(format!(
                "expected {} labels along the canonical cover, got {}",
                canonical.len(),
                per_edge.len()
            )));
        }
        let mut labels = vec![0; graph.vertices().len()];
        for (e, &k) in canonical.iter().zip(per_edge) {
            labels[graph.vertex_id(e.lo()).unwrap()] = k;
            labels[graph.vertex_id(e.hi()).unwrap()] = k;
        }
        Ok(VertexLabeling { labels })
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.labels
    }

    pub fn get(&self, graph: &SnakeGraph, p: Point) -> u32 {
        self.labels[graph.vertex_id(p).expect("vertex of graph")]
    }

    pub fn set(&mut self, graph: &SnakeGraph, p: Point, k: u32) {
        let i = graph.vertex_id(p).expect("vertex of graph");
        self.labels[i] = k;
    }

    /// The labels along the canonical cover, when both ends of each of its edges agree.
    pub fn canonical_sequence(&self, graph: &SnakeGraph) -> Option<Vec<u32>> {
        canonical_dimer_edges(graph)
            .iter()
            .map(|e| {
                let a = self.get(graph, e.lo());
                (a == self.get(graph, e.hi())).then_some(a)
            })
            .collect()
    }
}

/// The edges of the canonical dimer cover in the order used by the standard labeling.
pub fn canonical_dimer_edges(graph: &SnakeGraph) -> Vec<Edge> {
    let tiles = graph.tiles();
    let letters = graph.word().letters();
    let n = tiles.len();
    let mut matched: BTreeSet<Point> = BTreeSet::new();
    let mut chosen: Vec<Edge> = Vec::new();
    let take = |e: Edge, matched: &mut BTreeSet<Point>, chosen: &mut Vec<Edge>| {
        if !matched.contains(&e.lo()) && !matched.contains(&e.hi()) {
            matched.insert(e.lo());
            matched.insert(e.hi());
            chosen.push(e);
        }
    };

    if letters.is_empty() {
        take(tile_edge(tiles[0], Side::Left), &mut matched, &mut chosen);
        take(tile_edge(tiles[0], Side::Right), &mut matched, &mut chosen);
    } else {
        let last = *letters.last().unwrap();
        let virtual_out = if letters.len() == 1 {
            Letter::R
        } else if graph.word().ends_straight() {
            last
        } else {
            last.flip()
        };
        let turn = |i: usize| {
            let out = if i < n - 1 { letters[i] } else { virtual_out };
            (letters[i - 1], out)
        };
        for i in 1..n {
            match turn(i) {
                (Letter::U, Letter::R) => take(tile_edge(tiles[i], Side::Left), &mut matched, &mut chosen),
                (Letter::R, Letter::U) => take(tile_edge(tiles[i], Side::Bottom), &mut matched, &mut chosen),
                _ => {}
            }
        }
        for i in 1..n {
            match turn(i) {
                (Letter::R, Letter::R) => {
                    take(tile_edge(tiles[i], Side::Left), &mut matched, &mut chosen);
                    take(tile_edge(tiles[i], Side::Right), &mut matched, &mut chosen);
                }
                (Letter::U, Letter::U) => {
                    take(tile_edge(tiles[i], Side::Bottom), &mut matched, &mut chosen);
                    take(tile_edge(tiles[i], Side::Top), &mut matched, &mut chosen);
                }
                _ => {}
            }
        }
        loop {
            let forced = graph.vertices().iter().find_map(|&v| {
                if matched.contains(&v) {
                    return None;
                }
                let free: Vec<Point> = graph
                    .neighbors(v)
                    .into_iter()
                    .filter(|u| !matched.contains(u))
                    .collect();
                (free.len() == 1).then(|| Edge::new(v, free[0]))
            });
            match forced {
                Some(e) => take(e, &mut matched, &mut chosen),
                None => break,
            }
        }
    }

    assert!(
        chosen.len() == n + 1 && matched.len() == graph.vertices().len(),
        "canonical dimer cover of {} is not a perfect matching",
        graph.word()
    );

    let key = |e: &Edge| {
        let tile = graph.tiles_of_edge(e).into_iter().min().unwrap();
        (tile, e.lo().0 + e.lo().1)
    };
    chosen.sort_by_key(key);
    chosen
}

pub fn canonical_dimer_cover(graph: &SnakeGraph) -> MixedDimerCover {
    MixedDimerCover::from_edges(canonical_dimer_edges(graph).into_iter().map(|e| (e, 1)))
}

pub fn standard_labeling(graph: &SnakeGraph) -> VertexLabeling {
    let seq: Vec<u32> = (1..=graph.tile_count() as u32 + 1).collect();
    VertexLabeling::from_canonical_labels(graph, &seq).expect("the canonical cover has n+1 edges")
}

/// A north-east lattice path given by its edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgePath {
    pub start: Point,
    pub end: Point,
    pub edges: Vec<Edge>,
}

impl EdgePath {
    pub fn from_steps(start: Point, steps: &[Letter]) -> Self {
        let mut cur = start;
        let mut edges = Vec::with_capacity(steps.len());
        for l in steps {
            let (dx, dy) = l.step();
            let next = (cur.0 + dx, cur.1 + dy);
            edges.push(Edge::new(cur, next));
            cur = next;
        }
        EdgePath {
            start,
            end: cur,
            edges,
        }
    }

    /// Vertices visited, including both ends.
    pub fn vertices(&self) -> Vec<Point> {
        let mut out = vec![self.start];
        let mut cur = self.start;
        for e in &self.edges {
            cur = e.other(cur);
            out.push(cur);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Step sequence of the canonical lattice path.
pub fn canonical_path_steps(word: &SnakeWord) -> Vec<Letter> {
    let letters = word.letters();
    let mut steps = letters.to_vec();
    match letters.last() {
        None => steps.extend([Letter::U, Letter::R]),
        Some(_) if letters.len() == 1 => steps.extend([Letter::R, Letter::U]),
        Some(&last) if word.ends_straight() => steps.extend([last, last.flip()]),
        Some(&last) => steps.extend([last.flip(), last]),
    }
    steps
}

pub fn canonical_lattice_path(graph: &SnakeGraph) -> EdgePath {
    EdgePath::from_steps(graph.bottom_left(), &canonical_path_steps(graph.word()))
}
