use std::collections::HashMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::network::{catalan_chain, euler_chain, network_for_factors, Network};
use crate::error::{Error, Result};
use crate::twist_lattice::Color;

/// A bicolored graph with a perfect orientation: every black vertex has
/// one outgoing arc, every white vertex one incoming arc, except the
/// white source and the black sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingGraph {
    colors: Vec<Color>,
    arcs: Vec<(usize, usize)>,
    source: usize,
    sink: usize,
}

impl MatchingGraph {
    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn is_bipartite(&self) -> bool {
        self.arcs.iter().all(|&(u, v)| self.colors[u] != self.colors[v])
    }

    pub fn is_perfectly_oriented(&self) -> bool {
        let n = self.vertex_count();
        let (mut indeg, mut outdeg) = (vec![0usize; n], vec![0usize; n]);
        for &(u, v) in &self.arcs {
            outdeg[u] += 1;
            indeg[v] += 1;
        }
        (0..n).all(|v| match (v == self.source, v == self.sink, self.colors[v]) {
            (true, _, Color::White) => indeg[v] == 0,
            (_, true, Color::Black) => outdeg[v] == 0,
            (false, false, Color::Black) => outdeg[v] == 1,
            (false, false, Color::White) => indeg[v] == 1,
            _ => false,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph matching {\n  node [shape=circle, style=filled, label=\"\"];\n");
        for (v, c) in self.colors.iter().enumerate() {
            let fill = match c {
                Color::Black => "black",
                Color::White => "white",
            };
            let extra = if v == self.source {
                ", xlabel=\"source\""
            } else if v == self.sink {
                ", xlabel=\"sink\""
            } else {
                ""
            };
            let _ = writeln!(s, "  v{v} [fillcolor={fill}{extra}];");
        }
        for &(u, v) in &self.arcs {
            let _ = writeln!(s, "  v{u} -> v{v};");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "vertices": self.colors.iter().map(|c| match c {
                Color::Black => "black",
                Color::White => "white",
            }).collect::<Vec<_>>(),
            "arcs": self.arcs.iter().map(|&(u, v)| json!([u, v])).collect::<Vec<_>>(),
            "source": self.source,
            "sink": self.sink,
        })
    }
}

/// Keeps one source and one sink of `net`, discards the vertices on no
/// path between them, contracts pass-through vertices and colors the rest:
/// two in and one out is black, one in and two out is white, two and two
/// splits into a black vertex followed by a white one. Arcs joining two
/// vertices of the same color get a vertex of the other color inserted.
pub fn perfectly_orient(net: &Network, source_port: usize, sink_port: usize) -> Result<MatchingGraph> {
    let src = *net
        .sources()
        .get(source_port)
        .ok_or_else(|| Error::Dimension(format!("no source {source_port}")))?;
    let snk = *net
        .sinks()
        .get(sink_port)
        .ok_or_else(|| Error::Dimension(format!("no sink {sink_port}")))?;
    let n = net.vertex_count();
    let arcs: Vec<(usize, usize)> = net.arcs().iter().map(|&(u, v, _)| (u, v)).collect();
    let mut alive = vec![true; n];
    for &b in net.sources().iter().chain(net.sinks()) {
        if b != src && b != snk {
            alive[b] = false;
        }
    }

    let degrees = |alive: &[bool]| {
        let (mut indeg, mut outdeg) = (vec![0usize; n], vec![0usize; n]);
        for &(u, v) in &arcs {
            if alive[u] && alive[v] {
                outdeg[u] += 1;
                indeg[v] += 1;
            }
        }
        (indeg, outdeg)
    };
    let (indeg, outdeg) = loop {
        let (indeg, outdeg) = degrees(&alive);
        let dead: Vec<usize> = (0..n)
            .filter(|&v| alive[v] && v != src && v != snk && (indeg[v] == 0 || outdeg[v] == 0))
            .collect();
        if dead.is_empty() {
            break (indeg, outdeg);
        }
        for v in dead {
            alive[v] = false;
        }
    };
    if outdeg[src] == 0 || indeg[snk] == 0 || indeg[src] != 0 || outdeg[snk] != 0 {
        return Err(Error::InvalidDiagram("the chosen source and sink are not joined by a path".into()));
    }

    let mut colors: Vec<Color> = Vec::new();
    let mut in_node = vec![usize::MAX; n];
    let mut out_node = vec![usize::MAX; n];
    let new_node = |c: Color, colors: &mut Vec<Color>| {
        colors.push(c);
        colors.len() - 1
    };
    let mut out_arcs: Vec<(usize, usize)> = Vec::new();
    for v in (0..n).filter(|&v| alive[v]) {
        let color = if v == src {
            Some(Color::White)
        } else if v == snk {
            Some(Color::Black)
        } else {
            match (indeg[v], outdeg[v]) {
                (1, 1) => None,
                (2, 1) => Some(Color::Black),
                (1, 2) => Some(Color::White),
                (2, 2) => {
                    let b = new_node(Color::Black, &mut colors);
                    let w = new_node(Color::White, &mut colors);
                    out_arcs.push((b, w));
                    in_node[v] = b;
                    out_node[v] = w;
                    continue;
                }
                (i, o) => {
                    return Err(Error::UnsupportedShape(format!(
                        "vertex with {i} incoming and {o} outgoing arcs"
                    )))
                }
            }
        };
        if let Some(c) = color {
            let x = new_node(c, &mut colors);
            in_node[v] = x;
            out_node[v] = x;
        }
    }

    let mut next = vec![usize::MAX; n];
    for &(u, v) in &arcs {
        if alive[u] && alive[v] && in_node[u] == usize::MAX {
            next[u] = v;
        }
    }
    for &(u, v) in &arcs {
        if !(alive[u] && alive[v]) || out_node[u] == usize::MAX {
            continue;
        }
        let mut end = v;
        while in_node[end] == usize::MAX {
            end = next[end];
        }
        out_arcs.push((out_node[u], in_node[end]));
    }

    let mut arcs_out = Vec::with_capacity(out_arcs.len());
    for (a, b) in out_arcs {
        if colors[a] == colors[b] {
            let mid = new_node(colors[a].flip(), &mut colors);
            arcs_out.push((a, mid));
            arcs_out.push((mid, b));
        } else {
            arcs_out.push((a, b));
        }
    }
    let g = MatchingGraph {
        colors,
        arcs: arcs_out,
        source: out_node[src],
        sink: in_node[snk],
    };
    debug_assert!(g.is_bipartite() && g.is_perfectly_oriented());
    Ok(g)
}

/// Perfect matchings of the underlying undirected multigraph.
pub fn count_perfect_matchings(g: &MatchingGraph) -> BigUint {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in &g.arcs {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut alive = FixedBitSet::with_capacity(n);
    alive.insert_range(..);
    let mut memo = HashMap::new();
    count_rec(&adj, &g.colors, alive, &mut memo)
}

fn count_rec(
    adj: &[Vec<usize>],
    colors: &[Color],
    alive: FixedBitSet,
    memo: &mut HashMap<FixedBitSet, BigUint>,
) -> BigUint {
    if alive.is_clear() {
        return BigUint::one();
    }
    if let Some(c) = memo.get(&alive) {
        return c.clone();
    }
    let blacks = alive.ones().filter(|&v| colors[v] == Color::Black).count();
    if 2 * blacks != alive.count_ones(..) {
        memo.insert(alive, BigUint::zero());
        return BigUint::zero();
    }
    let pivot = alive
        .ones()
        .min_by_key(|&v| adj[v].iter().filter(|&&w| alive.contains(w)).count())
        .expect("nonempty");
    let mut total = BigUint::zero();
    for &w in &adj[pivot] {
        if w != pivot && alive.contains(w) {
            let mut rest = alive.clone();
            rest.set(pivot, false);
            rest.set(w, false);
            total += count_rec(adj, colors, rest, memo);
        }
    }
    memo.insert(alive, total.clone());
    total
}

/// Directed source-to-sink paths, each as a list of arc indices.
pub fn matching_paths(g: &MatchingGraph) -> Vec<Vec<usize>> {
    let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
    for (k, &(u, _)) in g.arcs.iter().enumerate() {
        out_arcs[u].push(k);
    }
    let mut paths = Vec::new();
    let mut stack = Vec::new();
    walk(g, &out_arcs, g.source, &mut stack, &mut paths);
    paths
}

fn walk(g: &MatchingGraph, out_arcs: &[Vec<usize>], v: usize, stack: &mut Vec<usize>, paths: &mut Vec<Vec<usize>>) {
    if v == g.sink {
        paths.push(stack.clone());
        return;
    }
    for &k in &out_arcs[v] {
        stack.push(k);
        walk(g, out_arcs, g.arcs[k].1, stack, paths);
        stack.pop();
    }
}

/// White-to-black arcs on the path together with black-to-white arcs off it.
pub fn path_to_matching(g: &MatchingGraph, path: &[usize]) -> Result<Vec<usize>> {
    let mut on = vec![false; g.arcs.len()];
    let mut at = g.source;
    for &k in path {
        let &(u, v) = g.arcs.get(k).ok_or_else(|| Error::InvalidDiagram(format!("no arc {k}")))?;
        if u != at {
            return Err(Error::InvalidDiagram("arcs do not form a directed path".into()));
        }
        on[k] = true;
        at = v;
    }
    if at != g.sink {
        return Err(Error::InvalidDiagram("path does not end at the sink".into()));
    }
    let matching: Vec<usize> = (0..g.arcs.len())
        .filter(|&k| on[k] == (g.colors[g.arcs[k].0] == Color::White))
        .collect();
    let mut covered = vec![0u32; g.vertex_count()];
    for &k in &matching {
        covered[g.arcs[k].0] += 1;
        covered[g.arcs[k].1] += 1;
    }
    if covered.iter().any(|&c| c != 1) {
        return Err(Error::Internal("path did not yield a perfect matching".into()));
    }
    Ok(matching)
}

/// Matching graph whose perfect matchings number `E_n`.
pub fn euler_matching_graph(n: usize) -> Result<MatchingGraph> {
    let (factors, s, t) = euler_chain(n)?;
    perfectly_orient(&network_for_factors(&factors)?, s, t)
}

/// Matching graph whose perfect matchings number `C_n`.
pub fn catalan_matching_graph(n: usize) -> Result<MatchingGraph> {
    let (factors, s, t) = catalan_chain(n)?;
    perfectly_orient(&network_for_factors(&factors)?, s, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permutation_bridge::{catalan_number, euler_number};
    use std::collections::BTreeSet;

    #[test]
    fn euler_counts() {
        for n in 2..=9 {
            let g = euler_matching_graph(n).unwrap();
            assert!(g.is_bipartite() && g.is_perfectly_oriented());
            assert_eq!(count_perfect_matchings(&g), euler_number(n), "n = {n}");
        }
        assert_eq!(count_perfect_matchings(&euler_matching_graph(5).unwrap()), BigUint::from(16u32));
        assert_eq!(count_perfect_matchings(&euler_matching_graph(7).unwrap()), BigUint::from(272u32));
    }

    #[test]
    fn catalan_counts() {
        for n in 1..=8 {
            let g = catalan_matching_graph(n).unwrap();
            assert_eq!(count_perfect_matchings(&g), catalan_number(n), "n = {n}");
        }
        assert_eq!(count_perfect_matchings(&catalan_matching_graph(6).unwrap()), BigUint::from(132u32));
    }

    #[test]
    fn paths_give_distinct_matchings() {
        for g in [euler_matching_graph(6).unwrap(), catalan_matching_graph(5).unwrap()] {
            let paths = matching_paths(&g);
            let ms: BTreeSet<Vec<usize>> = paths.iter().map(|p| path_to_matching(&g, p).unwrap()).collect();
            assert_eq!(ms.len(), paths.len());
            assert_eq!(BigUint::from(ms.len()), count_perfect_matchings(&g));
        }
    }

    #[test]
    fn bad_ports() {
        let net = network_for_factors(&euler_chain(4).unwrap().0).unwrap();
        assert!(matches!(perfectly_orient(&net, 9, 0), Err(Error::Dimension(_))));
    }

    #[test]
    fn exports() {
        let g = catalan_matching_graph(3).unwrap();
        assert!(g.to_dot().starts_with("digraph"));
        assert_eq!(g.to_json()["vertices"].as_array().unwrap().len(), g.vertex_count());
    }
}
