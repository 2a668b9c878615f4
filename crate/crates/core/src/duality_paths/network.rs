use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::transfer_matrices::{l_matrix, u_matrix, LaurentMatrix, LaurentPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    /// Rungs point down.
    U,
    /// Rungs point up.
    L,
}

/// One block `U_{a,b}` or `L_{a,b}`: `a + 1` sources, `b + 1` sinks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Factor {
    pub kind: BlockKind,
    pub a: u32,
    pub b: u32,
}

impl Factor {
    pub fn u(a: u32, b: u32) -> Self {
        Factor { kind: BlockKind::U, a, b }
    }

    pub fn l(a: u32, b: u32) -> Self {
        Factor { kind: BlockKind::L, a, b }
    }

    pub fn matrix(&self) -> LaurentMatrix {
        match self.kind {
            BlockKind::U => u_matrix(self.a, self.b),
            BlockKind::L => l_matrix(self.a, self.b),
        }
    }

    fn height(&self) -> usize {
        self.a.max(self.b) as usize + 1
    }

    /// Row of source `i` in the block's column, counted from the top.
    fn source_row(&self, i: usize) -> usize {
        match self.kind {
            BlockKind::U => i,
            BlockKind::L => i + self.height() - 1 - self.a as usize,
        }
    }

    fn sink_row(&self, j: usize) -> usize {
        match self.kind {
            BlockKind::U => j,
            BlockKind::L => j + self.height() - 1 - self.b as usize,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            BlockKind::U => 'U',
            BlockKind::L => 'L',
        };
        write!(f, "{k}{},{}", self.a, self.b)
    }
}

impl FromStr for Factor {
    type Err = Error;

    /// `U2,3`, `L1,2`, or `U23` when both indices are single digits.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("{s:?} is not a factor like U1,2 or L23"));
        let mut chars = s.chars();
        let kind = match chars.next() {
            Some('U' | 'u') => BlockKind::U,
            Some('L' | 'l') => BlockKind::L,
            _ => return Err(bad()),
        };
        let rest = chars.as_str();
        let (a, b) = match rest.split_once(',') {
            Some((a, b)) => (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?),
            None if rest.len() == 2 && rest.chars().all(|c| c.is_ascii_digit()) => {
                let d: Vec<u32> = rest.chars().map(|c| c.to_digit(10).unwrap()).collect();
                (d[0], d[1])
            }
            None => return Err(bad()),
        };
        Ok(Factor { kind, a, b })
    }
}

/// Parses a whitespace- or `*`-separated chain of factors.
pub fn parse_chain(s: &str) -> Result<Vec<Factor>> {
    s.split(|c: char| c.is_whitespace() || c == '*')
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

/// An acyclic directed graph with weighted arcs and ordered sources and sinks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    positions: Vec<(i64, i64)>,
    arcs: Vec<(usize, usize, LaurentPoly)>,
    sources: Vec<usize>,
    sinks: Vec<usize>,
    order: Vec<usize>,
}

impl Network {
    pub fn new(
        positions: Vec<(i64, i64)>,
        arcs: Vec<(usize, usize, LaurentPoly)>,
        sources: Vec<usize>,
        sinks: Vec<usize>,
    ) -> Result<Self> {
        let n = positions.len();
        if arcs.iter().any(|&(u, v, _)| u >= n || v >= n) || sources.iter().chain(&sinks).any(|&v| v >= n) {
            return Err(Error::InvalidDiagram("network refers to a missing vertex".into()));
        }
        let mut indeg = vec![0usize; n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v, _) in &arcs {
            indeg[v] += 1;
            out[u].push(v);
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if order.len() != n {
            return Err(Error::InvalidDiagram("network has a directed cycle".into()));
        }
        Ok(Network {
            positions,
            arcs,
            sources,
            sinks,
            order,
        })
    }

    /// `n` disjoint strands.
    pub fn parallel(n: usize) -> Self {
        let positions = (0..n as i64).flat_map(|p| [(0, -p), (1, -p)]).collect();
        let arcs = (0..n).map(|p| (2 * p, 2 * p + 1, LaurentPoly::one())).collect();
        let sources = (0..n).map(|p| 2 * p).collect();
        let sinks = (0..n).map(|p| 2 * p + 1).collect();
        Self::new(positions, arcs, sources, sinks).expect("strands are acyclic")
    }

    pub fn vertex_count(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[(i64, i64)] {
        &self.positions
    }

    pub fn arcs(&self) -> &[(usize, usize, LaurentPoly)] {
        &self.arcs
    }

    pub fn sources(&self) -> &[usize] {
        &self.sources
    }

    pub fn sinks(&self) -> &[usize] {
        &self.sinks
    }

    pub fn set_weight(&mut self, arc: usize, w: LaurentPoly) {
        self.arcs[arc].2 = w;
    }

    /// Vertices in a topological order.
    pub fn topological_order(&self) -> &[usize] {
        &self.order
    }

    fn weights_from(&self, start: usize) -> Vec<LaurentPoly> {
        let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); self.vertex_count()];
        for (k, &(u, _, _)) in self.arcs.iter().enumerate() {
            out_arcs[u].push(k);
        }
        let mut acc = vec![LaurentPoly::zero(); self.vertex_count()];
        acc[start] = LaurentPoly::one();
        for &v in &self.order {
            if acc[v].is_zero() {
                continue;
            }
            let here = acc[v].clone();
            for &k in &out_arcs[v] {
                let (_, w, ref wt) = self.arcs[k];
                acc[w] += &(&here * wt);
            }
        }
        acc
    }

    /// Number of directed paths from source `i` to sink `j` (0-based).
    pub fn count_paths(&self, i: usize, j: usize) -> BigUint {
        let mut counts = vec![BigUint::from(0u32); self.vertex_count()];
        counts[self.sources[i]] = BigUint::from(1u32);
        for &v in &self.order {
            if counts[v] == BigUint::from(0u32) {
                continue;
            }
            let here = counts[v].clone();
            for &(u, w, _) in &self.arcs {
                if u == v {
                    counts[w] += &here;
                }
            }
        }
        counts[self.sinks[j]].clone()
    }

    /// `{vertices, arcs: [[u, v, weight]], sources, sinks}`.
    pub fn to_json(&self) -> Value {
        json!({
            "vertices": self.positions.iter().map(|&(x, y)| json!([x, y])).collect::<Vec<_>>(),
            "arcs": self.arcs.iter().map(|(u, v, w)| json!([u, v, w.to_string()])).collect::<Vec<_>>(),
            "sources": self.sources,
            "sinks": self.sinks,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse("expected {vertices, arcs, sources, sinks}".into());
        let positions = v["vertices"]
            .as_array()
            .ok_or_else(bad)?
            .iter()
            .map(|p| match (p[0].as_i64(), p[1].as_i64()) {
                (Some(x), Some(y)) => Ok((x, y)),
                _ => Err(bad()),
            })
            .collect::<Result<Vec<_>>>()?;
        let arcs = v["arcs"]
            .as_array()
            .ok_or_else(bad)?
            .iter()
            .map(|a| match (a[0].as_u64(), a[1].as_u64(), a[2].as_str()) {
                (Some(u), Some(w), Some(s)) => Ok((u as usize, w as usize, s.parse()?)),
                _ => Err(bad()),
            })
            .collect::<Result<Vec<_>>>()?;
        let sources: Vec<usize> = serde_json::from_value(v["sources"].clone()).map_err(|_| bad())?;
        let sinks: Vec<usize> = serde_json::from_value(v["sinks"].clone()).map_err(|_| bad())?;
        Self::new(positions, arcs, sources, sinks)
    }
}

/// Source-to-sink weighted path sums.
pub fn path_weight_matrix(net: &Network) -> LaurentMatrix {
    let rows: Vec<Vec<LaurentPoly>> = net
        .sources
        .iter()
        .map(|&s| {
            let acc = net.weights_from(s);
            net.sinks.iter().map(|&t| acc[t].clone()).collect()
        })
        .collect();
    LaurentMatrix::from_fn(rows.len(), net.sinks.len(), |i, j| rows[i][j].clone())
}

/// Product of the block matrices.
pub fn structural_product(factors: &[Factor]) -> Result<LaurentMatrix> {
    let ms: Vec<LaurentMatrix> = factors.iter().map(Factor::matrix).collect();
    LaurentMatrix::product(&ms)
}

/// Blocks side by side: one column of rungs per block, sources on the left,
/// sinks on the right, port `j` of a block joined to port `j` of the next.
pub fn network_for_chain(strands: usize, factors: &[Factor]) -> Result<Network> {
    let Some(first) = factors.first() else {
        return Ok(Network::parallel(strands));
    };
    if first.a as usize + 1 != strands {
        return Err(Error::Dimension(format!(
            "{strands} strands cannot feed {first}"
        )));
    }
    for w in factors.windows(2) {
        if w[0].b != w[1].a {
            return Err(Error::Dimension(format!("{} cannot be followed by {}", w[0], w[1])));
        }
    }
    let mut positions: Vec<(i64, i64)> = Vec::new();
    let mut arcs: Vec<(usize, usize, LaurentPoly)> = Vec::new();
    let add = |p: (i64, i64), positions: &mut Vec<(i64, i64)>| {
        positions.push(p);
        positions.len() - 1
    };

    let sources: Vec<usize> = (0..strands)
        .map(|i| add((0, -(first.source_row(i) as i64)), &mut positions))
        .collect();
    let mut ports = sources.clone();
    for (k, f) in factors.iter().enumerate() {
        let x = k as i64 + 1;
        let column: Vec<usize> = (0..f.height())
            .map(|r| add((x, -(r as i64)), &mut positions))
            .collect();
        for (i, &p) in ports.iter().enumerate() {
            arcs.push((p, column[f.source_row(i)], LaurentPoly::one()));
        }
        for r in 0..f.height() - 1 {
            let (u, v) = match f.kind {
                BlockKind::U => (column[r], column[r + 1]),
                BlockKind::L => (column[r + 1], column[r]),
            };
            arcs.push((u, v, LaurentPoly::one()));
        }
        ports = (0..=f.b as usize).map(|j| column[f.sink_row(j)]).collect();
    }
    let last = factors.last().unwrap();
    let x = factors.len() as i64 + 1;
    let sinks: Vec<usize> = (0..=last.b as usize)
        .map(|j| add((x, -(last.sink_row(j) as i64)), &mut positions))
        .collect();
    for (&p, &s) in ports.iter().zip(&sinks) {
        arcs.push((p, s, LaurentPoly::one()));
    }
    Network::new(positions, arcs, sources, sinks)
}

pub fn network_for_factors(factors: &[Factor]) -> Result<Network> {
    let first = factors
        .first()
        .ok_or_else(|| Error::Dimension("an empty chain needs a strand count".into()))?;
    network_for_chain(first.a as usize + 1, factors)
}

/// `U11 L12 U23 L34 ...` with `n - 1` blocks, and the source and sink
/// whose path count is `E_n`.
pub fn euler_chain(n: usize) -> Result<(Vec<Factor>, usize, usize)> {
    if n < 2 {
        return Err(Error::UnsupportedShape("the Euler chain starts at n = 2".into()));
    }
    let blocks = n - 1;
    let factors = (1..=blocks as u32)
        .map(|k| {
            let (a, b) = ((k - 1).max(1), k);
            if k % 2 == 1 {
                Factor::u(a, b)
            } else {
                Factor::l(a, b)
            }
        })
        .collect();
    let sink = if blocks % 2 == 1 { blocks } else { 0 };
    Ok((factors, 0, sink))
}

/// `U11 L12 L23 ... L_{n-1,n}`, and the source and sink whose path count is `C_n`.
pub fn catalan_chain(n: usize) -> Result<(Vec<Factor>, usize, usize)> {
    match n {
        0 => Err(Error::UnsupportedShape("the Catalan chain starts at n = 1".into())),
        1 => Ok((vec![Factor::u(1, 1)], 0, 1)),
        _ => {
            let mut factors = vec![Factor::u(1, 1)];
            factors.extend((1..n as u32).map(|k| Factor::l(k, k + 1)));
            Ok((factors, 0, 0))
        }
    }
}
