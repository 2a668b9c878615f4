//! Permutations, their Lehmer and inversion codes, the Entringer, ballot
//! and Seidel triangles, and the bijections between covers of straight or
//! zigzag snakes and alternating or 132-avoiding permutations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::dimer_covers::{complete_by_degrees, MixedDimerCover};
use crate::error::{Error, Result};
use crate::snake_core::{
    build_snake, standard_labeling, Edge, SnakeGraph, SnakeWord, VertexLabeling,
};
use crate::transfer_matrices::{zigzag_edges, LaurentPoly};

/// One-line notation, values `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len() as u32;
        let mut seen = vec![false; values.len() + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v as usize] {
                return Err(Error::InvalidPermutation(format!(
                    "{values:?} is not a permutation of 1..{n}"
                )));
            }
            seen[v as usize] = true;
        }
        Ok(Permutation(values))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    /// The longest element `w0 = n ... 2 1`.
    pub fn longest(n: usize) -> Self {
        Permutation((1..=n as u32).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// `sigma(i)` for 1-based `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (pos, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = pos as u32 + 1;
        }
        Permutation(inv)
    }

    /// `(self . other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::InvalidPermutation("size mismatch in composition".into()));
        }
        Ok(Permutation(other.0.iter().map(|&i| self.at(i as usize)).collect()))
    }

    /// Position pairs `(a, b)`, `a < b`, with `sigma(a) > sigma(b)`.
    pub fn inversion_set(&self) -> BTreeSet<(usize, usize)> {
        let n = self.len();
        let mut out = BTreeSet::new();
        for a in 0..n {
            for b in a + 1..n {
                if self.0[a] > self.0[b] {
                    out.insert((a + 1, b + 1));
                }
            }
        }
        out
    }

    pub fn inversions(&self) -> usize {
        self.inversion_set().len()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        if self.len() <= 9 {
            f.write_str(&parts.concat())
        } else {
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let values: Vec<u32> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::InvalidPermutation(format!("{s:?}: {e}")))?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).filter(|&d| d > 0))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::InvalidPermutation(format!("{s:?} is not a digit string")))?
        };
        Permutation::new(values)
    }
}

/// `L_i = #{ j > i : sigma(j) < sigma(i) }`, with `0 <= L_i <= n - i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LehmerCode(Vec<u32>);

impl LehmerCode {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let n = entries.len();
        if let Some((i, &x)) = entries.iter().enumerate().find(|(i, &x)| x as usize > n - 1 - i) {
            return Err(Error::InvalidCode(format!(
                "Lehmer entry {} at position {} exceeds {}",
                x,
                i + 1,
                n - 1 - i
            )));
        }
        Ok(LehmerCode(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `x_i = #{ j < i : sigma^-1(j) > sigma^-1(i) }`, with `0 <= x_i <= i - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InversionCode(Vec<u32>);

impl InversionCode {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if let Some((i, &x)) = entries.iter().enumerate().find(|(i, &x)| x as usize > *i) {
            return Err(Error::InvalidCode(format!(
                "inversion entry {} at position {} exceeds {}",
                x,
                i + 1,
                i
            )));
        }
        Ok(InversionCode(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }
}

pub fn lehmer_encode(sigma: &Permutation) -> LehmerCode {
    let v = sigma.as_slice();
    LehmerCode(
        (0..v.len())
            .map(|i| v[i + 1..].iter().filter(|&&w| w < v[i]).count() as u32)
            .collect(),
    )
}

pub fn lehmer_decode(code: &LehmerCode) -> Permutation {
    let mut remaining: Vec<u32> = (1..=code.len() as u32).collect();
    Permutation(
        code.entries()
            .iter()
            .map(|&x| remaining.remove(x as usize))
            .collect(),
    )
}

pub fn inversion_encode(sigma: &Permutation) -> InversionCode {
    let pos = sigma.inverse();
    let p = pos.as_slice();
    InversionCode(
        (0..p.len())
            .map(|i| (0..i).filter(|&j| p[j] > p[i]).count() as u32)
            .collect(),
    )
}

pub fn inversion_decode(code: &InversionCode) -> Permutation {
    let mut line: Vec<u32> = Vec::with_capacity(code.0.len());
    for (i, &x) in code.0.iter().enumerate() {
        line.insert(i - x as usize, i as u32 + 1);
    }
    Permutation(line)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub alternating: bool,
    pub reverse_alternating: bool,
    pub avoids_132: bool,
    pub avoids_213: bool,
}

fn is_alternating_from(v: &[u32], start_down: bool) -> bool {
    v.windows(2)
        .enumerate()
        .all(|(i, p)| (i % 2 == 0) == start_down && p[0] > p[1] || (i % 2 == 0) != start_down && p[0] < p[1])
}

/// Some `j < k < l` with `v[j] < v[l] < v[k]`.
fn contains_132(v: &[u32]) -> bool {
    let n = v.len();
    (0..n).any(|j| (j + 1..n).any(|k| (k + 1..n).any(|l| v[j] < v[l] && v[l] < v[k])))
}

/// Some `j < k < l` with `v[k] < v[j] < v[l]`.
fn contains_213(v: &[u32]) -> bool {
    let n = v.len();
    (0..n).any(|j| (j + 1..n).any(|k| (k + 1..n).any(|l| v[k] < v[j] && v[j] < v[l])))
}

pub fn classify(sigma: &Permutation) -> Classification {
    let v = sigma.as_slice();
    Classification {
        alternating: is_alternating_from(v, true),
        reverse_alternating: is_alternating_from(v, false),
        avoids_132: !contains_132(v),
        avoids_213: !contains_213(v),
    }
}

/// Depth-first generation over Lehmer codes; `keep` sees each new prefix.
fn generate(n: usize, keep: &dyn Fn(&[u32]) -> bool) -> Vec<Permutation> {
    fn go(n: usize, prefix: &mut Vec<u32>, used: &mut Vec<bool>, keep: &dyn Fn(&[u32]) -> bool, out: &mut Vec<Permutation>) {
        if prefix.len() == n {
            out.push(Permutation(prefix.clone()));
            return;
        }
        for v in 1..=n as u32 {
            if used[v as usize] {
                continue;
            }
            prefix.push(v);
            if keep(prefix) {
                used[v as usize] = true;
                go(n, prefix, used, keep, out);
                used[v as usize] = false;
            }
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::with_capacity(n), &mut vec![false; n + 1], keep, &mut out);
    out
}

pub fn all_permutations(n: usize) -> Vec<Permutation> {
    generate(n, &|_| true)
}

/// `Alt_n`: `sigma(1) > sigma(2) < sigma(3) > ...`.
pub fn alternating_permutations(n: usize) -> Vec<Permutation> {
    generate(n, &|p| {
        let k = p.len();
        k < 2 || ((k % 2 == 0) == (p[k - 2] > p[k - 1]))
    })
}

/// `Cat_n`: the 132-avoiding permutations.
pub fn catalan_permutations(n: usize) -> Vec<Permutation> {
    generate(n, &|p| {
        let l = p.len() - 1;
        !(0..l).any(|j| (j + 1..l).any(|k| p[j] < p[l] && p[l] < p[k]))
    })
}

pub fn avoiders_213(n: usize) -> Vec<Permutation> {
    generate(n, &|p| {
        let l = p.len() - 1;
        !(0..l).any(|j| (j + 1..l).any(|k| p[k] < p[j] && p[j] < p[l]))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleKind {
    Entringer,
    Ballot,
    Seidel,
}

impl FromStr for TriangleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "entringer" => Ok(TriangleKind::Entringer),
            "ballot" => Ok(TriangleKind::Ballot),
            "seidel" => Ok(TriangleKind::Seidel),
            _ => Err(Error::Parse(format!("unknown triangle {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberTriangle {
    pub kind: TriangleKind,
    pub rows: Vec<Vec<BigUint>>,
}

impl NumberTriangle {
    /// Row `n` (1-based).
    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.rows[n - 1]
    }

    /// Entry `(n, k)`, both 1-based.
    pub fn entry(&self, n: usize, k: usize) -> BigUint {
        self.rows[n - 1][k - 1].clone()
    }

    pub fn to_text(&self) -> String {
        self.rows
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

pub fn triangle(kind: TriangleKind, n_max: usize) -> NumberTriangle {
    assert!(n_max >= 1, "a triangle has at least one row");
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::from(1u32)]];
    for n in 2..=n_max {
        let prev = &rows[n - 2];
        let sum_where = |pred: &dyn Fn(usize) -> bool| -> BigUint {
            prev.iter()
                .enumerate()
                .filter(|(i, _)| pred(i + 1))
                .map(|(_, x)| x.clone())
                .sum()
        };
        let row: Vec<BigUint> = match kind {
            TriangleKind::Entringer => (1..=n).map(|k| sum_where(&|i| i > n - k)).collect(),
            TriangleKind::Ballot => (1..=n).map(|k| sum_where(&|i| i <= k)).collect(),
            TriangleKind::Seidel => (1..=n.div_ceil(2))
                .map(|k| {
                    let cut = (n / 2) as i64 - k as i64;
                    sum_where(&|i| i as i64 > cut)
                })
                .collect(),
        };
        rows.push(row);
    }
    NumberTriangle { kind, rows }
}

pub fn euler_number(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::from(1u32);
    }
    triangle(TriangleKind::Entringer, n + 1).entry(n + 1, n + 1)
}

pub fn catalan_number(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::from(1u32);
    }
    triangle(TriangleKind::Ballot, n + 1).entry(n + 1, n + 1)
}

/// `G_n = g_{n, ceil(n/2)}`.
pub fn genocchi_number(n: usize) -> BigUint {
    let t = triangle(TriangleKind::Seidel, n);
    t.entry(n, n.div_ceil(2))
}

/// Vertex multiplicities `(1,1,2,2,3,3,...)` truncated to `n - 2` entries;
/// with these labels the straight snake with `n - 3` tiles has the `n`-th Genocchi number of covers.
pub fn genocchi_labels(n: usize) -> Vec<u32> {
    assert!(n >= 3, "Genocchi labels start at n = 3");
    (0..n - 2).map(|i| i as u32 / 2 + 1).collect()
}

/// Row ends of the boustrophedon triangle seeded by `seq`, read from the
/// second row on; the last row is seeded with 0.
pub fn boustrophedon(seq: &[i64]) -> Vec<num_bigint::BigInt> {
    use num_bigint::BigInt;
    let mut out = Vec::with_capacity(seq.len());
    let mut prev: Vec<BigInt> = Vec::new();
    for (k, &a) in seq.iter().chain(std::iter::once(&0)).enumerate() {
        let mut row = vec![BigInt::from(a)];
        for j in 1..=k {
            let next = &row[j - 1] + &prev[k - j];
            row.push(next);
        }
        if k > 0 {
            out.push(row[k].clone());
        }
        prev = row;
    }
    out
}

/// `w0 sigma^-1 w0`.
pub fn w0_conjugate_inverse(sigma: &Permutation) -> Permutation {
    let n = sigma.len() as u32;
    let inv = sigma.inverse();
    Permutation((1..=n).map(|i| n + 1 - inv.at((n + 1 - i) as usize)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermOrder {
    LeftMiddle,
    RightMiddle,
    Bruhat,
    LeftWeak,
}

impl FromStr for PermOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left-middle" => Ok(PermOrder::LeftMiddle),
            "right-middle" => Ok(PermOrder::RightMiddle),
            "bruhat" => Ok(PermOrder::Bruhat),
            "left-weak" => Ok(PermOrder::LeftWeak),
            _ => Err(Error::Parse(format!("unknown order {s:?}"))),
        }
    }
}

fn entrywise_leq(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn order_leq(sigma: &Permutation, tau: &Permutation, order: PermOrder) -> Result<bool> {
    if sigma.len() != tau.len() {
        return Err(Error::InvalidPermutation(format!(
            "cannot compare permutations of sizes {} and {}",
            sigma.len(),
            tau.len()
        )));
    }
    let n = sigma.len();
    Ok(match order {
        PermOrder::LeftMiddle => {
            entrywise_leq(lehmer_encode(sigma).entries(), lehmer_encode(tau).entries())
        }
        PermOrder::RightMiddle => {
            entrywise_leq(inversion_encode(sigma).entries(), inversion_encode(tau).entries())
        }
        PermOrder::Bruhat => (1..=n).all(|i| {
            (1..=n as u32).all(|j| {
                let count = |p: &Permutation| p.as_slice()[..i].iter().filter(|&&v| v >= j).count();
                count(sigma) <= count(tau)
            })
        }),
        PermOrder::LeftWeak => sigma.inversion_set().is_subset(&tau.inversion_set()),
    })
}

/// `sum q^inv(sigma)` over the class.
pub fn inversion_genfun(class: &[Permutation]) -> LaurentPoly {
    let mut counts: BTreeMap<usize, i64> = BTreeMap::new();
    for s in class {
        *counts.entry(s.inversions()).or_insert(0) += 1;
    }
    counts
        .into_iter()
        .map(|(k, c)| LaurentPoly::var_pow("q", k as i64) * LaurentPoly::constant(c))
        .sum()
}

/// The straight snake with `n - 2` tiles and its standard labeling.
pub fn euler_graph(n: usize) -> Result<(SnakeGraph, VertexLabeling)> {
    if n < 3 {
        return Err(Error::InvalidPermutation(format!(
            "the straight bijection needs n >= 3, got {n}"
        )));
    }
    let g = build_snake(&SnakeWord::straight(n - 2));
    let lab = standard_labeling(&g);
    Ok((g, lab))
}

/// The `k`-th vertical edge of the straight snake with `n - 2` tiles, counted from the right.
fn straight_vertical(tiles: usize, k: usize) -> Edge {
    let x = (tiles + 1 - k) as i64;
    Edge::new((x, 0), (x, 1))
}

pub fn alt_to_cover(sigma: &Permutation) -> Result<MixedDimerCover> {
    let n = sigma.len();
    if !classify(sigma).alternating {
        return Err(Error::InvalidPermutation(format!("{sigma} is not alternating")));
    }
    let (g, lab) = euler_graph(n)?;
    let code: Vec<i64> = lehmer_encode(sigma).entries().iter().map(|&x| x as i64).collect();
    let lc = |i: usize| code[i - 1];
    let mut known = BTreeMap::new();
    for k in 1..n {
        let ell = if k == 1 {
            lc(1)
        } else if k % 2 == 0 {
            lc(k - 1) - lc(k) - 1
        } else {
            lc(k) - lc(k - 1)
        };
        if ell < 0 {
            return Err(Error::Internal(format!("negative vertical multiplicity for {sigma}")));
        }
        known.insert(straight_vertical(n - 2, k), ell as u32);
    }
    complete_by_degrees(&g, &lab, &known)
}

pub fn cover_to_alt(graph: &SnakeGraph, cover: &MixedDimerCover) -> Result<Permutation> {
    let tiles = graph.tile_count();
    if graph.word() != &SnakeWord::straight(tiles) {
        return Err(Error::UnsupportedShape(format!("{} is not straight", graph.word())));
    }
    let n = tiles + 2;
    let mut code = Vec::with_capacity(n);
    let mut alt_sum: i64 = 0;
    for i in 1..n {
        let ell = cover.get(&straight_vertical(tiles, i)) as i64;
        alt_sum += if i % 2 == 1 { ell } else { -ell };
        let li = alt_sum - (i / 2) as i64;
        if li < 0 {
            return Err(Error::InvalidCover(format!("code entry {i} would be {li}")));
        }
        code.push(li as u32);
    }
    code.push(0);
    let sigma = lehmer_decode(&LehmerCode::new(code)?);
    if alt_to_cover(&sigma)? != *cover {
        return Err(Error::InvalidCover("cover is not in the image of the bijection".into()));
    }
    Ok(sigma)
}

/// The zigzag snake with `t` tiles and the labeling that puts `k` on `b_k` and `t + 1` on `a_t`.
pub fn zigzag_standard(tiles: usize) -> (SnakeGraph, VertexLabeling) {
    let g = build_snake(&SnakeWord::zigzag(tiles));
    let names = zigzag_edges(tiles);
    let mut lab = VertexLabeling::constant(&g, 0);
    let canonical = names.b.iter().chain(std::iter::once(&names.a[tiles]));
    for (k, e) in canonical.enumerate() {
        lab.set(&g, e.lo(), k as u32 + 1);
        lab.set(&g, e.hi(), k as u32 + 1);
    }
    (g, lab)
}

/// The zigzag snake with `n - 1` tiles used by the 132-avoiding bijection.
pub fn catalan_graph(n: usize) -> Result<(SnakeGraph, VertexLabeling)> {
    if n < 2 {
        return Err(Error::InvalidPermutation(format!(
            "the zigzag bijection needs n >= 2, got {n}"
        )));
    }
    Ok(zigzag_standard(n - 1))
}

pub fn cat_to_cover(sigma: &Permutation) -> Result<MixedDimerCover> {
    let n = sigma.len();
    if !classify(sigma).avoids_132 {
        return Err(Error::InvalidPermutation(format!("{sigma} contains 132")));
    }
    let (g, lab) = catalan_graph(n)?;
    let names = zigzag_edges(n - 1);
    let code: Vec<i64> = lehmer_encode(sigma).entries().iter().map(|&x| x as i64).collect();
    let lc = |i: usize| code[i - 1];
    let mut known = BTreeMap::new();
    for k in 1..n {
        known.insert(names.c[k - 1], lc(n - k) as u32);
    }
    for k in 1..n.saturating_sub(1) {
        let delta = lc(n - 1 - k) - lc(n - k);
        if delta < 0 {
            return Err(Error::Internal(format!("negative difference for {sigma}")));
        }
        known.insert(names.a[k], delta as u32);
    }
    complete_by_degrees(&g, &lab, &known)
}

pub fn cover_to_cat(graph: &SnakeGraph, cover: &MixedDimerCover) -> Result<Permutation> {
    let tiles = graph.tile_count();
    if graph.word() != &SnakeWord::zigzag(tiles) {
        return Err(Error::UnsupportedShape(format!("{} is not a zigzag", graph.word())));
    }
    let n = tiles + 1;
    let names = zigzag_edges(tiles);
    let mut code = vec![0u32; n];
    for k in 1..n {
        code[n - k - 1] = cover.get(&names.c[k - 1]);
    }
    let sigma = lehmer_decode(&LehmerCode::new(code)?);
    if !classify(&sigma).avoids_132 || cat_to_cover(&sigma)? != *cover {
        return Err(Error::InvalidCover("cover is not in the image of the bijection".into()));
    }
    Ok(sigma)
}

/// Number of permutations in `class` with first entry `k`.
pub fn first_entry_counts(class: &[Permutation], n: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); n];
    for s in class {
        out[s.at(1) as usize - 1] += 1u32;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn lehmer_examples() {
        assert_eq!(lehmer_encode(&perm("3142")).entries(), &[2, 0, 1, 0]);
        assert_eq!(lehmer_encode(&perm("4231")).entries(), &[3, 1, 1, 0]);
        assert_eq!(lehmer_encode(&Permutation::identity(5)).entries(), &[0; 5]);
        assert!(LehmerCode::new(vec![0, 3, 0]).is_err());
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(inversion_encode(&perm("321")).entries(), &[0, 1, 2]);
        let x = inversion_encode(&perm("3142"));
        assert_eq!(x.entries().iter().sum::<u32>(), 3);
        assert!(InversionCode::new(vec![1]).is_err());
    }

    #[test]
    fn classes() {
        let c = classify(&perm("2143"));
        assert!(c.alternating && !c.reverse_alternating);
        let id = classify(&perm("1234"));
        assert!(id.avoids_132 && id.avoids_213 && !id.alternating);
        assert!(classify(&perm("3241")).alternating);
        assert_eq!(alternating_permutations(5).len(), 16);
        assert_eq!(catalan_permutations(4).len(), 14);
    }

    #[test]
    fn triangles() {
        let e = triangle(TriangleKind::Entringer, 6);
        assert_eq!(e.to_text().lines().nth(4).unwrap(), "0 2 4 5 5");
        let b = triangle(TriangleKind::Ballot, 5);
        assert_eq!(b.to_text().lines().nth(4).unwrap(), "1 4 9 14 14");
        let s = triangle(TriangleKind::Seidel, 8);
        assert_eq!(s.to_text().lines().nth(7).unwrap(), "17 34 48 56");
        assert_eq!(genocchi_number(8), BigUint::from(56u32));
    }

    #[test]
    fn boustrophedon_of_delta() {
        let out: Vec<String> = boustrophedon(&[1, 0, 0, 0, 0]).iter().map(|x| x.to_string()).collect();
        assert_eq!(out, ["1", "1", "2", "5", "16"]);
        assert!(boustrophedon(&[0, 0, 0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn left_weak_covers_swap_adjacent_values() {
        assert!(order_leq(&perm("1243"), &perm("1342"), PermOrder::LeftWeak).unwrap());
        assert!(!order_leq(&perm("1243"), &perm("1324"), PermOrder::LeftWeak).unwrap());
        assert!(order_leq(&perm("1234"), &perm("2134"), PermOrder::LeftWeak).unwrap());
    }

    #[test]
    fn orders() {
        assert!(order_leq(&perm("21435"), &perm("21534"), PermOrder::LeftMiddle).unwrap());
        assert!(!order_leq(&perm("2314"), &perm("3124"), PermOrder::LeftMiddle).unwrap());
        assert!(!order_leq(&perm("3124"), &perm("2314"), PermOrder::LeftMiddle).unwrap());
        assert!(order_leq(&perm("12"), &perm("123"), PermOrder::Bruhat).is_err());
    }

    #[test]
    fn straight_bijection_examples() {
        let c = alt_to_cover(&perm("4132")).unwrap();
        let verticals: Vec<u32> = (1..4).map(|k| c.get(&straight_vertical(2, k))).collect();
        assert_eq!(verticals, vec![3, 2, 1]);
        let c = alt_to_cover(&perm("2143")).unwrap();
        let verticals: Vec<u32> = (1..4).map(|k| c.get(&straight_vertical(2, k))).collect();
        assert_eq!(verticals, vec![1, 0, 1]);
        assert!(alt_to_cover(&perm("1234")).is_err());
    }

    #[test]
    fn catalan_bijection_extremes() {
        let (g, _) = catalan_graph(4).unwrap();
        let low = cat_to_cover(&perm("1234")).unwrap();
        let high = cat_to_cover(&perm("4321")).unwrap();
        assert_eq!(cover_to_cat(&g, &low).unwrap(), perm("1234"));
        assert_eq!(cover_to_cat(&g, &high).unwrap(), perm("4321"));
        assert!(cat_to_cover(&perm("132")).is_err());
    }
}
