//! Sparse multivariate Laurent polynomials with big-integer coefficients.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An interned indeterminate name.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Var(Arc<str>);

fn interner() -> &'static Mutex<HashSet<Arc<str>>> {
    static POOL: OnceLock<Mutex<HashSet<Arc<str>>>> = OnceLock::new();
    POOL.get_or_init(|| Mutex::new(HashSet::new()))
}

impl Var {
    pub fn new(name: &str) -> Var {
        let mut pool = interner().lock().unwrap();
        if let Some(existing) = pool.get(name) {
            return Var(existing.clone());
        }
        let arc: Arc<str> = Arc::from(name);
        pool.insert(arc.clone());
        Var(arc)
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    fn sort_key(&self) -> (&str, Option<u64>) {
        let s: &str = &self.0;
        let split = s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        (&s[..split], s[split..].parse().ok())
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key()
            .cmp(&other.sort_key())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A product of powers of distinct variables, nonzero exponents only.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<(Var, i64)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, e: i64) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, i64)>) -> Self {
        let mut map: BTreeMap<Var, i64> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|(_, e)| *e != 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: &Var) -> i64 {
        self.0.iter().find(|(w, _)| w == v).map_or(0, |(_, e)| *e)
    }

    pub fn factors(&self) -> &[(Var, i64)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_pairs(self.0.iter().chain(other.0.iter()).cloned())
    }

    pub fn pow(&self, k: i64) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|(v, e)| (v.clone(), e * k)))
    }

    pub fn without(&self, v: &Var) -> Monomial {
        Monomial(self.0.iter().filter(|(w, _)| w != v).cloned().collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                let a = self.0.get(i);
                let b = other.0.get(j);
                let (ea, eb) = match (a, b) {
                    (None, None) => return Ordering::Equal,
                    (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                            (*ea, *eb)
                        }
                        Ordering::Less => {
                            i += 1;
                            (*ea, 0)
                        }
                        Ordering::Greater => {
                            j += 1;
                            (0, *eb)
                        }
                    },
                    (Some((_, ea)), None) => {
                        i += 1;
                        (*ea, 0)
                    }
                    (None, Some((_, eb))) => {
                        j += 1;
                        (0, *eb)
                    }
                };
                if ea != eb {
                    return eb.cmp(&ea);
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| {
                if *e == 1 {
                    v.name().to_string()
                } else {
                    format!("{}^{}", v.name(), e)
                }
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(name: &str) -> Self {
        Self::term(1, Monomial::var(Var::new(name), 1))
    }

    /// `name^e`, with negative exponents allowed.
    pub fn var_pow(name: &str, e: i64) -> Self {
        Self::term(1, Monomial::var(Var::new(name), e))
    }

    /// Univariate polynomial `sum c_i name^(low + i)`.
    pub fn from_coeffs(name: &str, low: i64, coeffs: &[i64]) -> Self {
        let v = Var::new(name);
        let mut p = Self::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(v.clone(), low + i as i64), BigInt::from(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        if self.is_zero() {
            Some(BigInt::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn to_biguint(&self) -> Option<BigUint> {
        self.constant_value()?.to_biguint()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }

    /// Single term with coefficient `+1` or `-1`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            if !self.is_unit() {
                return Err(Error::Dimension(format!("cannot invert non-monomial {self}")));
            }
            let (m, c) = self.terms.iter().next().unwrap();
            let sign = if c.is_negative() && k % 2 != 0 { -1 } else { 1 };
            return Ok(Self::term(sign, m.pow(k)));
        }
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        Ok(acc)
    }

    /// Sum of coefficients: every variable set to 1.
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vars: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(v, _)| v.clone()))
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }

    pub fn min_exponent(&self, name: &str) -> Option<i64> {
        let v = Var::new(name);
        self.terms.keys().map(|m| m.exponent(&v)).min()
    }

    pub fn max_exponent(&self, name: &str) -> Option<i64> {
        let v = Var::new(name);
        self.terms.keys().map(|m| m.exponent(&v)).max()
    }

    /// Multiply by `name^k`.
    pub fn shift(&self, name: &str, k: i64) -> Self {
        let m = Monomial::var(Var::new(name), k);
        LaurentPoly {
            terms: self.terms.iter().map(|(t, c)| (t.mul(&m), c.clone())).collect(),
        }
    }

    /// Replace `name` by `value`; negative powers need a unit value.
    pub fn substitute(&self, name: &str, value: &LaurentPoly) -> Result<Self> {
        let v = Var::new(name);
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(&v);
            let rest = Self::term(c.clone(), m.without(&v));
            out = &out + &(&rest * &value.pow(e)?);
        }
        Ok(out)
    }

    /// Evaluate a polynomial in `name` alone at an integer.
    pub fn eval_integer(&self, name: &str, at: i64) -> Result<BigInt> {
        let v = Var::new(name);
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            if m.factors().iter().any(|(w, _)| *w != v) {
                return Err(Error::Dimension(format!("{self} has variables besides {name}")));
            }
            let e = m.exponent(&v);
            if e < 0 && at.abs() != 1 {
                return Err(Error::Dimension(format!(
                    "{self} has negative powers; {name}={at} is not an integer value"
                )));
            }
            let base = BigInt::from(at);
            let p = if e >= 0 {
                num_traits::pow(base, e as usize)
            } else {
                num_traits::pow(base, (-e) as usize)
            };
            total += c * p;
        }
        Ok(total)
    }

    /// Coefficients of a univariate polynomial from its lowest exponent upward.
    pub fn univariate_coeffs(&self, name: &str) -> Option<(i64, Vec<BigInt>)> {
        let v = Var::new(name);
        if self.terms.keys().any(|m| m.factors().iter().any(|(w, _)| *w != v)) {
            return None;
        }
        let lo = self.min_exponent(name).unwrap_or(0);
        let hi = self.max_exponent(name).unwrap_or(0);
        let mut out = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (m, c) in &self.terms {
            out[(m.exponent(&v) - lo) as usize] = c.clone();
        }
        Some((lo, out))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            let body = if m.is_one() {
                abs.to_string()
            } else if abs.is_one() {
                m.to_string()
            } else {
                format!("{abs}*{m}")
            };
            match (i, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bytes: Vec<char> = compact.chars().collect();
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut neg = false;
        let mut cur = String::new();
        for (i, &ch) in bytes.iter().enumerate() {
            let after_caret = i > 0 && bytes[i - 1] == '^';
            if (ch == '+' || ch == '-') && !after_caret {
                if !cur.is_empty() {
                    pieces.push((neg, std::mem::take(&mut cur)));
                } else if i > 0 {
                    return Err(Error::Parse(format!("dangling sign in {s:?}")));
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(Error::Parse(format!("trailing sign in {s:?}")));
        }
        pieces.push((neg, cur));

        let mut out = LaurentPoly::zero();
        for (neg, piece) in pieces {
            let mut coeff = BigInt::one();
            let mut pairs = Vec::new();
            for factor in piece.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in {s:?}")));
                }
                if factor.chars().all(|c| c.is_ascii_digit()) {
                    coeff *= factor
                        .parse::<BigInt>()
                        .map_err(|e| Error::Parse(e.to_string()))?;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (
                        n,
                        e.parse::<i64>()
                            .map_err(|_| Error::Parse(format!("bad exponent {e:?}")))?,
                    ),
                    None => (factor, 1),
                };
                let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                    && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                if !valid {
                    return Err(Error::Parse(format!("bad variable {name:?}")));
                }
                pairs.push((Var::new(name), exp));
            }
            if neg {
                coeff = -coeff;
            }
            out.add_term(Monomial::from_pairs(pairs), coeff);
        }
        Ok(out)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        LaurentPoly::constant(c)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;

    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> LaurentPoly {
        iter.fold(LaurentPoly::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> LaurentPoly {
        iter.fold(LaurentPoly::one(), |a, b| a * b)
    }
}
