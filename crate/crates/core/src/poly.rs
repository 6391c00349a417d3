//! Monomials, polynomials and weight vectors in `P_k = F2[x1, ..., xk]`.
//!
//! Monomials are ordered by weight vector first (left-lexicographic on the
//! entries) and then by their exponent tuples, with `x1` most significant.
//! The admissible monomials of the hit problem are defined relative to this
//! order, so everything downstream depends on it.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monomial `x1^a1 ... xk^ak`, stored as its exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Result<Self> {
        if exps.is_empty() {
            return Err(Error::Invalid("a monomial needs at least one variable".into()));
        }
        Ok(Monomial { exps })
    }

    /// The constant monomial `1` in `k` variables.
    pub fn one(k: usize) -> Self {
        assert!(k >= 1, "k must be positive");
        Monomial { exps: vec![0; k] }
    }

    /// The variable `x_i` (1-based) in `k` variables.
    pub fn var(k: usize, i: usize) -> Self {
        assert!((1..=k).contains(&i), "variable index out of range");
        let mut exps = vec![0; k];
        exps[i - 1] = 1;
        Monomial { exps }
    }

    pub fn k(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn into_exponents(self) -> Vec<u32> {
        self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn weight_vector(&self) -> WeightVector {
        weight_of(&self.exps)
    }

    /// True iff every nonzero exponent has the form `2^s - 1`.
    pub fn is_spike(&self) -> bool {
        self.exps.iter().all(|&a| a & (a.wrapping_add(1)) == 0)
    }

    /// True iff the monomial is divisible by `x1 x2 ... xk`.
    pub fn is_full_support(&self) -> bool {
        self.exps.iter().all(|&a| a > 0)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        check_k(self.k(), other.k())?;
        Ok(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        })
    }

    /// The tuple form `[a1,a2,...,ak]`.
    pub fn to_tuple_string(&self) -> String {
        let parts: Vec<String> = self.exps.iter().map(|e| e.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    /// Parses the tuple form `[a1,...,ak]`.
    pub fn parse_tuple(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [e1,e2,...], got {s:?}")))?;
        let exps = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad exponent {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Monomial::new(exps)
    }

    /// Parses the text form `x1^3 x2 x5^12` (or `1`) in `k` variables.
    /// A tuple form is accepted too, in which case its length must be `k`.
    pub fn parse(s: &str, k: usize) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('[') {
            let m = Monomial::parse_tuple(s)?;
            check_k(k, m.k())?;
            return Ok(m);
        }
        if k == 0 {
            return Err(Error::Invalid("k must be positive".into()));
        }
        let mut exps = vec![0u32; k];
        if s == "1" {
            return Ok(Monomial { exps });
        }
        for tok in s.split_whitespace() {
            let rest = tok
                .strip_prefix('x')
                .ok_or_else(|| Error::Parse(format!("bad factor {tok:?}")))?;
            let (var, exp) = match rest.split_once('^') {
                Some((v, e)) => (v, e),
                None => (rest, "1"),
            };
            let i: usize = var
                .parse()
                .map_err(|_| Error::Parse(format!("bad variable in {tok:?}")))?;
            let e: u32 = exp
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?;
            if i == 0 || i > k {
                return Err(Error::Parse(format!("variable x{i} out of range for k = {k}")));
            }
            if exps[i - 1] != 0 {
                return Err(Error::Parse(format!("variable x{i} repeated in {s:?}")));
            }
            if e == 0 {
                return Err(Error::Parse(format!("zero exponent in {tok:?}")));
            }
            exps[i - 1] = e;
        }
        if exps.iter().all(|&e| e == 0) {
            return Err(Error::Parse(format!("empty monomial {s:?}")));
        }
        Ok(Monomial { exps })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Weight-then-lex, with variable count as the outermost key so that the
/// order is total on all monomials.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.k()
            .cmp(&other.k())
            .then_with(|| weight_lex_cmp(&self.exps, &other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn check_k(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::VariableCount { expected, found });
    }
    Ok(())
}

pub(crate) fn weight_of(exps: &[u32]) -> WeightVector {
    let mut entries = Vec::new();
    let mut bit = 0;
    loop {
        let mut any = false;
        let mut count = 0;
        for &a in exps {
            let shifted = a >> bit;
            if shifted != 0 {
                any = true;
                count += shifted & 1;
            }
        }
        if !any {
            break;
        }
        entries.push(count);
        bit += 1;
    }
    WeightVector(entries)
}

pub(crate) fn weight_lex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    // compare bit columns from the lowest upwards without allocating
    let top = a.iter().chain(b).copied().max().unwrap_or(0);
    let mut bit = 0;
    while bit < 32 && (top >> bit) != 0 {
        let wa: u32 = a.iter().map(|x| (x >> bit) & 1).sum();
        let wb: u32 = b.iter().map(|x| (x >> bit) & 1).sum();
        match wa.cmp(&wb) {
            Ordering::Equal => bit += 1,
            o => return o,
        }
    }
    a.cmp(b)
}

/// The per-bit counts `(w1, w2, ...)` of a monomial's exponents, trailing
/// zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<u32>);

// The derived Ord is the left-lexicographic order with zero padding: entries are
// trimmed, so a proper prefix is always the smaller of the two.

impl WeightVector {
    pub fn new(mut entries: Vec<u32>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        WeightVector(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `sum_j 2^(j-1) w_j`, the degree of any monomial with this weight.
    pub fn degree(&self) -> u32 {
        self.0.iter().enumerate().map(|(j, &w)| w << j).sum()
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|w| w.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for WeightVector {
    type Err = Error;

    /// Accepts `4,2,1,1` or `(4,2,1,1)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(WeightVector::default());
        }
        let entries = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad weight entry {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WeightVector::new(entries))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    /// Weight vector first, then exponent tuples with `x1` most significant.
    #[default]
    WeightLex,
    /// Exponent tuples only; used to check that dimensions do not depend on the order.
    Lex,
}

impl MonomialOrder {
    pub fn tag(self) -> &'static str {
        match self {
            MonomialOrder::WeightLex => "wlex",
            MonomialOrder::Lex => "lex",
        }
    }

    pub(crate) fn cmp_exps(self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::WeightLex => weight_lex_cmp(a, b),
            MonomialOrder::Lex => a.cmp(b),
        }
    }
}

impl FromStr for MonomialOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wlex" => Ok(MonomialOrder::WeightLex),
            "lex" => Ok(MonomialOrder::Lex),
            _ => Err(Error::Parse(format!("unknown order {s:?} (expected wlex or lex)"))),
        }
    }
}

/// Compares two monomials of the same variable count and degree.
pub fn compare(a: &Monomial, b: &Monomial, order: MonomialOrder) -> Result<Ordering> {
    if a.k() != b.k() {
        return Err(Error::Incomparable(format!(
            "{a} has {} variables, {b} has {}",
            a.k(),
            b.k()
        )));
    }
    if a.degree() != b.degree() {
        return Err(Error::Incomparable(format!(
            "{a} has degree {}, {b} has degree {}",
            a.degree(),
            b.degree()
        )));
    }
    Ok(order.cmp_exps(&a.exps, &b.exps))
}

/// All monomials of degree `d` in `k` variables, ascending in `order`,
/// optionally restricted to one weight vector.
pub fn enumerate_monomials(
    k: usize,
    d: u32,
    weight: Option<&WeightVector>,
    order: MonomialOrder,
) -> Vec<Monomial> {
    assert!(k >= 1, "k must be positive");
    let mut out = Vec::new();
    let mut cur = vec![0u32; k];
    compositions(&mut cur, 0, d, &mut |e| {
        if weight.is_none_or(|w| weight_of(e) == *w) {
            out.push(Monomial { exps: e.to_vec() });
        }
    });
    out.sort_by(|a, b| order.cmp_exps(&a.exps, &b.exps));
    out
}

fn compositions(cur: &mut [u32], i: usize, rest: u32, f: &mut impl FnMut(&[u32])) {
    if i + 1 == cur.len() {
        cur[i] = rest;
        f(cur);
        return;
    }
    for a in 0..=rest {
        cur[i] = a;
        compositions(cur, i + 1, rest - a, f);
    }
    cur[i] = 0;
}

/// The least `r` such that `n` is a sum of `r` numbers of the form `2^s - 1`.
pub fn mu(n: u64) -> u32 {
    // n is such a sum with r terms iff n + r is a sum of r powers of two, each at least 2
    let mut r = 0u64;
    loop {
        let m = n + r;
        if m.is_multiple_of(2) && m.count_ones() as u64 <= r && r <= n || n == 0 {
            return r as u32;
        }
        r += 1;
    }
}

/// The smallest spike of degree `d` in at most `k` variables, with exponents
/// sorted nonincreasing from `x1`.
pub fn minimal_spike(k: usize, d: u32) -> Result<Monomial> {
    if k == 0 || mu(d as u64) as usize > k {
        return Err(Error::NoSpike { k, d });
    }
    let mut best: Option<Vec<u32>> = None;
    let mut cur = Vec::with_capacity(k);
    spike_partitions(d, u32::MAX, k, &mut cur, &mut |parts| {
        let mut e = parts.to_vec();
        e.resize(k, 0);
        let better = match &best {
            None => true,
            Some(b) => weight_lex_cmp(&e, b) == Ordering::Less,
        };
        if better {
            best = Some(e);
        }
    });
    best.map(|exps| Monomial { exps }).ok_or(Error::NoSpike { k, d })
}

fn spike_partitions(
    rest: u32,
    max_part: u32,
    slots: usize,
    cur: &mut Vec<u32>,
    f: &mut impl FnMut(&[u32]),
) {
    if rest == 0 {
        f(cur);
        return;
    }
    if slots == 0 {
        return;
    }
    let mut part = 1u32;
    let mut parts = Vec::new();
    while part <= rest && part <= max_part {
        parts.push(part);
        part = part * 2 + 1;
    }
    for &p in parts.iter().rev() {
        cur.push(p);
        spike_partitions(rest - p, p, slots - 1, cur, f);
        cur.pop();
    }
}

/// A polynomial over F2: a finite set of monomials in a fixed number of
/// variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    k: usize,
    terms: BTreeSet<Monomial>,
}

impl Polynomial {
    pub fn zero(k: usize) -> Self {
        Polynomial {
            k,
            terms: BTreeSet::new(),
        }
    }

    pub fn one(k: usize) -> Self {
        Polynomial::from_monomial(Monomial::one(k))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let k = m.k();
        let mut terms = BTreeSet::new();
        terms.insert(m);
        Polynomial { k, terms }
    }

    /// Sums the given monomials; repeated monomials cancel in pairs.
    pub fn from_monomials(k: usize, monos: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let mut p = Polynomial::zero(k);
        for m in monos {
            check_k(k, m.k())?;
            p.toggle(m);
        }
        Ok(p)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending weight-then-lex order.
    pub fn terms(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.terms.iter()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    /// Adds a single monomial (removing it if already present).
    pub fn toggle(&mut self, m: Monomial) {
        debug_assert_eq!(m.k(), self.k);
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    /// The common degree of the terms; `None` for the zero polynomial.
    pub fn degree(&self) -> Result<Option<u32>> {
        let mut it = self.terms.iter().map(Monomial::degree);
        let Some(d) = it.next() else {
            return Ok(None);
        };
        if it.all(|e| e == d) {
            Ok(Some(d))
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    /// The largest term in weight-then-lex order.
    pub fn leading(&self) -> Option<&Monomial> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        check_k(self.k, other.k)?;
        let terms = self
            .terms
            .symmetric_difference(&other.terms)
            .cloned()
            .collect();
        Ok(Polynomial { k: self.k, terms })
    }

    pub fn add_assign(&mut self, other: &Polynomial) -> Result<()> {
        check_k(self.k, other.k)?;
        for m in &other.terms {
            self.toggle(m.clone());
        }
        Ok(())
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        check_k(self.k, other.k)?;
        let mut out = Polynomial::zero(self.k);
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.mul(b)?);
            }
        }
        Ok(out)
    }

    pub fn square(&self) -> Polynomial {
        // the Frobenius map is additive over F2
        let terms = self
            .terms
            .iter()
            .map(|m| Monomial {
                exps: m.exps.iter().map(|e| 2 * e).collect(),
            })
            .collect();
        Polynomial { k: self.k, terms }
    }

    /// Parses monomials joined by ` + ` (or `0`) in `k` variables.
    pub fn parse(s: &str, k: usize) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Polynomial::zero(k));
        }
        let monos = s
            .split('+')
            .map(|t| Monomial::parse(t, k))
            .collect::<Result<Vec<_>>>()?;
        Polynomial::from_monomials(k, monos)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, m) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

pub fn poly_add(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.add(g)
}

pub fn poly_mul(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.mul(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec()).unwrap()
    }

    #[test]
    fn degree_examples() {
        assert_eq!(m(&[1, 1, 3, 3, 12]).degree(), 20);
        assert_eq!(m(&[0, 0, 0, 0, 0]).degree(), 0);
        assert_eq!(m(&[15, 15]).degree(), 30);
    }

    #[test]
    fn weight_vector_examples() {
        assert_eq!(m(&[1, 1, 3, 3, 12]).weight_vector().entries(), &[4, 2, 1, 1]);
        assert_eq!(m(&[3, 5, 6, 6, 10]).weight_vector().entries(), &[2, 4, 3, 1]);
        assert!(m(&[0, 0, 0, 0, 0]).weight_vector().entries().is_empty());
    }

    #[test]
    fn weight_degree_examples() {
        assert_eq!(WeightVector::new(vec![4, 2, 1, 1]).degree(), 20);
        assert_eq!(WeightVector::new(vec![2, 2, 2, 2]).degree(), 30);
        assert_eq!(WeightVector::default().degree(), 0);
        assert_eq!(WeightVector::new(vec![4, 2, 0, 0]).entries(), &[4, 2]);
    }

    #[test]
    fn weight_order_matches_listing() {
        let a = WeightVector::new(vec![4, 2, 1, 1]);
        let b = WeightVector::new(vec![4, 2, 3]);
        let c = WeightVector::new(vec![4, 4, 2]);
        assert!(a < b && b < c);
        assert!(WeightVector::new(vec![4, 2]) < WeightVector::new(vec![4, 2, 0, 1]));
    }

    #[test]
    fn compare_examples() {
        let ord = MonomialOrder::WeightLex;
        assert_eq!(compare(&m(&[0, 3]), &m(&[1, 2]), ord), Ok(Ordering::Less));
        let x = m(&[2, 1, 4]);
        assert_eq!(compare(&x, &x, ord), Ok(Ordering::Equal));
        assert_eq!(compare(&x, &x, MonomialOrder::Lex), Ok(Ordering::Equal));
        assert_eq!(
            compare(&m(&[1, 1, 3, 3, 12]), &m(&[1, 3, 5, 5, 6]), ord),
            Ok(Ordering::Less)
        );
        assert!(matches!(compare(&m(&[1, 2]), &m(&[1, 2, 0]), ord), Err(Error::Incomparable(_))));
        assert!(matches!(compare(&m(&[1, 2]), &m(&[1, 1]), ord), Err(Error::Incomparable(_))));
    }

    #[test]
    fn lex_order_ignores_weight() {
        let a = m(&[2, 4]); // weight (0,1,1)
        let b = m(&[3, 3]); // weight (2,2)
        assert_eq!(compare(&a, &b, MonomialOrder::WeightLex), Ok(Ordering::Less));
        assert_eq!(compare(&a, &b, MonomialOrder::Lex), Ok(Ordering::Less));
        let c = m(&[4, 2]); // weight (0,1,1)
        assert_eq!(compare(&c, &b, MonomialOrder::WeightLex), Ok(Ordering::Less));
        assert_eq!(compare(&c, &b, MonomialOrder::Lex), Ok(Ordering::Greater));
    }

    #[test]
    fn enumerate_examples() {
        let got = enumerate_monomials(2, 3, None, MonomialOrder::WeightLex);
        let want = vec![m(&[0, 3]), m(&[1, 2]), m(&[2, 1]), m(&[3, 0])];
        assert_eq!(got, want);
        assert_eq!(
            enumerate_monomials(5, 0, None, MonomialOrder::WeightLex),
            vec![Monomial::one(5)]
        );
        let w = WeightVector::new(vec![4, 4, 2]);
        let got = enumerate_monomials(5, 20, Some(&w), MonomialOrder::WeightLex);
        assert!(got.len() >= 91);
        assert!(got.iter().all(|x| x.weight_vector() == w));
        assert_eq!(enumerate_monomials(5, 20, None, MonomialOrder::WeightLex).len(), 10626);
    }

    fn mu_brute(n: u64) -> u32 {
        // breadth-first over sums of parts 2^s - 1
        let parts: Vec<u64> = (1..40).map(|s| (1u64 << s) - 1).filter(|&p| p <= n).collect();
        let mut reach = vec![u32::MAX; n as usize + 1];
        reach[0] = 0;
        for v in 1..=n as usize {
            for &p in &parts {
                if p as usize <= v && reach[v - p as usize] != u32::MAX {
                    reach[v] = reach[v].min(reach[v - p as usize] + 1);
                }
            }
        }
        reach[n as usize]
    }

    #[test]
    fn mu_examples_and_oracle() {
        assert_eq!(mu(20), 4);
        assert_eq!(mu(30), 2);
        assert_eq!(mu(0), 0);
        for n in 0..300 {
            assert_eq!(mu(n), mu_brute(n), "n = {n}");
        }
    }

    #[test]
    fn spike_examples() {
        assert!(m(&[15, 15]).is_spike());
        assert!(!m(&[2, 1]).is_spike());
        assert!(Monomial::one(3).is_spike());
    }

    #[test]
    fn minimal_spike_examples() {
        let s = minimal_spike(5, 20).unwrap();
        assert_eq!(s.exponents(), &[15, 3, 1, 1, 0]);
        assert_eq!(s.weight_vector().entries(), &[4, 2, 1, 1]);
        let s = minimal_spike(5, 30).unwrap();
        assert_eq!(s.exponents(), &[15, 15, 0, 0, 0]);
        assert_eq!(s.weight_vector().entries(), &[2, 2, 2, 2]);
        assert_eq!(minimal_spike(1, 3).unwrap().exponents(), &[3]);
        assert_eq!(minimal_spike(1, 2), Err(Error::NoSpike { k: 1, d: 2 }));
    }

    #[test]
    fn minimal_spike_is_spike_of_degree() {
        for k in 1..=5 {
            for d in 0..=40 {
                if mu(d as u64) as usize <= k {
                    let s = minimal_spike(k, d).unwrap();
                    assert!(s.is_spike());
                    assert_eq!(s.degree(), d);
                } else {
                    assert!(minimal_spike(k, d).is_err());
                }
            }
        }
    }

    #[test]
    fn add_and_mul_examples() {
        let p = |s: &str| Polynomial::parse(s, 3).unwrap();
        let f = p("x1 + x2");
        assert!(poly_add(&f, &f).unwrap().is_zero());
        assert_eq!(poly_add(&f, &p("x2 + x3")).unwrap(), p("x1 + x3"));
        assert_eq!(poly_mul(&f, &Polynomial::one(3)).unwrap(), f);
        assert_eq!(poly_mul(&p("x1"), &p("x1")).unwrap(), p("x1^2"));
        let cube = poly_mul(&poly_mul(&f, &f).unwrap(), &f).unwrap();
        assert_eq!(cube, p("x1^3 + x1^2 x2 + x1 x2^2 + x2^3"));
        assert!(poly_add(&f, &Polynomial::zero(2)).is_err());
    }

    #[test]
    fn text_forms() {
        let x = Monomial::parse("x1^3 x2 x5^12", 5).unwrap();
        assert_eq!(x.exponents(), &[3, 1, 0, 0, 12]);
        assert_eq!(x.to_string(), "x1^3 x2 x5^12");
        assert_eq!(x.to_tuple_string(), "[3,1,0,0,12]");
        assert_eq!(Monomial::parse("[3,1,0,0,12]", 5).unwrap(), x);
        assert_eq!(Monomial::parse("1", 2).unwrap(), Monomial::one(2));
        assert!(Monomial::parse("x6", 5).is_err());
        assert!(Monomial::parse("x1 x1", 5).is_err());
        assert!(Monomial::parse("[1,2]", 3).is_err());
        let f = Polynomial::parse("x2^3 + x1 x2^2", 2).unwrap();
        assert_eq!(f.to_string(), "x2^3 + x1 x2^2");
        assert_eq!(Polynomial::parse("0", 2).unwrap().to_string(), "0");
    }

    #[test]
    fn homogeneity() {
        let f = Polynomial::parse("x1 + x2^2", 2).unwrap();
        assert_eq!(f.degree(), Err(Error::NotHomogeneous));
        assert_eq!(Polynomial::zero(2).degree(), Ok(None));
    }
}
