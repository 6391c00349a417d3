//! The Steenrod squares acting on `P_k`, and the generators of the hit subspace.
//!
//! On a single variable power `Sq^j(x^a) = C(a, j) x^(a + j)`; the Cartan
//! formula extends this to monomials by distributing `j` over the variables.

use crate::error::{Error, Result};
use crate::poly::{enumerate_monomials, Monomial, MonomialOrder, Polynomial};

/// `C(a, j) mod 2`, by Lucas' theorem.
pub fn binom_parity(a: u32, j: u32) -> bool {
    j & !a == 0
}

/// Calls `f` once per term of `Sq^j(x^exps)`. Distinct distributions of `j`
/// give distinct monomials, so no term is reported twice.
pub(crate) fn for_each_sq_term(j: u32, exps: &[u32], f: &mut impl FnMut(&[u32])) {
    let degree: u32 = exps.iter().sum();
    if j > degree {
        return;
    }
    let mut out = exps.to_vec();
    distribute(j, exps, 0, &mut out, f);
}

fn distribute(rest: u32, exps: &[u32], i: usize, out: &mut [u32], f: &mut impl FnMut(&[u32])) {
    let a = exps[i];
    if i + 1 == exps.len() {
        if rest <= a && binom_parity(a, rest) {
            out[i] = a + rest;
            f(out);
            out[i] = a;
        }
        return;
    }
    // the share of x_i must be a bit-subset of a, so walk the submasks of a
    let mut sub = a;
    loop {
        if sub <= rest {
            out[i] = a + sub;
            distribute(rest - sub, exps, i + 1, out, f);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & a;
    }
    out[i] = a;
}

pub fn sq_monomial(j: u32, m: &Monomial) -> Polynomial {
    let mut out = Polynomial::zero(m.k());
    for_each_sq_term(j, m.exponents(), &mut |e| {
        out.toggle(Monomial::new(e.to_vec()).expect("k is positive"));
    });
    out
}

/// `Sq^j` applied to a homogeneous polynomial.
pub fn sq(j: u32, f: &Polynomial) -> Result<Polynomial> {
    f.degree()?;
    let mut out = Polynomial::zero(f.k());
    for m in f.terms() {
        for_each_sq_term(j, m.exponents(), &mut |e| {
            out.toggle(Monomial::new(e.to_vec()).expect("k is positive"));
        });
    }
    Ok(out)
}

/// One hit generator `Sq^(2^s)(source)`; `image` may be zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HitGenerator {
    pub s: u32,
    pub source: Monomial,
    pub image: Polynomial,
}

/// Streams `Sq^(2^s)(m)` over every `2^s <= d` and every monomial `m` of
/// degree `d - 2^s`. Together these span the hit elements of degree `d`.
#[derive(Clone, Debug)]
pub struct HitGeneratorStream {
    k: usize,
    d: u32,
    shifts: Vec<u32>,
    shift_pos: usize,
    sources: Vec<Monomial>,
    source_pos: usize,
}

impl HitGeneratorStream {
    fn new(k: usize, d: u32, shifts: Vec<u32>) -> Self {
        let mut stream = HitGeneratorStream {
            k,
            d,
            shifts,
            shift_pos: 0,
            sources: Vec::new(),
            source_pos: 0,
        };
        stream.load_shift();
        stream
    }

    fn load_shift(&mut self) {
        self.sources = match self.shifts.get(self.shift_pos) {
            Some(&s) => enumerate_monomials(self.k, self.d - (1 << s), None, MonomialOrder::WeightLex),
            None => Vec::new(),
        };
        self.source_pos = 0;
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// The shifts `s` with `2^s <= d` still to be streamed.
    pub fn shifts(&self) -> &[u32] {
        &self.shifts[self.shift_pos..]
    }

    /// Splits off the generators of a single shift `s`.
    pub fn for_shift(&self, s: u32) -> HitGeneratorStream {
        let shifts = if self.shifts.contains(&s) { vec![s] } else { Vec::new() };
        HitGeneratorStream::new(self.k, self.d, shifts)
    }

    /// Total number of (s, m) pairs, `sum_s C(d - 2^s + k - 1, k - 1)`.
    pub fn pair_count(&self) -> u64 {
        self.shifts
            .iter()
            .map(|&s| binomial((self.d - (1 << s)) as u64 + self.k as u64 - 1, self.k as u64 - 1))
            .sum()
    }
}

impl Iterator for HitGeneratorStream {
    type Item = HitGenerator;

    fn next(&mut self) -> Option<HitGenerator> {
        while self.shift_pos < self.shifts.len() {
            if let Some(m) = self.sources.get(self.source_pos) {
                self.source_pos += 1;
                let s = self.shifts[self.shift_pos];
                return Some(HitGenerator {
                    s,
                    image: sq_monomial(1 << s, m),
                    source: m.clone(),
                });
            }
            self.shift_pos += 1;
            self.load_shift();
        }
        None
    }
}

pub fn hit_generators(k: usize, d: u32) -> Result<HitGeneratorStream> {
    if k == 0 {
        return Err(Error::Invalid("k must be positive".into()));
    }
    if d == 0 {
        return Err(Error::Invalid("hit generators need a positive degree".into()));
    }
    let shifts = (0..32).take_while(|&s| (1u64 << s) <= d as u64).collect();
    Ok(HitGeneratorStream::new(k, d, shifts))
}

/// Every `Sq^j(m)` with `1 <= j <= d` and `deg m = d - j`. This spans the same
/// space as [`hit_generators`] and serves as an independent check of it.
pub fn all_square_images(k: usize, d: u32) -> Vec<Polynomial> {
    let mut out = Vec::new();
    for j in 1..=d {
        for m in enumerate_monomials(k, d - j, None, MonomialOrder::WeightLex) {
            out.push(sq_monomial(j, &m));
        }
    }
    out
}

pub(crate) fn binomial(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, k: usize) -> Polynomial {
        Polynomial::parse(s, k).unwrap()
    }

    #[test]
    fn binom_parity_examples() {
        assert!(!binom_parity(5, 3));
        assert!(binom_parity(9, 0));
        assert!(!binom_parity(2, 1));
        for a in 0..64u64 {
            for j in 0..=a {
                assert_eq!(binom_parity(a as u32, j as u32), binomial(a, j) % 2 == 1);
            }
        }
    }

    #[test]
    fn sq_monomial_examples() {
        assert_eq!(sq_monomial(1, &Monomial::var(1, 1)), p("x1^2", 1));
        let m = Monomial::parse("x1 x2^2", 2).unwrap();
        assert_eq!(sq_monomial(2, &m), p("x1 x2^4", 2));
        let m = Monomial::parse("x1 x2", 2).unwrap();
        assert!(sq_monomial(3, &m).is_zero());
    }

    #[test]
    fn sq_examples() {
        let f = p("x1^3 x2 + x1 x2^3", 2);
        assert_eq!(sq(0, &f).unwrap(), f);
        assert!(sq(1, &p("x1^2 + x2^2", 2)).unwrap().is_zero());
        let m = Monomial::parse("x1^3 x2 x3^2", 3).unwrap();
        let top = sq(6, &Polynomial::from_monomial(m.clone())).unwrap();
        assert_eq!(top, Polynomial::from_monomial(m).square());
        assert_eq!(sq(1, &p("x1 + x2^2", 2)), Err(Error::NotHomogeneous));
    }

    #[test]
    fn sq_of_variable_vanishes_above_two() {
        for j in 2..6 {
            assert!(sq_monomial(j, &Monomial::var(3, 2)).is_zero());
        }
    }

    #[test]
    fn generator_counts() {
        let gens: Vec<_> = hit_generators(2, 3).unwrap().collect();
        // Sq^1 on three degree-2 monomials, Sq^2 on two degree-1 monomials
        assert_eq!(gens.len(), 5);
        let nonzero: Vec<_> = gens.iter().filter(|g| !g.image.is_zero()).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!(nonzero[0].image, p("x1^2 x2 + x1 x2^2", 2));

        let gens: Vec<_> = hit_generators(1, 2).unwrap().collect();
        assert!(gens.iter().any(|g| g.image == p("x1^2", 1)));

        let stream = hit_generators(5, 20).unwrap();
        assert_eq!(stream.pair_count(), 22_905);
        assert_eq!(stream.shifts(), &[0, 1, 2, 3, 4]);
        assert_eq!(stream.for_shift(4).count(), 70);
        assert!(hit_generators(5, 0).is_err());
    }

    #[test]
    fn stream_length_matches_pair_count() {
        for k in 1..=4 {
            for d in 1..=9 {
                let s = hit_generators(k, d).unwrap();
                assert_eq!(s.clone().count() as u64, s.pair_count(), "k={k} d={d}");
            }
        }
    }
}
