//! Linear substitutions acting on `P_k`, the matrices they induce on a
//! quotient basis, and the invariant subspaces under `Sigma_k` and `GL_k`.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hit::QuotientBasis;
use crate::linalg::{kernel, stack, BitVector, F2Matrix};
use crate::poly::{Monomial, Polynomial, WeightVector};

/// A substitution `x_i -> sum of target variables`. Each image is stored as
/// a bit mask over the target variables, which covers every degree-one
/// polynomial over F2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubstitution {
    source_k: usize,
    target_k: usize,
    images: Vec<u32>,
}

impl LinearSubstitution {
    pub fn new(source_k: usize, target_k: usize, images: Vec<u32>) -> Result<Self> {
        if images.len() != source_k {
            return Err(Error::VariableCount {
                expected: source_k,
                found: images.len(),
            });
        }
        if target_k > 32 || images.iter().any(|&m| target_k < 32 && m >> target_k != 0) {
            return Err(Error::Invalid("image uses a variable outside the target".into()));
        }
        Ok(LinearSubstitution {
            source_k,
            target_k,
            images,
        })
    }

    pub fn identity(k: usize) -> Self {
        LinearSubstitution {
            source_k: k,
            target_k: k,
            images: (0..k).map(|i| 1 << i).collect(),
        }
    }

    pub fn source_k(&self) -> usize {
        self.source_k
    }

    pub fn target_k(&self) -> usize {
        self.target_k
    }

    /// The substitution `f -> next(self(f))`.
    pub fn then(&self, next: &LinearSubstitution) -> Result<LinearSubstitution> {
        if self.target_k != next.source_k {
            return Err(Error::VariableCount {
                expected: self.target_k,
                found: next.source_k,
            });
        }
        let images = self
            .images
            .iter()
            .map(|&m| (0..self.target_k).filter(|t| m >> t & 1 == 1).fold(0, |acc, t| acc ^ next.images[t]))
            .collect();
        Ok(LinearSubstitution {
            source_k: self.source_k,
            target_k: next.target_k,
            images,
        })
    }

    /// The image of `x_(i+1)` as a polynomial in the target variables.
    pub fn image(&self, i: usize) -> Polynomial {
        let mut f = Polynomial::zero(self.target_k);
        for t in 0..self.target_k {
            if self.images[i] >> t & 1 == 1 {
                f.toggle(Monomial::var(self.target_k, t + 1));
            }
        }
        f
    }
}

impl fmt::Display for LinearSubstitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.source_k {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "x{} -> {}", i + 1, self.image(i))?;
        }
        Ok(())
    }
}

/// The generator `rho_j` of `GL_k`: the transposition of `x_j` and `x_(j+1)`
/// for `j < k`, and `x1 -> x1 + x2` for `j = k`.
pub fn rho(j: usize, k: usize) -> Result<LinearSubstitution> {
    if j == 0 || j > k || k < 2 {
        return Err(Error::Invalid(format!("rho({j}) needs 1 <= j <= k and k >= 2, got k = {k}")));
    }
    let mut images: Vec<u32> = (0..k).map(|i| 1 << i).collect();
    if j < k {
        images.swap(j - 1, j);
    } else {
        images[0] = 0b11;
    }
    Ok(LinearSubstitution {
        source_k: k,
        target_k: k,
        images,
    })
}

/// `p_(i;I): P_k -> P_(k-1)`, fixing `x_t` for `t < i`, sending `x_i` to
/// the sum of `x_(t-1)` over `t` in `I`, and `x_t` to `x_(t-1)` for `t > i`.
pub fn p_map(i: usize, set: &[usize], k: usize) -> Result<LinearSubstitution> {
    if k < 2 || i == 0 || i > k {
        return Err(Error::Invalid(format!("p_map needs 1 <= i <= k and k >= 2, got i = {i}, k = {k}")));
    }
    if set.windows(2).any(|w| w[0] >= w[1]) || set.iter().any(|&t| t <= i || t > k) {
        return Err(Error::Invalid(format!(
            "p_map index set {set:?} must be ascending within {}..={k}",
            i + 1
        )));
    }
    let images = (1..=k)
        .map(|t| match t.cmp(&i) {
            std::cmp::Ordering::Less => 1 << (t - 1),
            std::cmp::Ordering::Equal => set.iter().fold(0, |m, &s| m | 1 << (s - 2)),
            std::cmp::Ordering::Greater => 1 << (t - 2),
        })
        .collect();
    Ok(LinearSubstitution {
        source_k: k,
        target_k: k - 1,
        images,
    })
}

/// The pairs `(i; I)` with `I` a nonempty subset of `{i+1, ..., k}`.
pub fn p_indices(k: usize) -> Vec<(usize, Vec<usize>)> {
    let mut out = Vec::new();
    for i in 1..k {
        let above: Vec<usize> = (i + 1..=k).collect();
        for bits in 1u32..1 << above.len() {
            let set = above
                .iter()
                .enumerate()
                .filter(|(b, _)| bits >> b & 1 == 1)
                .map(|(_, &t)| t)
                .collect();
            out.push((i, set));
        }
    }
    out
}

pub fn apply_substitution(s: &LinearSubstitution, f: &Polynomial) -> Result<Polynomial> {
    if f.k() != s.source_k {
        return Err(Error::VariableCount {
            expected: s.source_k,
            found: f.k(),
        });
    }
    let mut acc: HashSet<Vec<u32>> = HashSet::new();
    for m in f.terms() {
        for e in substitute_monomial(s, m.exponents()) {
            if !acc.remove(&e) {
                acc.insert(e);
            }
        }
    }
    let monos = acc.into_iter().map(|e| Monomial::new(e).expect("target k is positive"));
    Polynomial::from_monomials(s.target_k, monos)
}

// (sum x_t)^a is the product over the binary digits 2^b of a of sum x_t^(2^b)
fn substitute_monomial(s: &LinearSubstitution, exps: &[u32]) -> HashSet<Vec<u32>> {
    let mut terms: HashSet<Vec<u32>> = HashSet::new();
    terms.insert(vec![0; s.target_k]);
    for (i, &a) in exps.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let mask = s.images[i];
        if mask == 0 {
            return HashSet::new();
        }
        let targets: Vec<usize> = (0..s.target_k).filter(|t| mask >> t & 1 == 1).collect();
        for b in (0..32).filter(|b| a >> b & 1 == 1) {
            let mut next = HashSet::with_capacity(terms.len() * targets.len());
            for e in &terms {
                for &t in &targets {
                    let mut e2 = e.clone();
                    e2[t] += 1 << b;
                    if !next.remove(&e2) {
                        next.insert(e2);
                    }
                }
            }
            terms = next;
        }
    }
    terms
}

/// The matrix of `s` from `source` to `target`: column `t` holds the class
/// of the image of the `t`-th admissible monomial of `source`.
pub fn substitution_matrix(s: &LinearSubstitution, source: &QuotientBasis, target: &QuotientBasis) -> Result<F2Matrix> {
    if s.source_k != source.k() || s.target_k != target.k() {
        return Err(Error::VariableCount {
            expected: source.k(),
            found: s.source_k,
        });
    }
    let cols = source
        .admissible()
        .iter()
        .map(|a| {
            let image = apply_substitution(s, &Polynomial::from_monomial(a.clone()))?;
            Ok(target.reduce_class(&image)?.into_bits())
        })
        .collect::<Result<Vec<_>>>()?;
    F2Matrix::from_columns(target.dim(), &cols)
}

pub fn action_matrix(s: &LinearSubstitution, qb: &QuotientBasis) -> Result<F2Matrix> {
    substitution_matrix(s, qb, qb)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Sigma,
    #[serde(rename = "gl")]
    GL,
    /// Not a group: the joint kernel of the `p_(i;I)` maps on full-support classes.
    SfTilde,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::Sigma => "sigma",
            Group::GL => "gl",
            Group::SfTilde => "sftilde",
        })
    }
}

#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub group: Group,
    pub k: usize,
    pub d: u32,
    pub weight: Option<WeightVector>,
    pub dimension: usize,
    /// One polynomial per basis vector, written over admissible monomials.
    pub representatives: Vec<Polynomial>,
    /// The same vectors as admissible coordinates.
    pub coordinates: Vec<BitVector>,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    group: Group,
    k: usize,
    d: u32,
    weight: Option<&'a WeightVector>,
    dimension: usize,
    representatives: Vec<String>,
}

impl InvariantReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ReportJson {
            group: self.group,
            k: self.k,
            d: self.d,
            weight: self.weight.as_ref(),
            dimension: self.dimension,
            representatives: self.representatives.iter().map(|r| r.to_string()).collect(),
        })
        .expect("report serializes")
    }

    /// Whether the class of `f` lies in the span of the report.
    pub fn spans(&self, qb: &QuotientBasis, f: &Polynomial) -> Result<bool> {
        let v = qb.reduce_class(f)?.into_bits();
        let m = F2Matrix::from_rows(qb.dim(), self.coordinates.clone())?;
        let mut space = m.row_space();
        Ok(!space.insert(&v)?)
    }
}

fn report(group: Group, qb: &QuotientBasis, coordinates: Vec<BitVector>) -> InvariantReport {
    InvariantReport {
        group,
        k: qb.k(),
        d: qb.d(),
        weight: qb.weight().cloned(),
        dimension: coordinates.len(),
        representatives: coordinates.iter().map(|c| qb.polynomial(c)).collect(),
        coordinates,
    }
}

/// Classes fixed by every substitution in `gens`.
pub fn invariants(qb: &QuotientBasis, gens: &[LinearSubstitution], group: Group) -> Result<InvariantReport> {
    let id = F2Matrix::identity(qb.dim());
    let blocks = gens
        .iter()
        .map(|g| action_matrix(g, qb)?.add(&id))
        .collect::<Result<Vec<_>>>()?;
    let system = if blocks.is_empty() {
        F2Matrix::new(qb.dim())
    } else {
        stack(&blocks)?
    };
    Ok(report(group, qb, kernel(&system)))
}

pub fn sigma_generators(k: usize) -> Vec<LinearSubstitution> {
    (1..k).map(|j| rho(j, k).expect("j < k")).collect()
}

pub fn gl_generators(k: usize) -> Vec<LinearSubstitution> {
    (1..=k).map(|j| rho(j, k).expect("j <= k")).collect()
}

pub fn sigma_invariants_of(qb: &QuotientBasis) -> Result<InvariantReport> {
    invariants(qb, &sigma_generators(qb.k()), Group::Sigma)
}

pub fn gl_invariants_of(qb: &QuotientBasis) -> Result<InvariantReport> {
    if qb.k() < 2 {
        return invariants(qb, &[], Group::GL);
    }
    invariants(qb, &gl_generators(qb.k()), Group::GL)
}

fn basis_for(k: usize, d: u32, weight: Option<&WeightVector>) -> Result<QuotientBasis> {
    match weight {
        Some(w) => crate::hit::weight_quotient_basis(k, d, w),
        None => crate::hit::admissible_basis(k, d),
    }
}

pub fn sigma_invariants(k: usize, d: u32, weight: Option<&WeightVector>) -> Result<InvariantReport> {
    sigma_invariants_of(&basis_for(k, d, weight)?)
}

pub fn gl_invariants(k: usize, d: u32, weight: Option<&WeightVector>) -> Result<InvariantReport> {
    gl_invariants_of(&basis_for(k, d, weight)?)
}

/// Full-support classes of `QP_k(w)` sent to zero in `QP_(k-1)(w)` by every
/// `p_(i;I)` with nonempty `I`. Both bases must be weight quotients of `w`.
pub fn sf_tilde_of(source: &QuotientBasis, target: &QuotientBasis) -> Result<InvariantReport> {
    let k = source.k();
    if k < 2 || target.k() + 1 != k {
        return Err(Error::Invalid("sf_tilde needs bases in k and k - 1 variables".into()));
    }
    if source.weight().is_none() || source.weight() != target.weight() {
        return Err(Error::Invalid("sf_tilde needs weight quotients of one weight".into()));
    }
    let plus: Vec<usize> = (0..source.dim())
        .filter(|&t| source.admissible()[t].is_full_support())
        .collect();
    let mut blocks = Vec::new();
    for (i, set) in p_indices(k) {
        let s = p_map(i, &set, k)?;
        let cols = plus
            .iter()
            .map(|&t| {
                let image = apply_substitution(&s, &Polynomial::from_monomial(source.admissible()[t].clone()))?;
                Ok(target.reduce_class(&image)?.into_bits())
            })
            .collect::<Result<Vec<_>>>()?;
        blocks.push(F2Matrix::from_columns(target.dim(), &cols)?);
    }
    let system = stack(&blocks)?;
    let coords = kernel(&system)
        .into_iter()
        .map(|x| BitVector::from_indices(source.dim(), x.iter_ones().map(|j| plus[j])))
        .collect();
    Ok(report(Group::SfTilde, source, coords))
}

pub fn sf_tilde(k: usize, w: &WeightVector) -> Result<InvariantReport> {
    let d = w.degree();
    let source = crate::hit::weight_quotient_basis(k, d, w)?;
    let target = crate::hit::weight_quotient_basis(k - 1, d, w)?;
    sf_tilde_of(&source, &target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hit::admissible_basis;

    fn p(s: &str, k: usize) -> Polynomial {
        Polynomial::parse(s, k).unwrap()
    }

    #[test]
    fn rho_examples() {
        let r = rho(1, 5).unwrap();
        assert_eq!(apply_substitution(&r, &p("x1 x2^3", 5)).unwrap(), p("x1^3 x2", 5));
        let t = rho(5, 5).unwrap();
        assert_eq!(
            apply_substitution(&t, &p("x1^3", 5)).unwrap(),
            p("x1^3 + x1^2 x2 + x1 x2^2 + x2^3", 5)
        );
        for j in 1..5 {
            let r = rho(j, 5).unwrap();
            let f = p("x1 x2^2 x3^3 x4^4 x5^5", 5);
            let twice = apply_substitution(&r, &apply_substitution(&r, &f).unwrap()).unwrap();
            assert_eq!(twice, f);
        }
        assert!(rho(0, 5).is_err());
        assert!(rho(6, 5).is_err());
    }

    #[test]
    fn p_map_examples() {
        let s = p_map(1, &[2], 5).unwrap();
        assert_eq!(s.target_k(), 4);
        assert_eq!(apply_substitution(&s, &p("x1 x2^3 x3", 5)).unwrap(), p("x1^4 x2", 4));
        let s = p_map(1, &[2, 3], 5).unwrap();
        assert_eq!(s.image(0), p("x1 + x2", 4));
        let s = p_map(3, &[], 5).unwrap();
        assert!(apply_substitution(&s, &p("x1 x3^2 x5", 5)).unwrap().is_zero());
        assert!(p_map(2, &[2], 5).is_err());
        assert!(p_map(2, &[4, 3], 5).is_err());
        assert!(p_map(6, &[], 5).is_err());
        assert_eq!(p_indices(5).len(), 26);
    }

    #[test]
    fn composition_matches_repeated_application() {
        let f = p("x1^3 x2 x3^2 + x2^5 x3", 3);
        let a = rho(3, 3).unwrap();
        let b = rho(1, 3).unwrap();
        let ab = a.then(&b).unwrap();
        let step = apply_substitution(&b, &apply_substitution(&a, &f).unwrap()).unwrap();
        assert_eq!(apply_substitution(&ab, &f).unwrap(), step);
        let down = a.then(&p_map(1, &[2, 3], 3).unwrap()).unwrap();
        assert_eq!(down.target_k(), 2);
        assert!(p_map(1, &[2], 3).unwrap().then(&a).is_err());
    }

    #[test]
    fn identity_substitution() {
        let f = p("x1^3 x2 + x2 x3^4", 3);
        assert_eq!(apply_substitution(&LinearSubstitution::identity(3), &f).unwrap(), f);
        let qb = admissible_basis(3, 5).unwrap();
        let m = action_matrix(&LinearSubstitution::identity(3), &qb).unwrap();
        assert_eq!(m, F2Matrix::identity(qb.dim()));
        assert!(apply_substitution(&rho(1, 2).unwrap(), &f).is_err());
    }

    #[test]
    fn action_matrices_k2_d3() {
        // admissibles: x2^3, x1 x2^2, x1^3
        let qb = admissible_basis(2, 3).unwrap();
        let swap = action_matrix(&rho(1, 2).unwrap(), &qb).unwrap();
        let want = F2Matrix::from_columns(
            3,
            &[BitVector::unit(3, 2), BitVector::unit(3, 1), BitVector::unit(3, 0)],
        )
        .unwrap();
        assert_eq!(swap, want);
        let t = action_matrix(&rho(2, 2).unwrap(), &qb).unwrap();
        assert_eq!(t.column(2), BitVector::from_indices(3, [0, 2]));
    }

    #[test]
    fn invariants_k2_d3() {
        let qb = admissible_basis(2, 3).unwrap();
        let sigma = sigma_invariants_of(&qb).unwrap();
        assert_eq!(sigma.dimension, 2);
        assert!(sigma.spans(&qb, &p("x1^3 + x2^3", 2)).unwrap());
        assert!(sigma.spans(&qb, &p("x1 x2^2", 2)).unwrap());
        let gl = gl_invariants_of(&qb).unwrap();
        assert_eq!(gl.dimension, 1);
        assert_eq!(gl.representatives[0], p("x2^3 + x1 x2^2 + x1^3", 2));
        for g in gl_generators(2) {
            let r = &gl.representatives[0];
            let moved = apply_substitution(&g, r).unwrap().add(r).unwrap();
            assert!(qb.reduce_class(&moved).unwrap().is_zero());
        }
    }

    #[test]
    fn report_json_fields() {
        let qb = admissible_basis(2, 3).unwrap();
        let v = gl_invariants_of(&qb).unwrap().to_json();
        assert_eq!(v["group"], "gl");
        assert_eq!(v["dimension"], 1);
        assert_eq!(v["weight"], serde_json::Value::Null);
        assert_eq!(v["representatives"][0], "x2^3 + x1 x2^2 + x1^3");
    }
}
