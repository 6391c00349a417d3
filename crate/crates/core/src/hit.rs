//! Hit subspaces and admissible-monomial bases of `QP_k` in a fixed degree.
//!
//! A monomial is admissible when it is not congruent, modulo hit elements,
//! to a sum of strictly smaller monomials. With monomials mapped to
//! coordinates in ascending order and the echelon form pivoting on the
//! highest coordinate, the admissible monomials are exactly the non-pivot
//! coordinates of the hit subspace.
//!
//! The squares never change which variables occur in a monomial, so the hit
//! subspace splits into one block per support set; each block is eliminated
//! on its own. [`hit_space`] keeps the direct route (every generator into one
//! space over all monomials) as a cross-check.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{BitVector, EchelonSpace};
use crate::poly::{enumerate_monomials, minimal_spike, mu, Monomial, MonomialOrder, Polynomial, WeightVector};
use crate::steenrod::{for_each_sq_term, hit_generators};

const NONE: u32 = u32::MAX;

/// The monomials of one `(k, d)`, ascending in an order, with their coordinates.
#[derive(Debug)]
pub struct MonomialIndex {
    k: usize,
    d: u32,
    order: MonomialOrder,
    monos: Vec<Monomial>,
    index: HashMap<Vec<u32>, u32>,
}

impl MonomialIndex {
    pub fn new(k: usize, d: u32, order: MonomialOrder) -> Self {
        let monos = enumerate_monomials(k, d, None, order);
        let index = monos
            .iter()
            .enumerate()
            .map(|(i, m)| (m.exponents().to_vec(), i as u32))
            .collect();
        MonomialIndex {
            k,
            d,
            order,
            monos,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monos
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m.exponents()).map(|&i| i as usize)
    }

    fn position_of(&self, exps: &[u32]) -> usize {
        self.index[exps] as usize
    }

    /// The coordinate vector of a homogeneous polynomial of this degree.
    pub fn vector(&self, f: &Polynomial) -> Result<BitVector> {
        if f.k() != self.k {
            return Err(Error::VariableCount {
                expected: self.k,
                found: f.k(),
            });
        }
        let mut v = BitVector::zeros(self.len());
        for m in f.terms() {
            let i = self.position(m).ok_or(Error::DegreeMismatch {
                expected: self.d,
                found: m.degree(),
            })?;
            v.flip(i);
        }
        Ok(v)
    }

    pub fn polynomial(&self, v: &BitVector) -> Polynomial {
        let mut f = Polynomial::zero(self.k);
        for i in v.iter_ones() {
            f.toggle(self.monos[i].clone());
        }
        f
    }
}

/// The echelon span of every `Sq^(2^s)(m)` of degree `d`, over the monomials
/// of `(k, d)` in weight-then-lex order.
pub fn hit_space(k: usize, d: u32) -> Result<EchelonSpace> {
    hit_space_in(&MonomialIndex::new(k, d, MonomialOrder::WeightLex))
}

pub fn hit_space_in(index: &MonomialIndex) -> Result<EchelonSpace> {
    let mut space = EchelonSpace::new(index.len());
    if index.d == 0 {
        return Ok(space);
    }
    for g in hit_generators(index.k, index.d)? {
        if !g.image.is_zero() {
            space.insert(&index.vector(&g.image)?)?;
        }
    }
    Ok(space)
}

/// The admissible basis of `(QP_k)_d` together with the reduction of every
/// monomial of the degree to admissible coordinates.
#[derive(Debug)]
pub struct FullBasis {
    index: MonomialIndex,
    admissible_cols: Vec<usize>,
    // per monomial coordinate: its class over the admissible list
    coords: Vec<BitVector>,
}

impl FullBasis {
    pub fn compute(k: usize, d: u32, order: MonomialOrder) -> Result<Self> {
        if k == 0 {
            return Err(Error::Invalid("k must be positive".into()));
        }
        let index = MonomialIndex::new(k, d, order);
        let n = index.len();
        if d == 0 {
            return Ok(FullBasis {
                index,
                admissible_cols: vec![0],
                coords: vec![BitVector::unit(1, 0)],
            });
        }

        // support blocks: monomials sharing the set of variables that occur
        let mut blocks: HashMap<u32, Vec<usize>> = HashMap::new();
        for (i, m) in index.monos.iter().enumerate() {
            blocks.entry(support_mask(m.exponents())).or_default().push(i);
        }
        let mut masks: Vec<u32> = blocks.keys().copied().collect();
        masks.sort_unstable();

        let mut local = vec![NONE; n];
        let mut spaces = Vec::with_capacity(masks.len());
        for &mask in &masks {
            let cols = &blocks[&mask];
            for (j, &c) in cols.iter().enumerate() {
                local[c] = j as u32;
            }
            let space = eliminate_block(&index, mask, cols.len(), &local)?;
            spaces.push(space);
        }

        let mut is_adm = vec![false; n];
        for (b, &mask) in masks.iter().enumerate() {
            for f in spaces[b].free_columns() {
                is_adm[blocks[&mask][f]] = true;
            }
        }
        let admissible_cols: Vec<usize> = (0..n).filter(|&c| is_adm[c]).collect();
        let mut adm_pos = vec![NONE; n];
        for (t, &c) in admissible_cols.iter().enumerate() {
            adm_pos[c] = t as u32;
        }
        let dim = admissible_cols.len();

        let mut coords = vec![BitVector::zeros(dim); n];
        for (b, &mask) in masks.iter().enumerate() {
            let cols = &blocks[&mask];
            for (p, row) in spaces[b].rows() {
                let v = &mut coords[cols[p]];
                for j in row.iter_ones() {
                    if j != p {
                        v.set(adm_pos[cols[j]] as usize, true);
                    }
                }
            }
        }
        for (t, &c) in admissible_cols.iter().enumerate() {
            coords[c].set(t, true);
        }
        Ok(FullBasis {
            index,
            admissible_cols,
            coords,
        })
    }

    /// Rebuilds a basis from stored parts, checking their consistency.
    pub(crate) fn from_parts(
        k: usize,
        d: u32,
        order: MonomialOrder,
        admissible: &[Monomial],
        rows: Vec<(usize, BitVector)>,
    ) -> Result<Self> {
        let index = MonomialIndex::new(k, d, order);
        let n = index.len();
        let dim = admissible.len();
        let mut admissible_cols = admissible
            .iter()
            .map(|m| {
                index
                    .position(m)
                    .ok_or_else(|| Error::Cache(format!("{m} is not a monomial of degree {d}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let sorted = admissible_cols.windows(2).all(|w| w[0] < w[1]);
        if !sorted {
            return Err(Error::Cache("admissible monomials are not strictly ascending".into()));
        }
        if rows.len() + dim != n {
            return Err(Error::Cache(format!(
                "{} relation rows and {dim} admissibles do not cover {n} monomials",
                rows.len()
            )));
        }
        let mut coords: Vec<Option<BitVector>> = vec![None; n];
        for (t, &c) in admissible_cols.iter().enumerate() {
            coords[c] = Some(BitVector::unit(dim, t));
        }
        for (p, v) in rows {
            if p >= n || coords[p].is_some() {
                return Err(Error::Cache(format!("relation row for coordinate {p} is invalid or repeated")));
            }
            if v.len() != dim {
                return Err(Error::Cache(format!("relation row for {p} has the wrong length")));
            }
            // a pivot row may only reach admissibles below its pivot
            if let Some(t) = v.highest_set_bit() {
                if admissible_cols[t] >= p {
                    return Err(Error::Cache(format!("relation row for {p} is not in echelon form")));
                }
            }
            coords[p] = Some(v);
        }
        let coords = coords
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Cache("missing relation rows".into()))?;
        admissible_cols.shrink_to_fit();
        Ok(FullBasis {
            index,
            admissible_cols,
            coords,
        })
    }

    pub fn k(&self) -> usize {
        self.index.k
    }

    pub fn d(&self) -> u32 {
        self.index.d
    }

    pub fn order(&self) -> MonomialOrder {
        self.index.order
    }

    pub fn index(&self) -> &MonomialIndex {
        &self.index
    }

    pub fn dim(&self) -> usize {
        self.admissible_cols.len()
    }

    pub fn admissible_cols(&self) -> &[usize] {
        &self.admissible_cols
    }

    /// Class of the monomial at coordinate `col`, over all admissibles.
    pub fn coords_of(&self, col: usize) -> &BitVector {
        &self.coords[col]
    }

    /// Pivot rows in compact form: `(pivot, admissible coordinates)`.
    pub(crate) fn relation_rows(&self) -> impl Iterator<Item = (usize, &BitVector)> + '_ {
        let adm: std::collections::HashSet<usize> = self.admissible_cols.iter().copied().collect();
        (0..self.index.len())
            .filter(move |c| !adm.contains(c))
            .map(move |c| (c, &self.coords[c]))
    }
}

fn support_mask(exps: &[u32]) -> u32 {
    exps.iter()
        .enumerate()
        .filter(|(_, &a)| a > 0)
        .fold(0, |m, (i, _)| m | 1 << i)
}

fn eliminate_block(index: &MonomialIndex, mask: u32, size: usize, local: &[u32]) -> Result<EchelonSpace> {
    let k = index.k;
    let d = index.d;
    let vars: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
    let mut gens: Vec<Vec<u32>> = Vec::new();
    let mut src = vec![0u32; k];
    let mut s = 0;
    while (1u32 << s) <= d {
        let j = 1u32 << s;
        let rest = d - j;
        s += 1;
        if (rest as usize) < vars.len() {
            continue;
        }
        // sources with exactly this support: every listed variable gets >= 1
        let free = rest - vars.len() as u32;
        for_each_composition(vars.len(), free, &mut |parts| {
            for (&v, &p) in vars.iter().zip(parts) {
                src[v] = p + 1;
            }
            let mut cols = Vec::new();
            for_each_sq_term(j, &src, &mut |e| {
                cols.push(local[index.position_of(e)]);
            });
            if !cols.is_empty() {
                gens.push(cols);
            }
        });
    }
    // ascending leading coordinate keeps new pivots mostly above the old ones
    for g in &mut gens {
        g.sort_unstable();
    }
    gens.sort_by(|a, b| a.last().cmp(&b.last()).then(a.len().cmp(&b.len())));
    let mut space = EchelonSpace::new(size);
    for g in gens {
        space.insert_indices(g.into_iter().map(|c| c as usize))?;
        if space.rank() == size {
            break;
        }
    }
    Ok(space)
}

fn for_each_composition(parts: usize, total: u32, f: &mut impl FnMut(&[u32])) {
    fn rec(cur: &mut Vec<u32>, parts: usize, rest: u32, f: &mut impl FnMut(&[u32])) {
        if cur.len() + 1 == parts {
            cur.push(rest);
            f(cur);
            cur.pop();
            return;
        }
        for a in 0..=rest {
            cur.push(a);
            rec(cur, parts, rest - a, f);
            cur.pop();
        }
    }
    if parts == 0 {
        if total == 0 {
            f(&[]);
        }
        return;
    }
    rec(&mut Vec::with_capacity(parts), parts, total, f);
}

/// Coefficients of a class over the admissible monomials of a basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassCoordinates {
    bits: BitVector,
}

impl ClassCoordinates {
    pub fn bits(&self) -> &BitVector {
        &self.bits
    }

    pub fn into_bits(self) -> BitVector {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }

    /// Indices of the admissible monomials with coefficient one.
    pub fn support(&self) -> Vec<usize> {
        self.bits.iter_ones().collect()
    }
}

/// An ordered admissible basis of `(QP_k)_d`, or of the weight subquotient
/// `QP_k(w)` when a weight is set.
///
/// For a weight `w` the relations are the hit elements plus every monomial
/// of weight strictly below `w`, and the basis consists of the admissible
/// monomials of weight exactly `w`.
#[derive(Clone, Debug)]
pub struct QuotientBasis {
    full: Arc<FullBasis>,
    weight: Option<WeightVector>,
    admissible: Vec<Monomial>,
    // full admissible index -> index in this basis
    proj: Vec<u32>,
    // coordinates of the monomials of weight exactly `weight`
    range: (usize, usize),
}

impl QuotientBasis {
    pub fn from_full(full: Arc<FullBasis>) -> Self {
        let admissible: Vec<Monomial> = full
            .admissible_cols
            .iter()
            .map(|&c| full.index.monos[c].clone())
            .collect();
        let proj = (0..admissible.len() as u32).collect();
        let range = (0, full.index.len());
        QuotientBasis {
            full,
            weight: None,
            admissible,
            proj,
            range,
        }
    }

    /// Restricts a full-degree basis to the subquotient of one weight.
    pub fn with_weight(full: Arc<FullBasis>, w: &WeightVector) -> Result<Self> {
        if w.degree() != full.d() {
            return Err(Error::DegreeMismatch {
                expected: full.d(),
                found: w.degree(),
            });
        }
        if full.order() != MonomialOrder::WeightLex {
            return Err(Error::Invalid(
                "weight subquotients need the weight-then-lex order".into(),
            ));
        }
        let monos = &full.index.monos;
        let lo = monos.partition_point(|m| m.weight_vector() < *w);
        let hi = monos.partition_point(|m| m.weight_vector() <= *w);
        let mut proj = vec![NONE; full.dim()];
        let mut admissible = Vec::new();
        for (t, &c) in full.admissible_cols.iter().enumerate() {
            if (lo..hi).contains(&c) {
                proj[t] = admissible.len() as u32;
                admissible.push(monos[c].clone());
            }
        }
        Ok(QuotientBasis {
            full,
            weight: Some(w.clone()),
            admissible,
            proj,
            range: (lo, hi),
        })
    }

    pub fn k(&self) -> usize {
        self.full.k()
    }

    pub fn d(&self) -> u32 {
        self.full.d()
    }

    pub fn weight(&self) -> Option<&WeightVector> {
        self.weight.as_ref()
    }

    pub fn order(&self) -> MonomialOrder {
        self.full.order()
    }

    pub fn full(&self) -> &Arc<FullBasis> {
        &self.full
    }

    pub fn admissible(&self) -> &[Monomial] {
        &self.admissible
    }

    pub fn dim(&self) -> usize {
        self.admissible.len()
    }

    /// The candidate monomials: all of the degree, or those of the weight.
    pub fn candidates(&self) -> &[Monomial] {
        &self.full.index.monos[self.range.0..self.range.1]
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.admissible.binary_search_by(|a| self.order().cmp_exps(a.exponents(), m.exponents())).ok()
    }

    fn project(&self, full: &BitVector) -> BitVector {
        if self.weight.is_none() {
            return full.clone();
        }
        BitVector::from_indices(
            self.dim(),
            full.iter_ones()
                .map(|t| self.proj[t])
                .filter(|&p| p != NONE)
                .map(|p| p as usize),
        )
    }

    /// Coordinates of `[f]` over the admissible list.
    pub fn reduce_class(&self, f: &Polynomial) -> Result<ClassCoordinates> {
        if f.k() != self.k() {
            return Err(Error::VariableCount {
                expected: self.k(),
                found: f.k(),
            });
        }
        let mut acc = BitVector::zeros(self.full.dim());
        for m in f.terms() {
            let col = self.full.index.position(m).ok_or(Error::DegreeMismatch {
                expected: self.d(),
                found: m.degree(),
            })?;
            if self.weight.is_some() {
                if col >= self.range.1 {
                    return Err(Error::WeightTooHigh {
                        monomial: m.to_string(),
                        weight: self.weight.as_ref().map(|w| w.to_string()).unwrap_or_default(),
                    });
                }
                if col < self.range.0 {
                    continue;
                }
            }
            acc.xor_assign(&self.full.coords[col]);
        }
        Ok(ClassCoordinates {
            bits: self.project(&acc),
        })
    }

    /// The polynomial `sum coords_t * admissible_t`.
    pub fn polynomial(&self, coords: &BitVector) -> Polynomial {
        let mut f = Polynomial::zero(self.k());
        for t in coords.iter_ones() {
            f.toggle(self.admissible[t].clone());
        }
        f
    }

    /// The relation space in reduced echelon form over all monomials of the
    /// degree. For a weight basis this includes every lower-weight monomial.
    pub fn relations(&self) -> EchelonSpace {
        let full = &self.full;
        let n = full.index.len();
        let mut space = EchelonSpace::new(n);
        let lower = if self.weight.is_some() { self.range.0 } else { 0 };
        for c in 0..lower {
            space.insert(&BitVector::unit(n, c)).expect("width matches");
        }
        for (p, v) in full.relation_rows() {
            if p < lower {
                continue;
            }
            let mut row = BitVector::unit(n, p);
            for t in v.iter_ones() {
                let c = full.admissible_cols[t];
                if c >= lower {
                    row.set(c, true);
                }
            }
            space.insert(&row).expect("width matches");
        }
        space
    }

    /// Splits the admissibles into those with a zero exponent (B0) and those
    /// divisible by every variable (B+).
    pub fn split_b0_plus(&self) -> (Vec<Monomial>, Vec<Monomial>) {
        self.admissible.iter().cloned().partition(|m| !m.is_full_support())
    }
}

pub fn admissible_basis(k: usize, d: u32) -> Result<QuotientBasis> {
    admissible_basis_with_order(k, d, MonomialOrder::WeightLex)
}

pub fn admissible_basis_with_order(k: usize, d: u32, order: MonomialOrder) -> Result<QuotientBasis> {
    Ok(QuotientBasis::from_full(Arc::new(FullBasis::compute(k, d, order)?)))
}

pub fn weight_quotient_basis(k: usize, d: u32, w: &WeightVector) -> Result<QuotientBasis> {
    if w.degree() != d {
        return Err(Error::DegreeMismatch {
            expected: d,
            found: w.degree(),
        });
    }
    QuotientBasis::with_weight(Arc::new(FullBasis::compute(k, d, MonomialOrder::WeightLex)?), w)
}

/// The weight vectors carried by the admissible monomials of a basis, ascending.
pub fn occurring_weights(qb: &QuotientBasis) -> Vec<WeightVector> {
    let mut ws: Vec<WeightVector> = qb.admissible().iter().map(Monomial::weight_vector).collect();
    ws.sort();
    ws.dedup();
    ws
}

/// Singer's criterion: a monomial whose weight is below that of the minimal
/// spike of its degree is hit. Only ever a prefilter.
pub fn singer_filter(m: &Monomial, k: usize) -> bool {
    let d = m.degree();
    if mu(d as u64) as usize > k {
        return false;
    }
    match minimal_spike(k, d) {
        Ok(spike) => m.weight_vector() < spike.weight_vector(),
        Err(_) => false,
    }
}
