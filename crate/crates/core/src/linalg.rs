//! Bit-packed linear algebra over F2.
//!
//! [`EchelonSpace`] keeps a subspace of `F2^N` in fully reduced row-echelon
//! form with the highest set bit of each row as its pivot. Callers map larger
//! monomials to higher coordinates, so pivots are exactly the inadmissible
//! monomials.

use std::fmt;

use crate::error::{Error, Result};

const NO_ROW: u32 = u32::MAX;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = BitVector::zeros(len);
        v.set(i, true);
        v
    }

    /// Sets the given coordinates; repeated indices cancel.
    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = BitVector::zeros(len);
        for i in indices {
            v.flip(i);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        BitVector::from_indices(bits.len(), bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn highest_set_bit(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn dot(&self, other: &BitVector) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    /// Hex digits, four bits per digit, lowest coordinates first and
    /// least significant within a digit.
    pub fn to_hex(&self) -> String {
        const DIGITS: &[u8; 16] = b"0123456789abcdef";
        let n = self.len.div_ceil(4);
        let mut s = String::with_capacity(n);
        for i in 0..n {
            let nib = (self.words[i / 16] >> ((i % 16) * 4)) & 0xf;
            s.push(DIGITS[nib as usize] as char);
        }
        s
    }

    pub fn from_hex(len: usize, hex: &str) -> Result<Self> {
        if hex.len() != len.div_ceil(4) {
            return Err(Error::Parse(format!(
                "hex string of length {} cannot hold {len} bits",
                hex.len()
            )));
        }
        let mut v = BitVector::zeros(len);
        for (i, c) in hex.chars().enumerate() {
            let nib = c
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("bad hex digit {c:?}")))? as u64;
            v.words[i / 16] |= nib << ((i % 16) * 4);
        }
        if !len.is_multiple_of(64) && v.words.last().is_some_and(|w| w >> (len % 64) != 0) {
            return Err(Error::Parse("hex string sets bits beyond the length".into()));
        }
        Ok(v)
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        write!(f, "BitVector({bits})")
    }
}

fn check_len(expected: usize, v: &BitVector) -> Result<()> {
    if v.len() != expected {
        return Err(Error::Length {
            expected,
            found: v.len(),
        });
    }
    Ok(())
}

/// A subspace of `F2^N` in reduced row-echelon form, pivoting on the highest
/// set bit of each row.
#[derive(Clone, Debug)]
pub struct EchelonSpace {
    dim: usize,
    rows: Vec<BitVector>,
    pivot_cols: Vec<usize>,
    row_of: Vec<u32>,
    pivot_mask: BitVector,
}

impl EchelonSpace {
    pub fn new(dim: usize) -> Self {
        EchelonSpace {
            dim,
            rows: Vec::new(),
            pivot_cols: Vec::new(),
            row_of: vec![NO_ROW; dim],
            pivot_mask: BitVector::zeros(dim),
        }
    }

    /// The ambient dimension `N`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.row_of[col] != NO_ROW
    }

    pub fn pivot_row(&self, col: usize) -> Option<&BitVector> {
        match self.row_of[col] {
            NO_ROW => None,
            r => Some(&self.rows[r as usize]),
        }
    }

    /// Pivot columns in ascending order.
    pub fn pivots(&self) -> Vec<usize> {
        self.pivot_mask.iter_ones().collect()
    }

    /// Columns that are not pivots, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.dim).filter(|&c| !self.is_pivot(c)).collect()
    }

    /// `(pivot, row)` pairs in ascending pivot order.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &BitVector)> + '_ {
        self.pivot_mask
            .iter_ones()
            .map(move |c| (c, &self.rows[self.row_of[c] as usize]))
    }

    fn reduce_in_place(&self, v: &mut BitVector) {
        // Rows are fully reduced, so clearing one pivot never disturbs another:
        // the pivots to use can be read off v before any row is added.
        for w in 0..v.words.len() {
            let mut hits = v.words[w] & self.pivot_mask.words[w];
            while hits != 0 {
                let c = w * 64 + hits.trailing_zeros() as usize;
                hits &= hits - 1;
                v.xor_assign(&self.rows[self.row_of[c] as usize]);
            }
        }
    }

    /// The unique residual of `v` with zeros in every pivot coordinate.
    pub fn reduce_vector(&self, v: &BitVector) -> Result<BitVector> {
        check_len(self.dim, v)?;
        let mut out = v.clone();
        self.reduce_in_place(&mut out);
        Ok(out)
    }

    pub fn contains(&self, v: &BitVector) -> Result<bool> {
        Ok(self.reduce_vector(v)?.is_zero())
    }

    /// Adds `v` to the space. Returns true iff the rank grew.
    pub fn insert(&mut self, v: &BitVector) -> Result<bool> {
        check_len(self.dim, v)?;
        let mut row = v.clone();
        self.reduce_in_place(&mut row);
        let Some(col) = row.highest_set_bit() else {
            return Ok(false);
        };
        // only rows with a higher pivot can carry a bit at col
        for (r, existing) in self.rows.iter_mut().enumerate() {
            if self.pivot_cols[r] > col && existing.get(col) {
                existing.xor_assign(&row);
            }
        }
        self.row_of[col] = self.rows.len() as u32;
        self.pivot_cols.push(col);
        self.pivot_mask.set(col, true);
        self.rows.push(row);
        Ok(true)
    }

    /// Inserts the vector with ones at `indices`.
    pub fn insert_indices(&mut self, indices: impl IntoIterator<Item = usize>) -> Result<bool> {
        let v = BitVector::from_indices(self.dim, indices);
        self.insert(&v)
    }

    /// Dimension of the quotient `F2^N / space`.
    pub fn corank(&self) -> usize {
        self.dim - self.rank()
    }
}

/// Two echelon spaces are equal iff they span the same subspace; the reduced
/// form is unique, so this compares pivots and rows.
impl PartialEq for EchelonSpace {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.pivot_mask == other.pivot_mask
            && self.rows().zip(other.rows()).all(|(a, b)| a == b)
    }
}

impl Eq for EchelonSpace {}

/// A dense matrix over F2 stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Matrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl F2Matrix {
    pub fn new(cols: usize) -> Self {
        F2Matrix {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        F2Matrix {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        F2Matrix {
            cols: n,
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        for r in &rows {
            check_len(cols, r)?;
        }
        Ok(F2Matrix { cols, rows })
    }

    /// Builds the `nrows x columns.len()` matrix with the given columns.
    pub fn from_columns(nrows: usize, columns: &[BitVector]) -> Result<Self> {
        let mut m = F2Matrix::zero(nrows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            check_len(nrows, c)?;
            for i in c.iter_ones() {
                m.rows[i].set(j, true);
            }
        }
        Ok(m)
    }

    pub fn push_row(&mut self, row: BitVector) -> Result<()> {
        check_len(self.cols, &row)?;
        self.rows.push(row);
        Ok(())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn column(&self, j: usize) -> BitVector {
        BitVector::from_indices(
            self.rows.len(),
            self.rows.iter().enumerate().filter(|(_, r)| r.get(j)).map(|(i, _)| i),
        )
    }

    pub fn add(&self, other: &F2Matrix) -> Result<F2Matrix> {
        if self.cols != other.cols || self.rows.len() != other.rows.len() {
            return Err(Error::Invalid(format!(
                "cannot add a {}x{} matrix to a {}x{} matrix",
                other.rows.len(),
                other.cols,
                self.rows.len(),
                self.cols
            )));
        }
        Ok(F2Matrix {
            cols: self.cols,
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a.xor(b)).collect(),
        })
    }

    pub fn mul_vec(&self, x: &BitVector) -> Result<BitVector> {
        check_len(self.cols, x)?;
        Ok(BitVector::from_bools(
            &self.rows.iter().map(|r| r.dot(x)).collect::<Vec<_>>(),
        ))
    }

    pub fn mul(&self, other: &F2Matrix) -> Result<F2Matrix> {
        if self.cols != other.nrows() {
            return Err(Error::Invalid("inner dimensions differ".into()));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = BitVector::zeros(other.cols);
                for i in r.iter_ones() {
                    out.xor_assign(&other.rows[i]);
                }
                out
            })
            .collect();
        Ok(F2Matrix {
            cols: other.cols,
            rows,
        })
    }

    pub fn row_space(&self) -> EchelonSpace {
        let mut space = EchelonSpace::new(self.cols);
        for r in &self.rows {
            space.insert(r).expect("rows have the matrix width");
        }
        space
    }

    pub fn rank(&self) -> usize {
        self.row_space().rank()
    }
}

/// A basis of `{x : Mx = 0}`, one vector per non-pivot column of the row space.
pub fn kernel(m: &F2Matrix) -> Vec<BitVector> {
    let space = m.row_space();
    space
        .free_columns()
        .into_iter()
        .map(|f| {
            let mut x = BitVector::unit(m.cols, f);
            for (p, row) in space.rows() {
                if row.get(f) {
                    x.set(p, true);
                }
            }
            x
        })
        .collect()
}

/// Vertical concatenation; its kernel is the intersection of the kernels.
pub fn stack(ms: &[F2Matrix]) -> Result<F2Matrix> {
    let Some(first) = ms.first() else {
        return Err(Error::Invalid("cannot stack an empty list of matrices".into()));
    };
    let mut out = F2Matrix::new(first.cols);
    for m in ms {
        if m.cols != first.cols {
            return Err(Error::Invalid(format!(
                "column counts differ: {} vs {}",
                first.cols, m.cols
            )));
        }
        out.rows.extend(m.rows.iter().cloned());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> BitVector {
        BitVector::unit(n, i)
    }

    #[test]
    fn insert_examples() {
        let mut s = EchelonSpace::new(5);
        assert!(!s.insert(&BitVector::zeros(5)).unwrap());
        assert!(s.insert(&e(5, 3)).unwrap());
        assert!(!s.insert(&e(5, 3)).unwrap());
        assert_eq!(s.rank(), 1);
        assert_eq!(
            s.insert(&BitVector::zeros(4)),
            Err(Error::Length { expected: 5, found: 4 })
        );
    }

    #[test]
    fn reduce_examples() {
        let mut s = EchelonSpace::new(4);
        assert!(s.reduce_vector(&BitVector::zeros(4)).unwrap().is_zero());
        let v = BitVector::from_indices(4, [1, 2]);
        s.insert(&v).unwrap();
        assert!(s.reduce_vector(&v).unwrap().is_zero());
        // pivot is the higher coordinate, so e2 reduces to e1
        assert_eq!(s.reduce_vector(&e(4, 2)).unwrap(), e(4, 1));
        assert!(s.contains(&v).unwrap());
        assert!(!EchelonSpace::new(4).contains(&e(4, 1)).unwrap());
        assert!(s.contains(&BitVector::zeros(3)).is_err());
    }

    #[test]
    fn rows_stay_fully_reduced() {
        let mut s = EchelonSpace::new(6);
        s.insert_indices([5, 2]).unwrap();
        s.insert_indices([2, 0]).unwrap();
        s.insert_indices([4, 2, 1]).unwrap();
        let pivots = s.pivots();
        for (p, row) in s.rows() {
            assert_eq!(row.highest_set_bit(), Some(p));
            for &q in &pivots {
                if q != p {
                    assert!(!row.get(q), "row {p} has pivot bit {q}");
                }
            }
        }
    }

    #[test]
    fn hex_roundtrip() {
        let v = BitVector::from_indices(70, [0, 3, 4, 63, 64, 69]);
        let h = v.to_hex();
        assert_eq!(h.len(), 18);
        assert_eq!(BitVector::from_hex(70, &h).unwrap(), v);
        assert!(BitVector::from_hex(70, "zz").is_err());
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&F2Matrix::identity(5)).is_empty());
        let k = kernel(&F2Matrix::zero(3, 4));
        assert_eq!(k.len(), 4);
        let m = stack(&[F2Matrix::identity(3), F2Matrix::zero(2, 3)]).unwrap();
        assert!(kernel(&m).is_empty());
        assert_eq!(stack(&[F2Matrix::identity(3)]).unwrap(), F2Matrix::identity(3));
        assert!(stack(&[F2Matrix::identity(3), F2Matrix::identity(2)]).is_err());
    }

    #[test]
    fn from_columns_matches_column() {
        let cols = vec![
            BitVector::from_indices(3, [0, 2]),
            BitVector::from_indices(3, [1]),
        ];
        let m = F2Matrix::from_columns(3, &cols).unwrap();
        assert_eq!(m.nrows(), 3);
        assert_eq!(m.column(0), cols[0]);
        assert_eq!(m.column(1), cols[1]);
        assert_eq!(m.mul_vec(&BitVector::from_indices(2, [0, 1])).unwrap(), BitVector::from_indices(3, [0, 1, 2]));
    }
}
