//! Dense bit-packed linear algebra over the field with two elements.
//!
//! Rows are packed into `u64` words and elimination is done with word-level
//! XOR. Pivots are always chosen leftmost column first, so every basis this
//! module returns is a deterministic function of its input.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A vector over F₂ of fixed length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Vector {
    len: usize,
    words: Vec<u64>,
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        F2Vector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = F2Vector::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = F2Vector::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b & 1 == 1);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &F2Vector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn dot(&self, other: &F2Vector) -> bool {
        debug_assert_eq!(self.len, other.len);
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Vector[")?;
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        write!(f, "]")
    }
}

/// A dense `rows × cols` matrix over F₂, stored row-major with packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

/// Output of [`F2Matrix::row_reduce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReduction {
    pub rank: usize,
    /// Pivot columns in increasing order.
    pub pivots: Vec<usize>,
    /// One kernel vector per non-pivot column, in increasing column order.
    pub kernel_basis: Vec<F2Vector>,
    /// The original columns at the pivot positions.
    pub image_basis: Vec<F2Vector>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        F2Matrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = F2Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from nested rows of 0/1 entries. `cols` is needed so
    /// that `rows × 0` and `0 × cols` shapes survive.
    pub fn from_rows(rows: &[Vec<u8>], cols: usize) -> Result<Self> {
        let mut m = F2Matrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {r} has length {}, expected {cols}",
                    row.len()
                )));
            }
            for (c, &v) in row.iter().enumerate() {
                if v > 1 {
                    return Err(Error::Dimension(format!("entry ({r},{c}) = {v} is not 0 or 1")));
                }
                m.set(r, c, v == 1);
            }
        }
        Ok(m)
    }

    pub fn from_columns(rows: usize, columns: &[F2Vector]) -> Self {
        let mut m = F2Matrix::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for r in col.ones() {
                m.set(r, c, true);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let mask = 1u64 << (c % WORD);
        let w = &mut self.data[r * self.stride + c / WORD];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        let v = self.get(r, c);
        self.set(r, c, !v);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> F2Vector {
        F2Vector {
            len: self.cols,
            words: self.row_words(r).to_vec(),
        }
    }

    pub fn column(&self, c: usize) -> F2Vector {
        let mut v = F2Vector::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn columns(&self) -> Vec<F2Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|r| self.row(r).to_bits()).collect()
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    pub fn add(&self, other: &F2Matrix) -> Result<F2Matrix> {
        if self.shape() != other.shape() {
            return Err(Error::Dimension(format!(
                "cannot add {:?} and {:?} matrices",
                self.shape(),
                other.shape()
            )));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &F2Vector) -> Result<F2Vector> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "matrix has {} columns but vector has length {}",
                self.cols,
                v.len()
            )));
        }
        let mut out = F2Vector::zeros(self.rows);
        for r in 0..self.rows {
            let ones: u32 = self
                .row_words(r)
                .iter()
                .zip(&v.words)
                .map(|(a, b)| (a & b).count_ones())
                .sum();
            if ones % 2 == 1 {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &F2Matrix) -> Result<F2Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {:?} by {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let mut out = F2Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    let src = other.row_words(k).to_vec();
                    let dst = &mut out.data[r * out.stride..(r + 1) * out.stride];
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d ^= s;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &F2Matrix) -> Result<F2Matrix> {
        if self.rows != other.rows {
            return Err(Error::Dimension(format!(
                "cannot place {:?} beside {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let mut out = F2Matrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.set(r, c, true);
                }
            }
            for c in 0..other.cols {
                if other.get(r, c) {
                    out.set(r, self.cols + c, true);
                }
            }
        }
        Ok(out)
    }

    /// Brings a copy to reduced row echelon form; returns it with its pivot columns.
    fn rref(&self) -> (F2Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for c in 0..m.cols {
            if next_row == m.rows {
                break;
            }
            let Some(p) = (next_row..m.rows).find(|&r| m.get(r, c)) else {
                continue;
            };
            if p != next_row {
                for w in 0..m.stride {
                    m.data.swap(p * m.stride + w, next_row * m.stride + w);
                }
            }
            let pivot_row = m.row_words(next_row).to_vec();
            for r in 0..m.rows {
                if r != next_row && m.get(r, c) {
                    let dst = &mut m.data[r * m.stride..(r + 1) * m.stride];
                    for (d, s) in dst.iter_mut().zip(&pivot_row) {
                        *d ^= s;
                    }
                }
            }
            pivots.push(c);
            next_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn row_reduce(&self) -> RowReduction {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let kernel_basis = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = F2Vector::unit(self.cols, free);
                for (row, &p) in pivots.iter().enumerate() {
                    if r.get(row, free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        let image_basis = pivots.iter().map(|&c| self.column(c)).collect();
        RowReduction {
            rank: pivots.len(),
            pivots,
            kernel_basis,
            image_basis,
        }
    }

    /// Canonical solution of `self · x = b`: free variables are zero.
    pub fn solve(&self, b: &F2Vector) -> Result<Option<F2Vector>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side has length {}, expected {}",
                b.len(),
                self.rows
            )));
        }
        let aug = self.hcat(&F2Matrix::from_columns(self.rows, std::slice::from_ref(b)))?;
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = F2Vector::zeros(self.cols);
        for (row, &p) in pivots.iter().enumerate() {
            if r.get(row, self.cols) {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", self.get(r, c) as u8)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Rank of the span of a list of vectors of common length `len`.
pub fn span_rank(len: usize, vectors: &[F2Vector]) -> usize {
    F2Matrix::from_columns(len, vectors).rank()
}

/// Whether every vector of `inner` lies in the span of `outer`.
pub fn span_contains(len: usize, outer: &[F2Vector], inner: &[F2Vector]) -> bool {
    if inner.is_empty() {
        return true;
    }
    let base = span_rank(len, outer);
    let mut all = outer.to_vec();
    all.extend_from_slice(inner);
    span_rank(len, &all) == base
}

/// A subspace `sub ⊆ F₂^dim` together with a complementary set of unit
/// vectors, giving coordinates on the quotient `F₂^dim / sub`.
#[derive(Clone, Debug)]
pub struct Quotient {
    dim: usize,
    sub_rank: usize,
    /// Columns: a basis of `sub` followed by the complement units.
    change: F2Matrix,
}

impl Quotient {
    pub fn new(dim: usize, sub: &[F2Vector]) -> Self {
        let red = F2Matrix::from_columns(dim, sub).row_reduce();
        let mut basis = red.image_basis.clone();
        let sub_rank = red.rank;
        // extend greedily by unit vectors, leftmost first
        for i in 0..dim {
            if basis.len() == dim {
                break;
            }
            let candidate = F2Vector::unit(dim, i);
            let mut trial = basis.clone();
            trial.push(candidate.clone());
            if span_rank(dim, &trial) == trial.len() {
                basis.push(candidate);
            }
        }
        Quotient {
            dim,
            sub_rank,
            change: F2Matrix::from_columns(dim, &basis),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn sub_dim(&self) -> usize {
        self.sub_rank
    }

    pub fn dim(&self) -> usize {
        self.dim - self.sub_rank
    }

    /// Representatives of the quotient basis in the ambient space.
    pub fn lifts(&self) -> Vec<F2Vector> {
        (self.sub_rank..self.dim).map(|c| self.change.column(c)).collect()
    }

    /// Coordinates of the class of `v` in the quotient basis.
    pub fn project(&self, v: &F2Vector) -> F2Vector {
        let full = self
            .change
            .solve(v)
            .expect("length checked by caller")
            .expect("change of basis is invertible");
        let mut out = F2Vector::zeros(self.dim());
        for i in 0..self.dim() {
            if full.get(self.sub_rank + i) {
                out.set(i, true);
            }
        }
        out
    }

    /// The map induced on quotients by `op: ambient(self) → ambient(target)`.
    /// The caller guarantees `op` carries the subspace of `self` into that of `target`.
    pub fn induced(&self, op: &F2Matrix, target: &Quotient) -> F2Matrix {
        let cols: Vec<F2Vector> = self
            .lifts()
            .iter()
            .map(|v| target.project(&op.mul_vec(v).expect("operator shape")))
            .collect();
        F2Matrix::from_columns(target.dim(), &cols)
    }
}
