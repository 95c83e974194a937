//! Scalars and dense matrices over a prime field GF(p).
//!
//! Entries are stored as residues in `[0, p)` with `p < 2^16`, so a product
//! of two entries fits in a `u32` and a dot product of a few hundred terms fits
//! in a `u64` before reduction.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// The prime field GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..(1 << 16)).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "zero has no inverse in GF({})", self.p);
        self.pow(a, (self.p - 2) as u64)
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

/// Trial division; adequate below 2^16.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A dense row-major matrix over GF(p).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Affine solution set of `A X = B`: `X = particular + span(kernel)` column by column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSpace {
    pub particular: FpMatrix,
    pub kernel: Vec<Vec<u32>>,
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row-major entries, reducing each modulo p.
    pub fn from_entries(field: PrimeField, rows: usize, cols: usize, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        let data = entries.into_iter().map(|e| field.reduce(e)).collect();
        Ok(FpMatrix { field, rows, cols, data })
    }

    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::from_entries(field, rows.len(), cols, rows.concat())
    }

    /// A matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u32>]) -> Result<Self> {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Dimension(format!(
                    "column {} has length {}, expected {}",
                    j,
                    col.len(),
                    rows
                )));
            }
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v % field.characteristic());
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        debug_assert!(v < self.field.characteristic());
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn check_field(&self, other: &FpMatrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.characteristic(),
                other.field.characteristic(),
            ));
        }
        Ok(())
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.field.characteristic() as u64;
        let mut out = FpMatrix::zeros(self.field, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    *slot += a * other.data[k * other.cols + j] as u64;
                }
                // keep headroom: reduce every so often
                if k % 4096 == 4095 {
                    acc.iter_mut().for_each(|a| *a %= p);
                }
            }
            for (j, a) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = (a % p) as u32;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let p = self.field.characteristic() as u64;
        Ok((0..self.rows)
            .map(|i| {
                let s: u64 = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum();
                (s % p) as u32
            })
            .collect())
    }

    fn check_same_shape(&self, other: &FpMatrix) -> Result<()> {
        self.check_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_same_shape(other)?;
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(self.with_data(data))
    }

    pub fn sub(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_same_shape(other)?;
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(self.with_data(data))
    }

    fn with_data(&self, data: Vec<u32>) -> FpMatrix {
        FpMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        let f = self.field;
        let c = c % f.characteristic();
        self.with_data(self.data.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn neg(&self) -> FpMatrix {
        let f = self.field;
        self.with_data(self.data.iter().map(|&a| f.neg(a)).collect())
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Kronecker product; row index `(i, k)` maps to `i * other.rows + k`.
    pub fn kron(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_field(other)?;
        let f = self.field;
        let mut out = FpMatrix::zeros(f, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, f.mul(a, other.get(k, l)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j));
            }
        }
        out
    }

    /// Places `self` and `other` on the diagonal of a block matrix.
    pub fn block_diag(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_field(other)?;
        let mut out = FpMatrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, self.cols, other);
        Ok(out)
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &FpMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j));
            }
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    ///
    /// Only the first `limit` columns are used as pivot candidates, the rest
    /// are carried along (an augmented block).
    fn rref_limited(&mut self, limit: usize) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit.min(self.cols) {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            if inv != 1 {
                for j in c..self.cols {
                    let v = self.get(r, j);
                    self.set(r, j, f.mul(v, inv));
                }
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_limited(m.cols);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{v : A v = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(row, free));
                }
                v
            })
            .collect()
    }

    /// All solutions of `self · X = b`, or `None` if some column is inconsistent.
    pub fn solve_space(&self, b: &FpMatrix) -> Result<Option<SolutionSpace>> {
        self.check_field(b)?;
        if self.rows != b.rows {
            return Err(Error::Dimension(format!(
                "system with {} rows against right-hand side with {} rows",
                self.rows, b.rows
            )));
        }
        let n = self.cols;
        let mut aug = FpMatrix::zeros(self.field, self.rows, n + b.cols);
        aug.paste(0, 0, self);
        aug.paste(0, n, b);
        let pivots = aug.rref_limited(n);
        for i in pivots.len()..self.rows {
            if (n..n + b.cols).any(|j| aug.get(i, j) != 0) {
                return Ok(None);
            }
        }
        let mut particular = FpMatrix::zeros(self.field, n, b.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                particular.set(pc, j, aug.get(row, n + j));
            }
        }
        Ok(Some(SolutionSpace {
            particular,
            kernel: self.kernel_basis(),
        }))
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    /// Multiplication by t on k[t]/(t^n) in the basis 1, t, ..., t^{n-1}.
    fn shift(field: PrimeField, n: usize) -> FpMatrix {
        let mut m = FpMatrix::zeros(field, n, n);
        for i in 0..n - 1 {
            m.set(i + 1, i, 1);
        }
        m
    }

    #[test]
    fn rejects_non_primes() {
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(15).is_err());
        assert!(PrimeField::new(65537).is_err());
        assert!(PrimeField::new(65521).is_ok());
    }

    #[test]
    fn identity_squared() {
        let i3 = FpMatrix::identity(gf(2), 3);
        assert_eq!(i3.mul(&i3).unwrap(), i3);
        assert_eq!(i3.rank(), 3);
        assert!(i3.kernel_basis().is_empty());
    }

    #[test]
    fn jordan_block_squared() {
        let f = gf(3);
        let t = shift(f, 3);
        let t2 = t.mul(&t).unwrap();
        let mut expected = FpMatrix::zeros(f, 3, 3);
        expected.set(2, 0, 1);
        assert_eq!(t2, expected);
        assert_eq!(t2.rank(), 1);
        assert_eq!(t.rank(), 2);
    }

    #[test]
    fn row_times_column_in_char_two() {
        let f = gf(2);
        let r = FpMatrix::from_rows(f, &[vec![1, 1]]).unwrap();
        let c = r.transpose();
        assert_eq!(r.mul(&c).unwrap(), FpMatrix::zeros(f, 1, 1));
    }

    #[test]
    fn zero_matrix_rank() {
        assert_eq!(FpMatrix::zeros(gf(5), 2, 5).rank(), 0);
    }

    #[test]
    fn augmentation_kernel() {
        let a = FpMatrix::from_rows(gf(2), &[vec![1, 1]]).unwrap();
        assert_eq!(a.kernel_basis(), vec![vec![1, 1]]);
    }

    #[test]
    fn jordan_five_kernel_is_top_degree() {
        let k = shift(gf(5), 5).kernel_basis();
        assert_eq!(k, vec![vec![0, 0, 0, 0, 1]]);
    }

    #[test]
    fn solve_identity() {
        let f = gf(7);
        let i2 = FpMatrix::identity(f, 2);
        let s = i2.solve_space(&i2).unwrap().unwrap();
        assert_eq!(s.particular, i2);
        assert!(s.kernel.is_empty());
    }

    #[test]
    fn solve_underdetermined() {
        let f = gf(2);
        let a = FpMatrix::from_rows(f, &[vec![1, 1]]).unwrap();
        let b = FpMatrix::from_rows(f, &[vec![1]]).unwrap();
        let s = a.solve_space(&b).unwrap().unwrap();
        assert_eq!(s.particular.column(0), vec![1, 0]);
        assert_eq!(s.kernel.len(), 1);
        // brute force: exactly two of the four vectors solve x + y = 1
        let count = (0..4u32)
            .filter(|v| a.mul_vec(&[v & 1, v >> 1]).unwrap() == vec![1])
            .count();
        assert_eq!(count, 1 << s.kernel.len());
    }

    #[test]
    fn solve_inconsistent() {
        let f = gf(3);
        let a = FpMatrix::zeros(f, 2, 2);
        let b = FpMatrix::from_rows(f, &[vec![1], vec![0]]).unwrap();
        assert!(a.solve_space(&b).unwrap().is_none());
    }

    #[test]
    fn dimension_and_field_errors() {
        let a = FpMatrix::zeros(gf(2), 2, 3);
        assert!(matches!(a.mul(&a), Err(Error::Dimension(_))));
        let b = FpMatrix::zeros(gf(3), 3, 2);
        assert!(matches!(a.mul(&b), Err(Error::FieldMismatch(2, 3))));
        assert!(a.solve_space(&FpMatrix::zeros(gf(2), 3, 1)).is_err());
    }

    #[test]
    fn kron_of_identities() {
        let f = gf(3);
        let k = FpMatrix::identity(f, 2).kron(&FpMatrix::identity(f, 3)).unwrap();
        assert_eq!(k, FpMatrix::identity(f, 6));
    }
}
