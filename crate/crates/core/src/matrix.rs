//! Dense arbitrary-precision integer matrices.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: alloc::vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row-major entries. Returns `None` if the entry
    /// count is not `rows * cols`.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<BigInt>) -> Option<Self> {
        (entries.len() == rows * cols).then_some(IntMatrix { rows, cols, entries })
    }

    /// Builds a matrix from nested rows of machine integers.
    ///
    /// Panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            entries.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix { rows: rows.len(), cols, entries }
    }

    /// Square diagonal matrix with the given diagonal.
    pub fn diagonal(diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    /// Permutation matrix `P` with `P[i][perm[i]] = 1`, so that
    /// `(P·M·Pᵀ)[i][j] = M[perm[i]][perm[j]]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let mut m = Self::zeros(perm.len(), perm.len());
        for (i, &p) in perm.iter().enumerate() {
            m[(i, p)] = BigInt::one();
        }
        m
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
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[BigInt]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Matrix product. Panics on a dimension mismatch.
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch in sum");
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch in difference");
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|a| a * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// True if every off-diagonal entry vanishes (rectangular diagonal).
    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// Panics if the matrix is not square.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    // exact by Sylvester's identity
                    a[(i, j)] = v.div_floor(&prev);
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries.iter().map(Signed::abs).max().unwrap_or_default()
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] -= q * row[src]`
    pub(crate) fn row_sub_mul(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.entries[src * self.cols + j];
            if !s.is_zero() {
                let d = q * s;
                self.entries[dst * self.cols + j] -= d;
            }
        }
    }

    /// `col[dst] -= q * col[src]`
    pub(crate) fn col_sub_mul(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.entries[i * self.cols + src];
            if !s.is_zero() {
                let d = q * s;
                self.entries[i * self.cols + dst] -= d;
            }
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let e = &mut self.entries[i * self.cols + j];
            *e = -core::mem::take(e);
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}", self.rows, self.cols)?;
        f.debug_list().entries(self.iter_rows()).finish()
    }
}

impl fmt::Display for IntMatrix {
    /// One bracketed row per line, entries right-aligned.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<alloc::string::String> = self.entries.iter().map(alloc::string::ToString::to_string).collect();
        let width = strs.iter().map(|s| s.len()).max().unwrap_or(0);
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{:>width$}", strs[i * self.cols + j], width = width)?;
            }
            f.write_str("]")?;
            if i + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_matches_small_cases() {
        assert_eq!(IntMatrix::from_rows(&[[2, 0], [0, 3]]).determinant(), BigInt::from(6));
        assert_eq!(IntMatrix::from_rows(&[[0, 1], [1, 0]]).determinant(), BigInt::from(-1));
        assert_eq!(IntMatrix::from_rows(&[[1, 2, 3], [4, 5, 6], [7, 8, 9]]).determinant(), BigInt::zero());
        assert_eq!(IntMatrix::from_rows(&[[-9, 3], [-3, 0]]).determinant(), BigInt::from(9));
        assert_eq!(IntMatrix::identity(0).determinant(), BigInt::one());
    }

    #[test]
    fn permutation_conjugation_relabels() {
        let m = IntMatrix::from_rows(&[[1, 2, 3], [4, 5, 6], [7, 8, 9]]);
        let perm = [2, 0, 1];
        let p = IntMatrix::permutation(&perm);
        let c = p.mul(&m).mul(&p.transpose());
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(c[(i, j)], m[(perm[i], perm[j])]);
            }
        }
    }

    #[test]
    fn display_aligns() {
        let m = IntMatrix::from_rows(&[[-2, 1], [-1, -1]]);
        assert_eq!(alloc::format!("{m}"), "[-2  1]\n[-1 -1]");
    }
}
