//! Endomorphism classes `[(Rᵈ, f)] − [(Rᵈ, 0)]` as square matrices, with the
//! map to W(R) given by `det(I − f t)`.

use alloc::vec::Vec;

use num_rational::BigRational;

use super::ring::{CoefficientRing, Elem};
use super::{WittError, WittVector};
use crate::matrix::IntMatrix;

/// Dense square matrix with entries in a [`CoefficientRing`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingMatrix {
    ring: CoefficientRing,
    dim: usize,
    entries: Vec<Elem>,
}

impl RingMatrix {
    pub fn zeros(ring: CoefficientRing, dim: usize) -> Self {
        let entries = alloc::vec![ring.zero(); dim * dim];
        RingMatrix { ring, dim, entries }
    }

    pub fn identity(ring: CoefficientRing, dim: usize) -> Self {
        let mut m = Self::zeros(ring, dim);
        for i in 0..dim {
            m.entries[i * dim + i] = m.ring.one();
        }
        m
    }

    /// Row-major entries, each validated against `ring`.
    pub fn from_entries(ring: CoefficientRing, dim: usize, entries: Vec<Elem>) -> Result<Self, WittError> {
        if entries.len() != dim * dim {
            return Err(WittError::DimensionMismatch { left: dim * dim, right: entries.len() });
        }
        let entries = entries.into_iter().map(|e| ring.element(e)).collect::<Result<_, _>>()?;
        Ok(RingMatrix { ring, dim, entries })
    }

    pub fn from_int_matrix(ring: CoefficientRing, m: &IntMatrix) -> Result<Self, WittError> {
        if !m.is_square() {
            return Err(WittError::NotSquare { rows: m.rows(), cols: m.cols() });
        }
        let entries = m.entries().iter().map(|x| BigRational::from_integer(x.clone())).collect();
        Self::from_entries(ring, m.rows(), entries)
    }

    pub fn ring(&self) -> &CoefficientRing {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.entries[i * self.dim + j]
    }

    fn set(&mut self, i: usize, j: usize, x: Elem) {
        self.entries[i * self.dim + j] = x;
    }

    fn check(&self, other: &RingMatrix) -> Result<(), WittError> {
        if self.ring != other.ring {
            return Err(WittError::RingMismatch { left: self.ring.clone(), right: other.ring.clone() });
        }
        Ok(())
    }

    pub fn mul(&self, other: &RingMatrix) -> Result<RingMatrix, WittError> {
        self.check(other)?;
        if self.dim != other.dim {
            return Err(WittError::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let n = self.dim;
        let r = &self.ring;
        let mut out = Self::zeros(r.clone(), n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if num_traits::Zero::is_zero(a) {
                    continue;
                }
                for j in 0..n {
                    let v = r.add(out.get(i, j), &r.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> RingMatrix {
        let mut base = self.clone();
        let mut acc = Self::identity(self.ring.clone(), self.dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same shape");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same shape");
            }
        }
        acc
    }

    pub fn trace(&self) -> Elem {
        (0..self.dim).fold(self.ring.zero(), |acc, i| self.ring.add(&acc, self.get(i, i)))
    }

    /// `self ⊕ other`.
    pub fn block_diag(&self, other: &RingMatrix) -> Result<RingMatrix, WittError> {
        self.check(other)?;
        let (a, b) = (self.dim, other.dim);
        let mut out = Self::zeros(self.ring.clone(), a + b);
        for i in 0..a {
            for j in 0..a {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..b {
            for j in 0..b {
                out.set(a + i, a + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &RingMatrix) -> Result<RingMatrix, WittError> {
        self.check(other)?;
        let (a, b) = (self.dim, other.dim);
        let r = &self.ring;
        let mut out = Self::zeros(r.clone(), a * b);
        for i in 0..a {
            for j in 0..a {
                for k in 0..b {
                    for l in 0..b {
                        out.set(i * b + k, j * b + l, r.mul(self.get(i, j), other.get(k, l)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Coefficients `[1, c₁, …, c_d]` of `det(I − M t)`, by Berkowitz's
    /// division-free recursion over leading principal submatrices.
    pub fn charpoly_rev(&self) -> Vec<Elem> {
        let r = &self.ring;
        let mut p: Vec<Elem> = alloc::vec![r.one()];
        for k in 0..self.dim {
            // A_{k+1} = [[A_k, c], [row, a]]
            let a = self.get(k, k);
            let mut col: Vec<Elem> = (0..k).map(|i| self.get(i, k).clone()).collect();
            let mut items = alloc::vec![r.one(), r.neg(a)];
            for _ in 0..k {
                let dot = (0..k).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(self.get(k, j), &col[j])));
                items.push(r.neg(&dot));
                col = (0..k)
                    .map(|i| (0..k).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(self.get(i, j), &col[j]))))
                    .collect();
            }
            // lower-triangular Toeplitz product, (k+2)×(k+1)
            let mut next = alloc::vec![r.zero(); k + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, pj) in p.iter().enumerate().take(i + 1) {
                    *slot = r.add(slot, &r.mul(&items[i - j], pj));
                }
            }
            p = next;
        }
        p
    }
}

/// The `n × n` matrix with `corner` in the top-right entry and `sub` on the
/// subdiagonal. Its reversed characteristic polynomial is
/// `1 − corner·subⁿ⁻¹·tⁿ`.
pub fn weighted_shift(ring: &CoefficientRing, corner: &Elem, sub: &Elem, n: usize) -> Result<RingMatrix, WittError> {
    if n == 0 {
        return Err(WittError::ZeroIndex);
    }
    let mut m = RingMatrix::zeros(ring.clone(), n);
    for i in 1..n {
        m.set(i, i - 1, ring.element(sub.clone())?);
    }
    let c = ring.element(corner.clone())?;
    if n == 1 {
        m.set(0, 0, c);
    } else {
        m.set(0, n - 1, c);
    }
    Ok(m)
}

/// The class of an endomorphism of a free module, with its reversed
/// characteristic polynomial cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndClass {
    matrix: RingMatrix,
    charpoly_rev: Vec<Elem>,
}

impl EndClass {
    pub fn from_matrix(matrix: RingMatrix) -> Self {
        let charpoly_rev = matrix.charpoly_rev();
        EndClass { matrix, charpoly_rev }
    }

    pub fn from_int_matrix(ring: CoefficientRing, m: &IntMatrix) -> Result<Self, WittError> {
        Ok(Self::from_matrix(RingMatrix::from_int_matrix(ring, m)?))
    }

    /// The 1×1 class `(R, a)`.
    pub fn scalar(ring: CoefficientRing, a: Elem) -> Result<Self, WittError> {
        Ok(Self::from_matrix(RingMatrix::from_entries(ring, 1, alloc::vec![a])?))
    }

    pub fn ring(&self) -> &CoefficientRing {
        &self.matrix.ring
    }

    pub fn matrix(&self) -> &RingMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim
    }

    /// `[1, c₁, …, c_d]` with `det(I − f t) = Σ cᵢ tⁱ`.
    pub fn charpoly_rev(&self) -> &[Elem] {
        &self.charpoly_rev
    }

    /// Direct sum.
    pub fn add(&self, other: &EndClass) -> Result<EndClass, WittError> {
        Ok(Self::from_matrix(self.matrix.block_diag(&other.matrix)?))
    }

    /// Tensor product.
    pub fn mul(&self, other: &EndClass) -> Result<EndClass, WittError> {
        Ok(Self::from_matrix(self.matrix.kron(&other.matrix)?))
    }

    /// `(M, f) ↦ (M, fⁿ)`.
    pub fn frobenius(&self, n: usize) -> Result<EndClass, WittError> {
        if n == 0 {
            return Err(WittError::ZeroIndex);
        }
        Ok(Self::from_matrix(self.matrix.pow(n as u64)))
    }

    /// `(M, f) ↦ (M^{⊕n}, g)` where `g` has `f` in the top-right block and
    /// identity blocks on the block subdiagonal.
    pub fn verschiebung(&self, n: usize) -> Result<EndClass, WittError> {
        if n == 0 {
            return Err(WittError::ZeroIndex);
        }
        let d = self.dim();
        let ring = self.ring().clone();
        let mut g = RingMatrix::zeros(ring.clone(), n * d);
        for i in 0..d {
            for j in 0..d {
                g.set(i, (n - 1) * d + j, self.matrix.get(i, j).clone());
            }
        }
        for b in 1..n {
            for i in 0..d {
                g.set(b * d + i, (b - 1) * d + i, ring.one());
            }
        }
        Ok(Self::from_matrix(g))
    }

    /// `det(I − f t)` as a Witt vector truncated at `m`.
    pub fn almkvist(&self, m: usize) -> Result<WittVector, WittError> {
        let ring = self.ring().clone();
        let coeffs = (1..=m).map(|k| self.charpoly_rev.get(k).cloned().unwrap_or_else(|| ring.zero())).collect();
        WittVector::new(ring, coeffs)
    }
}
