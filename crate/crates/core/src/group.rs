//! Finitely generated abelian groups in invariant-factor normal form, and
//! kernels/cokernels of integer matrices over ℤ and ℤ/N.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::matrix::IntMatrix;
use crate::snf::{snf, LinalgError, SmithDecomposition};

/// `ℤ^free_rank ⊕ ℤ/d₁ ⊕ ⋯ ⊕ ℤ/d_k` with `2 ≤ d₁ | d₂ | ⋯ | d_k`.
///
/// The normal form is unique, so structural equality is isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FinAbGroup {
    free_rank: usize,
    torsion: Vec<BigUint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupOrder {
    Finite(BigUint),
    Infinite,
}

impl GroupOrder {
    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            GroupOrder::Finite(n) => Some(n),
            GroupOrder::Infinite => None,
        }
    }
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupOrder::Finite(n) => write!(f, "{n}"),
            GroupOrder::Infinite => f.write_str("infinite"),
        }
    }
}

impl FinAbGroup {
    pub const fn trivial() -> Self {
        FinAbGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// ℤ/n; `n = 0` gives ℤ and `n = 1` the trivial group.
    pub fn cyclic(n: impl Into<BigUint>) -> Self {
        Self::from_cyclic_factors(0, [n.into()])
    }

    /// Direct sum of `ℤ^free_rank` and the cyclic groups `ℤ/nᵢ`, brought into
    /// normal form. Orders of 0 are read as ℤ and orders of 1 are dropped.
    pub fn from_cyclic_factors(free_rank: usize, orders: impl IntoIterator<Item = BigUint>) -> Self {
        let mut free_rank = free_rank;
        let mut fs: Vec<BigUint> = Vec::new();
        for n in orders {
            if n.is_zero() {
                free_rank += 1;
            } else if !n.is_one() {
                fs.push(n);
            }
        }
        // pairwise (gcd, lcm) sweep leaves a divisibility chain
        for i in 0..fs.len() {
            for j in i + 1..fs.len() {
                let g = fs[i].gcd(&fs[j]);
                let l = &fs[i] / &g * &fs[j];
                fs[i] = g;
                fs[j] = l;
            }
        }
        fs.retain(|d| !d.is_one());
        FinAbGroup { free_rank, torsion: fs }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigUint] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> GroupOrder {
        if self.free_rank > 0 {
            GroupOrder::Infinite
        } else {
            GroupOrder::Finite(self.torsion.iter().product())
        }
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        Self::from_cyclic_factors(self.free_rank + other.free_rank, self.torsion.iter().chain(&other.torsion).cloned())
    }

    /// `G ⊗_ℤ ℤ/N`.
    pub fn tensor_mod(&self, n: &BigUint) -> FinAbGroup {
        let free = core::iter::repeat_n(n.clone(), self.free_rank);
        Self::from_cyclic_factors(0, free.chain(self.torsion.iter().map(|d| d.gcd(n))))
    }

    /// The N-torsion subgroup `{g : N·g = 0}`.
    pub fn torsion_mod(&self, n: &BigUint) -> FinAbGroup {
        Self::from_cyclic_factors(0, self.torsion.iter().map(|d| d.gcd(n)))
    }

    pub fn is_isomorphic(&self, other: &FinAbGroup) -> bool {
        self == other
    }
}

impl fmt::Display for FinAbGroup {
    /// `0`, or `Z/d` factors in invariant-factor order followed by one `Z`
    /// per free rank, joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut first = true;
        for d in &self.torsion {
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "Z/{d}")?;
            first = false;
        }
        for _ in 0..self.free_rank {
            if !first {
                f.write_str(" + ")?;
            }
            f.write_str("Z")?;
            first = false;
        }
        Ok(())
    }
}

fn check_modulus(n: &BigInt) -> Result<BigUint, LinalgError> {
    match n.to_biguint() {
        Some(u) if u >= BigUint::from(2u32) => Ok(u),
        _ => Err(LinalgError::BadModulus(n.clone())),
    }
}

impl SmithDecomposition {
    /// Cokernel of the source matrix as a map `ℤ^cols → ℤ^rows`.
    pub fn cokernel_int(&self) -> FinAbGroup {
        FinAbGroup::from_cyclic_factors(
            self.source_rows() - self.rank(),
            self.invariant_factors.iter().map(|d| d.magnitude().clone()),
        )
    }

    /// Kernel of the induced map `(ℤ/N)^cols → (ℤ/N)^rows`.
    pub fn kernel_mod(&self, n: &BigInt) -> Result<FinAbGroup, LinalgError> {
        let n = check_modulus(n)?;
        Ok(self.reduced_mod(&n, self.source_cols()))
    }

    /// Cokernel of the induced map `(ℤ/N)^cols → (ℤ/N)^rows`.
    pub fn cokernel_mod(&self, n: &BigInt) -> Result<FinAbGroup, LinalgError> {
        let n = check_modulus(n)?;
        Ok(self.reduced_mod(&n, self.source_rows()))
    }

    fn reduced_mod(&self, n: &BigUint, dim: usize) -> FinAbGroup {
        let nonzero = self.invariant_factors.iter().map(|d| d.magnitude().gcd(n));
        let full = core::iter::repeat_n(n.clone(), dim - self.rank());
        FinAbGroup::from_cyclic_factors(0, nonzero.chain(full))
    }
}

pub fn cokernel_int(m: &IntMatrix) -> FinAbGroup {
    snf(m).cokernel_int()
}

pub fn kernel_mod(m: &IntMatrix, n: &BigInt) -> Result<FinAbGroup, LinalgError> {
    snf(m).kernel_mod(n)
}

pub fn cokernel_mod(m: &IntMatrix, n: &BigInt) -> Result<FinAbGroup, LinalgError> {
    snf(m).cokernel_mod(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn z(n: u64) -> FinAbGroup {
        FinAbGroup::cyclic(BigUint::from(n))
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn normal_form_merges_coprime_factors() {
        assert_eq!(z(2).direct_sum(&z(3)), z(6));
        assert_eq!(z(2).direct_sum(&z(3)).to_string(), "Z/6");
        let g = FinAbGroup::from_cyclic_factors(0, [12u32, 18, 1, 4].map(BigUint::from));
        assert_eq!(g.torsion(), &[2u32, 12, 36].map(BigUint::from));
        assert_eq!(g.order(), GroupOrder::Finite(BigUint::from(864u32)));
    }

    #[test]
    fn generator_order_is_irrelevant() {
        let a = FinAbGroup::from_cyclic_factors(1, [4u32, 6, 9].map(BigUint::from));
        let b = FinAbGroup::from_cyclic_factors(0, [9u32, 0, 6, 4].map(BigUint::from));
        assert!(a.is_isomorphic(&b));
        assert_eq!(a.to_string(), "Z/6 + Z/36 + Z");
    }

    #[test]
    fn rendering() {
        assert_eq!(FinAbGroup::trivial().to_string(), "0");
        assert_eq!(FinAbGroup::free(2).to_string(), "Z + Z");
        assert_eq!(z(3).direct_sum(&z(3)).to_string(), "Z/3 + Z/3");
        assert_eq!(z(1), FinAbGroup::trivial());
        assert_eq!(z(0), FinAbGroup::free(1));
    }

    #[test]
    fn order_of_free_group_is_infinite() {
        assert_eq!(FinAbGroup::free(1).order(), GroupOrder::Infinite);
        assert_eq!(FinAbGroup::trivial().order(), GroupOrder::Finite(BigUint::one()));
    }

    #[test]
    fn tensor_and_torsion() {
        for n in 1..=12u64 {
            for q in [2u64, 3, 4, 5, 8, 9] {
                let expected = z(n.gcd(&q));
                assert_eq!(z(n).tensor_mod(&BigUint::from(q)), expected);
                assert_eq!(z(n).torsion_mod(&BigUint::from(q)), expected);
            }
        }
        assert_eq!(z(6).torsion_mod(&BigUint::from(4u32)), z(2));
        assert_eq!(FinAbGroup::free(2).tensor_mod(&BigUint::from(5u32)), z(5).direct_sum(&z(5)));
        assert_eq!(FinAbGroup::free(2).torsion_mod(&BigUint::from(5u32)), FinAbGroup::trivial());
    }

    #[test]
    fn cokernels_over_the_integers() {
        let a3 = IntMatrix::from_rows(&[[-2, 1, 0], [-1, -1, 1], [-1, 0, -1]]);
        assert_eq!(cokernel_int(&a3), z(4));
        assert_eq!(cokernel_int(&IntMatrix::from_rows(&[[-9, 3], [-3, 0]])), z(3).direct_sum(&z(3)));
        assert_eq!(cokernel_int(&IntMatrix::zeros(1, 1)), FinAbGroup::free(1));
        assert_eq!(cokernel_int(&IntMatrix::zeros(2, 0)), FinAbGroup::free(2));
    }

    #[test]
    fn kernels_and_cokernels_mod_n() {
        let a2 = IntMatrix::from_rows(&[[-2, 1], [-1, -1]]);
        assert_eq!(kernel_mod(&a2, &big(3)).unwrap(), z(3));
        assert_eq!(cokernel_mod(&a2, &big(3)).unwrap(), z(3));
        assert_eq!(cokernel_mod(&a2, &big(2)).unwrap(), FinAbGroup::trivial());
        assert_eq!(kernel_mod(&IntMatrix::identity(4), &big(7)).unwrap(), FinAbGroup::trivial());
        let k = IntMatrix::from_rows(&[[-9, 3], [-3, 0]]);
        assert_eq!(kernel_mod(&k, &big(9)).unwrap(), z(3).direct_sum(&z(3)));
        assert_eq!(cokernel_mod(&IntMatrix::zeros(1, 1), &big(4)).unwrap(), z(4));
        // rectangular: ℤ/5 ← ℤ/5 ⊕ ℤ/5 via [1 0]
        let r = IntMatrix::from_rows(&[[1, 0]]);
        assert_eq!(kernel_mod(&r, &big(5)).unwrap(), z(5));
        assert_eq!(cokernel_mod(&r, &big(5)).unwrap(), FinAbGroup::trivial());
    }

    #[test]
    fn bad_modulus() {
        let m = IntMatrix::identity(1);
        assert_eq!(kernel_mod(&m, &big(1)), Err(LinalgError::BadModulus(big(1))));
        assert!(cokernel_mod(&m, &big(-4)).is_err());
    }
}
