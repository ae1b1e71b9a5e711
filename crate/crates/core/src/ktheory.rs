//! K-theory with ℤ/l^ν coefficients of dg cluster categories.
//!
//! Everything is read off the cluster map `(−1)^m·Φ_Q − Id` acting on
//! `(ℤ/l^ν)^v`: even non-negative degrees carry its cokernel, odd
//! non-negative degrees its kernel, and negative degrees vanish.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::Pow;
use thiserror::Error;

use crate::group::{FinAbGroup, GroupOrder};
use crate::matrix::IntMatrix;
use crate::quiver::{Quiver, QuiverError};
use crate::snf::snf;

/// Degree window expanded in reports unless the caller asks for another one.
pub const DEFAULT_WINDOW: (i64, i64) = (-2, 8);

/// The hypothesis under which the ℤ/l^ν numbers are valid; when `l` equals
/// the characteristic the same groups describe `K ⊗ ℤ[1/l]` instead.
pub const VALIDITY: &str = "l != char(k)";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KTheoryError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("the exponent nu must be positive")]
    ZeroExponent,
}

impl KTheoryError {
    pub fn code(&self) -> &'static str {
        match self {
            KTheoryError::Quiver(e) => e.code(),
            KTheoryError::NotPrime(_) => "NOT_PRIME",
            KTheoryError::ZeroExponent => "BAD_EXPONENT",
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A prime power `l^ν`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePower {
    l: u64,
    nu: u32,
}

impl PrimePower {
    pub fn new(l: u64, nu: u32) -> Result<Self, KTheoryError> {
        if !is_prime(l) {
            return Err(KTheoryError::NotPrime(l));
        }
        if nu == 0 {
            return Err(KTheoryError::ZeroExponent);
        }
        Ok(PrimePower { l, nu })
    }

    pub fn prime(&self) -> u64 {
        self.l
    }

    pub fn exponent(&self) -> u32 {
        self.nu
    }

    pub fn value(&self) -> BigUint {
        Pow::pow(BigUint::from(self.l), self.nu)
    }
}

/// `(−1)^m·Φ_Q − Id`.
pub fn cluster_map(q: &Quiver, m: u32) -> Result<IntMatrix, QuiverError> {
    let phi = q.coxeter_matrix()?;
    let signed = if m.is_multiple_of(2) { phi } else { phi.neg() };
    Ok(signed.sub(&IntMatrix::identity(q.vertex_count())))
}

/// `K_0` of the m-cluster category: the integral cokernel of the cluster map.
pub fn grothendieck_group(q: &Quiver, m: u32) -> Result<FinAbGroup, QuiverError> {
    Ok(snf(&cluster_map(q, m)?).cokernel_int())
}

/// K-groups of an algebraically closed field with ℤ/l^ν coefficients:
/// ℤ/l^ν in even non-negative degrees, 0 otherwise.
pub fn suslin_k(i: i64, l: u64, nu: u32) -> FinAbGroup {
    if i >= 0 && i % 2 == 0 {
        FinAbGroup::cyclic(Pow::pow(BigUint::from(l), nu))
    } else {
        FinAbGroup::trivial()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KTheoryReport {
    pub quiver: Quiver,
    pub m: u32,
    pub modulus: PrimePower,
    pub map_matrix: IntMatrix,
    pub kernel_group: FinAbGroup,
    pub cokernel_group: FinAbGroup,
}

impl KTheoryReport {
    /// `IK_i(C_Q^(m); ℤ/l^ν)`.
    pub fn k_group(&self, i: i64) -> &FinAbGroup {
        static TRIVIAL: FinAbGroup = FinAbGroup::trivial();
        if i < 0 {
            &TRIVIAL
        } else if i % 2 == 0 {
            &self.cokernel_group
        } else {
            &self.kernel_group
        }
    }

    pub fn table(&self, window: (i64, i64)) -> Vec<(i64, &FinAbGroup)> {
        (window.0..=window.1).map(|i| (i, self.k_group(i))).collect()
    }

    pub fn validity(&self) -> &'static str {
        VALIDITY
    }
}

pub fn k_groups_mod(q: &Quiver, m: u32, l: u64, nu: u32) -> Result<KTheoryReport, KTheoryError> {
    let modulus = PrimePower::new(l, nu)?;
    let map_matrix = cluster_map(q, m)?;
    let s = snf(&map_matrix);
    let n = BigInt::from(modulus.value());
    let kernel_group = s.kernel_mod(&n).expect("prime power is at least 2");
    let cokernel_group = s.cokernel_mod(&n).expect("prime power is at least 2");
    Ok(KTheoryReport { quiver: q.clone(), m, modulus, map_matrix, kernel_group, cokernel_group })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn order_product(a: GroupOrder, b: GroupOrder) -> GroupOrder {
    match (a, b) {
        (GroupOrder::Finite(x), GroupOrder::Finite(y)) => GroupOrder::Finite(x * y),
        _ => GroupOrder::Infinite,
    }
}

/// Internal-consistency checks on a report. Failures are reported, never
/// raised.
pub fn verify_report(r: &KTheoryReport) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let (ker, coker) = (r.kernel_group.order(), r.cokernel_group.order());

    out.push(CheckResult {
        name: "kernel_cokernel_same_order",
        passed: ker == coker && ker.finite().is_some(),
        detail: format!("|ker| = {ker}, |coker| = {coker}"),
    });

    let (lo, hi) = DEFAULT_WINDOW;
    let expected = order_product(coker.clone(), ker.clone());
    let bad: Vec<i64> = (lo.max(0)..=hi)
        .step_by(2)
        .filter(|&i| order_product(r.k_group(i).order(), r.k_group(i + 1).order()) != expected)
        .collect();
    out.push(CheckResult {
        name: "exactness_count",
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("|K_even|*|K_odd| = {expected} in degrees {}..{}", lo.max(0), hi + 1)
        } else {
            format!("mismatch starting at degrees {bad:?}")
        },
    });

    let trivial: Vec<bool> = (0..=hi).map(|i| r.k_group(i).is_trivial()).collect();
    let uniform = trivial.iter().all(|&t| t) || trivial.iter().all(|&t| !t);
    out.push(CheckResult {
        name: "all_trivial_or_all_nontrivial",
        passed: uniform,
        detail: format!(
            "degrees 0..{hi}: {}",
            if !uniform {
                "mixed"
            } else if trivial[0] {
                "all trivial"
            } else {
                "all non-trivial"
            }
        ),
    });

    let negative_ok = (lo..0).all(|i| r.k_group(i).is_trivial());
    out.push(CheckResult { name: "negative_degrees_vanish", passed: negative_ok, detail: format!("degrees {lo}..-1") });

    // degree-0 universal coefficient sequence with K_{-1} = 0
    let k0 = snf(&r.map_matrix).cokernel_int().tensor_mod(&r.modulus.value());
    out.push(CheckResult {
        name: "universal_coefficients_degree_0",
        passed: k0 == r.cokernel_group,
        detail: format!("K_0 (x) Z/{} = {k0}", r.modulus.value()),
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{preset, PresetFamily};

    fn z(n: u32) -> FinAbGroup {
        FinAbGroup::cyclic(BigUint::from(n))
    }

    #[test]
    fn cluster_map_examples() {
        let a2 = preset(PresetFamily::A, 2).unwrap();
        assert_eq!(cluster_map(&a2, 0).unwrap(), IntMatrix::from_rows(&[[-2, 1], [-1, -1]]));
        let a1 = preset(PresetFamily::A, 1).unwrap();
        assert_eq!(cluster_map(&a1, 0).unwrap(), IntMatrix::from_rows(&[[-2]]));
        let k3 = preset(PresetFamily::Kronecker, 3).unwrap();
        let map = cluster_map(&k3, 1).unwrap();
        let swap = IntMatrix::permutation(&[1, 0]);
        assert_eq!(swap.mul(&map).mul(&swap), IntMatrix::from_rows(&[[-9, 3], [-3, 0]]));
    }

    #[test]
    fn k_groups_examples() {
        let a2 = preset(PresetFamily::A, 2).unwrap();
        let r = k_groups_mod(&a2, 0, 3, 1).unwrap();
        for i in 0..10 {
            assert_eq!(r.k_group(i), &z(3));
        }
        assert!(r.k_group(-1).is_trivial());
        assert!(r.k_group(-2).is_trivial());
        let r = k_groups_mod(&a2, 0, 2, 1).unwrap();
        assert!((-3..10).all(|i| r.k_group(i).is_trivial()));
        let k3 = preset(PresetFamily::Kronecker, 3).unwrap();
        let r = k_groups_mod(&k3, 1, 3, 2).unwrap();
        assert_eq!(r.k_group(0), &z(3).direct_sum(&z(3)));
        assert_eq!(r.k_group(1), &z(3).direct_sum(&z(3)));
    }

    #[test]
    fn bad_moduli() {
        let a2 = preset(PresetFamily::A, 2).unwrap();
        assert_eq!(k_groups_mod(&a2, 0, 4, 1), Err(KTheoryError::NotPrime(4)));
        assert_eq!(k_groups_mod(&a2, 0, 1, 1), Err(KTheoryError::NotPrime(1)));
        assert_eq!(k_groups_mod(&a2, 0, 3, 0), Err(KTheoryError::ZeroExponent));
        let cyc = crate::dsl::parse_quiver("1 -> 2; 2 -> 1").unwrap();
        assert_eq!(k_groups_mod(&cyc, 0, 3, 1).unwrap_err().code(), "CYCLIC_QUIVER");
    }

    #[test]
    fn grothendieck_examples() {
        for n in 1..=12u32 {
            let q = preset(PresetFamily::A, n).unwrap();
            assert_eq!(grothendieck_group(&q, 0).unwrap(), z(n + 1));
        }
        let k3 = preset(PresetFamily::Kronecker, 3).unwrap();
        assert_eq!(grothendieck_group(&k3, 1).unwrap(), z(3).direct_sum(&z(3)));
    }

    #[test]
    fn suslin_values() {
        assert_eq!(suslin_k(4, 5, 1), z(5));
        assert_eq!(suslin_k(0, 3, 2), z(9));
        assert!(suslin_k(3, 5, 1).is_trivial());
        assert!(suslin_k(-2, 3, 2).is_trivial());
    }

    #[test]
    fn verification_passes_and_detects_corruption() {
        let a2 = preset(PresetFamily::A, 2).unwrap();
        let r = k_groups_mod(&a2, 0, 3, 1).unwrap();
        assert!(verify_report(&r).iter().all(|c| c.passed));
        let e6 = preset(PresetFamily::E, 6).unwrap();
        let r6 = k_groups_mod(&e6, 0, 2, 1).unwrap();
        assert!(verify_report(&r6).iter().all(|c| c.passed), "{:?}", verify_report(&r6));

        let mut bad = r.clone();
        bad.kernel_group = z(9);
        let checks = verify_report(&bad);
        assert!(!checks.iter().find(|c| c.name == "kernel_cokernel_same_order").unwrap().passed);
        let mut mixed = r.clone();
        mixed.kernel_group = FinAbGroup::trivial();
        let checks = verify_report(&mixed);
        assert!(!checks.iter().find(|c| c.name == "all_trivial_or_all_nontrivial").unwrap().passed);
    }

    #[test]
    fn table_window() {
        let a3 = preset(PresetFamily::A, 3).unwrap();
        let r = k_groups_mod(&a3, 0, 2, 3).unwrap();
        let t = r.table(DEFAULT_WINDOW);
        assert_eq!(t.len(), 11);
        assert_eq!(t[0], (-2, &FinAbGroup::trivial()));
        assert_eq!(t[2], (0, &z(4)));
        assert_eq!(r.validity(), "l != char(k)");
    }
}
