//! Truncated big Witt vectors `1 + a₁t + ⋯ + a_m t^m` modulo `t^{m+1}`.
//!
//! Addition in W(R) is multiplication of the unit power series. The product
//! is computed on the factorization `∏ₙ (1 − aₙtⁿ)` through the rule
//!
//! ```text
//! (1 − a tⁱ) ∗ (1 − b tʲ) = (1 − a^{j/g} b^{i/g} t^{ij/g})^g,   g = gcd(i, j)
//! ```
//!
//! extended bilinearly.

use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ring::{CoefficientRing, Elem};
use super::WittError;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WittVector {
    ring: CoefficientRing,
    /// Full series including the constant term 1; length `trunc + 1`.
    series: Vec<Elem>,
}

/// Multiplies `s` in place by `(1 − c tˡ)^g`, truncating at `s.len()`.
fn mul_binomial_pow(ring: &CoefficientRing, s: &mut [Elem], c: &Elem, l: usize, g: u64) {
    if c.is_zero() {
        return;
    }
    for _ in 0..g {
        for k in (l..s.len()).rev() {
            let d = ring.mul(c, &s[k - l]);
            s[k] = ring.sub(&s[k], &d);
        }
    }
}

/// Divides `s` in place by `(1 − c tˡ)`.
fn div_binomial(ring: &CoefficientRing, s: &mut [Elem], c: &Elem, l: usize) {
    if c.is_zero() {
        return;
    }
    for k in l..s.len() {
        let d = ring.mul(c, &s[k - l]);
        s[k] = ring.add(&s[k], &d);
    }
}

/// `[x₁/d, x₂/d², …]`.
fn divide_by_powers(xs: Vec<Elem>, d: &Elem) -> Vec<Elem> {
    let mut power = Elem::one();
    xs.into_iter()
        .map(|x| {
            power = &power * d;
            x / &power
        })
        .collect()
}

fn series_mul(ring: &CoefficientRing, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let len = a.len().min(b.len());
    let mut out = alloc::vec![ring.zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] = ring.add(&out[i + j], &ring.mul(x, y));
            }
        }
    }
    out
}

impl WittVector {
    /// Builds the vector `1 + a₁t + ⋯ + a_m t^m` from `[a₁, …, a_m]`.
    pub fn new(ring: CoefficientRing, coeffs: Vec<Elem>) -> Result<Self, WittError> {
        if coeffs.is_empty() {
            return Err(WittError::ZeroTruncation);
        }
        let mut series = Vec::with_capacity(coeffs.len() + 1);
        series.push(ring.one());
        for c in coeffs {
            series.push(ring.element(c)?);
        }
        Ok(WittVector { ring, series })
    }

    pub fn from_ints(ring: CoefficientRing, coeffs: &[i64]) -> Result<Self, WittError> {
        Self::new(ring, coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    /// `1 + 0t + ⋯`, the additive identity.
    pub fn zero(ring: CoefficientRing, trunc: usize) -> Result<Self, WittError> {
        if trunc == 0 {
            return Err(WittError::ZeroTruncation);
        }
        let mut series = alloc::vec![ring.zero(); trunc + 1];
        series[0] = ring.one();
        Ok(WittVector { ring, series })
    }

    /// `1 − t`, the multiplicative identity.
    pub fn one(ring: CoefficientRing, trunc: usize) -> Result<Self, WittError> {
        Self::teichmuller(ring.clone(), ring.one(), trunc)
    }

    /// `1 − a t`.
    pub fn teichmuller(ring: CoefficientRing, a: Elem, trunc: usize) -> Result<Self, WittError> {
        let mut w = Self::zero(ring, trunc)?;
        let a = w.ring.element(a)?;
        w.series[1] = w.ring.neg(&a);
        Ok(w)
    }

    /// `∏ₙ (1 − aₙ tⁿ)` for `factors = [a₁, …, a_m]`.
    pub fn from_factors(ring: CoefficientRing, factors: &[Elem]) -> Result<Self, WittError> {
        let mut w = Self::zero(ring, factors.len())?;
        for (i, a) in factors.iter().enumerate() {
            let a = w.ring.element(a.clone())?;
            mul_binomial_pow(&w.ring, &mut w.series, &a, i + 1, 1);
        }
        Ok(w)
    }

    pub fn ring(&self) -> &CoefficientRing {
        &self.ring
    }

    pub fn trunc(&self) -> usize {
        self.series.len() - 1
    }

    /// `[a₁, …, a_m]`.
    pub fn coeffs(&self) -> &[Elem] {
        &self.series[1..]
    }

    /// Series coefficients including the constant term.
    pub fn series(&self) -> &[Elem] {
        &self.series
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs().iter().all(Zero::is_zero)
    }

    fn compatible(&self, other: &WittVector) -> Result<(), WittError> {
        if self.ring != other.ring {
            return Err(WittError::RingMismatch { left: self.ring.clone(), right: other.ring.clone() });
        }
        if self.trunc() != other.trunc() {
            return Err(WittError::TruncationMismatch { left: self.trunc(), right: other.trunc() });
        }
        Ok(())
    }

    fn with_series(&self, series: Vec<Elem>) -> WittVector {
        WittVector { ring: self.ring.clone(), series }
    }

    /// Keeps the coefficients up to degree `trunc`.
    pub fn truncate(&self, trunc: usize) -> Result<WittVector, WittError> {
        if trunc == 0 || trunc > self.trunc() {
            return Err(WittError::TruncationMismatch { left: self.trunc(), right: trunc });
        }
        Ok(self.with_series(self.series[..=trunc].to_vec()))
    }

    /// Witt sum: the product of the series.
    pub fn add(&self, other: &WittVector) -> Result<WittVector, WittError> {
        self.compatible(other)?;
        Ok(self.with_series(series_mul(&self.ring, &self.series, &other.series)))
    }

    /// Witt negation: the inverse series.
    pub fn neg(&self) -> WittVector {
        let ring = &self.ring;
        let mut inv = alloc::vec![ring.zero(); self.series.len()];
        inv[0] = ring.one();
        for k in 1..self.series.len() {
            let mut acc = ring.zero();
            for i in 1..=k {
                acc = ring.add(&acc, &ring.mul(&self.series[i], &inv[k - i]));
            }
            inv[k] = ring.neg(&acc);
        }
        self.with_series(inv)
    }

    pub fn sub(&self, other: &WittVector) -> Result<WittVector, WittError> {
        self.add(&other.neg())
    }

    /// `k · u`, i.e. the series raised to the integer power `k`.
    pub fn scalar_mul(&self, k: i64) -> WittVector {
        let base = if k < 0 { self.neg() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut b = base.series;
        let mut acc = Self::zero(self.ring.clone(), self.trunc()).expect("trunc > 0").series;
        while e > 0 {
            if e & 1 == 1 {
                acc = series_mul(&self.ring, &acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = series_mul(&self.ring, &b, &b);
            }
        }
        self.with_series(acc)
    }

    /// `(D, u(Dt))` with `D` the least common denominator of the
    /// coefficients, when that is not 1. Arithmetic on the integral vector
    /// avoids normalizing rationals at every step.
    fn integral_lift(&self) -> Option<(Elem, WittVector)> {
        let denom = self.coeffs().iter().fold(num_bigint::BigInt::one(), |d, c| d.lcm(c.denom()));
        if denom.is_one() {
            return None;
        }
        let d = BigRational::from_integer(denom);
        let lifted = self.scale_variable(&d).expect("denominator of ring elements");
        Some((d, lifted))
    }

    /// The unique `[a₁, …, a_m]` with `u ≡ ∏ₙ (1 − aₙ tⁿ) mod t^{m+1}`,
    /// extracted greedily degree by degree.
    pub fn factor_units(&self) -> Vec<Elem> {
        match self.integral_lift() {
            // the factors of u(Dt) are aₙDⁿ
            Some((d, lifted)) => divide_by_powers(lifted.factor_units_raw(), &d),
            None => self.factor_units_raw(),
        }
    }

    fn factor_units_raw(&self) -> Vec<Elem> {
        let ring = &self.ring;
        let mut rem = self.series.clone();
        let mut factors = Vec::with_capacity(self.trunc());
        for n in 1..rem.len() {
            let a = ring.neg(&rem[n]);
            div_binomial(ring, &mut rem, &a, n);
            factors.push(a);
        }
        factors
    }

    /// Witt product.
    pub fn mul(&self, other: &WittVector) -> Result<WittVector, WittError> {
        self.compatible(other)?;
        let denom = self.coeffs().iter().chain(other.coeffs()).fold(num_bigint::BigInt::one(), |d, c| d.lcm(c.denom()));
        if denom.is_one() {
            return self.mul_factored(other);
        }
        // [D]u = u(Dt) and [D][D] = [D²], so u ∗ v = (u(Dt) ∗ v(Dt))(t/D²);
        // the inner product then runs on integer coefficients.
        let d = BigRational::from_integer(denom);
        let inner = self.scale_variable(&d)?.mul_factored(&other.scale_variable(&d)?)?;
        inner.scale_variable(&(d.clone() * d).recip())
    }

    fn mul_factored(&self, other: &WittVector) -> Result<WittVector, WittError> {
        let ring = &self.ring;
        let m = self.trunc();
        let fa = self.factor_units();
        let fb = other.factor_units();
        let mut acc = Self::zero(ring.clone(), m)?.series;
        for (i, a) in fa.iter().enumerate().map(|(i, a)| (i + 1, a)).filter(|(_, a)| !a.is_zero()) {
            for (j, b) in fb.iter().enumerate().map(|(j, b)| (j + 1, b)).filter(|(_, b)| !b.is_zero()) {
                let g = i.gcd(&j);
                let l = i / g * j;
                if l > m {
                    continue;
                }
                let c = ring.mul(&ring.pow(a, (j / g) as u64), &ring.pow(b, (i / g) as u64));
                mul_binomial_pow(ring, &mut acc, &c, l, g as u64);
            }
        }
        Ok(self.with_series(acc))
    }

    /// `h(t) ↦ h(a t)`.
    pub fn scale_variable(&self, a: &Elem) -> Result<WittVector, WittError> {
        let a = self.ring.element(a.clone())?;
        let mut power = self.ring.one();
        let mut series = self.series.clone();
        for c in series.iter_mut().skip(1) {
            power = self.ring.mul(&power, &a);
            *c = self.ring.mul(c, &power);
        }
        Ok(self.with_series(series))
    }

    /// Ghost components `[gh₁, …, gh_m]`: the coefficients of `−t·u′/u`.
    ///
    /// Only offered where the ghost map is an injective ring homomorphism
    /// onto componentwise arithmetic at this truncation: torsion-free rings,
    /// and ℤ/N when `1, …, m` are all units.
    pub fn ghost(&self) -> Result<Vec<Elem>, WittError> {
        let ring = &self.ring;
        if !ring.is_torsion_free() {
            if let Some(k) = (1..=self.trunc() as u64).find(|&k| !ring.is_unit_integer(k)) {
                return Err(WittError::NonInvertibleGhost { ring: ring.clone(), n: k });
            }
        }
        Ok(match self.integral_lift() {
            // ghₙ(u(Dt)) = Dⁿ ghₙ(u)
            Some((d, lifted)) => divide_by_powers(lifted.ghost_raw(), &d),
            None => self.ghost_raw(),
        })
    }

    fn ghost_raw(&self) -> Vec<Elem> {
        let ring = &self.ring;
        let c = &self.series;
        let mut gh: Vec<Elem> = alloc::vec![ring.zero(); c.len()];
        for n in 1..c.len() {
            // u·L = −t u′, so L_n = −n c_n − Σ_{k=1}^{n−1} c_k L_{n−k}
            let mut acc = ring.mul(&ring.from_int(n as i64), &c[n]);
            for k in 1..n {
                acc = ring.add(&acc, &ring.mul(&c[k], &gh[n - k]));
            }
            gh[n] = ring.neg(&acc);
        }
        gh.remove(0);
        gh
    }

    /// Frobenius `F_n`, defined on factors by
    /// `F_n(1 − a tʲ) = (1 − a^{n/d} t^{j/d})^d` with `d = gcd(n, j)`.
    ///
    /// The truncation is kept, but only the coefficients up to degree
    /// `⌊m/n⌋` are determined by `u mod t^{m+1}`; the higher ones use the
    /// known factors only. Apply to a vector of truncation `n·m` and
    /// [`truncate`](Self::truncate) to `m` for an exact result.
    pub fn frobenius(&self, n: usize) -> Result<WittVector, WittError> {
        if n == 0 {
            return Err(WittError::ZeroIndex);
        }
        match self.integral_lift() {
            // F_n(u(Dt)) = F_n(u)(Dⁿt)
            Some((d, lifted)) => {
                let dn = self.ring.pow(&d, n as u64);
                lifted.frobenius_raw(n)?.scale_variable(&dn.recip())
            }
            None => self.frobenius_raw(n),
        }
    }

    fn frobenius_raw(&self, n: usize) -> Result<WittVector, WittError> {
        let ring = &self.ring;
        let mut acc = Self::zero(ring.clone(), self.trunc())?.series;
        for (j, a) in self.factor_units().iter().enumerate().map(|(j, a)| (j + 1, a)) {
            if a.is_zero() {
                continue;
            }
            let d = n.gcd(&j);
            let c = ring.pow(a, (n / d) as u64);
            mul_binomial_pow(ring, &mut acc, &c, j / d, d as u64);
        }
        Ok(self.with_series(acc))
    }

    /// Verschiebung `V_n`: `u(t) ↦ u(tⁿ)`.
    pub fn verschiebung(&self, n: usize) -> Result<WittVector, WittError> {
        if n == 0 {
            return Err(WittError::ZeroIndex);
        }
        let mut series = alloc::vec![self.ring.zero(); self.series.len()];
        for (k, c) in self.series.iter().enumerate() {
            if k * n < series.len() {
                series[k * n] = c.clone();
            } else {
                break;
            }
        }
        Ok(self.with_series(series))
    }

    /// Whether `V_n(α ∗ F_n β) = V_n(α) ∗ β` at the common truncation.
    pub fn projection_check(n: usize, alpha: &WittVector, beta: &WittVector) -> Result<bool, WittError> {
        alpha.compatible(beta)?;
        let lhs = alpha.mul(&beta.frobenius(n)?)?.verschiebung(n)?;
        let rhs = alpha.verschiebung(n)?.mul(beta)?;
        Ok(lhs == rhs)
    }

    /// `(1 − t)^λ` for λ ∈ ℤ[1/l], as the binomial series over ℤ[1/l].
    pub fn one_minus_t_pow(lambda: &Elem, l: u64, trunc: usize) -> Result<WittVector, WittError> {
        let ring = CoefficientRing::inverted_prime(l)?;
        let lambda = ring.element(lambda.clone())?;
        let mut w = Self::zero(ring, trunc)?;
        // c_k = c_{k−1} · (k − 1 − λ) / k
        for k in 1..=trunc {
            let step =
                (BigRational::from_integer((k as i64 - 1).into()) - &lambda) / BigRational::from_integer(k.into());
            let c = &w.series[k - 1] * step;
            w.series[k] = w.ring.element(c)?;
        }
        Ok(w)
    }
}

/// Least `r ≥ 0` with `(1 − t)^{l^r} ∈ 1 + t^m (ℤ/l^e)⟦t⟧`.
pub fn nilpotence_exponent(l: u64, e: u32, m: usize) -> Result<u32, WittError> {
    use num_bigint::BigUint;
    use num_traits::Pow;
    if !crate::ktheory::is_prime(l) {
        return Err(WittError::NotPrime(l));
    }
    let ring = CoefficientRing::integers_mod(Pow::pow(BigUint::from(l), e))?;
    if m <= 1 {
        return Ok(0);
    }
    // track the series mod t^m
    let mut s = WittVector::one(ring, m - 1)?;
    let mut r = 0;
    while !s.is_zero() {
        s = s.scalar_mul(l as i64);
        r += 1;
    }
    Ok(r)
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: &Elem, first: bool, degree: usize) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    match (first, neg) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    let unit = abs.is_one();
    if !unit || degree == 0 {
        if abs.is_integer() {
            write!(f, "{abs}")?;
        } else {
            write!(f, "({abs})")?;
        }
    }
    match degree {
        0 => Ok(()),
        1 => f.write_str("t"),
        d => write!(f, "t^{d}"),
    }
}

impl fmt::Display for WittVector {
    /// The truncated series, e.g. `1 - 2t + t^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.series.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            write_coeff(f, c, first, k)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use num_bigint::BigInt;

    fn q() -> CoefficientRing {
        CoefficientRing::Rationals
    }

    fn int(n: i64) -> Elem {
        BigRational::from_integer(BigInt::from(n))
    }

    fn w(coeffs: &[i64]) -> WittVector {
        WittVector::from_ints(q(), coeffs).unwrap()
    }

    #[test]
    fn addition_is_series_product() {
        let u = w(&[-1, 0, 0]);
        assert_eq!(u.add(&u).unwrap(), w(&[-2, 1, 0]));
        let z = WittVector::zero(q(), 3).unwrap();
        assert_eq!(u.add(&z).unwrap(), u);
    }

    #[test]
    fn negation_and_constants() {
        let one = WittVector::one(q(), 4).unwrap();
        assert_eq!(one, w(&[-1, 0, 0, 0]));
        assert_eq!(one.neg(), w(&[1, 1, 1, 1]));
        let u = w(&[3, -2, 5, 7]);
        assert!(u.add(&u.neg()).unwrap().is_zero());
    }

    #[test]
    fn factor_units_examples() {
        assert_eq!(w(&[-1, 0, 0, 0]).factor_units(), [1, 0, 0, 0].map(int));
        // 1 − 2t + t² = (1 − 2t)(1 − a₂t²) mod t³ forces a₂ = −1
        assert_eq!(w(&[-2, 1]).factor_units(), [2, -1].map(int));
        let u = w(&[4, -1, 0, 9, 2]);
        assert_eq!(WittVector::from_factors(q(), &u.factor_units()).unwrap(), u);
    }

    #[test]
    fn product_examples() {
        // (1 − 2t) ∗ (1 − 3t²) = 1 − 12t²
        let a = w(&[-2, 0, 0, 0]);
        let b = w(&[0, -3, 0, 0]);
        assert_eq!(a.mul(&b).unwrap(), w(&[0, -12, 0, 0]));
        let u = w(&[5, -1, 2, 0]);
        assert_eq!(WittVector::one(q(), 4).unwrap().mul(&u).unwrap(), u);
        let t2 = w(&[0, -1, 0, 0, 0, 0, 0]);
        let t3 = w(&[0, 0, -1, 0, 0, 0, 0]);
        assert_eq!(t2.mul(&t3).unwrap(), w(&[0, 0, 0, 0, 0, -1, 0]));
    }

    #[test]
    fn mismatches_are_rejected() {
        let a = w(&[1, 2]);
        let b = w(&[1, 2, 3]);
        assert!(matches!(a.add(&b), Err(WittError::TruncationMismatch { left: 2, right: 3 })));
        let c = WittVector::from_ints(CoefficientRing::Integers, &[1, 2]).unwrap();
        assert!(matches!(a.mul(&c), Err(WittError::RingMismatch { .. })));
    }

    #[test]
    fn ghost_examples() {
        assert_eq!(WittVector::one(q(), 5).unwrap().ghost().unwrap(), [1, 1, 1, 1, 1].map(int));
        // 1 − 3t²: ghost is 2·3^{n/2} at even n
        assert_eq!(w(&[0, -3, 0, 0, 0, 0]).ghost().unwrap(), [0, 6, 0, 18, 0, 54].map(int));
        let z12 = CoefficientRing::integers_mod(12u32).unwrap();
        let u = WittVector::from_ints(z12, &[1, 2]).unwrap();
        assert!(matches!(u.ghost(), Err(WittError::NonInvertibleGhost { n: 2, .. })));
        let z7 = CoefficientRing::integers_mod(7u32).unwrap();
        assert!(WittVector::from_ints(z7, &[1, 2, 3]).unwrap().ghost().is_ok());
    }

    #[test]
    fn frobenius_and_verschiebung() {
        let a = int(3);
        let u = WittVector::teichmuller(q(), a, 5).unwrap();
        assert_eq!(u.frobenius(2).unwrap(), w(&[-9, 0, 0, 0, 0]));
        assert_eq!(w(&[-1, 0, 0]).verschiebung(2).unwrap(), w(&[0, -1, 0]));
        assert_eq!(w(&[1, 2, 3, 4]).verschiebung(1).unwrap(), w(&[1, 2, 3, 4]));
        assert_eq!(w(&[1, 2, 3, 4]).frobenius(1).unwrap(), w(&[1, 2, 3, 4]));
        assert!(matches!(u.frobenius(0), Err(WittError::ZeroIndex)));
    }

    #[test]
    fn projection_example() {
        let alpha = w(&[-3, 0, 0, 0, 0, 0, 0, 0]);
        let beta = w(&[-5, 0, 0, 0, 0, 0, 0, 0]);
        assert!(WittVector::projection_check(2, &alpha, &beta).unwrap());
    }

    #[test]
    fn binomial_series() {
        let one = BigRational::one();
        assert_eq!(WittVector::one_minus_t_pow(&one, 3, 3).unwrap().coeffs(), [-1, 0, 0].map(int));
        assert_eq!(WittVector::one_minus_t_pow(&int(2), 3, 3).unwrap().coeffs(), [-2, 1, 0].map(int));
        let third = BigRational::new(1.into(), 3.into());
        let s = WittVector::one_minus_t_pow(&third, 3, 6).unwrap();
        assert_eq!(s.scalar_mul(3).coeffs(), [-1, 0, 0, 0, 0, 0].map(int));
        assert!(WittVector::one_minus_t_pow(&BigRational::new(1.into(), 2.into()), 3, 3).is_err());
    }

    #[test]
    fn nilpotence_examples() {
        assert_eq!(nilpotence_exponent(2, 1, 2).unwrap(), 1);
        assert_eq!(nilpotence_exponent(2, 1, 3).unwrap(), 2);
        assert_eq!(nilpotence_exponent(3, 1, 2).unwrap(), 1);
        assert_eq!(nilpotence_exponent(5, 2, 1).unwrap(), 0);
        assert!(nilpotence_exponent(4, 1, 3).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(w(&[-2, 1, 0]).to_string(), "1 - 2t + t^2");
        let half = WittVector::new(q(), alloc::vec![BigRational::new(1.into(), 2.into())]).unwrap();
        assert_eq!(half.to_string(), "1 + (1/2)t");
    }
}
