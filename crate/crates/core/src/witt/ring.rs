use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::WittError;
use crate::ktheory::is_prime;

/// Ring elements are carried as rationals and kept in a canonical form for
/// their ring: integers for ℤ, residues in `[0, N)` for ℤ/N.
pub type Elem = BigRational;

/// The exact coefficient rings supported by the Witt arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CoefficientRing {
    Integers,
    Rationals,
    /// ℤ/N with N ≥ 2.
    IntegersMod(BigInt),
    /// ℤ[1/l] for a prime l: rationals whose denominator is a power of l.
    InvertedPrime(u64),
}

impl CoefficientRing {
    pub fn integers_mod(n: impl Into<BigUint>) -> Result<Self, WittError> {
        let n = n.into();
        if n < BigUint::from(2u32) {
            return Err(WittError::BadModulus(n.to_string()));
        }
        Ok(CoefficientRing::IntegersMod(BigInt::from(n)))
    }

    pub fn inverted_prime(l: u64) -> Result<Self, WittError> {
        if !is_prime(l) {
            return Err(WittError::NotPrime(l));
        }
        Ok(CoefficientRing::InvertedPrime(l))
    }

    /// Checks that `x` lies in the ring and returns its canonical
    /// representative. For ℤ/N a rational is accepted when its denominator
    /// is a unit mod N.
    pub fn element(&self, x: Elem) -> Result<Elem, WittError> {
        let not_in = |x: &Elem| WittError::NotInRing { value: x.to_string(), ring: self.to_string() };
        match self {
            CoefficientRing::Rationals => Ok(x),
            CoefficientRing::Integers => {
                if x.is_integer() {
                    Ok(x)
                } else {
                    Err(not_in(&x))
                }
            }
            CoefficientRing::InvertedPrime(l) => {
                let mut den = x.denom().clone();
                let l = BigInt::from(*l);
                while (&den % &l).is_zero() {
                    den /= &l;
                }
                if den.is_one() {
                    Ok(x)
                } else {
                    Err(not_in(&x))
                }
            }
            CoefficientRing::IntegersMod(n) => {
                let inv = mod_inverse(x.denom(), n).ok_or_else(|| not_in(&x))?;
                Ok(BigRational::from_integer((x.numer() * inv).mod_floor(n)))
            }
        }
    }

    pub fn from_int(&self, i: impl Into<BigInt>) -> Elem {
        self.reduce(BigRational::from_integer(i.into()))
    }

    pub fn zero(&self) -> Elem {
        Elem::zero()
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    /// Canonicalizes the result of an arithmetic operation on elements.
    #[inline]
    fn reduce(&self, x: Elem) -> Elem {
        match self {
            CoefficientRing::IntegersMod(n) => {
                debug_assert!(x.is_integer());
                BigRational::from_integer(x.numer().mod_floor(n))
            }
            _ => x,
        }
    }

    #[inline]
    fn reduce_int(&self, x: BigInt) -> Elem {
        match self {
            CoefficientRing::IntegersMod(n) => BigRational::from_integer(x.mod_floor(n)),
            _ => BigRational::from_integer(x),
        }
    }

    // Integer operands skip the rational normalization entirely.

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        if a.is_integer() && b.is_integer() {
            return self.reduce_int(a.numer() + b.numer());
        }
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        if a.is_integer() && b.is_integer() {
            return self.reduce_int(a.numer() - b.numer());
        }
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        if a.is_integer() && b.is_integer() {
            return self.reduce_int(a.numer() * b.numer());
        }
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        if a.is_integer() {
            return self.reduce_int(-a.numer());
        }
        self.reduce(-a)
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Whether the integer `k` is invertible in the ring.
    pub fn is_unit_integer(&self, k: u64) -> bool {
        match self {
            CoefficientRing::Rationals => k != 0,
            CoefficientRing::Integers => k == 1,
            CoefficientRing::IntegersMod(n) => BigInt::from(k).gcd(n).is_one(),
            CoefficientRing::InvertedPrime(l) => {
                let mut k = k;
                while k != 0 && k.is_multiple_of(*l) {
                    k /= l;
                }
                k == 1
            }
        }
    }

    /// Rings without additive torsion, where the ghost map is injective.
    pub fn is_torsion_free(&self) -> bool {
        !matches!(self, CoefficientRing::IntegersMod(_))
    }
}

fn mod_inverse(a: &BigInt, n: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(n).extended_gcd(n);
    e.gcd.is_one().then(|| e.x.mod_floor(n))
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => f.write_str("Z"),
            CoefficientRing::Rationals => f.write_str("Q"),
            CoefficientRing::IntegersMod(n) => write!(f, "Z/{n}"),
            CoefficientRing::InvertedPrime(l) => write!(f, "Z[1/{l}]"),
        }
    }
}

impl FromStr for CoefficientRing {
    type Err = WittError;

    /// Accepts `Z`, `Q`, `Z/N` and `Z[1/l]`.
    fn from_str(s: &str) -> Result<Self, WittError> {
        let s = s.trim();
        let bad = || WittError::UnknownRing(String::from(s));
        match s {
            "Z" => Ok(CoefficientRing::Integers),
            "Q" => Ok(CoefficientRing::Rationals),
            _ => {
                if let Some(n) = s.strip_prefix("Z/") {
                    let n: BigUint = n.parse().map_err(|_| bad())?;
                    CoefficientRing::integers_mod(n)
                } else if let Some(l) = s.strip_prefix("Z[1/").and_then(|r| r.strip_suffix(']')) {
                    CoefficientRing::inverted_prime(l.parse().map_err(|_| bad())?)
                } else {
                    Err(bad())
                }
            }
        }
    }
}

/// Parses `"n"` or `"p/q"` into a ring element.
pub fn parse_elem(ring: &CoefficientRing, s: &str) -> Result<Elem, WittError> {
    let s = s.trim();
    let x: BigRational = s.parse().map_err(|_| WittError::BadElement(String::from(s)))?;
    if x.denom().is_negative() || x.denom().is_zero() {
        return Err(WittError::BadElement(String::from(s)));
    }
    ring.element(x)
}
