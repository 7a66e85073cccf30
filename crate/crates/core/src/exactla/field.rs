//! Exact base fields: the rationals and prime fields `F_p`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::LinAlgError;

/// Largest prime accepted for `F_p`; products of two residues must fit in a `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// The base field of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

/// An element of some [`FieldSpec`]. Values are always kept canonical
/// (rationals reduced, residues in `0..p`), so derived equality is field equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular(u64),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, LinAlgError> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(LinAlgError::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn size(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::zero()),
            FieldSpec::Prime(_) => Scalar::Modular(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::one()),
            FieldSpec::Prime(_) => Scalar::Modular(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.into())),
            FieldSpec::Prime(p) => Scalar::Modular(v.rem_euclid(*p as i64) as u64),
        }
    }

    /// Residue of `v` in `F_p`, or `v` itself over the rationals.
    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Scalar::Modular(r.to_u64().expect("residue fits in u64"))
            }
        }
    }

    /// Image of a rational number; fails when the denominator vanishes mod p.
    pub fn from_rational(&self, v: &BigRational) -> Result<Scalar, LinAlgError> {
        match self {
            FieldSpec::Rationals => Ok(Scalar::Rational(v.clone())),
            FieldSpec::Prime(p) => {
                let den = self.from_bigint(v.denom());
                if self.is_zero(&den) {
                    return Err(LinAlgError::DenominatorVanishes { value: v.to_string(), p: *p });
                }
                let num = self.from_bigint(v.numer());
                Ok(self.div(&num, &den))
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular(v) => *v == 0,
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular(v) => *v == 1,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (_, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (FieldSpec::Prime(p), Scalar::Modular(x), Scalar::Modular(y)) => {
                Scalar::Modular((x + y) % p)
            }
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (_, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x - y),
            (FieldSpec::Prime(p), Scalar::Modular(x), Scalar::Modular(y)) => {
                Scalar::Modular((x + p - y) % p)
            }
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (_, Scalar::Rational(x)) => Scalar::Rational(-x),
            (FieldSpec::Prime(p), Scalar::Modular(x)) => Scalar::Modular((p - x) % p),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (_, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (FieldSpec::Prime(p), Scalar::Modular(x), Scalar::Modular(y)) => {
                Scalar::Modular(x * y % p)
            }
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        assert!(!self.is_zero(a), "inverse of zero");
        match (self, a) {
            (_, Scalar::Rational(x)) => Scalar::Rational(x.recip()),
            (FieldSpec::Prime(p), Scalar::Modular(x)) => Scalar::Modular(pow_mod(*x, p - 2, *p)),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    /// `a += c * b`, the inner loop of every elimination.
    pub fn add_mul_assign(&self, a: &mut Scalar, c: &Scalar, b: &Scalar) {
        match (self, a, c, b) {
            (FieldSpec::Prime(p), Scalar::Modular(x), Scalar::Modular(y), Scalar::Modular(z)) => {
                *x = (*x + y * z) % p;
            }
            (_, a, c, b) => *a = self.add(a, &self.mul(c, b)),
        }
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Enumerate all elements; only meaningful for prime fields.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        self.size().map(|p| (0..p).map(Scalar::Modular).collect())
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = LinAlgError;

    /// Accepts `Q`, `QQ`, `F<p>`, `F_<p>`, `Fp<p>` and `GF(<p>)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "Q" || t == "QQ" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix("Fp"))
            .or_else(|| t.strip_prefix("F_"))
            .or_else(|| t.strip_prefix('F'))
            .ok_or_else(|| LinAlgError::BadField(s.to_string()))?;
        let p: u64 = digits.parse().map_err(|_| LinAlgError::BadField(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Modular(v) => write!(f, "{v}"),
        }
    }
}

impl Scalar {
    /// Signed representative used when printing (`p-1` prints as `-1`).
    pub fn display_signed(&self, field: &FieldSpec) -> (bool, String) {
        match self {
            Scalar::Rational(r) => (r.is_negative(), r.abs().to_string()),
            Scalar::Modular(v) => {
                let p = field.characteristic();
                if *v > p / 2 {
                    (true, (p - v).to_string())
                } else {
                    (false, v.to_string())
                }
            }
        }
    }
}
