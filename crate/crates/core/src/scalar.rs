//! Exact scalar fields.
//!
//! Everything in the crate is generic over [`Field`], a thin extension of the
//! `num-traits` numeric tower. Two implementations ship: arbitrary-precision
//! rationals ([`Rational`], always stored in lowest terms by `num-rational`)
//! and prime fields [`Fp<P>`] with a compile-time modulus.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision rational numbers.
pub type Rational = BigRational;

/// Which field a computation runs over. Used in file formats and reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldKind {
    Rational,
    Prime { p: u64 },
}

impl Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::Prime { p } => write!(f, "F_{p}"),
        }
    }
}

/// An exact field.
pub trait Field:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Hash
    + Ord
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + Send
    + Sync
    + 'static
{
    fn kind() -> FieldKind;

    fn from_i64(n: i64) -> Self;

    /// Image of a rational number; `None` when the denominator vanishes in
    /// this field.
    fn from_rational(q: &Rational) -> Option<Self>;

    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    /// Parse an integer or a `p/q` literal.
    fn parse(s: &str) -> Result<Self> {
        let q = parse_rational(s)?;
        Self::from_rational(&q).ok_or_else(|| {
            Error::Parse(format!(
                "`{s}` has a denominator divisible by the characteristic"
            ))
        })
    }

    fn from_ratio(num: i64, den: i64) -> Option<Self> {
        if den == 0 {
            return None;
        }
        Self::from_rational(&Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// True when the printed form of the value carries a leading minus sign.
    fn is_negative_literal(&self) -> bool {
        false
    }

    fn characteristic() -> u64 {
        match Self::kind() {
            FieldKind::Rational => 0,
            FieldKind::Prime { p } => p,
        }
    }

    fn power(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            let sq = base.clone() * base.clone();
            base = sq;
            e >>= 1;
        }
        acc
    }
}

/// Parse `"n"` or `"p/q"` (optionally signed) into a normalized rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid scalar literal `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

impl Field for Rational {
    fn kind() -> FieldKind {
        FieldKind::Rational
    }

    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn from_rational(q: &Rational) -> Option<Self> {
        Some(q.clone())
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn is_negative_literal(&self) -> bool {
        self.is_negative()
    }
}

pub const fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of the prime field `F_P`. The modulus must be a prime `>= 5`;
/// this is checked at compile time on first use of the type.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const VALID: () = assert!(is_prime(P) && P >= 5, "Fp modulus must be a prime >= 5");

    pub fn new(v: u64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::VALID;
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn modulus() -> u64 {
        P
    }

    /// All field elements in increasing order of representative.
    pub fn elements() -> impl Iterator<Item = Self> {
        (0..P).map(Fp::new)
    }

    /// Nonzero elements in increasing order of representative.
    pub fn units() -> impl Iterator<Item = Self> {
        (1..P).map(Fp::new)
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse().expect("division by zero in prime field")
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<'a, const P: u64> AddAssign<&'a Fp<P>> for Fp<P> {
    fn add_assign(&mut self, rhs: &'a Self) {
        *self = *self + *rhs;
    }
}

impl<'a, const P: u64> SubAssign<&'a Fp<P>> for Fp<P> {
    fn sub_assign(&mut self, rhs: &'a Self) {
        *self = *self - *rhs;
    }
}

impl<'a, const P: u64> MulAssign<&'a Fp<P>> for Fp<P> {
    fn mul_assign(&mut self, rhs: &'a Self) {
        *self = *self * *rhs;
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp::new(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp::new(1)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn kind() -> FieldKind {
        FieldKind::Prime { p: P }
    }

    fn from_i64(n: i64) -> Self {
        Fp::new(n.rem_euclid(P as i64) as u64)
    }

    fn from_rational(q: &Rational) -> Option<Self> {
        let p = BigInt::from(P);
        let num = q.numer().mod_floor(&p).to_u64()?;
        let den = q.denom().mod_floor(&p).to_u64()?;
        Fp::new(den).inverse().map(|d| Fp::new(num) * d)
    }

    fn inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.power(P - 2))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F5 = Fp<5>;

    #[test]
    fn rational_literals_normalize() {
        let q = parse_rational("6/-4").unwrap();
        assert_eq!(q, Rational::new(BigInt::from(-3), BigInt::from(2)));
        assert!(q.denom() > &BigInt::zero());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn prime_field_inverses() {
        for a in F5::units() {
            assert_eq!(a * a.inverse().unwrap(), F5::one());
        }
        assert_eq!(F5::zero().inverse(), None);
        assert_eq!(F5::from_ratio(1, 2), Some(F5::new(3)));
        assert_eq!(F5::from_ratio(1, 5), None);
        assert_eq!(F5::from_i64(-1), F5::new(4));
    }

    #[test]
    fn primality() {
        assert!(is_prime(5) && is_prime(7) && is_prime(97));
        assert!(!is_prime(1) && !is_prime(4) && !is_prime(91));
    }

    #[test]
    fn parse_into_prime_field() {
        assert_eq!(<F5 as Field>::parse("3/2").unwrap(), F5::new(4));
        assert!(<Fp<7> as Field>::parse("1/7").is_err());
    }
}
