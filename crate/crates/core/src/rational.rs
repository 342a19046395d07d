//! Exact nonnegative rationals. Thin wrapper around `num_rational::BigRational`
//! that keeps the value reduced and never negative, so subtraction is checked.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_integer(n: u64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_biguint(n: BigUint) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn new(numer: u64, denom: u64) -> Result<Self, Error> {
        Self::from_biguints(BigUint::from(numer), BigUint::from(denom))
    }

    pub fn from_biguints(numer: BigUint, denom: BigUint) -> Result<Self, Error> {
        if denom.is_zero() {
            return Err(Error::InvalidInput("denominator must be nonzero".into()));
        }
        Ok(Rational(BigRational::new(
            BigInt::from(numer),
            BigInt::from(denom),
        )))
    }

    /// Numerator of the reduced form.
    pub fn numer(&self) -> BigUint {
        self.0.numer().magnitude().clone()
    }

    /// Denominator of the reduced form, always >= 1.
    pub fn denom(&self) -> BigUint {
        self.0.denom().magnitude().clone()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_biguint(&self) -> Option<BigUint> {
        if self.0.is_integer() {
            Some(self.0.numer().magnitude().clone())
        } else {
            None
        }
    }

    /// `self - other` when the difference stays nonnegative.
    pub fn checked_sub(&self, other: &Rational) -> Option<Rational> {
        let d = &self.0 - &other.0;
        if d.is_negative() {
            None
        } else {
            Some(Rational(d))
        }
    }

    pub fn pow(&self, exp: u64) -> Rational {
        let e = u32::try_from(exp).expect("exponent too large");
        Rational(BigRational::new_raw(
            self.0.numer().pow(e),
            self.0.denom().pow(e),
        ))
    }

    /// Multiply by a natural scalar.
    pub fn scale(&self, k: &BigUint) -> Rational {
        Rational(&self.0 * BigRational::from_integer(BigInt::from(k.clone())))
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Rational> for Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(self.0 + &rhs.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let parse_nat = |t: &str| -> Result<BigUint, Error> {
            let t = t.trim();
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse(format!("expected a natural number, got `{t}`")));
            }
            t.parse::<BigUint>()
                .map_err(|e| Error::Parse(format!("bad number `{t}`: {e}")))
        };
        match s.split_once('/') {
            Some((a, b)) => Rational::from_biguints(parse_nat(a)?, parse_nat(b)?)
                .map_err(|_| Error::Parse(format!("zero denominator in `{s}`"))),
            None => Ok(Rational::from_biguint(parse_nat(s)?)),
        }
    }
}

/// Smallest t with `value | base^t`, or None when `value` has a prime factor
/// outside `base`. Runs without factoring: each round strips gcd(value, base).
pub(crate) fn min_power_dividing(value: &BigUint, base: &BigUint) -> Option<u64> {
    if value.is_one() {
        return Some(0);
    }
    if base.is_one() {
        return None;
    }
    let mut cur = value.clone();
    let mut t = 0u64;
    while !cur.is_one() {
        let g = cur.gcd(base);
        if g.is_one() {
            return None;
        }
        cur /= g;
        t += 1;
    }
    Some(t)
}

/// Inverse of `a` modulo `m` (gcd(a, m) = 1 required).
pub(crate) fn mod_inverse(a: &BigUint, m: &BigUint) -> BigUint {
    let a = BigInt::from(a.clone());
    let m = BigInt::from(m.clone());
    let ext = a.extended_gcd(&m);
    debug_assert!(ext.gcd.is_one(), "inverse requires coprime arguments");
    let inv = ext.x.mod_floor(&m);
    inv.magnitude().clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        assert_eq!(q("2/3").to_string(), "2/3");
        assert_eq!(q("4/6").to_string(), "2/3");
        assert_eq!(q("5").to_string(), "5");
        assert_eq!(q("10/2").to_string(), "5");
        assert!("2/-3".parse::<Rational>().is_err());
        assert!("1/0".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
        assert!("a/b".parse::<Rational>().is_err());
    }

    #[test]
    fn checked_sub_guards_sign() {
        assert_eq!(q("5/2").checked_sub(&q("1")), Some(q("3/2")));
        assert_eq!(q("1").checked_sub(&q("5/2")), None);
        assert_eq!(q("2/3").checked_sub(&q("2/3")), Some(Rational::zero()));
    }

    #[test]
    fn powers_stay_reduced() {
        assert_eq!(q("2/3").pow(3), q("8/27"));
        assert_eq!(q("2/3").pow(0), Rational::one());
        assert_eq!(q("0").pow(5), Rational::zero());
    }

    #[test]
    fn min_power_dividing_handles_composite_bases() {
        let b = |n: u64| BigUint::from(n);
        assert_eq!(min_power_dividing(&b(1), &b(6)), Some(0));
        assert_eq!(min_power_dividing(&b(27), &b(3)), Some(3));
        assert_eq!(min_power_dividing(&b(12), &b(6)), Some(2));
        assert_eq!(min_power_dividing(&b(8), &b(6)), Some(3));
        assert_eq!(min_power_dividing(&b(9), &b(6)), Some(2));
        assert_eq!(min_power_dividing(&b(5), &b(6)), None);
        assert_eq!(min_power_dividing(&b(10), &b(6)), None);
    }

    #[test]
    fn mod_inverse_small_cases() {
        let b = |n: u64| BigUint::from(n);
        assert_eq!(mod_inverse(&b(2), &b(9)), b(5));
        assert_eq!(mod_inverse(&b(7), &b(3)), b(1));
        assert_eq!(mod_inverse(&b(1), &b(2)), b(1));
    }
}
