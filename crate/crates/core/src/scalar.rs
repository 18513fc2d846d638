//! Exact scalar fields used as coefficients throughout the crate.
//!
//! Every algebraic routine is generic over [`Scalar`]. Floating point types
//! deliberately do not implement it: all identities checked here are exact.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed};

/// Exponent type for formal series and lattice pairings.
pub type Exp = Ratio<i64>;

/// An exact field of characteristic zero.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Hash
    + Num
    + Signed
    + FromStr
    + Send
    + Sync
    + 'static
{
    fn from_i64(n: i64) -> Self;

    fn from_exp(r: &Exp) -> Self;

    /// Numerator and denominator as decimal strings, denominator positive.
    fn to_parts(&self) -> (String, String);
}

impl Scalar for Ratio<i64> {
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(n)
    }

    fn from_exp(r: &Exp) -> Self {
        *r
    }

    fn to_parts(&self) -> (String, String) {
        (self.numer().to_string(), self.denom().to_string())
    }
}

impl Scalar for Ratio<i128> {
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(n as i128)
    }

    fn from_exp(r: &Exp) -> Self {
        Ratio::new(*r.numer() as i128, *r.denom() as i128)
    }

    fn to_parts(&self) -> (String, String) {
        (self.numer().to_string(), self.denom().to_string())
    }
}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_exp(r: &Exp) -> Self {
        BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
    }

    fn to_parts(&self) -> (String, String) {
        (self.numer().to_string(), self.denom().to_string())
    }
}

/// `n / d` as an exponent; panics on a zero denominator.
pub fn exp(n: i64, d: i64) -> Exp {
    Ratio::new(n, d)
}

/// Largest integer `<= r`.
pub fn floor_exp(r: &Exp) -> i64 {
    r.floor().to_integer()
}

/// Smallest integer `>= r`.
pub fn ceil_exp(r: &Exp) -> i64 {
    r.ceil().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parts_are_reduced() {
        let x = <Ratio<i64> as Scalar>::from_exp(&exp(6, -4));
        assert_eq!(x.to_parts(), ("-3".to_string(), "2".to_string()));
        let y = <BigRational as Scalar>::from_exp(&exp(6, -4));
        assert_eq!(y.to_parts(), ("-3".to_string(), "2".to_string()));
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(floor_exp(&exp(-1, 3)), -1);
        assert_eq!(ceil_exp(&exp(-1, 3)), 0);
        assert_eq!(ceil_exp(&exp(4, 2)), 2);
    }
}
