//! Exact scalar fields.
//!
//! Everything above this module is generic over [`Scalar`] (a commutative
//! ring containing the rationals) or [`Field`]. The concrete instances are
//!
//! * [`Rational`]: arbitrary precision rationals, used when the parameter
//!   kappa is specialized to a number;
//! * [`KappaPoly`]: the ring Q\[kappa\];
//! * [`KappaScalar`]: the field Q(kappa) of rational functions;
//! * [`Gaussian<F>`]: the extension F\[i\] with i^2 = -1.

mod gaussian;
mod kappa;
mod kappa_poly;

use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use gaussian::Gaussian;
pub use kappa::KappaScalar;
pub use kappa_poly::KappaPoly;

/// Arbitrary precision rational number, always stored in lowest terms.
pub type Rational = num_rational::BigRational;

/// A commutative ring that contains Q.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn from_rational(q: &Rational) -> Self;

    fn from_int(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }

    /// `self * k` for a machine integer `k`.
    fn mul_int(&self, k: i64) -> Self {
        self.clone() * &Self::from_int(k)
    }

    fn mul_rational(&self, q: &Rational) -> Self {
        self.clone() * &Self::from_rational(q)
    }
}

/// Scalars with an exact, round-trippable text form.
pub trait ScalarText: Scalar {
    fn parse_text(s: &str) -> Result<Self>;
}

impl ScalarText for Rational {
    fn parse_text(s: &str) -> Result<Self> {
        parse_rational(s)
    }
}

impl ScalarText for KappaPoly {
    fn parse_text(s: &str) -> Result<Self> {
        s.parse()
    }
}

impl ScalarText for KappaScalar {
    fn parse_text(s: &str) -> Result<Self> {
        s.parse()
    }
}

/// A [`Scalar`] in which every nonzero element is invertible.
pub trait Field: Scalar {
    fn try_inv(&self) -> Result<Self>;

    fn try_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * &rhs.try_inv()?)
    }

    /// A nonzero `d` such that `d * v` has trivial denominator for every `v`
    /// in `values`. Fields without a notion of denominator return one.
    fn common_denominator<'a, I>(values: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
        Self: 'a,
    {
        let _ = values;
        Self::one()
    }
}

impl Scalar for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn from_int(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn mul_int(&self, k: i64) -> Self {
        self * Rational::from_integer(BigInt::from(k))
    }
}

impl Field for Rational {
    fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn common_denominator<'a, I>(values: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
    {
        let l = values
            .into_iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        Rational::from_integer(l)
    }
}

/// Rising factorial `a (a+1) ... (a+n-1)`; the empty product is one.
pub fn pochhammer<S: Scalar>(a: &S, n: u32) -> S {
    let mut acc = S::one();
    for k in 0..n {
        acc = acc * &(a.clone() + S::from_int(k as i64));
    }
    acc
}

/// `2^e` for a possibly negative exponent, as an exact rational.
pub fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Rational::from_integer(acc)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses an exact rational. Accepts `a` and `a/b`; decimals are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n
        .parse()
        .map_err(|_| Error::Parse(format!("not an exact rational: {s:?}")))?;
    let d: BigInt = d
        .parse()
        .map_err(|_| Error::Parse(format!("not an exact rational: {s:?}")))?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}
