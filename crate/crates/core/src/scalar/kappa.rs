use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Zero};

use super::{Field, KappaPoly, Rational, Scalar};
use crate::error::{Error, Result};

/// Element of Q(kappa) in normal form: `gcd(num, den) = 1`, `den` monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KappaScalar {
    num: KappaPoly,
    den: KappaPoly,
}

impl KappaScalar {
    pub fn new(num: KappaPoly, den: KappaPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(num: KappaPoly) -> Self {
        KappaScalar { num, den: KappaPoly::one() }
    }

    pub fn kappa() -> Self {
        Self::from_poly(KappaPoly::kappa())
    }

    pub fn num(&self) -> &KappaPoly {
        &self.num
    }

    pub fn den(&self) -> &KappaPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    fn normalized(num: KappaPoly, den: KappaPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            let inv = den.coeffs()[0].recip();
            return KappaScalar { num: num.scale(&inv), den: KappaPoly::one() };
        }
        let g = KappaPoly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            KappaScalar { num, den }
        } else {
            let inv = lc.recip();
            KappaScalar { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    /// Evaluates at a rational kappa; a vanishing denominator is a pole.
    pub fn specialize(&self, value: &Rational) -> Result<Rational> {
        let d = self.den.eval(value);
        if d.is_zero() {
            return Err(Error::Pole(value.to_string()));
        }
        Ok(self.num.eval(value) / d)
    }
}

impl Zero for KappaScalar {
    fn zero() -> Self {
        KappaScalar { num: KappaPoly::zero(), den: KappaPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for KappaScalar {
    fn one() -> Self {
        KappaScalar { num: KappaPoly::one(), den: KappaPoly::one() }
    }
}

impl<'a> AddAssign<&'a KappaScalar> for KappaScalar {
    fn add_assign(&mut self, rhs: &'a KappaScalar) {
        if rhs.is_zero() {
            return;
        }
        if self.den == rhs.den {
            self.num += &rhs.num;
            if !self.den.is_one() {
                let num = std::mem::take(&mut self.num);
                let den = std::mem::take(&mut self.den);
                *self = Self::normalized(num, den);
            } else if self.num.is_zero() {
                *self = Self::zero();
            }
            return;
        }
        let g = KappaPoly::gcd(&self.den, &rhs.den);
        let rd = rhs.den.div_exact(&g);
        let sd = self.den.div_exact(&g);
        let num = self.num.clone() * &rd + rhs.num.clone() * &sd;
        let den = std::mem::take(&mut self.den) * &rd;
        *self = Self::normalized(num, den);
    }
}

impl<'a> SubAssign<&'a KappaScalar> for KappaScalar {
    fn sub_assign(&mut self, rhs: &'a KappaScalar) {
        *self += &(-rhs.clone());
    }
}

impl Add for KappaScalar {
    type Output = KappaScalar;
    fn add(mut self, rhs: KappaScalar) -> KappaScalar {
        self += &rhs;
        self
    }
}

impl Sub for KappaScalar {
    type Output = KappaScalar;
    fn sub(mut self, rhs: KappaScalar) -> KappaScalar {
        self -= &rhs;
        self
    }
}

impl Neg for KappaScalar {
    type Output = KappaScalar;
    fn neg(self) -> KappaScalar {
        KappaScalar { num: -self.num, den: self.den }
    }
}

impl<'a> Mul<&'a KappaScalar> for KappaScalar {
    type Output = KappaScalar;
    fn mul(self, rhs: &'a KappaScalar) -> KappaScalar {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(self.num * &rhs.num);
        }
        // cross-cancel before multiplying
        let g1 = KappaPoly::gcd(&self.num, &rhs.den);
        let g2 = KappaPoly::gcd(&rhs.num, &self.den);
        let num = self.num.div_exact(&g1) * &rhs.num.div_exact(&g2);
        let den = self.den.div_exact(&g2) * &rhs.den.div_exact(&g1);
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            KappaScalar { num, den }
        } else {
            let inv = lc.recip();
            KappaScalar { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }
}

impl Mul for KappaScalar {
    type Output = KappaScalar;
    fn mul(self, rhs: KappaScalar) -> KappaScalar {
        self * &rhs
    }
}

/// Panics on division by zero; use [`Field::try_div`] for a checked quotient.
impl Div for KappaScalar {
    type Output = KappaScalar;
    fn div(self, rhs: KappaScalar) -> KappaScalar {
        self.try_div(&rhs).expect("division by zero in Q(kappa)")
    }
}

impl Scalar for KappaScalar {
    fn from_rational(q: &Rational) -> Self {
        Self::from_poly(KappaPoly::constant(q.clone()))
    }

    fn mul_int(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        KappaScalar { num: self.num.mul_int(k), den: self.den.clone() }
    }

    fn mul_rational(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        KappaScalar { num: self.num.scale(q), den: self.den.clone() }
    }
}

impl Field for KappaScalar {
    fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    fn common_denominator<'a, I>(values: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
    {
        let mut l = KappaPoly::one();
        for v in values {
            if !v.den.is_one() {
                l = KappaPoly::lcm(&l, &v.den);
            }
        }
        Self::from_poly(l)
    }
}

/// `num | den`, each in the [`KappaPoly`] text format.
impl fmt::Display for KappaScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.num, self.den)
    }
}

impl fmt::Debug for KappaScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// Accepts `num | den` or a bare polynomial.
impl FromStr for KappaScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('|') {
            Some((n, d)) => KappaScalar::new(n.parse()?, d.parse()?),
            None => Ok(KappaScalar::from_poly(s.parse()?)),
        }
    }
}
