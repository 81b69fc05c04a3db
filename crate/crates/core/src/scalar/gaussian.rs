use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::{Field, Rational, Scalar};
use crate::error::Result;

/// `re + i*im` over a base ring, with `i^2 = -1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gaussian<F> {
    pub re: F,
    pub im: F,
}

impl<F: Scalar> Gaussian<F> {
    pub fn new(re: F, im: F) -> Self {
        Gaussian { re, im }
    }

    pub fn real(re: F) -> Self {
        Gaussian { re, im: F::zero() }
    }

    pub fn i() -> Self {
        Gaussian { re: F::zero(), im: F::one() }
    }

    pub fn conj(&self) -> Self {
        Gaussian { re: self.re.clone(), im: -self.im.clone() }
    }
}

impl<F: Scalar> Zero for Gaussian<F> {
    fn zero() -> Self {
        Gaussian { re: F::zero(), im: F::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl<F: Scalar> One for Gaussian<F> {
    fn one() -> Self {
        Gaussian { re: F::one(), im: F::zero() }
    }
}

impl<'a, F: Scalar> AddAssign<&'a Gaussian<F>> for Gaussian<F> {
    fn add_assign(&mut self, rhs: &'a Gaussian<F>) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl<'a, F: Scalar> SubAssign<&'a Gaussian<F>> for Gaussian<F> {
    fn sub_assign(&mut self, rhs: &'a Gaussian<F>) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl<F: Scalar> Add for Gaussian<F> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<F: Scalar> Sub for Gaussian<F> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<F: Scalar> Neg for Gaussian<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Gaussian { re: -self.re, im: -self.im }
    }
}

impl<'a, F: Scalar> Mul<&'a Gaussian<F>> for Gaussian<F> {
    type Output = Self;
    fn mul(self, rhs: &'a Gaussian<F>) -> Self {
        let re = self.re.clone() * &rhs.re - self.im.clone() * &rhs.im;
        let im = self.re * &rhs.im + self.im * &rhs.re;
        Gaussian { re, im }
    }
}

impl<F: Scalar> Mul for Gaussian<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self * &rhs
    }
}

impl<F: Scalar> Scalar for Gaussian<F> {
    fn from_rational(q: &Rational) -> Self {
        Gaussian::real(F::from_rational(q))
    }

    fn mul_int(&self, k: i64) -> Self {
        Gaussian { re: self.re.mul_int(k), im: self.im.mul_int(k) }
    }
}

impl<F: Field> Field for Gaussian<F> {
    fn try_inv(&self) -> Result<Self> {
        let norm = self.re.clone() * &self.re + self.im.clone() * &self.im;
        let inv = norm.try_inv()?;
        Ok(Gaussian { re: self.re.clone() * &inv, im: -(self.im.clone() * &inv) })
    }
}

impl<F: Scalar> fmt::Display for Gaussian<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + i*({})", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, KappaScalar};

    #[test]
    fn i_squared_is_minus_one() {
        let i = Gaussian::<Rational>::i();
        assert_eq!(i.clone() * &i, -Gaussian::one());
        let z = Gaussian::new(rat(1, 1), rat(1, 1));
        assert_eq!(z.clone() * &z.conj(), Gaussian::from_int(2));
    }

    #[test]
    fn inverse_over_kappa() {
        let z = Gaussian::new(KappaScalar::kappa(), KappaScalar::one());
        assert_eq!(z.clone() * &z.try_inv().unwrap(), Gaussian::one());
    }
}
