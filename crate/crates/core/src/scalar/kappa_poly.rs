use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{parse_rational, Rational, Scalar};
use crate::error::{Error, Result};

/// Dense univariate polynomial in kappa with rational coefficients.
///
/// `coeffs[k]` is the coefficient of `kappa^k`; the last entry is nonzero,
/// so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct KappaPoly {
    coeffs: Vec<Rational>,
}

impl KappaPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        KappaPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate.
    pub fn kappa() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    /// Horner evaluation at an element of any scalar ring.
    pub fn eval_at<S: Scalar>(&self, at: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + S::from_rational(c);
        }
        acc
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        KappaPoly { coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    /// Euclidean division over Q. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc_inv = d.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Division that is known to be exact.
    pub fn div_exact(&self, d: &Self) -> Self {
        if d.is_constant() {
            return self.scale(&d.coeffs[0].recip());
        }
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd over Q\[kappa\]; `gcd(0, 0) = 0`.
    ///
    /// Works on primitive integer images with a primitive pseudo-remainder
    /// sequence so coefficients stay small.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return Self::one();
        }
        let mut x = primitive_int(a);
        let mut y = primitive_int(b);
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_empty() {
            if y.len() == 1 {
                return Self::one();
            }
            let r = pseudo_rem(&x, &y);
            x = y;
            y = primitive_of(r);
        }
        let p = KappaPoly::new(x.into_iter().map(Rational::from_integer).collect());
        p.monic()
    }

    pub fn lcm(a: &Self, b: &Self) -> Self {
        if a.is_zero() || b.is_zero() {
            return Self::zero();
        }
        let g = Self::gcd(a, b);
        (a.div_exact(&g) * b).monic()
    }
}

fn trim_int(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn primitive_of(mut v: Vec<BigInt>) -> Vec<BigInt> {
    trim_int(&mut v);
    let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c /= &g;
        }
    }
    v
}

fn primitive_int(p: &KappaPoly) -> Vec<BigInt> {
    let l = p.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    primitive_of(
        p.coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect(),
    )
}

/// Pseudo-remainder of `a` by `b` (both trimmed, `b` nonconstant).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &lr * bc;
        }
        trim_int(&mut r);
        // keep the intermediate remainder primitive
        let g = r.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if !g.is_zero() && !g.is_one() {
            for c in r.iter_mut() {
                *c /= &g;
            }
        }
    }
    r
}

impl Zero for KappaPoly {
    fn zero() -> Self {
        KappaPoly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for KappaPoly {
    fn one() -> Self {
        KappaPoly { coeffs: vec![Rational::one()] }
    }
}

impl<'a> AddAssign<&'a KappaPoly> for KappaPoly {
    fn add_assign(&mut self, rhs: &'a KappaPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl<'a> SubAssign<&'a KappaPoly> for KappaPoly {
    fn sub_assign(&mut self, rhs: &'a KappaPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl Add for KappaPoly {
    type Output = KappaPoly;
    fn add(mut self, rhs: KappaPoly) -> KappaPoly {
        self += &rhs;
        self
    }
}

impl Sub for KappaPoly {
    type Output = KappaPoly;
    fn sub(mut self, rhs: KappaPoly) -> KappaPoly {
        self -= &rhs;
        self
    }
}

impl Neg for KappaPoly {
    type Output = KappaPoly;
    fn neg(self) -> KappaPoly {
        KappaPoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<'a> Mul<&'a KappaPoly> for KappaPoly {
    type Output = KappaPoly;
    fn mul(self, rhs: &'a KappaPoly) -> KappaPoly {
        if self.is_zero() || rhs.is_zero() {
            return KappaPoly::zero();
        }
        if rhs.is_constant() {
            return self.scale(&rhs.coeffs[0]);
        }
        if self.is_constant() {
            return rhs.scale(&self.coeffs[0]);
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        KappaPoly::new(out)
    }
}

impl Mul for KappaPoly {
    type Output = KappaPoly;
    fn mul(self, rhs: KappaPoly) -> KappaPoly {
        self * &rhs
    }
}

impl Scalar for KappaPoly {
    fn from_rational(q: &Rational) -> Self {
        KappaPoly::constant(q.clone())
    }

    fn mul_int(&self, k: i64) -> Self {
        self.scale(&Rational::from_integer(k.into()))
    }

    fn mul_rational(&self, q: &Rational) -> Self {
        self.scale(q)
    }
}

fn write_coeff_term(
    f: &mut fmt::Formatter<'_>,
    c: &Rational,
    power: usize,
    first: bool,
) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else if neg {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    match power {
        0 => write!(f, "{abs}"),
        _ => {
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            if power == 1 {
                write!(f, "k")
            } else {
                write!(f, "k^{power}")
            }
        }
    }
}

/// Ascending powers, nonzero terms only: `-1 + 3*k - 1/2*k^2`.
impl fmt::Display for KappaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            write_coeff_term(f, c, p, first)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for KappaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KappaPoly({self})")
    }
}

fn parse_term(term: &str) -> Result<(Rational, usize)> {
    let (sign, body) = match term.as_bytes().first() {
        Some(b'-') => (-1, &term[1..]),
        Some(b'+') => (1, &term[1..]),
        _ => (1, term),
    };
    let (coeff, var) = match body.find('k') {
        None => (body, None),
        Some(pos) => {
            let c = body[..pos].trim_end_matches('*');
            (c, Some(&body[pos + 1..]))
        }
    };
    let c = if coeff.is_empty() {
        Rational::one()
    } else {
        parse_rational(coeff)?
    };
    let power = match var {
        None => 0,
        Some("") => 1,
        Some(rest) => rest
            .strip_prefix('^')
            .and_then(|p| p.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("bad kappa power in {term:?}")))?,
    };
    let c = if sign < 0 { -c } else { c };
    Ok((c, power))
}

impl FromStr for KappaPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if i > start && (ch == '+' || ch == '-') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut coeffs: Vec<Rational> = Vec::new();
        for t in terms {
            let (c, p) = parse_term(t)?;
            if coeffs.len() <= p {
                coeffs.resize(p + 1, Rational::zero());
            }
            coeffs[p] += c;
        }
        Ok(KappaPoly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn kp(c: &[i64]) -> KappaPoly {
        KappaPoly::from_ints(c)
    }

    #[test]
    fn gcd_cancels_common_factor() {
        // (k^2 - 1) and (k + 1)
        let g = KappaPoly::gcd(&kp(&[-1, 0, 1]), &kp(&[1, 1]));
        assert_eq!(g, kp(&[1, 1]));
        // coprime
        assert_eq!(KappaPoly::gcd(&kp(&[1, 1]), &kp(&[2, 1])), KappaPoly::one());
        // gcd with rational coefficients is monic
        let a = kp(&[1, 2]).scale(&rat(3, 7)) * &kp(&[5, 0, 1]);
        let b = kp(&[1, 2]) * &kp(&[-3, 4]);
        assert_eq!(KappaPoly::gcd(&a, &b), KappaPoly::new(vec![rat(1, 2), rat(1, 1)]));
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = kp(&[3, -2, 5, 1, 7]);
        let d = kp(&[1, 0, 3]);
        let (q, r) = a.div_rem(&d);
        assert!(r.degree().unwrap() < 2);
        assert_eq!(q * &d + r, a);
    }

    #[test]
    fn display_and_parse() {
        let p = KappaPoly::new(vec![rat(-1, 1), rat(3, 1), rat(-1, 2), rat(1, 1)]);
        let s = p.to_string();
        assert_eq!(s, "-1 + 3*k - 1/2*k^2 + k^3");
        assert_eq!(s.parse::<KappaPoly>().unwrap(), p);
        assert_eq!("0".parse::<KappaPoly>().unwrap(), KappaPoly::zero());
        assert!("c0".parse::<KappaPoly>().is_err());
        assert_eq!("-k".parse::<KappaPoly>().unwrap(), kp(&[0, -1]));
    }
}
