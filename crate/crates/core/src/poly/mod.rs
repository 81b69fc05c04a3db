//! Sparse multivariate polynomials over a generic [`Scalar`].
//!
//! A [`MultiPoly`] carries a representation tag: [`Rep::X`] for ordinary
//! polynomials in `x_1..x_N`, [`Rep::P`] for polynomials in the symbolic
//! variables `p_1..p_N`. Arithmetic never mixes the two. Variable indices in
//! this API are zero-based.

mod json;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

pub use json::{PolyJson, TermJson};

/// Which variables a polynomial is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rep {
    X,
    P,
}

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then the first differing exponent.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps.into_boxed_slice())
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial::new(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn with(&self, i: usize, e: u32) -> Monomial {
        let mut m = self.0.clone();
        m[i] = e;
        Monomial(m)
    }

    pub fn swapped(&self, i: usize, j: usize) -> Monomial {
        let mut m = self.0.clone();
        m.swap(i, j);
        Monomial(m)
    }

    /// All exponent vectors of total degree `d` in `nvars` variables.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        fn rec(rest: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if rest == 1 {
                cur.push(d);
                out.push(Monomial::new(cur.clone()));
                cur.pop();
                return;
            }
            for e in (0..=d).rev() {
                cur.push(e);
                rec(rest - 1, d - e, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial::new(Vec::new()));
            }
            return out;
        }
        rec(nvars, d, &mut Vec::with_capacity(nvars), &mut out);
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq)]
pub struct MultiPoly<F> {
    nvars: usize,
    rep: Rep,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Scalar> MultiPoly<F> {
    pub fn zero(nvars: usize, rep: Rep) -> Self {
        MultiPoly { nvars, rep, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, rep: Rep, c: F) -> Self {
        let mut p = Self::zero(nvars, rep);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize, rep: Rep) -> Self {
        Self::constant(nvars, rep, F::one())
    }

    /// The single variable `v_i`.
    pub fn var(nvars: usize, rep: Rep, i: usize) -> Self {
        Self::monomial(Monomial::var(nvars, i), F::one(), rep)
    }

    pub fn monomial(m: Monomial, c: F, rep: Rep) -> Self {
        let mut p = Self::zero(m.nvars(), rep);
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I>(nvars: usize, rep: Rep, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, F)>,
    {
        let mut p = Self::zero(nvars, rep);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::NVarsMismatch { expected: nvars, got: m.nvars() });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rep(&self) -> Rep {
        self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn constant_term(&self) -> F {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        MultiPoly {
            nvars: self.nvars,
            rep: self.rep,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Adds `c * m`, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.nvars(), self.nvars);
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add_term_ref(&mut self, m: &Monomial, c: &F) {
        if c.is_zero() {
            return;
        }
        if let Some(v) = self.terms.get_mut(m) {
            *v += c;
            if v.is_zero() {
                self.terms.remove(m);
            }
        } else {
            self.terms.insert(m.clone(), c.clone());
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.rep != other.rep {
            return Err(Error::RepMismatch(format!("{:?} vs {:?}", self.rep, other.rep)));
        }
        if self.nvars != other.nvars {
            return Err(Error::NVarsMismatch { expected: self.nvars, got: other.nvars });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term_ref(m, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.nvars, self.rep);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb);
            }
        }
        Ok(out)
    }

    /// In-place `self += other`; panics on incompatible operands.
    pub fn add_assign_poly(&mut self, other: &Self) {
        self.check_compatible(other).expect("incompatible polynomials");
        for (m, c) in &other.terms {
            self.add_term_ref(m, c);
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.rep);
        }
        self.map_coeffs(|v| v.clone() * c)
    }

    pub fn mul_int(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero(self.nvars, self.rep);
        }
        self.map_coeffs(|v| v.mul_int(k))
    }

    /// Applies `f` to every coefficient; zeros produced by `f` are pruned.
    pub fn map_coeffs<G: Scalar>(&self, f: impl Fn(&F) -> G) -> MultiPoly<G> {
        MultiPoly {
            nvars: self.nvars,
            rep: self.rep,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn try_map_coeffs<G: Scalar>(
        &self,
        f: impl Fn(&F) -> Result<G>,
    ) -> Result<MultiPoly<G>> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = f(c)?;
            if !v.is_zero() {
                terms.insert(m.clone(), v);
            }
        }
        Ok(MultiPoly { nvars: self.nvars, rep: self.rep, terms })
    }

    /// Same polynomial, relabelled as the other representation.
    pub fn with_rep(mut self, rep: Rep) -> Self {
        self.rep = rep;
        self
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange(format!(
                "variable {i} with {} variables",
                self.nvars
            )));
        }
        Ok(())
    }

    /// `f` with variables `i` and `j` interchanged.
    pub fn transpose_vars(&self, i: usize, j: usize) -> Result<Self> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::IndexOutOfRange("transposition needs i != j".into()));
        }
        Ok(MultiPoly {
            nvars: self.nvars,
            rep: self.rep,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.swapped(i, j), c.clone()))
                .collect(),
        })
    }

    /// Substitutes `v_i -> v_j`, or `v_i -> 0` when `to` is `None`.
    pub fn substitute_var(&self, i: usize, to: Option<usize>) -> Result<Self> {
        self.check_index(i)?;
        let mut out = Self::zero(self.nvars, self.rep);
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            match to {
                None => {
                    if e == 0 {
                        out.add_term_ref(m, c);
                    }
                }
                Some(j) => {
                    self.check_index(j)?;
                    let mm = m.with(i, 0);
                    let ej = mm.exps()[j];
                    out.add_term(mm.with(j, ej + e), c.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn partial_derivative(&self, i: usize) -> Result<Self> {
        self.check_index(i)?;
        let mut out = Self::zero(self.nvars, self.rep);
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            if e > 0 {
                out.add_term(m.with(i, e - 1), c.mul_int(e as i64));
            }
        }
        Ok(out)
    }

    /// Exact quotient by the variable `v_i`. Panics if a term is not
    /// divisible, which indicates an arithmetic bug upstream.
    pub fn div_by_var_exact(&self, i: usize) -> Result<Self> {
        self.check_index(i)?;
        let mut out = Self::zero(self.nvars, self.rep);
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            assert!(e > 0, "inexact division by a variable");
            out.add_term(m.with(i, e - 1), c.clone());
        }
        Ok(out)
    }

    /// Exact quotient by `v_i - v_j` via synthetic division in `v_i`.
    /// Panics on a nonzero remainder, which indicates an arithmetic bug
    /// upstream.
    pub fn div_by_difference_exact(&self, i: usize, j: usize) -> Result<Self> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::IndexOutOfRange("difference needs i != j".into()));
        }
        let mut rem = self.terms.clone();
        let mut quot = Self::zero(self.nvars, self.rep);
        loop {
            // highest power of v_i still present
            let next = rem
                .iter()
                .filter(|(m, _)| m.exps()[i] > 0)
                .max_by_key(|(m, _)| m.exps()[i])
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = next else { break };
            rem.remove(&m);
            let e = m.exps()[i];
            let q = m.with(i, e - 1);
            // subtract c * q * (v_i - v_j) = c*m - c*q*v_j
            let shifted = q.with(j, q.exps()[j] + 1);
            let mut tmp = MultiPoly { nvars: self.nvars, rep: self.rep, terms: rem };
            tmp.add_term(shifted, c.clone());
            rem = tmp.terms;
            quot.add_term(q, c);
        }
        assert!(rem.is_empty(), "inexact division by a difference of variables");
        Ok(quot)
    }

    /// `(f - f(x(i,j))) / (x_i - x_j)`, computed monomial by monomial.
    pub fn divided_difference(&self, i: usize, j: usize) -> Result<Self> {
        if self.rep != Rep::X {
            return Err(Error::RepMismatch("divided difference needs X rep".into()));
        }
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::IndexOutOfRange("divided difference needs i != j".into()));
        }
        let mut out = Self::zero(self.nvars, self.rep);
        for (m, c) in &self.terms {
            divided_difference_term(&mut out, m, c, i, j);
        }
        Ok(out)
    }

    /// Evaluates at `point`, embedding coefficients with `embed`.
    pub fn evaluate_with<G: Scalar>(&self, point: &[G], embed: impl Fn(&F) -> G) -> Result<G> {
        if point.len() != self.nvars {
            return Err(Error::NVarsMismatch { expected: self.nvars, got: point.len() });
        }
        let mut powers: Vec<Vec<G>> = vec![vec![G::one()]; self.nvars];
        let mut acc = G::zero();
        for (m, c) in &self.terms {
            let mut t = embed(c);
            for (k, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[k];
                while pw.len() <= e as usize {
                    let next = pw.last().unwrap().clone() * &point[k];
                    pw.push(next);
                }
                t = t * &pw[e as usize];
            }
            acc += &t;
        }
        Ok(acc)
    }

    pub fn evaluate(&self, point: &[F]) -> Result<F> {
        self.evaluate_with(point, F::clone)
    }
}

impl<F: Field> MultiPoly<F> {
    /// Returns `(d, d * self)` with `d` clearing every coefficient
    /// denominator. Operators that are linear over the scalars can then run
    /// on the cheaper polynomial-coefficient form.
    pub fn clear_denominators(&self) -> (F, Self) {
        let d = F::common_denominator(self.terms.values());
        if d.is_one() {
            return (d, self.clone());
        }
        let scaled = self.scale(&d);
        (d, scaled)
    }
}


/// Adds `c * (m - m(i,j)) / (x_i - x_j)` into `out`.
pub(crate) fn divided_difference_term<F: Scalar>(
    out: &mut MultiPoly<F>,
    m: &Monomial,
    c: &F,
    i: usize,
    j: usize,
) {
    let a = m.exps()[i];
    let b = m.exps()[j];
    if a == b {
        return;
    }
    let (lo, d, coeff) = if a > b { (b, a - b, c.clone()) } else { (a, b - a, -c.clone()) };
    for k in 0..d {
        let mm = m.with(i, lo + k).with(j, lo + d - 1 - k);
        out.add_term(mm, coeff.clone());
    }
}

impl<F: Scalar> Add for MultiPoly<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("incompatible polynomials")
    }
}

impl<F: Scalar> Sub for MultiPoly<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).expect("incompatible polynomials")
    }
}

impl<F: Scalar> Mul for MultiPoly<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("incompatible polynomials")
    }
}

impl<'a, F: Scalar> Mul<&'a MultiPoly<F>> for &'a MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn mul(self, rhs: &'a MultiPoly<F>) -> MultiPoly<F> {
        self.checked_mul(rhs).expect("incompatible polynomials")
    }
}

impl<F: Scalar> Neg for MultiPoly<F> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<F: Scalar> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let var = match self.rep {
            Rep::X => "x",
            Rep::P => "p",
        };
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}]")?;
            for (k, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*{var}{}", k + 1)?,
                    _ => write!(f, "*{var}{}^{e}", k + 1)?,
                }
            }
        }
        Ok(())
    }
}

impl<F: Scalar> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{:?}; {}]({self})", self.rep, self.nvars)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Gaussian, KappaScalar, Rational};
    use num_traits::{One, Zero};

    type P = MultiPoly<Rational>;

    fn x(n: usize, i: usize) -> P {
        P::var(n, Rep::X, i)
    }

    #[test]
    fn ring_examples() {
        let (x1, x2) = (x(2, 0), x(2, 1));
        let lhs = (x1.clone() + x2.clone()) * (x1.clone() - x2.clone());
        assert_eq!(lhs, x1.clone() * x1.clone() - x2.clone() * x2.clone());
        assert_eq!(x1.clone() + P::zero(2, Rep::X), x1);
        // (x1 + k x2) x1 = x1^2 + k x1 x2
        let k = KappaScalar::kappa();
        let y1 = MultiPoly::<KappaScalar>::var(2, Rep::X, 0);
        let y2 = MultiPoly::<KappaScalar>::var(2, Rep::X, 1);
        let lhs = (y1.clone() + y2.scale(&k)) * y1.clone();
        let rhs = y1.clone() * y1.clone() + (y1 * y2).scale(&k);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mixing_reps_is_an_error() {
        let a = P::var(2, Rep::X, 0);
        let b = P::var(2, Rep::P, 0);
        assert!(matches!(a.checked_add(&b), Err(Error::RepMismatch(_))));
        let c = P::var(3, Rep::X, 0);
        assert!(matches!(a.checked_mul(&c), Err(Error::NVarsMismatch { .. })));
    }

    #[test]
    fn transpose_examples() {
        let f = x(3, 0) * x(3, 0) * x(3, 1);
        assert_eq!(f.transpose_vars(0, 1).unwrap(), x(3, 0) * x(3, 1) * x(3, 1));
        let s = x(3, 0) + x(3, 1);
        assert_eq!(s.transpose_vars(0, 1).unwrap(), s);
        assert!(f.transpose_vars(0, 3).is_err());
    }

    #[test]
    fn divided_difference_examples() {
        let (x1, x2) = (x(2, 0), x(2, 1));
        let sq = x1.clone() * x1.clone();
        assert_eq!(sq.divided_difference(0, 1).unwrap(), x1.clone() + x2.clone());
        let sym = x1.clone() * x2.clone() + x1.clone() + x2.clone();
        assert!(sym.divided_difference(0, 1).unwrap().is_zero());
        let cube = sq.clone() * x1.clone();
        let expect = sq + x1.clone() * x2.clone() + x2.clone() * x2.clone();
        assert_eq!(cube.divided_difference(0, 1).unwrap(), expect);
        assert!(cube.clone().with_rep(Rep::P).divided_difference(0, 1).is_err());
        // the synthetic-division route agrees
        let diff = cube.clone() - cube.transpose_vars(0, 1).unwrap();
        assert_eq!(diff.div_by_difference_exact(0, 1).unwrap(), expect);
    }

    #[test]
    #[should_panic(expected = "inexact")]
    fn inexact_difference_division_panics() {
        let _ = x(2, 0).div_by_difference_exact(0, 1);
    }

    #[test]
    fn evaluation_at_gaussian_point() {
        let pt = vec![
            Gaussian::new(rat(1, 1), rat(1, 1)),
            Gaussian::new(rat(1, 1), rat(-1, 1)),
            Gaussian::zero(),
        ];
        let emb = |c: &Rational| Gaussian::real(c.clone());
        let d = x(3, 0) - x(3, 1);
        assert_eq!(d.evaluate_with(&pt, emb).unwrap(), Gaussian::new(rat(0, 1), rat(2, 1)));
        let p = x(3, 0) * x(3, 1);
        assert_eq!(p.evaluate_with(&pt, emb).unwrap(), Gaussian::from_int(2));
        assert_eq!(P::one(3, Rep::X).evaluate_with(&pt, emb).unwrap(), Gaussian::one());
        assert!(p.evaluate_with(&pt[..2], emb).is_err());
    }

    #[test]
    fn monomials_of_degree() {
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_of_degree(5, 8).len(), 495);
        assert_eq!(Monomial::all_of_degree(2, 0), vec![Monomial::one(2)]);
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::new(vec![0, 2]);
        let b = Monomial::new(vec![1, 0]);
        let c = Monomial::new(vec![2, 0]);
        assert!(b < a);
        assert!(a < c);
    }
}
