//! Planar polynomials: those depending on `p_1, p_2` only.
//!
//! The symmetric basis `phi_{n,j}` and antisymmetric basis `psi_{n,j}` are
//! the coefficients of `t^n s^j` in the generating functions
//!
//! ```text
//! u_1 = (1 - st(p1+p2) + t^2 p1 p2) / ((1 - 2st p1 + t^2 p1^2)(1 - 2st p2 + t^2 p2^2))
//! u_2 = t (p1 - p2)                 / ((1 - 2st p1 + t^2 p1^2)(1 - 2st p2 + t^2 p2^2))
//! ```
//!
//! `T_1 + T_2` and `T_1 - T_2` act on these bases by two-term rules, so
//! planar polynomials are stored by their basis expansion and the P-rep
//! polynomial is only materialized when asked for.

mod gpoly;
mod harmonic;
mod oracle;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::dunkl::{DunklContext, SumDiff};
use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly, Rep};
use crate::scalar::{factorial, pochhammer, pow2, Rational, Scalar};

pub use gpoly::{g_poly, GKind, GPolyFamily, GTables};
pub use harmonic::{harmonic, harmonic_with, three_term_residuals, BasisTermJson, HarmonicJson};
pub use oracle::{u_series_oracle, USeries};

/// Eigenvalue of the transposition `(1,2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Symmetry {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Symmetry {
    pub fn flip(self) -> Self {
        match self {
            Symmetry::Plus => Symmetry::Minus,
            Symmetry::Minus => Symmetry::Plus,
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Symmetry::Plus => 1,
            Symmetry::Minus => -1,
        }
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symmetry::Plus => "+",
            Symmetry::Minus => "-",
        })
    }
}

impl std::str::FromStr for Symmetry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(Symmetry::Plus),
            "-" | "minus" => Ok(Symmetry::Minus),
            _ => Err(Error::Parse(format!("unknown sign {s:?}"))),
        }
    }
}

/// Whether `phi_{n,j}` (`Plus`) or `psi_{n,j}` (`Minus`) can be nonzero.
pub fn index_in_range(sym: Symmetry, n: u32, j: i64) -> bool {
    let n = n as i64;
    match sym {
        Symmetry::Plus => (0..=n).contains(&j) && (n - j) % 2 == 0,
        Symmetry::Minus => (0..n).contains(&j) && (n - 1 - j) % 2 == 0,
    }
}

fn embed(nvars: usize, a: u32, b: u32) -> Monomial {
    let mut e = vec![0; nvars];
    e[0] = a;
    e[1] = b;
    Monomial::new(e)
}

/// `phi_{n,j}` in the P-rep, from the closed form in `p_{a,b} = p_1^a p_2^b`.
pub fn phi_p_rep<F: Scalar>(nvars: usize, n: u32, j: u32) -> MultiPoly<F> {
    let mut out = MultiPoly::zero(nvars, Rep::P);
    if !index_in_range(Symmetry::Plus, n, j as i64) {
        return out;
    }
    let k = (n - j) / 2;
    let scale = pow2(n as i64 - 1 - 2 * k as i64);
    for i in 0..=k {
        let num = pochhammer(&Rational::from_integer((n + 1 - 2 * k).into()), 2 * i);
        let den = factorial(i)
            * pochhammer(&Rational::from_integer((1 - n as i64 + 2 * k as i64 - 2 * i as i64).into()), i);
        let c = F::from_rational(&(num / den * &scale));
        out.add_term(embed(nvars, n - k + i, k - i), c.clone());
        out.add_term(embed(nvars, k - i, n - k + i), c);
    }
    out
}

/// `psi_{n,j}` in the P-rep.
pub fn psi_p_rep<F: Scalar>(nvars: usize, n: u32, j: u32) -> MultiPoly<F> {
    let mut out = MultiPoly::zero(nvars, Rep::P);
    if !index_in_range(Symmetry::Minus, n, j as i64) {
        return out;
    }
    let k = (n - 1 - j) / 2;
    let scale = pow2(n as i64 - 1 - 2 * k as i64);
    for i in 0..=k {
        let mut c = pochhammer(&Rational::from_integer((n - 2 * k).into()), i) / factorial(i) * &scale;
        if i % 2 == 1 {
            c = -c;
        }
        let c = F::from_rational(&c);
        out.add_term(embed(nvars, n - k + i, k - i), c.clone());
        out.add_term(embed(nvars, k - i, n - k + i), -c);
    }
    out
}

/// A homogeneous planar polynomial of definite `(1,2)`-symmetry, stored as
/// `sum_j c_j phi_{n,j}` or `sum_j c_j psi_{n,j}`.
#[derive(Clone, Debug)]
pub struct PlanarPoly<F: Scalar> {
    nvars: usize,
    degree: u32,
    symmetry: Symmetry,
    basis: BTreeMap<u32, F>,
    p_rep: OnceLock<MultiPoly<F>>,
}

impl<F: Scalar> PartialEq for PlanarPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars
            && self.degree == other.degree
            && self.symmetry == other.symmetry
            && self.basis == other.basis
    }
}

impl<F: Scalar> PlanarPoly<F> {
    pub fn zero(nvars: usize, degree: u32, symmetry: Symmetry) -> Self {
        PlanarPoly { nvars, degree, symmetry, basis: BTreeMap::new(), p_rep: OnceLock::new() }
    }

    /// Builds from `(j, c_j)` pairs; repeated indices are summed. A nonzero
    /// coefficient on an index violating the parity rules is an error.
    pub fn from_basis<I>(nvars: usize, degree: u32, symmetry: Symmetry, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, F)>,
    {
        if nvars < 2 {
            return Err(Error::Precondition(format!("planar polynomials need 2 variables, got {nvars}")));
        }
        let mut out = Self::zero(nvars, degree, symmetry);
        for (j, c) in terms {
            if c.is_zero() {
                continue;
            }
            if !index_in_range(symmetry, degree, j as i64) {
                return Err(Error::IndexOutOfRange(format!(
                    "basis index {j} for degree {degree} sign {symmetry}"
                )));
            }
            out.add_basis_term(j, c);
        }
        Ok(out)
    }

    fn add_basis_term(&mut self, j: u32, c: F) {
        use std::collections::btree_map::Entry;
        match self.basis.entry(j) {
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

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    /// Nonzero `(j, c_j)` in increasing `j`.
    pub fn basis(&self) -> &BTreeMap<u32, F> {
        &self.basis
    }

    pub fn coeff(&self, j: i64) -> F {
        u32::try_from(j)
            .ok()
            .and_then(|j| self.basis.get(&j).cloned())
            .unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.nvars, self.degree, self.symmetry);
        if !c.is_zero() {
            out.basis = self.basis.iter().map(|(&j, v)| (j, v.clone() * c)).collect();
        }
        out
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if (self.nvars, self.degree, self.symmetry) != (other.nvars, other.degree, other.symmetry) {
            return Err(Error::Precondition("adding planar polynomials of different type".into()));
        }
        let mut out = self.clone();
        out.p_rep = OnceLock::new();
        for (&j, c) in &other.basis {
            out.add_basis_term(j, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&-F::one()))
    }

    /// The polynomial in `p_1, p_2` (cached).
    pub fn p_rep(&self) -> &MultiPoly<F> {
        self.p_rep.get_or_init(|| {
            let mut out = MultiPoly::zero(self.nvars, Rep::P);
            for (&j, c) in &self.basis {
                let b = match self.symmetry {
                    Symmetry::Plus => phi_p_rep::<F>(self.nvars, self.degree, j),
                    Symmetry::Minus => psi_p_rep::<F>(self.nvars, self.degree, j),
                };
                out.add_assign_poly(&b.scale(c));
            }
            out
        })
    }

    /// `Psi^{-1}` of the P-rep.
    pub fn x_rep(&self, ctx: &DunklContext<F>) -> Result<MultiPoly<F>> {
        ctx.psi_inverse(self.p_rep())
    }

    /// Checks the `(1,2)`-symmetry and that only `p_1, p_2` occur.
    pub fn satisfies_invariants(&self) -> bool {
        let p = self.p_rep();
        let planar = p.terms().all(|(m, _)| m.exps()[2..].iter().all(|&e| e == 0));
        let swapped = p.transpose_vars(0, 1).expect("two variables");
        let expect = match self.symmetry {
            Symmetry::Plus => p.clone(),
            Symmetry::Minus => p.scale(&-F::one()),
        };
        let homogeneous = p.terms().all(|(m, _)| m.degree() == self.degree);
        planar && homogeneous && swapped == expect
    }
}

impl<F: Scalar> fmt::Display for PlanarPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.basis.is_empty() {
            return f.write_str("0");
        }
        let name = match self.symmetry {
            Symmetry::Plus => "phi",
            Symmetry::Minus => "psi",
        };
        for (k, (j, c)) in self.basis.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*{name}[{},{j}]", self.degree)?;
        }
        Ok(())
    }
}

/// `phi_{n,j}`; zero when the index is out of range.
pub fn phi<F: Scalar>(ctx: &DunklContext<F>, n: u32, j: i64) -> PlanarPoly<F> {
    basis_element(ctx.nvars(), Symmetry::Plus, n, j)
}

/// `psi_{n,j}`; zero when the index is out of range.
pub fn psi<F: Scalar>(ctx: &DunklContext<F>, n: u32, j: i64) -> PlanarPoly<F> {
    basis_element(ctx.nvars(), Symmetry::Minus, n, j)
}

fn basis_element<F: Scalar>(nvars: usize, sym: Symmetry, n: u32, j: i64) -> PlanarPoly<F> {
    let mut out = PlanarPoly::zero(nvars, n, sym);
    if index_in_range(sym, n, j) {
        out.basis.insert(j as u32, F::one());
    }
    out
}

/// `(T_1 +- T_2) f` from the action on the basis:
///
/// ```text
/// (T1+T2) phi_{n,j} = -(j+1) phi_{n-1,j+1} + (2N kappa + n + j) phi_{n-1,j-1}
/// (T1-T2) phi_{n,j} = -(2N kappa - 2 kappa + n + j + 1) psi_{n-1,j} + (2N kappa + n + j) psi_{n-1,j-2}
/// (T1+T2) psi_{n,j} = -(j+1) psi_{n-1,j+1} + (2N kappa + n + j + 1) psi_{n-1,j-1}
/// (T1-T2) psi_{n,j} = (2N kappa + n + j + 1) phi_{n-1,j}
/// ```
pub fn apply_sum_diff<F: Scalar>(
    ctx: &DunklContext<F>,
    f: &PlanarPoly<F>,
    op: SumDiff,
) -> Result<PlanarPoly<F>> {
    if f.nvars != ctx.nvars() {
        return Err(Error::NVarsMismatch { expected: ctx.nvars(), got: f.nvars });
    }
    let sym = match op {
        SumDiff::Sum => f.symmetry,
        SumDiff::Diff => f.symmetry.flip(),
    };
    let n = f.degree as i64;
    let mut out = PlanarPoly::zero(f.nvars, f.degree.saturating_sub(1), sym);
    if f.degree == 0 {
        return Ok(out);
    }
    let mut push = |j: i64, c: F| {
        if index_in_range(sym, f.degree - 1, j) && !c.is_zero() {
            out.add_basis_term(j as u32, c);
        }
    };
    for (&j, c) in &f.basis {
        let j = j as i64;
        match (f.symmetry, op) {
            (Symmetry::Plus, SumDiff::Sum) => {
                push(j + 1, c.mul_int(-(j + 1)));
                push(j - 1, ctx.affine(2, 0, n + j) * c);
            }
            (Symmetry::Plus, SumDiff::Diff) => {
                push(j, -(ctx.affine(2, -2, n + j + 1) * c));
                push(j - 2, ctx.affine(2, 0, n + j) * c);
            }
            (Symmetry::Minus, SumDiff::Sum) => {
                push(j + 1, c.mul_int(-(j + 1)));
                push(j - 1, ctx.affine(2, 0, n + j + 1) * c);
            }
            (Symmetry::Minus, SumDiff::Diff) => {
                push(j, ctx.affine(2, 0, n + j + 1) * c);
            }
        }
    }
    Ok(out)
}

/// Applies `ops` one after another, `ops[0]` first.
pub fn apply_chain<F: Scalar>(
    ctx: &DunklContext<F>,
    f: &PlanarPoly<F>,
    ops: &[SumDiff],
) -> Result<PlanarPoly<F>> {
    let mut cur = f.clone();
    for &op in ops {
        cur = apply_sum_diff(ctx, &cur, op)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, KappaScalar};
    use num_traits::One;

    type K = KappaScalar;

    fn pab(nvars: usize, terms: &[(u32, u32, i64)]) -> MultiPoly<K> {
        let mut out = MultiPoly::zero(nvars, Rep::P);
        for &(a, b, c) in terms {
            out.add_term(embed(nvars, a, b), K::from_int(c));
        }
        out
    }

    fn ctx(n: usize) -> DunklContext<K> {
        DunklContext::symbolic(n).unwrap()
    }

    #[test]
    fn phi_examples() {
        let c = ctx(3);
        assert_eq!(*phi(&c, 0, 0).p_rep(), MultiPoly::one(3, Rep::P));
        assert_eq!(*phi(&c, 2, 0).p_rep(), pab(3, &[(1, 1, 1), (2, 0, -1), (0, 2, -1)]));
        for n in 1..6 {
            let top = 1 << (n - 1);
            assert_eq!(*phi(&c, n, n as i64).p_rep(), pab(3, &[(n, 0, top), (0, n, top)]));
        }
    }

    #[test]
    fn psi_examples() {
        let c = ctx(2);
        assert_eq!(*psi(&c, 1, 0).p_rep(), pab(2, &[(1, 0, 1), (0, 1, -1)]));
        assert_eq!(
            *psi(&c, 3, 0).p_rep(),
            pab(2, &[(2, 1, 1), (1, 2, -1), (3, 0, -1), (0, 3, 1)])
        );
        for n in 1..6 {
            let top = 1 << (n - 1);
            assert_eq!(*psi(&c, n, n as i64 - 1).p_rep(), pab(2, &[(n, 0, top), (0, n, -top)]));
        }
    }

    #[test]
    fn parity_violations_are_zero() {
        let c = ctx(2);
        assert!(phi(&c, 3, 0).is_zero());
        assert!(phi(&c, 2, -2).is_zero());
        assert!(phi(&c, 2, 4).is_zero());
        assert!(psi(&c, 0, 0).is_zero());
        assert!(psi(&c, 3, 1).is_zero());
        assert!(PlanarPoly::from_basis(2, 3, Symmetry::Plus, [(0, K::one())]).is_err());
    }

    #[test]
    fn basis_invariants() {
        let c = ctx(3);
        for n in 0..7 {
            for j in 0..=n as i64 {
                assert!(phi(&c, n, j).satisfies_invariants());
                assert!(psi(&c, n, j).satisfies_invariants());
            }
        }
    }

    #[test]
    fn degree_zero_is_killed() {
        let c = ctx(2);
        assert!(apply_sum_diff(&c, &phi(&c, 0, 0), SumDiff::Sum).unwrap().is_zero());
        assert!(apply_sum_diff(&c, &phi(&c, 0, 0), SumDiff::Diff).unwrap().is_zero());
    }

    #[test]
    fn diff_on_psi_rule() {
        let c = ctx(3);
        for n in 1..6 {
            for j in 0..n as i64 {
                let got = apply_sum_diff(&c, &psi(&c, n, j), SumDiff::Diff).unwrap();
                let want = phi(&c, n - 1, j).scale(&c.affine(2, 0, n as i64 + j + 1));
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn rules_agree_with_p_rep_operators() {
        for nv in [2, 3] {
            let c = ctx(nv);
            for n in 0..6 {
                for j in 0..=n as i64 {
                    for f in [phi(&c, n, j), psi(&c, n, j)] {
                        for op in [SumDiff::Sum, SumDiff::Diff] {
                            let by_rule = apply_sum_diff(&c, &f, op).unwrap();
                            let t1 = c.apply_dunkl_p(0, f.p_rep()).unwrap();
                            let t2 = c.apply_dunkl_p(1, f.p_rep()).unwrap();
                            let direct = match op {
                                SumDiff::Sum => t1 + t2,
                                SumDiff::Diff => t1 - t2,
                            };
                            assert_eq!(*by_rule.p_rep(), direct, "n={n} j={j} {op:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn specialized_rules() {
        let c = DunklContext::specialized(2, rat(1, 3)).unwrap();
        let f = phi(&c, 1, 1);
        // (T1+T2)(p_1 + p_2) = 2N kappa + 2
        let got = apply_sum_diff(&c, &f, SumDiff::Sum).unwrap();
        assert_eq!(got.coeff(0), rat(10, 3));
    }
}
