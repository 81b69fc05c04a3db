//! Type-A Dunkl operators.
//!
//! `T_i f = df/dx_i + kappa * sum_{j != i} (f - f(x(i,j))) / (x_i - x_j)`
//! and the Laplacian `sum_i T_i^2`, in the ordinary x-representation and in
//! the p-representation obtained from the p-basis isomorphism.

mod pbasis;
mod prep;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};


use crate::error::{Error, Result};
use crate::poly::{divided_difference_term, Monomial, MultiPoly, Rep};
use crate::scalar::{rat, KappaPoly, KappaScalar, Rational, Scalar};

/// Default bound on the degree of cached p-basis data.
pub const DEFAULT_DEGREE_CAP: u32 = 12;

/// Scalars that carry the indeterminate kappa.
pub trait SymbolicKappa: Scalar {
    fn kappa() -> Self;
}

impl SymbolicKappa for KappaPoly {
    fn kappa() -> Self {
        KappaPoly::kappa()
    }
}

impl SymbolicKappa for KappaScalar {
    fn kappa() -> Self {
        KappaScalar::kappa()
    }
}

/// `T_1 + T_2` or `T_1 - T_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SumDiff {
    Sum,
    Diff,
}

type PBasisCache<F> = HashMap<(usize, u32), Arc<MultiPoly<F>>>;

/// Number of variables, the value of kappa and the shared p-basis caches.
///
/// Immutable after construction apart from the caches, which only ever grow
/// and are guarded by locks, so a context can be shared across threads.
pub struct DunklContext<F: Scalar> {
    nvars: usize,
    kappa: F,
    specialized: Option<Rational>,
    degree_cap: u32,
    // coefficients a_n of prod_j (1 - r x_j)^(-kappa)
    series: RwLock<Vec<Arc<MultiPoly<F>>>>,
    pbasis: RwLock<PBasisCache<F>>,
    psi_inv: RwLock<HashMap<Monomial, Arc<MultiPoly<F>>>>,
}

impl<F: Scalar> std::fmt::Debug for DunklContext<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DunklContext")
            .field("nvars", &self.nvars)
            .field("kappa", &self.kappa.to_string())
            .field("degree_cap", &self.degree_cap)
            .finish()
    }
}

impl<F: SymbolicKappa> DunklContext<F> {
    /// Context with kappa kept as an indeterminate.
    pub fn symbolic(nvars: usize) -> Result<Self> {
        Self::build(nvars, F::kappa(), None)
    }
}

impl DunklContext<Rational> {
    /// Context with kappa fixed to a rational value.
    pub fn specialized(nvars: usize, kappa: Rational) -> Result<Self> {
        if nvars >= 2 && kappa <= rat(-1, nvars as i64) {
            log::warn!("kappa = {kappa} is outside the range kappa > -1/{nvars}");
        }
        Self::build(nvars, kappa.clone(), Some(kappa))
    }
}

impl<F: Scalar> DunklContext<F> {
    fn build(nvars: usize, kappa: F, specialized: Option<Rational>) -> Result<Self> {
        if nvars < 2 {
            return Err(Error::Precondition(format!("need at least 2 variables, got {nvars}")));
        }
        Ok(DunklContext {
            nvars,
            kappa,
            specialized,
            degree_cap: DEFAULT_DEGREE_CAP,
            series: RwLock::new(Vec::new()),
            pbasis: RwLock::new(HashMap::new()),
            psi_inv: RwLock::new(HashMap::new()),
        })
    }

    pub fn with_degree_cap(mut self, cap: u32) -> Self {
        self.degree_cap = cap;
        self
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn kappa(&self) -> &F {
        &self.kappa
    }

    /// The rational value of kappa, if it was specialized.
    pub fn specialized_kappa(&self) -> Option<&Rational> {
        self.specialized.as_ref()
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    /// `a * N * kappa + b * kappa + c`: the affine kappa-expressions that
    /// fill the formulas of this crate.
    pub fn affine(&self, n_kappa: i64, kappa: i64, c: i64) -> F {
        let coeff = n_kappa * self.nvars as i64 + kappa;
        self.kappa.mul_int(coeff) + F::from_int(c)
    }

    /// Turns a division by zero into a pole report when kappa is a number.
    pub fn pole(&self, e: Error) -> Error {
        match (&e, &self.specialized) {
            (Error::DivisionByZero, Some(k)) => Error::Pole(k.to_string()),
            _ => e,
        }
    }

    fn check_x(&self, f: &MultiPoly<F>) -> Result<()> {
        if f.rep() != Rep::X {
            return Err(Error::RepMismatch("expected X rep".into()));
        }
        if f.nvars() != self.nvars {
            return Err(Error::NVarsMismatch { expected: self.nvars, got: f.nvars() });
        }
        Ok(())
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange(format!("operator T_{} with N = {}", i + 1, self.nvars)));
        }
        Ok(())
    }

    /// `T_i f` on an X-rep polynomial (`i` zero-based).
    pub fn apply_dunkl_x(&self, i: usize, f: &MultiPoly<F>) -> Result<MultiPoly<F>> {
        self.check_x(f)?;
        self.check_index(i)?;
        let mut deriv = MultiPoly::zero(self.nvars, Rep::X);
        let mut diffs = MultiPoly::zero(self.nvars, Rep::X);
        for (m, c) in f.terms() {
            let a = m.exps()[i];
            if a > 0 {
                deriv.add_term(m.with(i, a - 1), c.mul_int(a as i64));
            }
            for j in (0..self.nvars).filter(|&j| j != i) {
                divided_difference_term(&mut diffs, m, c, i, j);
            }
        }
        if !diffs.is_zero() && !self.kappa.is_zero() {
            deriv.add_assign_poly(&diffs.scale(&self.kappa));
        }
        Ok(deriv)
    }

    /// `(T_1 + T_2) f` or `(T_1 - T_2) f` in the X-rep.
    pub fn apply_sum_diff_x(&self, op: SumDiff, f: &MultiPoly<F>) -> Result<MultiPoly<F>> {
        let a = self.apply_dunkl_x(0, f)?;
        let b = self.apply_dunkl_x(1, f)?;
        Ok(match op {
            SumDiff::Sum => a + b,
            SumDiff::Diff => a - b,
        })
    }

    /// `sum_i T_i^2 f`.
    pub fn apply_laplacian(&self, f: &MultiPoly<F>) -> Result<MultiPoly<F>> {
        self.check_x(f)?;
        let mut out = MultiPoly::zero(self.nvars, Rep::X);
        for i in 0..self.nvars {
            let once = self.apply_dunkl_x(i, f)?;
            if once.is_zero() {
                continue;
            }
            out.add_assign_poly(&self.apply_dunkl_x(i, &once)?);
        }
        Ok(out)
    }
}
