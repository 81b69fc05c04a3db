//! Dunkl operators acting on the p-representation.


use super::DunklContext;
use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly, Rep};
use crate::scalar::Scalar;

impl<F: Scalar> DunklContext<F> {
    fn check_p(&self, g: &MultiPoly<F>) -> Result<()> {
        if g.rep() != Rep::P {
            return Err(Error::RepMismatch("expected P rep".into()));
        }
        if g.nvars() != self.nvars {
            return Err(Error::NVarsMismatch { expected: self.nvars, got: g.nvars() });
        }
        Ok(())
    }

    /// `Psi T_i Psi^{-1} g` by the substitution/difference formula
    ///
    /// `T_i g = dg/dp_i + N kappa (g - (p_i -> 0) g) / p_i
    ///        + kappa sum_{j != i} ((p_i -> p_j) g + (p_j -> p_i) g - g - (p_i <-> p_j) g) / (p_i - p_j)`.
    pub fn apply_dunkl_p(&self, i: usize, g: &MultiPoly<F>) -> Result<MultiPoly<F>> {
        self.check_p(g)?;
        self.check_index(i)?;
        let mut out = g.partial_derivative(i)?;
        let dropped = g.checked_sub(&g.substitute_var(i, None)?)?;
        let shifted = dropped.div_by_var_exact(i)?;
        out.add_assign_poly(&shifted.scale(&self.affine(1, 0, 0)));
        let mut pair_terms = MultiPoly::zero(self.nvars, Rep::P);
        for j in (0..self.nvars).filter(|&j| j != i) {
            let num = g
                .substitute_var(i, Some(j))?
                .checked_add(&g.substitute_var(j, Some(i))?)?
                .checked_sub(g)?
                .checked_sub(&g.transpose_vars(i, j)?)?;
            if num.is_zero() {
                continue;
            }
            pair_terms.add_assign_poly(&num.div_by_difference_exact(i, j)?);
        }
        if !pair_terms.is_zero() {
            out.add_assign_poly(&pair_terms.scale(&self.kappa));
        }
        Ok(out)
    }

    /// Explicit image of `T_i p_alpha` under `Psi`:
    ///
    /// `(N kappa + alpha_i) p^(alpha - e_i)
    ///  + kappa sum_{j != i} sum_{m < alpha_j} (p_i^(alpha_i+alpha_j-1-m) p_j^m - p_i^m p_j^(alpha_i+alpha_j-1-m)) prod_{n != i,j} p_n^alpha_n`
    ///
    /// and zero when `alpha_i = 0`.
    pub fn dunkl_on_p_monomial(&self, i: usize, alpha: &Monomial) -> Result<MultiPoly<F>> {
        self.check_index(i)?;
        if alpha.nvars() != self.nvars {
            return Err(Error::NVarsMismatch { expected: self.nvars, got: alpha.nvars() });
        }
        let mut out = MultiPoly::zero(self.nvars, Rep::P);
        let ai = alpha.exps()[i];
        if ai == 0 {
            return Ok(out);
        }
        out.add_term(alpha.with(i, ai - 1), self.affine(1, 0, ai as i64));
        let mut pair_terms = MultiPoly::zero(self.nvars, Rep::P);
        for j in (0..self.nvars).filter(|&j| j != i) {
            let aj = alpha.exps()[j];
            for m in 0..aj {
                let hi = ai + aj - 1 - m;
                pair_terms.add_term(alpha.with(i, hi).with(j, m), F::one());
                pair_terms.add_term(alpha.with(i, m).with(j, hi), -F::one());
            }
        }
        if !pair_terms.is_zero() {
            out.add_assign_poly(&pair_terms.scale(&self.kappa));
        }
        Ok(out)
    }
}
