//! The p-basis and the isomorphism `Psi p_alpha = p_1^alpha_1 ... p_N^alpha_N`.
//!
//! `p_n(x_i; x)` is the coefficient of `r^n` in
//! `(1 - r x_i)^(-1) prod_j (1 - r x_j)^(-kappa)`. The product factor is
//! expanded with the logarithmic-derivative recurrence
//! `n a_n = kappa * sum_{k=1..n} P_k a_{n-k}`, `P_k` the power sums.

use std::sync::Arc;



use super::DunklContext;
use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly, Rep};
use crate::scalar::{rat, Field, Scalar};

impl<F: Scalar> DunklContext<F> {
    fn series_coeff(&self, n: u32) -> Arc<MultiPoly<F>> {
        if let Some(a) = self.series.read().unwrap().get(n as usize) {
            return a.clone();
        }
        if n > self.degree_cap {
            return Arc::new(self.series_uncached(n));
        }
        let mut table = self.series.write().unwrap();
        while table.len() <= n as usize {
            let next = self.next_series_coeff(&table);
            table.push(Arc::new(next));
        }
        table[n as usize].clone()
    }

    fn series_uncached(&self, n: u32) -> MultiPoly<F> {
        let mut table: Vec<Arc<MultiPoly<F>>> = self.series.read().unwrap().clone();
        while table.len() <= n as usize {
            let next = self.next_series_coeff(&table);
            table.push(Arc::new(next));
        }
        (*table[n as usize]).clone()
    }

    fn next_series_coeff(&self, table: &[Arc<MultiPoly<F>>]) -> MultiPoly<F> {
        let n = table.len();
        let nv = self.nvars;
        if n == 0 {
            return MultiPoly::one(nv, Rep::X);
        }
        // sum_k P_k a_{n-k}
        let mut acc = MultiPoly::zero(nv, Rep::X);
        for k in 1..=n {
            for (m, c) in table[n - k].terms() {
                for j in 0..nv {
                    let e = m.exps()[j];
                    acc.add_term(m.with(j, e + k as u32), c.clone());
                }
            }
        }
        let factor = self.kappa.mul_rational(&rat(1, n as i64));
        acc.scale(&factor)
    }

    /// `p_n(x_i; x)` in the X-rep (`i` zero-based).
    pub fn p_basis_poly(&self, n: u32, i: usize) -> Result<Arc<MultiPoly<F>>> {
        self.check_index(i)?;
        if let Some(p) = self.pbasis.read().unwrap().get(&(i, n)) {
            return Ok(p.clone());
        }
        let mut out = MultiPoly::zero(self.nvars, Rep::X);
        for m in 0..=n {
            let a = self.series_coeff(n - m);
            for (mono, c) in a.terms() {
                let e = mono.exps()[i];
                out.add_term(mono.with(i, e + m), c.clone());
            }
        }
        let out = Arc::new(out);
        if n <= self.degree_cap {
            self.pbasis.write().unwrap().entry((i, n)).or_insert_with(|| out.clone());
        }
        Ok(out)
    }

    /// `Psi^{-1}` of the single P-monomial `p^alpha`, i.e. `p_alpha`.
    pub fn psi_inverse_monomial(&self, alpha: &Monomial) -> Result<Arc<MultiPoly<F>>> {
        if alpha.nvars() != self.nvars {
            return Err(Error::NVarsMismatch { expected: self.nvars, got: alpha.nvars() });
        }
        if let Some(p) = self.psi_inv.read().unwrap().get(alpha) {
            return Ok(p.clone());
        }
        let exps = alpha.exps();
        let out = match exps.iter().rposition(|&e| e > 0) {
            None => Arc::new(MultiPoly::one(self.nvars, Rep::X)),
            Some(k) => {
                let rest = self.psi_inverse_monomial(&alpha.with(k, 0))?;
                let pk = self.p_basis_poly(exps[k], k)?;
                Arc::new(&*rest * &*pk)
            }
        };
        if alpha.degree() <= self.degree_cap {
            self.psi_inv.write().unwrap().entry(alpha.clone()).or_insert_with(|| out.clone());
        }
        Ok(out)
    }

    /// `Psi^{-1} g`: substitutes the actual p-polynomials and expands.
    pub fn psi_inverse(&self, g: &MultiPoly<F>) -> Result<MultiPoly<F>> {
        if g.rep() != Rep::P {
            return Err(Error::RepMismatch("psi_inverse expects P rep".into()));
        }
        let mut out = MultiPoly::zero(self.nvars, Rep::X);
        for (alpha, c) in g.terms() {
            let base = self.psi_inverse_monomial(alpha)?;
            if c.is_one() {
                out.add_assign_poly(&base);
            } else {
                out.add_assign_poly(&base.scale(c));
            }
        }
        Ok(out)
    }
}

impl<F: Field> DunklContext<F> {
    /// `Psi f`: rewrites an X-rep polynomial in the p-basis by solving the
    /// change of basis degree by degree.
    pub fn psi_forward(&self, f: &MultiPoly<F>) -> Result<MultiPoly<F>> {
        self.check_x(f)?;
        let mut out = MultiPoly::zero(self.nvars, Rep::P);
        let Some(top) = f.total_degree() else {
            return Ok(out);
        };
        for d in 0..=top {
            let part = f.homogeneous_part(d);
            if part.is_zero() {
                continue;
            }
            let basis = Monomial::all_of_degree(self.nvars, d);
            let columns = basis
                .iter()
                .map(|b| self.psi_inverse_monomial(b))
                .collect::<Result<Vec<_>>>()?;
            // rows indexed by the same monomial list
            let size = basis.len();
            let mut mat: Vec<Vec<F>> = basis
                .iter()
                .map(|row| columns.iter().map(|col| col.coeff(row)).collect())
                .collect();
            let mut rhs: Vec<F> = basis.iter().map(|row| part.coeff(row)).collect();
            let sol = solve_in_place(&mut mat, &mut rhs, size)
                .map_err(|e| self.pole(e))?
                .ok_or(Error::SingularBasis { degree: d })?;
            for (b, c) in basis.into_iter().zip(sol) {
                out.add_term(b, c);
            }
        }
        Ok(out)
    }
}

/// Gaussian elimination with first-nonzero pivoting. `Ok(None)` when the
/// matrix is singular.
fn solve_in_place<F: Field>(
    mat: &mut [Vec<F>],
    rhs: &mut [F],
    size: usize,
) -> Result<Option<Vec<F>>> {
    for col in 0..size {
        let Some(piv) = (col..size).find(|&r| !mat[r][col].is_zero()) else {
            return Ok(None);
        };
        mat.swap(col, piv);
        rhs.swap(col, piv);
        let inv = mat[col][col].try_inv()?;
        for r in (col + 1)..size {
            if mat[r][col].is_zero() {
                continue;
            }
            let factor = mat[r][col].clone() * &inv;
            let (above, below) = mat.split_at_mut(r);
            for (x, p) in below[0][col..].iter_mut().zip(&above[col][col..]) {
                *x -= &(factor.clone() * p);
            }
            let t = factor * &rhs[col];
            rhs[r] -= &t;
        }
    }
    let mut sol = vec![F::zero(); size];
    for r in (0..size).rev() {
        let mut acc = rhs[r].clone();
        for k in (r + 1)..size {
            let t = mat[r][k].clone() * &sol[k];
            acc -= &t;
        }
        sol[r] = acc.try_div(&mat[r][r])?;
    }
    Ok(Some(sol))
}
