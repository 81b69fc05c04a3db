//! Inner products and structure constants.
//!
//! Three pairings are in play:
//!
//! * the kappa pairing `<f, g>_kappa = f(T_1, ..., T_N) g |_{x=0}`;
//! * the Gaussian pairing against `w_kappa dmu`, which is computed purely
//!   algebraically as `<e^{Delta/2} f, e^{Delta/2} g>_kappa` (the exponential
//!   series terminates on polynomials);
//! * the pairing on the sphere, which for harmonic `f, g` homogeneous of
//!   degree `n` satisfies `<f, g>_kappa = 2^n ((N/2)((N-1) kappa + 1))_n <f, g>_S`.
//!
//! The Gaussian and sphere pairings are normalized by the Macdonald-Mehta-
//! Selberg integral `c_kappa = prod_{j=2}^{N} Gamma(j kappa + 1) / Gamma(kappa + 1)`
//! (and its sphere analogue); those Gamma products never need to be
//! evaluated here, so everything stays in exact arithmetic.

mod constants;
mod genfun;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::dunkl::DunklContext;
use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly, Rep};
use crate::scalar::{factorial, pochhammer, pow2, rat, Field};

pub use constants::{
    closed_norm, power_chain, power_chain_value, s_constant, special_point, special_point_eval,
    symmetry_reduction_eval, ConstantsRow,
};
pub use genfun::{g_series, g_series_oracle};

/// Which pairing a value refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InnerProductKind {
    Kappa,
    Gaussian,
    SphereFactor,
}

/// Memoized `T^alpha g` for a fixed `g`.
///
/// Entries are built from the entry one degree lower, so a whole family of
/// operator monomials shares its prefixes. Safe to share across threads;
/// each entry is computed at most once per lock acquisition and never
/// replaced.
pub struct OperatorPowers<'a, F: Field> {
    ctx: &'a DunklContext<F>,
    memo: RwLock<HashMap<Monomial, Arc<MultiPoly<F>>>>,
}

impl<'a, F: Field> OperatorPowers<'a, F> {
    pub fn new(ctx: &'a DunklContext<F>, g: MultiPoly<F>) -> Result<Self> {
        if g.rep() != Rep::X {
            return Err(Error::RepMismatch("operator powers act on X rep".into()));
        }
        let mut memo = HashMap::new();
        memo.insert(Monomial::one(ctx.nvars()), Arc::new(g));
        Ok(OperatorPowers { ctx, memo: RwLock::new(memo) })
    }

    pub fn get(&self, alpha: &Monomial) -> Result<Arc<MultiPoly<F>>> {
        if let Some(v) = self.memo.read().unwrap().get(alpha) {
            return Ok(v.clone());
        }
        let k = alpha
            .exps()
            .iter()
            .rposition(|&e| e > 0)
            .expect("the empty monomial is always present");
        let parent = self.get(&alpha.with(k, alpha.exps()[k] - 1))?;
        let value = if parent.is_zero() {
            parent
        } else {
            Arc::new(self.ctx.apply_dunkl_x(k, &parent)?)
        };
        Ok(self.memo.write().unwrap().entry(alpha.clone()).or_insert(value).clone())
    }
}

/// `<f, g>_kappa`.
pub fn kappa_inner<F: Field>(ctx: &DunklContext<F>, f: &MultiPoly<F>, g: &MultiPoly<F>) -> Result<F> {
    check_x(ctx, f)?;
    check_x(ctx, g)?;
    if f.is_zero() || g.is_zero() {
        return Ok(F::zero());
    }
    let (df, f1) = f.clear_denominators();
    let (dg, g1) = g.clear_denominators();
    let top = g1.total_degree().unwrap_or(0);
    let powers = OperatorPowers::new(ctx, g1)?;
    let mut acc = F::zero();
    for (alpha, c) in f1.terms() {
        if alpha.degree() > top {
            continue;
        }
        let v = powers.get(alpha)?.constant_term();
        if !v.is_zero() {
            acc += &(v * c);
        }
    }
    acc.try_div(&(df * &dg)).map_err(|e| ctx.pole(e))
}

/// `e^{Delta/2} f = sum_k Delta^k f / (2^k k!)`.
pub fn exp_half_laplacian<F: Field>(ctx: &DunklContext<F>, f: &MultiPoly<F>) -> Result<MultiPoly<F>> {
    check_x(ctx, f)?;
    let (d, mut cur) = f.clear_denominators();
    let mut out = cur.clone();
    let mut k = 0u32;
    while !cur.is_zero() {
        cur = ctx.apply_laplacian(&cur)?;
        k += 1;
        if !cur.is_zero() {
            let w = pow2(-(k as i64)) / factorial(k);
            out.add_assign_poly(&cur.scale(&F::from_rational(&w)));
        }
    }
    let inv = d.try_inv().map_err(|e| ctx.pole(e))?;
    Ok(out.scale(&inv))
}

/// The Gaussian pairing, `<e^{Delta/2} f, e^{Delta/2} g>_kappa`.
pub fn gaussian_inner<F: Field>(ctx: &DunklContext<F>, f: &MultiPoly<F>, g: &MultiPoly<F>) -> Result<F> {
    kappa_inner(ctx, &exp_half_laplacian(ctx, f)?, &exp_half_laplacian(ctx, g)?)
}

/// `2^n ((N/2)((N-1) kappa + 1))_n`, the ratio of the kappa pairing to the
/// sphere pairing on harmonics of degree `n`.
pub fn sphere_norm_factor<F: Field>(ctx: &DunklContext<F>, n: u32) -> Result<F> {
    let nv = ctx.nvars() as i64;
    let base = ctx.affine(0, nv - 1, 1).mul_rational(&rat(nv, 2));
    let v = pochhammer(&base, n).mul_rational(&pow2(n as i64));
    if ctx.specialized_kappa().is_some() && v.is_zero() {
        return Err(ctx.pole(Error::DivisionByZero));
    }
    Ok(v)
}

/// `<f, f>_S` from the kappa pairing of a harmonic homogeneous `f`.
pub fn sphere_norm<F: Field>(ctx: &DunklContext<F>, f: &MultiPoly<F>) -> Result<F> {
    if !f.is_homogeneous() {
        return Err(Error::Precondition("sphere norm needs a homogeneous polynomial".into()));
    }
    let n = f.total_degree().unwrap_or(0);
    let k = kappa_inner(ctx, f, f)?;
    k.try_div(&sphere_norm_factor(ctx, n)?).map_err(|e| ctx.pole(e))
}

fn check_x<F: Field>(ctx: &DunklContext<F>, f: &MultiPoly<F>) -> Result<()> {
    if f.rep() != Rep::X {
        return Err(Error::RepMismatch("inner products take X rep".into()));
    }
    if f.nvars() != ctx.nvars() {
        return Err(Error::NVarsMismatch { expected: ctx.nvars(), got: f.nvars() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{KappaScalar, Rational, Scalar};
    use num_traits::{One, Zero};

    type K = KappaScalar;

    fn x(n: usize, i: usize) -> MultiPoly<K> {
        MultiPoly::var(n, Rep::X, i)
    }

    #[test]
    fn small_kappa_products() {
        let ctx = DunklContext::<K>::symbolic(3).unwrap();
        let one = MultiPoly::one(3, Rep::X);
        assert_eq!(kappa_inner(&ctx, &one, &one).unwrap(), K::one());
        // <x_1, x_1> = 1 + (N-1) kappa
        assert_eq!(kappa_inner(&ctx, &x(3, 0), &x(3, 0)).unwrap(), ctx.affine(0, 2, 1));
        // different degrees
        let q = x(3, 0) * x(3, 1);
        assert!(kappa_inner(&ctx, &q, &x(3, 2)).unwrap().is_zero());
        assert!(kappa_inner(&ctx, &one, &q).unwrap().is_zero());
    }

    #[test]
    fn kappa_inner_is_symmetric() {
        let ctx = DunklContext::<K>::symbolic(3).unwrap();
        let f = x(3, 0) * x(3, 0) + x(3, 1) * x(3, 2).scale(&K::kappa());
        let g = x(3, 1) * x(3, 1) - x(3, 0) * x(3, 2).mul_int(3);
        assert_eq!(kappa_inner(&ctx, &f, &g).unwrap(), kappa_inner(&ctx, &g, &f).unwrap());
    }

    #[test]
    fn gaussian_examples() {
        let ctx = DunklContext::<K>::symbolic(2).unwrap();
        let one = MultiPoly::one(2, Rep::X);
        assert_eq!(gaussian_inner(&ctx, &one, &one).unwrap(), K::one());
        // e^{Delta/2} x_1^2 = x_1^2 + 1 + kappa
        let sq = x(2, 0) * x(2, 0);
        assert_eq!(gaussian_inner(&ctx, &sq, &one).unwrap(), ctx.affine(0, 1, 1));
        // harmonic homogeneous: both pairings agree
        let d = x(2, 0) - x(2, 1);
        assert_eq!(gaussian_inner(&ctx, &d, &d).unwrap(), kappa_inner(&ctx, &d, &d).unwrap());
    }

    #[test]
    fn sphere_factor_examples() {
        let c2 = DunklContext::<K>::symbolic(2).unwrap();
        assert_eq!(sphere_norm_factor(&c2, 0).unwrap(), K::one());
        assert_eq!(sphere_norm_factor(&c2, 1).unwrap(), c2.affine(0, 2, 2));
        let c3 = DunklContext::<K>::symbolic(3).unwrap();
        let a = K::kappa().mul_int(3) + K::from_rational(&rat(3, 2));
        let b = K::kappa().mul_int(3) + K::from_rational(&rat(5, 2));
        assert_eq!(sphere_norm_factor(&c3, 2).unwrap(), a * b * K::from_int(4));
        let pole = DunklContext::specialized(2, rat(-1, 1)).unwrap();
        assert!(matches!(sphere_norm_factor::<Rational>(&pole, 1), Err(Error::Pole(_))));
    }
}
