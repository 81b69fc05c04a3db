//! Special-point values, the `S(n, j; alpha, beta)` sums and the closed
//! forms of `<h_n^+-, h_n^+->_kappa`.
//!
//! At `x = (1+i, 1-i, 0, ..., 0)` the values of `phi_{n,n-2j}` and
//! `psi_{n+1,n-2j}` are `S(n,j;kappa,1)` and `2i S(n,j;kappa,2)`. A
//! symmetric harmonic `f` of degree `n` satisfies
//! `<f, f>_kappa = 2^-n f(1+i, 1-i, 0..) (T_1+T_2)^n f` and an antisymmetric
//! one `<f, f>_kappa = -i 2^-n f(1+i, 1-i, 0..) (T_1+T_2)^(n-1) (T_1-T_2) f`,
//! the right-hand operators reducing `f` to a constant.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::dunkl::{DunklContext, SumDiff};
use crate::error::{Error, Result};
use crate::planar::{apply_chain, g_poly, GKind, PlanarPoly, Symmetry};
use crate::scalar::{factorial, pochhammer, pow2, Field, Gaussian, Scalar};

/// `S(n, j; alpha, beta)`:
///
/// ```text
/// sum_{l=0}^{[n/2]} sum_{i=max(0, l+j-[n/2])}^{min(l, j)}
///     (alpha+1)_l (2 alpha + beta + 2l)_{n-2l-j+i}
///   / (i! (l-i)! (j-i)! (n-2l-2j+2i)!)  (-1)^(l+j) 2^(n-j+i)
/// ```
pub fn s_constant<F: Scalar>(n: u32, j: u32, alpha: &F, beta: &F) -> Result<F> {
    let half = n / 2;
    if j > half {
        return Err(Error::IndexOutOfRange(format!("S({n},{j}) needs j <= {half}")));
    }
    let a1 = alpha.clone() + F::one();
    let two_a_b = alpha.mul_int(2) + beta.clone();
    let mut acc = F::zero();
    for l in 0..=half {
        let outer = pochhammer(&a1, l);
        let base = two_a_b.clone() + F::from_int(2 * l as i64);
        let lo = (l + j).saturating_sub(half);
        for i in lo..=l.min(j) {
            let denom = factorial(i) * factorial(l - i) * factorial(j - i) * factorial(n + 2 * i - 2 * l - 2 * j);
            let mut w = pow2((n - j + i) as i64) / denom;
            if (l + j) % 2 == 1 {
                w = -w;
            }
            let term = outer.clone() * &pochhammer(&base, n + i - 2 * l - j);
            acc += &term.mul_rational(&w);
        }
    }
    Ok(acc)
}

/// `(1+i, 1-i, 0, ..., 0)`.
pub fn special_point<F: Scalar>(nvars: usize) -> Vec<Gaussian<F>> {
    let mut pt = vec![Gaussian::<F>::zero(); nvars];
    pt[0] = Gaussian::new(F::one(), F::one());
    pt[1] = Gaussian::new(F::one(), -F::one());
    pt
}

/// `(Psi^{-1} f)(1+i, 1-i, 0, ..., 0)`. Since `Psi^{-1} p_1^a p_2^b` is the
/// product `p_a(x_1; x) p_b(x_2; x)`, only the values of the single p-basis
/// polynomials at the point are needed.
pub fn special_point_eval<F: Scalar>(ctx: &DunklContext<F>, f: &PlanarPoly<F>) -> Result<Gaussian<F>> {
    let pt = special_point::<F>(ctx.nvars());
    let n = f.degree() as usize;
    let mut vals = [Vec::with_capacity(n + 1), Vec::with_capacity(n + 1)];
    for (i, v) in vals.iter_mut().enumerate() {
        for a in 0..=n {
            let p = ctx.p_basis_poly(a as u32, i)?;
            v.push(p.evaluate_with(&pt, |c| Gaussian::real(c.clone()))?);
        }
    }
    let mut acc = Gaussian::<F>::zero();
    for (m, c) in f.p_rep().terms() {
        let e = m.exps();
        let term = vals[0][e[0] as usize].clone() * &vals[1][e[1] as usize];
        acc += &(term * &Gaussian::real(c.clone()));
    }
    Ok(acc)
}

/// The operator word that reduces `h_n^sign` to a constant, in application
/// order: `(T_1+T_2)^n`, or `(T_1-T_2)` followed by `(T_1+T_2)^(n-1)`.
pub fn power_chain(n: u32, sign: Symmetry) -> Vec<SumDiff> {
    match sign {
        Symmetry::Plus => vec![SumDiff::Sum; n as usize],
        Symmetry::Minus => {
            let mut ops = vec![SumDiff::Diff];
            ops.extend(std::iter::repeat_n(SumDiff::Sum, n.saturating_sub(1) as usize));
            ops
        }
    }
}

/// Closed form of the constant `power_chain(n, sign)` applied to `h_n^sign`:
///
/// ```text
/// (T1+T2)^{2m}            h_{2m}^+   = 2^m     (N k - k + 1)_m     (N k + 1)_m
/// (T1+T2)^{2m+1}          h_{2m+1}^+ = 2^{m+1} (N k - k + 1)_m     (N k + 1)_{m+1}
/// (T1+T2)^{2m-1}(T1-T2)   h_{2m}^-   = 2^{m+1} (N k - k + 1)_{m-1} (N k + 1)_{m+1}
/// (T1+T2)^{2m}  (T1-T2)   h_{2m+1}^- = 2^{m+1} (N k - k + 1)_m     (N k + 1)_{m+1}
/// ```
pub fn power_chain_value<F: Scalar>(ctx: &DunklContext<F>, n: u32, sign: Symmetry) -> Result<F> {
    let (e2, v) = chain_parts(ctx, n, sign)?;
    Ok(v.mul_rational(&pow2(e2 as i64)))
}

// (power of two, Pochhammer product) of the chain constant
fn chain_parts<F: Scalar>(ctx: &DunklContext<F>, n: u32, sign: Symmetry) -> Result<(u32, F)> {
    let m = n / 2;
    let odd = n % 2 == 1;
    let (e2, a, b) = match (sign, odd) {
        (Symmetry::Plus, false) => (m, m, m),
        (Symmetry::Plus, true) => (m + 1, m, m + 1),
        (Symmetry::Minus, false) => {
            if n == 0 {
                return Err(Error::Precondition("h_0^- does not exist".into()));
            }
            (m + 1, m - 1, m + 1)
        }
        (Symmetry::Minus, true) => (m + 1, m, m + 1),
    };
    let v = pochhammer(&ctx.affine(1, -1, 1), a) * pochhammer(&ctx.affine(1, 0, 1), b);
    Ok((e2, v))
}

/// `<h_n^sign, h_n^sign>_kappa` in closed form. With `m = [n/2]`, `k = kappa`:
///
/// ```text
/// h_{2m}^+   : 2^-m    sum_{j=0}^{m}   2^-j g^o_j(Nk-k+m)  /(Nk+m+1)_j S(2m,   m-j;   k,1) (Nk-k+1)_m     (Nk+1)_m
/// h_{2m+1}^+ : 2^-m    sum_{j=0}^{m}   2^-j g^e_j(Nk-k+m+1)/(Nk+m+2)_j S(2m+1, m-j;   k,1) (Nk-k+1)_m     (Nk+1)_{m+1}
/// h_{2m}^-   : 2^(2-m) sum_{j=0}^{m-1} 2^-j g^e_j(Nk-k+m)  /(Nk+m+2)_j S(2m-1, m-1-j; k,2) (Nk-k+1)_{m-1} (Nk+1)_{m+1}
/// h_{2m+1}^- : 2^(1-m) sum_{j=0}^{m}   2^-j g^o_j(Nk-k+m)  /(Nk+m+2)_j S(2m,   m-j;   k,2) (Nk-k+1)_m     (Nk+1)_{m+1}
/// ```
pub fn closed_norm<F: Field>(ctx: &DunklContext<F>, n: u32, sign: Symmetry) -> Result<F> {
    let m = n / 2;
    let mi = m as i64;
    let odd = n % 2 == 1;
    let k = ctx.kappa().clone();
    // (g kind, v shift, Pochhammer base shift, terms, S degree, S index offset, beta, power of 2)
    let (kind, v_shift, base, count, s_n, s_top, beta, e2) = match (sign, odd) {
        (Symmetry::Plus, false) => (GKind::Odd, 0, 1, m + 1, 2 * m, m, 1, -mi),
        (Symmetry::Plus, true) => (GKind::Even, 1, 2, m + 1, 2 * m + 1, m, 1, -mi),
        (Symmetry::Minus, false) => {
            if n == 0 {
                return Err(Error::Precondition("h_0^- does not exist".into()));
            }
            (GKind::Even, 0, 2, m, 2 * m - 1, m - 1, 2, 2 - mi)
        }
        (Symmetry::Minus, true) => (GKind::Odd, 0, 2, m + 1, 2 * m, m, 2, 1 - mi),
    };
    let v = ctx.affine(1, -1, mi + v_shift);
    let a = ctx.affine(1, 0, mi + base);
    let beta = F::from_int(beta);
    let mut sum = F::zero();
    for j in 0..count {
        let g = g_poly(kind, j).eval_at(&v).mul_rational(&pow2(-(j as i64)));
        let c = g.try_div(&pochhammer(&a, j)).map_err(|e| ctx.pole(e))?;
        sum += &(c * &s_constant(s_n, s_top - j, &k, &beta)?);
    }
    let (_, chain) = chain_parts(ctx, n, sign)?;
    Ok((sum * &chain).mul_rational(&pow2(e2)))
}

/// `<f, f>_kappa` through the special-point shortcut. `f` must be harmonic;
/// this is not checked.
pub fn symmetry_reduction_eval<F: Field>(ctx: &DunklContext<F>, f: &PlanarPoly<F>) -> Result<F> {
    let n = f.degree();
    if f.symmetry() == Symmetry::Minus && n == 0 {
        return Ok(F::zero());
    }
    let at = special_point_eval(ctx, f)?;
    let reduced = apply_chain(ctx, f, &power_chain(n, f.symmetry()))?;
    let constant = Gaussian::real(reduced.coeff(0));
    let mut v = at * &constant;
    if f.symmetry() == Symmetry::Minus {
        // multiply by -i
        v = Gaussian::new(v.im.clone(), -v.re.clone());
    }
    if !v.im.is_zero() {
        return Err(Error::Precondition("special-point value is not real; f lacks definite symmetry".into()));
    }
    Ok(v.re.mul_rational(&pow2(-(n as i64))))
}

/// One row of the structure-constant table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantsRow {
    pub nvars: usize,
    pub n: u32,
    pub sign: Symmetry,
    pub norm_kappa: String,
    pub sphere_factor: String,
    pub norm_sphere: String,
}

impl ConstantsRow {
    pub fn compute<F: Field>(ctx: &DunklContext<F>, n: u32, sign: Symmetry) -> Result<Self> {
        let norm = closed_norm(ctx, n, sign)?;
        let factor = super::sphere_norm_factor(ctx, n)?;
        let sphere = norm.try_div(&factor).map_err(|e| ctx.pole(e))?;
        Ok(ConstantsRow {
            nvars: ctx.nvars(),
            n,
            sign,
            norm_kappa: norm.to_string(),
            sphere_factor: factor.to_string(),
            norm_sphere: sphere.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inner::kappa_inner;
    use crate::planar::{harmonic, phi, psi};
    use crate::scalar::{rat, KappaScalar};
    use num_traits::One;

    type K = KappaScalar;

    #[test]
    fn s_small_cases() {
        let a = K::kappa();
        let b = K::from_int(3);
        assert_eq!(s_constant(0, 0, &a, &b).unwrap(), K::one());
        assert_eq!(s_constant(1, 0, &a, &b).unwrap(), (a.mul_int(2) + b.clone()).mul_int(2));
        assert_eq!(s_constant(1, 0, &rat(0, 1), &rat(1, 1)).unwrap(), rat(2, 1));
        assert!(s_constant(3, 2, &a, &b).is_err());
    }

    #[test]
    fn special_point_values() {
        let ctx = DunklContext::<K>::symbolic(3).unwrap();
        let one = Gaussian::<K>::real(K::one());
        assert_eq!(special_point_eval(&ctx, &phi(&ctx, 0, 0)).unwrap(), one);
        let h1 = harmonic(&ctx, 1, Symmetry::Minus).unwrap();
        assert_eq!(special_point_eval(&ctx, &h1).unwrap(), Gaussian::new(K::zero(), K::from_int(2)));
        let k = K::kappa();
        for n in 0..=4u32 {
            for j in 0..=n / 2 {
                let at = special_point_eval(&ctx, &phi(&ctx, n, (n - 2 * j) as i64)).unwrap();
                assert_eq!(at, Gaussian::real(s_constant(n, j, &k, &K::one()).unwrap()));
                let at = special_point_eval(&ctx, &psi(&ctx, n + 1, (n - 2 * j) as i64)).unwrap();
                let s = s_constant(n, j, &k, &K::from_int(2)).unwrap();
                assert_eq!(at, Gaussian::new(K::zero(), s.mul_int(2)));
            }
        }
    }

    #[test]
    fn low_degree_norms() {
        let ctx = DunklContext::<K>::symbolic(3).unwrap();
        assert_eq!(closed_norm(&ctx, 0, Symmetry::Plus).unwrap(), K::one());
        assert_eq!(closed_norm(&ctx, 1, Symmetry::Minus).unwrap(), ctx.affine(2, 0, 2));
        // h_1^+ = 2 phi... = p_1 + p_2, norm 2 (2 kappa + 1)(N kappa + 1)
        assert_eq!(
            closed_norm(&ctx, 1, Symmetry::Plus).unwrap(),
            ctx.affine(0, 2, 1) * ctx.affine(1, 0, 1) * K::from_int(2)
        );
    }

    #[test]
    fn closed_norms_match_direct_pairing() {
        let ctx = DunklContext::<K>::symbolic(3).unwrap();
        for n in 1..=4 {
            for sign in [Symmetry::Plus, Symmetry::Minus] {
                let h = harmonic(&ctx, n, sign).unwrap();
                let x = h.x_rep(&ctx).unwrap();
                let direct = kappa_inner(&ctx, &x, &x).unwrap();
                assert_eq!(closed_norm(&ctx, n, sign).unwrap(), direct, "n={n} {sign}");
                assert_eq!(symmetry_reduction_eval(&ctx, &h).unwrap(), direct, "n={n} {sign}");
            }
        }
    }

    #[test]
    fn power_chains() {
        let ctx = DunklContext::<K>::symbolic(4).unwrap();
        for n in 1..=6 {
            for sign in [Symmetry::Plus, Symmetry::Minus] {
                let h = harmonic(&ctx, n, sign).unwrap();
                let reduced = apply_chain(&ctx, &h, &power_chain(n, sign)).unwrap();
                assert_eq!(reduced.degree(), 0);
                assert_eq!(reduced.symmetry(), Symmetry::Plus);
                assert_eq!(reduced.coeff(0), power_chain_value(&ctx, n, sign).unwrap(), "n={n} {sign}");
            }
        }
    }
}
