//! The planar harmonic polynomials `h_n^+` and `h_n^-`.
//!
//! With `v = N kappa - kappa + m`:
//!
//! ```text
//! h_{2m+1}^- = sum_{j=0}^{m}   2^-j g^o_j(v)   / (N kappa + m + 2)_j psi_{2m+1,2j}
//! h_{2m}^-   = sum_{j=0}^{m-1} 2^-j g^e_j(v)   / (N kappa + m + 2)_j psi_{2m,2j+1}
//! h_{2m+1}^+ = sum_{j=0}^{m}   2^-j g^e_j(v+1) / (N kappa + m + 2)_j phi_{2m+1,2j+1}
//! h_{2m}^+   = sum_{j=0}^{m}   2^-j g^o_j(v)   / (N kappa + m + 1)_j phi_{2m,2j}
//! ```

use serde::{Deserialize, Serialize};

use super::{GKind, GTables, PlanarPoly, Symmetry};
use crate::dunkl::DunklContext;
use crate::error::{Error, Result};
use crate::poly::{MultiPoly, PolyJson};
use crate::scalar::{pochhammer, pow2, Field, Scalar, ScalarText};

/// `h_n^sign` with the standard g-tables.
pub fn harmonic<F: Field>(ctx: &DunklContext<F>, n: u32, sign: Symmetry) -> Result<PlanarPoly<F>> {
    harmonic_with(ctx, GTables::standard(), n, sign)
}

/// `h_n^sign` with coefficients drawn from `tables`.
pub fn harmonic_with<F: Field>(
    ctx: &DunklContext<F>,
    tables: &GTables,
    n: u32,
    sign: Symmetry,
) -> Result<PlanarPoly<F>> {
    let m = (n / 2) as i64;
    let odd = n % 2 == 1;
    // (kind, shift of v, shift of the Pochhammer base, number of terms, j -> basis index)
    let (kind, v_shift, base, count, index): (GKind, i64, i64, u32, fn(u32) -> u32) = match (sign, odd) {
        (Symmetry::Minus, true) => (GKind::Odd, 0, 2, m as u32 + 1, |j| 2 * j),
        (Symmetry::Minus, false) => {
            if n == 0 {
                return Err(Error::Precondition("h_0^- does not exist".into()));
            }
            (GKind::Even, 0, 2, m as u32, |j| 2 * j + 1)
        }
        (Symmetry::Plus, true) => (GKind::Even, 1, 2, m as u32 + 1, |j| 2 * j + 1),
        (Symmetry::Plus, false) => (GKind::Odd, 0, 1, m as u32 + 1, |j| 2 * j),
    };
    let family = tables.get(kind);
    let v = ctx.affine(1, -1, m + v_shift);
    let a = ctx.affine(1, 0, m + base);
    let mut terms = Vec::with_capacity(count as usize);
    for j in 0..count {
        let num = family.get(j).eval_at(&v).mul_rational(&pow2(-(j as i64)));
        let c = num.try_div(&pochhammer(&a, j)).map_err(|e| ctx.pole(e))?;
        terms.push((index(j), c));
    }
    PlanarPoly::from_basis(ctx.nvars(), n, sign, terms)
}

/// Residuals of the three-term relation that harmonicity imposes on the
/// coefficients `c_k` of `h = sum_k c_k psi_{n,k}`:
///
/// ```text
/// 8 (N kappa + n - j + 1)(N kappa + n - j) c_{n+1-2j}
///   - 4 (N kappa - kappa + 2n - 1 - 3j)(N kappa + n - j) c_{n-1-2j}
///   + (n - 2j - 2)(n - 2j - 1) c_{n-3-2j}
/// ```
///
/// for `1 <= j <= (n-1)/2`. All entries vanish for a harmonic `h`.
pub fn three_term_residuals<F: Scalar>(ctx: &DunklContext<F>, h: &PlanarPoly<F>) -> Result<Vec<F>> {
    if h.symmetry() != Symmetry::Minus {
        return Err(Error::Precondition("three-term relation is stated for psi expansions".into()));
    }
    let n = h.degree() as i64;
    let mut out = Vec::new();
    for j in 1..=(n - 1) / 2 {
        let a = ctx.affine(1, 0, n - j + 1) * ctx.affine(1, 0, n - j) * h.coeff(n + 1 - 2 * j);
        let b = ctx.affine(1, -1, 2 * n - 1 - 3 * j) * ctx.affine(1, 0, n - j) * h.coeff(n - 1 - 2 * j);
        let c = h.coeff(n - 3 - 2 * j).mul_int((n - 2 * j - 2) * (n - 2 * j - 1));
        out.push(a.mul_int(8) - b.mul_int(4) + c);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisTermJson {
    pub j: u32,
    pub coeff: String,
}

/// Wire form of a planar polynomial: `{"n", "sign", "basis", "p_rep"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarmonicJson {
    pub n: u32,
    pub sign: Symmetry,
    pub basis: Vec<BasisTermJson>,
    pub p_rep: PolyJson,
}

impl<F: Scalar> PlanarPoly<F> {
    pub fn to_json(&self) -> HarmonicJson {
        HarmonicJson {
            n: self.degree(),
            sign: self.symmetry(),
            basis: self
                .basis()
                .iter()
                .map(|(&j, c)| BasisTermJson { j, coeff: c.to_string() })
                .collect(),
            p_rep: self.p_rep().to_json(),
        }
    }
}

impl<F: ScalarText> PlanarPoly<F> {
    /// Rebuilds from the basis expansion and checks it against the stored
    /// P-rep.
    pub fn from_json(j: &HarmonicJson) -> Result<Self> {
        let p = MultiPoly::<F>::from_json(&j.p_rep)?;
        let terms = j
            .basis
            .iter()
            .map(|t| Ok((t.j, F::parse_text(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        let out = PlanarPoly::from_basis(p.nvars(), j.n, j.sign, terms)?;
        if *out.p_rep() != p {
            return Err(Error::Parse("basis expansion and p_rep disagree".into()));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dunkl::SumDiff;
    use crate::planar::{apply_sum_diff, psi};
    use crate::scalar::{rat, KappaScalar, Rational};
    use num_traits::Zero;

    type K = KappaScalar;

    #[test]
    fn h1_minus_is_psi10() {
        let ctx = DunklContext::<K>::symbolic(3).unwrap();
        let h = harmonic(&ctx, 1, Symmetry::Minus).unwrap();
        assert_eq!(h, psi(&ctx, 1, 0));
        assert!(harmonic(&ctx, 0, Symmetry::Minus).is_err());
        assert_eq!(*harmonic(&ctx, 0, Symmetry::Plus).unwrap().p_rep(), MultiPoly::one(3, crate::poly::Rep::P));
    }

    #[test]
    fn h3_minus_display() {
        let ctx = DunklContext::<K>::symbolic(4).unwrap();
        let h = harmonic(&ctx, 3, Symmetry::Minus).unwrap();
        // psi_{3,0} + (N kappa - kappa + 2) / (2 (N kappa + 3)) psi_{3,2}
        let c2 = ctx.affine(1, -1, 2).try_div(&ctx.affine(1, 0, 3).mul_int(2)).unwrap();
        let want = psi(&ctx, 3, 0).checked_add(&psi(&ctx, 3, 2).scale(&c2)).unwrap();
        assert_eq!(h, want);
    }

    #[test]
    fn three_term_relation_holds() {
        let ctx = DunklContext::<K>::symbolic(3).unwrap();
        for n in 1..=8 {
            let h = harmonic(&ctx, n, Symmetry::Minus).unwrap();
            assert!(three_term_residuals(&ctx, &h).unwrap().iter().all(|r| r.is_zero()), "n={n}");
        }
        let bad = harmonic_with(&ctx, &GTables::perturbed(GKind::Odd, 2, rat(1, 1)), 5, Symmetry::Minus).unwrap();
        assert!(!three_term_residuals(&ctx, &bad).unwrap().iter().all(|r| r.is_zero()));
    }

    #[test]
    fn laplacian_kills_h4() {
        let ctx = DunklContext::<K>::symbolic(3).unwrap();
        for sign in [Symmetry::Plus, Symmetry::Minus] {
            let h = harmonic(&ctx, 4, sign).unwrap();
            let (_, x) = h.x_rep(&ctx).unwrap().clear_denominators();
            assert!(ctx.apply_laplacian(&x).unwrap().is_zero());
        }
    }

    #[test]
    fn diff_of_odd_minus_is_even_plus() {
        let ctx = DunklContext::<K>::symbolic(3).unwrap();
        let m = 2;
        let lhs = apply_sum_diff(&ctx, &harmonic(&ctx, 2 * m + 1, Symmetry::Minus).unwrap(), SumDiff::Diff).unwrap();
        let rhs = harmonic(&ctx, 2 * m, Symmetry::Plus).unwrap().scale(&ctx.affine(1, 0, m as i64 + 1).mul_int(2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn pole_reported_for_specialized_kappa() {
        // m = 1, j = 1: (N kappa + 3)_1 vanishes at kappa = -1 for N = 3
        let ctx = DunklContext::specialized(3, rat(-1, 1)).unwrap();
        let err = harmonic(&ctx, 3, Symmetry::Minus).unwrap_err();
        assert_eq!(err, Error::Pole("-1".into()));
        let ok = DunklContext::specialized(3, rat(1, 2)).unwrap();
        assert!(harmonic::<Rational>(&ok, 3, Symmetry::Minus).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let ctx = DunklContext::<K>::symbolic(3).unwrap();
        let h = harmonic(&ctx, 4, Symmetry::Plus).unwrap();
        let j = h.to_json();
        let s = serde_json::to_string(&j).unwrap();
        assert!(s.starts_with(r#"{"n":4,"sign":"+","basis":[{"j":0,"coeff":"#));
        let back: HarmonicJson = serde_json::from_str(&s).unwrap();
        assert_eq!(PlanarPoly::<K>::from_json(&back).unwrap(), h);
    }
}
