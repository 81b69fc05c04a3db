use num_traits::{One, Zero};
use planar_dunkl::dunkl::DunklContext;
use planar_dunkl::inner::kappa_inner;
use planar_dunkl::poly::{Monomial, MultiPoly, Rep};
use planar_dunkl::scalar::{pochhammer, rat, Field, KappaPoly, KappaScalar, Rational, Scalar, ScalarText};
use planar_dunkl::SymbolicContext;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn kappa_poly() -> impl Strategy<Value = KappaPoly> {
    prop::collection::vec(-6i64..=6, 0..4).prop_map(|c| KappaPoly::from_ints(&c))
}

fn nonzero_kappa_poly() -> impl Strategy<Value = KappaPoly> {
    (kappa_poly(), 1i64..=6).prop_map(|(p, c)| if p.is_zero() { KappaPoly::from_ints(&[c]) } else { p })
}

fn kappa_scalar() -> impl Strategy<Value = KappaScalar> {
    (kappa_poly(), nonzero_kappa_poly()).prop_map(|(n, d)| KappaScalar::new(n, d).unwrap())
}

/// Polynomials in `nvars` variables, degree <= `deg`, with symbolic
/// coefficients drawn from small integers and kappa.
fn poly(nvars: usize, deg: u32) -> impl Strategy<Value = MultiPoly<KappaScalar>> {
    let term = (prop::collection::vec(0..=deg, nvars), -4i64..=4, 0i64..=2);
    prop::collection::vec(term, 0..6).prop_map(move |terms| {
        let mut f = MultiPoly::zero(nvars, Rep::X);
        for (mut e, c, k) in terms {
            // keep total degree <= deg
            while e.iter().sum::<u32>() > deg {
                let i = e.iter().position(|&x| x > 0).unwrap();
                e[i] -= 1;
            }
            let coeff = KappaScalar::from_int(c) + KappaScalar::kappa().mul_int(k);
            f.add_term(Monomial::new(e), coeff);
        }
        f
    })
}

fn rational_poly(nvars: usize, deg: u32) -> impl Strategy<Value = MultiPoly<Rational>> {
    poly(nvars, deg).prop_map(|f| f.map_coeffs(|c| c.specialize(&rat(1, 1)).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kappa_field_laws(a in kappa_scalar(), b in kappa_scalar(), c in kappa_scalar()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * &b, b.clone() * &a);
        prop_assert_eq!((a.clone() * &b) * &c, a.clone() * &(b.clone() * &c));
        prop_assert_eq!(a.clone() * &(b.clone() + c.clone()), a.clone() * &b + a.clone() * &c);
        prop_assert!((a.clone() - a.clone()).is_zero());
        if !a.is_zero() {
            prop_assert_eq!(a.clone() * &a.try_inv().unwrap(), KappaScalar::one());
        }
    }

    #[test]
    fn kappa_text_is_canonical(a in kappa_scalar()) {
        let s = a.to_string();
        let back = KappaScalar::parse_text(&s).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_string(), s);
    }

    #[test]
    fn normalized_form_is_stable(n in kappa_poly(), d in nonzero_kappa_poly(), k in 1i64..5) {
        let a = KappaScalar::new(n.clone(), d.clone()).unwrap();
        // same fraction with a common factor (kappa + k)
        let f = KappaPoly::from_ints(&[k, 1]);
        let b = KappaScalar::new(n * f.clone(), d * f).unwrap();
        prop_assert_eq!(a.num(), b.num());
        prop_assert_eq!(a.den(), b.den());
    }

    #[test]
    fn pochhammer_splits(a in small_rational(), m in 0u32..6, n in 0u32..6) {
        let lhs = pochhammer(&a, m + n);
        let rhs = pochhammer(&a, m) * &pochhammer(&(a.clone() + Rational::from_int(m as i64)), n);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn divided_difference_times_difference(f in poly(3, 4), i in 0usize..3, shift in 1usize..3) {
        let j = (i + shift) % 3;
        let diff = f.clone() - f.transpose_vars(i, j).unwrap();
        let q = diff.div_by_difference_exact(i, j).unwrap();
        let xi_xj = MultiPoly::var(3, Rep::X, i) - MultiPoly::var(3, Rep::X, j);
        prop_assert_eq!(q * xi_xj, diff);
    }

    #[test]
    fn transposition_is_a_ring_map(f in poly(3, 3), g in poly(3, 3)) {
        let s = |p: &MultiPoly<KappaScalar>| p.transpose_vars(0, 2).unwrap();
        prop_assert_eq!(s(&(f.clone() * g.clone())), s(&f) * s(&g));
        prop_assert_eq!(s(&(f.clone() + g.clone())), s(&f) + s(&g));
        prop_assert_eq!(s(&s(&f)), f);
    }

    #[test]
    fn no_stored_zero_coefficients(f in poly(3, 3), g in poly(3, 3)) {
        for h in [f.clone() - f.clone(), f.clone() * g.clone() - g.clone() * f.clone(), f.clone() + g.clone()] {
            prop_assert!(h.terms().all(|(_, c)| !c.is_zero()));
        }
        prop_assert!((f.clone() - f).is_empty());
    }

    #[test]
    fn dunkl_operators_commute(f in poly(3, 4), i in 0usize..3, j in 0usize..3) {
        let ctx = SymbolicContext::symbolic(3).unwrap();
        let a = ctx.apply_dunkl_x(i, &ctx.apply_dunkl_x(j, &f).unwrap()).unwrap();
        let b = ctx.apply_dunkl_x(j, &ctx.apply_dunkl_x(i, &f).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn dunkl_operators_are_equivariant(f in poly(3, 4), i in 0usize..3) {
        // s T_i s = T_{s(i)} for s = (1 2)
        let ctx = SymbolicContext::symbolic(3).unwrap();
        let s = |p: &MultiPoly<KappaScalar>| p.transpose_vars(0, 1).unwrap();
        let si = [1, 0, 2][i];
        let lhs = s(&ctx.apply_dunkl_x(i, &s(&f)).unwrap());
        prop_assert_eq!(lhs, ctx.apply_dunkl_x(si, &f).unwrap());
    }

    #[test]
    fn kappa_pairing_is_positive(f in rational_poly(3, 3), num in 0i64..8, den in 1i64..4) {
        prop_assume!(!f.is_zero());
        let ctx = DunklContext::specialized(3, rat(num, den)).unwrap();
        let v = kappa_inner(&ctx, &f, &f).unwrap();
        prop_assert!(v > Rational::zero(), "<f,f> = {}", v);
    }
}
