//! Independent expansion of the generating functions `u_1`, `u_2`.
//!
//! `w_1 = (1 - z t p_1)^-1 (1 - t p_2 / z)^-1` and `w_2 = w_1(z -> 1/z)` are
//! expanded as truncated geometric series, giving for each power of `t` a
//! Laurent polynomial in `z`. Symmetric Laurent polynomials are rewritten in
//! `s = (z + 1/z)/2` through `z^k + z^-k = 2 T_k(s)`, and antisymmetric ones
//! divided by `z - 1/z` through `(z^k - z^-k)/(z - 1/z) = U_{k-1}(s)`, with
//! the Chebyshev polynomials generated by their three-term recurrence.

use std::collections::BTreeMap;

use crate::poly::{Monomial, MultiPoly, Rep};
use crate::scalar::{rat, Rational, Scalar};

/// `(n, j) -> coefficient of t^n s^j`, P-rep polynomials.
pub type USeries<F> = BTreeMap<(u32, u32), MultiPoly<F>>;

/// Coefficients of `u_1` (`which = 1`) or `u_2` (`which = 2`) through order
/// `t^n_max`, embedded in `nvars` variables. Zero entries are omitted.
pub fn u_series_oracle<F: Scalar>(nvars: usize, which: u8, n_max: u32) -> USeries<F> {
    assert!(which == 1 || which == 2, "generating function index must be 1 or 2");
    assert!(nvars >= 2);
    let cheb_t = chebyshev(n_max as usize + 1, false);
    let cheb_u = chebyshev(n_max as usize + 1, true);
    let mut out = USeries::new();
    for n in 0..=n_max {
        // Laurent coefficient table: z-power -> polynomial
        let mut laurent: BTreeMap<i64, MultiPoly<F>> = BTreeMap::new();
        for a in 0..=n {
            let b = n - a;
            let mut e = vec![0; nvars];
            e[0] = a;
            e[1] = b;
            let mono = Monomial::new(e);
            let k = a as i64 - b as i64;
            let sign = if which == 1 { 1 } else { -1 };
            // w_1 contributes z^(a-b) p^(a,b), w_2 contributes z^(b-a) p^(a,b)
            laurent.entry(k).or_insert_with(|| MultiPoly::zero(nvars, Rep::P)).add_term(mono.clone(), F::one());
            laurent
                .entry(-k)
                .or_insert_with(|| MultiPoly::zero(nvars, Rep::P))
                .add_term(mono, F::from_int(sign));
        }
        let mut coeffs: BTreeMap<u32, MultiPoly<F>> = BTreeMap::new();
        for (&k, c) in laurent.iter().filter(|(&k, c)| k >= 0 && !c.is_zero()) {
            let (poly, factor) = if which == 1 {
                // (w_1 + w_2)/2: c_k (z^k + z^-k)/2 = c_k T_k(s), with c_0 counted twice
                if k == 0 {
                    (&cheb_t[0], rat(1, 2))
                } else {
                    (&cheb_t[k as usize], Rational::from_integer(1.into()))
                }
            } else {
                if k == 0 {
                    continue;
                }
                (&cheb_u[k as usize - 1], Rational::from_integer(1.into()))
            };
            for (j, q) in poly.iter().enumerate().filter(|(_, q)| *q != &rat(0, 1)) {
                let term = c.scale(&F::from_rational(&(q.clone() * &factor)));
                coeffs
                    .entry(j as u32)
                    .or_insert_with(|| MultiPoly::zero(nvars, Rep::P))
                    .add_assign_poly(&term);
            }
        }
        for (j, c) in coeffs {
            if !c.is_zero() {
                out.insert((n, j), c);
            }
        }
    }
    out
}

/// `T_0..T_{len-1}` (or `U_0..`) as dense coefficient vectors in `s`.
fn chebyshev(len: usize, second_kind: bool) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = Vec::with_capacity(len);
    for k in 0..len {
        let next = match k {
            0 => vec![rat(1, 1)],
            1 => {
                if second_kind {
                    vec![rat(0, 1), rat(2, 1)]
                } else {
                    vec![rat(0, 1), rat(1, 1)]
                }
            }
            _ => {
                let mut v = vec![rat(0, 1); k + 1];
                for (i, c) in out[k - 1].iter().enumerate() {
                    v[i + 1] += c * rat(2, 1);
                }
                for (i, c) in out[k - 2].iter().enumerate() {
                    v[i] -= c;
                }
                v
            }
        };
        out.push(next);
    }
    out
}
