//! Series expansion of
//!
//! ```text
//! G(s, t; alpha, beta) = (1 - 2st + 2t^2)^(2 - beta) / (1 - 4st + 8 s^2 t^2 - 8 s t^3 + 4 t^4)^(alpha + 1)
//! ```
//!
//! whose coefficient of `t^n s^(n-2j)` is `S(n, j; alpha, beta)`. Both
//! factors are powers of series with constant term one, expanded with the
//! recurrence `n b_n = sum_{k=1}^{n} ((c+1) k - n) a_k b_{n-k}` for
//! `(sum a_k t^k)^c`; coefficients are polynomials in `s`.

use std::collections::BTreeMap;

use crate::scalar::{rat, Scalar};

type SPoly<F> = Vec<F>;

fn s_add<F: Scalar>(a: &mut SPoly<F>, b: &SPoly<F>) {
    if a.len() < b.len() {
        a.resize(b.len(), F::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

fn s_mul<F: Scalar>(a: &SPoly<F>, b: &SPoly<F>) -> SPoly<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![F::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x.clone() * y);
        }
    }
    out
}

fn s_scale<F: Scalar>(a: &SPoly<F>, c: &F) -> SPoly<F> {
    a.iter().map(|x| x.clone() * c).collect()
}

fn ints<F: Scalar>(v: &[i64]) -> SPoly<F> {
    v.iter().map(|&c| F::from_int(c)).collect()
}

/// `(sum_k a_k t^k)^c` through order `t^n_max`, `a_0 = 1`.
fn series_power<F: Scalar>(a: &[SPoly<F>], c: &F, n_max: usize) -> Vec<SPoly<F>> {
    let mut b: Vec<SPoly<F>> = vec![ints(&[1])];
    for n in 1..=n_max {
        let mut acc: SPoly<F> = Vec::new();
        for k in 1..=n.min(a.len() - 1) {
            if a[k].is_empty() {
                continue;
            }
            let w = (c.clone() + F::one()).mul_int(k as i64) - F::from_int(n as i64);
            s_add(&mut acc, &s_scale(&s_mul(&a[k], &b[n - k]), &w));
        }
        b.push(s_scale(&acc, &F::from_rational(&rat(1, n as i64))));
    }
    b
}

/// Coefficient of `t^n` in `G`, as a dense polynomial in `s`, `n <= n_max`.
pub fn g_series<F: Scalar>(alpha: &F, beta: &F, n_max: u32) -> Vec<Vec<F>> {
    let n_max = n_max as usize;
    // 1 - 2st + 2t^2
    let num: Vec<SPoly<F>> = vec![ints(&[1]), ints(&[0, -2]), ints(&[2])];
    // 1 - 4st + 8s^2t^2 - 8st^3 + 4t^4
    let den: Vec<SPoly<F>> = vec![ints(&[1]), ints(&[0, -4]), ints(&[0, 0, 8]), ints(&[0, -8]), ints(&[4])];
    let p = series_power(&num, &(F::from_int(2) - beta.clone()), n_max);
    let q = series_power(&den, &-(alpha.clone() + F::one()), n_max);
    (0..=n_max)
        .map(|n| {
            let mut acc: SPoly<F> = Vec::new();
            for k in 0..=n {
                s_add(&mut acc, &s_mul(&p[k], &q[n - k]));
            }
            acc
        })
        .collect()
}

/// `(n, j) -> [t^n s^(n-2j)] G` for `n <= n_max`, `0 <= j <= n/2`.
pub fn g_series_oracle<F: Scalar>(alpha: &F, beta: &F, n_max: u32) -> BTreeMap<(u32, u32), F> {
    let series = g_series(alpha, beta, n_max);
    let mut out = BTreeMap::new();
    for (n, coeffs) in series.iter().enumerate() {
        let n = n as u32;
        for j in 0..=n / 2 {
            let v = coeffs.get((n - 2 * j) as usize).cloned().unwrap_or_else(F::zero);
            out.insert((n, j), v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inner::s_constant;
    use crate::scalar::{KappaScalar, Rational};
    use num_traits::Zero;

    #[test]
    fn low_order_coefficients() {
        let t = g_series_oracle(&rat(0, 1), &rat(1, 1), 3);
        assert_eq!(t[&(0, 0)], rat(1, 1));
        assert_eq!(t[&(1, 0)], rat(2, 1));
    }

    #[test]
    fn only_matching_parity_appears() {
        let series = g_series(&KappaScalar::kappa(), &KappaScalar::from_int(2), 8);
        for (n, c) in series.iter().enumerate() {
            for (p, v) in c.iter().enumerate() {
                if (n + p) % 2 == 1 || p > n {
                    assert!(v.is_zero(), "t^{n} s^{p}");
                }
            }
        }
    }

    #[test]
    fn matches_double_sum() {
        for (a, b) in [(rat(1, 3), rat(2, 5)), (rat(-2, 7), rat(3, 1))] {
            let t = g_series_oracle::<Rational>(&a, &b, 8);
            for (&(n, j), v) in &t {
                assert_eq!(*v, s_constant(n, j, &a, &b).unwrap(), "n={n} j={j}");
            }
        }
        let k = KappaScalar::kappa();
        for beta in [1, 2] {
            let b = KappaScalar::from_int(beta);
            let t = g_series_oracle(&k, &b, 8);
            for (&(n, j), v) in &t {
                assert_eq!(*v, s_constant(n, j, &k, &b).unwrap());
            }
        }
    }
}
