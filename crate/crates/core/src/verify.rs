//! Named verification suites.
//!
//! Each suite checks one family of identities exactly and reports one
//! [`CheckOutcome`] per identity instance (aggregated per degree where a
//! degree has many basis elements). An error raised while checking, such as
//! a pole at a specialized kappa, is reported as a failure with its message.

use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::clifford::{apply_sum_diff_clifford, dirac, monogenic_with, Blade, CliffordPoly};
use crate::dunkl::{DunklContext, SumDiff};
use crate::error::{Error, Result};
use crate::inner::{
    closed_norm, g_series_oracle, kappa_inner, power_chain, power_chain_value, s_constant, special_point_eval,
    symmetry_reduction_eval,
};
use crate::planar::{
    apply_chain, apply_sum_diff, harmonic_with, phi, psi, three_term_residuals, u_series_oracle, GTables,
    PlanarPoly, Symmetry,
};
use crate::poly::{Monomial, MultiPoly, Rep};
use crate::scalar::{rat, Field, Gaussian, KappaScalar, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Harmonicity,
    Annihilation,
    Recurrences,
    TthAction,
    PowerChains,
    Val1pI,
    GenfunS,
    Norms,
    Monogenics,
    Oracles,
    Commutativity,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Harmonicity,
        Suite::Annihilation,
        Suite::Recurrences,
        Suite::TthAction,
        Suite::PowerChains,
        Suite::Val1pI,
        Suite::GenfunS,
        Suite::Norms,
        Suite::Monogenics,
        Suite::Oracles,
        Suite::Commutativity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Harmonicity => "harmonicity",
            Suite::Annihilation => "annihilation",
            Suite::Recurrences => "recurrences",
            Suite::TthAction => "tth-action",
            Suite::PowerChains => "power-chains",
            Suite::Val1pI => "val1pI",
            Suite::GenfunS => "genfunS",
            Suite::Norms => "norms",
            Suite::Monogenics => "monogenics",
            Suite::Oracles => "oracles",
            Suite::Commutativity => "commutativity",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.suite, self.name)?;
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

#[derive(Debug)]
pub struct VerifyOptions {
    pub max_degree: u32,
    pub tables: GTables,
    pub random_cases: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_degree: 6, tables: GTables::new(), random_cases: 20, seed: 0x5eed }
    }
}

struct Report {
    suite: &'static str,
    out: Vec<CheckOutcome>,
}

impl Report {
    fn new(suite: Suite) -> Self {
        Report { suite: suite.name(), out: Vec::new() }
    }

    fn check(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<bool>) {
        let name = name.into();
        let (passed, detail) = match f() {
            Ok(true) => (true, None),
            Ok(false) => (false, Some("identity does not hold".to_string())),
            Err(e) => (false, Some(e.to_string())),
        };
        self.out.push(CheckOutcome { suite: self.suite, name, passed, detail });
    }
}

/// Runs one suite against `ctx`.
pub fn run_suite<F: Field>(ctx: &DunklContext<F>, suite: Suite, opts: &VerifyOptions) -> Vec<CheckOutcome> {
    let mut r = Report::new(suite);
    let nv = ctx.nvars();
    let top = opts.max_degree;
    let signs = [Symmetry::Plus, Symmetry::Minus];
    let h = |n: u32, s: Symmetry| harmonic_with(ctx, &opts.tables, n, s);
    match suite {
        Suite::Harmonicity => {
            for n in 0..=top {
                for s in signs.into_iter().filter(|&s| exists(n, s)) {
                    r.check(format!("Laplacian h_{n}^{s} = 0 (N={nv})"), || {
                        let x = h(n, s)?.x_rep(ctx)?;
                        let (_, x) = x.clear_denominators();
                        Ok(ctx.apply_laplacian(&x)?.is_zero())
                    });
                }
                if n >= 3 {
                    r.check(format!("three-term relation for h_{n}^- (N={nv})"), || {
                        Ok(three_term_residuals(ctx, &h(n, Symmetry::Minus)?)?.iter().all(|v| v.is_zero()))
                    });
                }
            }
        }
        Suite::Annihilation => {
            for n in 0..=top {
                for s in signs.into_iter().filter(|&s| exists(n, s)) {
                    r.check(format!("T_j h_{n}^{s} = 0 for 2 < j <= {nv}"), || {
                        let (_, x) = h(n, s)?.x_rep(ctx)?.clear_denominators();
                        for j in 2..nv {
                            if !ctx.apply_dunkl_x(j, &x)?.is_zero() {
                                return Ok(false);
                            }
                        }
                        Ok(true)
                    });
                }
            }
        }
        Suite::Recurrences => {
            for n in 0..=top {
                for (label, sym, op) in [
                    ("tpts", Symmetry::Plus, SumDiff::Sum),
                    ("tmts", Symmetry::Plus, SumDiff::Diff),
                    ("tpta", Symmetry::Minus, SumDiff::Sum),
                    ("tmta", Symmetry::Minus, SumDiff::Diff),
                ] {
                    r.check(format!("{label} at degree {n} (N={nv})"), || {
                        for j in 0..=n as i64 {
                            let f = match sym {
                                Symmetry::Plus => phi(ctx, n, j),
                                Symmetry::Minus => psi(ctx, n, j),
                            };
                            if f.is_zero() {
                                continue;
                            }
                            let by_rule = apply_sum_diff(ctx, &f, op)?.x_rep(ctx)?;
                            let direct = ctx.apply_sum_diff_x(op, &f.x_rep(ctx)?)?;
                            if by_rule != direct {
                                return Ok(false);
                            }
                        }
                        Ok(true)
                    });
                }
            }
        }
        Suite::TthAction => {
            for (label, n, s, op, m) in tth_cases(top) {
                r.check(format!("{label} [m={m}, N={nv}]"), || {
                    let lhs_poly = h(n, s)?;
                    let (tsym, coeff) = tth_rhs(ctx, s, op, n, m);
                    let rhs = if exists(n - 1, tsym) {
                        h(n - 1, tsym)?.scale(&coeff)
                    } else {
                        PlanarPoly::zero(nv, n - 1, tsym)
                    };
                    let lhs = apply_sum_diff(ctx, &lhs_poly, op)?;
                    // and through the p-representation operators
                    let t1 = ctx.apply_dunkl_p(0, lhs_poly.p_rep())?;
                    let t2 = ctx.apply_dunkl_p(1, lhs_poly.p_rep())?;
                    let direct = match op {
                        SumDiff::Sum => t1 + t2,
                        SumDiff::Diff => t1 - t2,
                    };
                    Ok(lhs == rhs && direct == *rhs.p_rep())
                });
            }
        }
        Suite::PowerChains => {
            for n in 1..=top {
                for s in signs {
                    let word = match s {
                        Symmetry::Plus => format!("(T1+T2)^{n}"),
                        Symmetry::Minus => format!("(T1+T2)^{}(T1-T2)", n - 1),
                    };
                    r.check(format!("{word} h_{n}^{s} closed form (N={nv})"), || {
                        let reduced = apply_chain(ctx, &h(n, s)?, &power_chain(n, s))?;
                        Ok(reduced.degree() == 0 && reduced.coeff(0) == power_chain_value(ctx, n, s)?)
                    });
                }
            }
        }
        Suite::Val1pI => {
            let k = ctx.kappa().clone();
            for n in 0..=top {
                r.check(format!("phi_(n,n-2j)(1+i,1-i,0..) = S(n,j;k,1), n={n} (N={nv})"), || {
                    for j in 0..=n / 2 {
                        let at = special_point_eval(ctx, &phi(ctx, n, (n - 2 * j) as i64))?;
                        if at != Gaussian::real(s_constant(n, j, &k, &F::one())?) {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                });
                r.check(format!("psi_(n+1,n-2j)(1+i,1-i,0..) = 2i S(n,j;k,2), n={n} (N={nv})"), || {
                    for j in 0..=n / 2 {
                        let at = special_point_eval(ctx, &psi(ctx, n + 1, (n - 2 * j) as i64))?;
                        let s = s_constant(n, j, &k, &F::from_int(2))?;
                        if at != Gaussian::new(F::zero(), s.mul_int(2)) {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                });
            }
        }
        Suite::GenfunS => {
            let n_max = top.max(8);
            let mut rng = StdRng::seed_from_u64(opts.seed);
            for _ in 0..5 {
                let a = random_rational(&mut rng);
                let b = random_rational(&mut rng);
                r.check(format!("series of G matches S(n,j;{a},{b}), n <= {n_max}"), || {
                    series_matches::<Rational>(&a, &b, n_max)
                });
            }
            for beta in [1, 2] {
                r.check(format!("series of G matches S(n,j;alpha,{beta}) symbolically, n <= {n_max}"), || {
                    series_matches(&KappaScalar::kappa(), &KappaScalar::from_int(beta), n_max)
                });
            }
        }
        Suite::Norms => {
            for n in 0..=top {
                for s in signs.into_iter().filter(|&s| exists(n, s)) {
                    r.check(format!("closed form of <h_{n}^{s}, h_{n}^{s}> (N={nv})"), || {
                        let hp = h(n, s)?;
                        let x = hp.x_rep(ctx)?;
                        let direct = kappa_inner(ctx, &x, &x)?;
                        Ok(closed_norm(ctx, n, s)? == direct && symmetry_reduction_eval(ctx, &hp)? == direct)
                    });
                }
                if n >= 1 {
                    r.check(format!("<h_{n}^+, h_{n}^-> = 0 (N={nv})"), || {
                        let a = h(n, Symmetry::Plus)?.x_rep(ctx)?;
                        let b = h(n, Symmetry::Minus)?.x_rep(ctx)?;
                        Ok(kappa_inner(ctx, &a, &b)?.is_zero())
                    });
                }
            }
        }
        Suite::Monogenics => {
            for n in 1..=top {
                r.check(format!("D monogenic_{n} = 0 (N={nv})"), || {
                    let f = monogenic_with(ctx, &opts.tables, n)?;
                    Ok(dirac(ctx, &f)?.is_zero())
                });
            }
            for m in 0..=top.saturating_sub(1) / 2 {
                let n = 2 * m + 1;
                r.check(format!("(T1+T2) of monogenic_{n} (N={nv})"), || {
                    let mi = m as i64;
                    let odd = monogenic_with(ctx, &opts.tables, n)?;
                    let lhs = apply_sum_diff_clifford(ctx, &odd, SumDiff::Sum)?;
                    let hp = h(2 * m, Symmetry::Plus)?.x_rep(ctx)?.scale(&ctx.affine(2, 0, 2 * mi + 2));
                    let mut rhs = CliffordPoly::from_component(Blade::scalar(), hp)?;
                    if m > 0 {
                        let hm = h(2 * m, Symmetry::Minus)?.x_rep(ctx)?.scale(&ctx.affine(1, -1, mi));
                        rhs.add_component(Blade::from_indices(&[1, 2])?, &hm)?;
                    }
                    Ok(lhs == rhs)
                });
            }
            let mut rng = StdRng::seed_from_u64(opts.seed ^ 0xd1);
            r.check(format!("D^2 = -Laplacian on {} random inputs (N={nv})", opts.random_cases), || {
                for _ in 0..opts.random_cases {
                    let f = random_clifford::<F>(&mut rng, nv, 5);
                    let dd = dirac(ctx, &dirac(ctx, &f)?)?;
                    let lap = f.map_components(|p| ctx.apply_laplacian(p))?.scale(&-F::one());
                    if dd != lap {
                        return Ok(false);
                    }
                }
                Ok(true)
            });
        }
        Suite::Oracles => {
            r.check(format!("generating-function series = closed-form phi, psi, n <= {top}"), || {
                let u1 = u_series_oracle::<F>(nv, 1, top);
                let u2 = u_series_oracle::<F>(nv, 2, top);
                let zero = MultiPoly::zero(nv, Rep::P);
                for n in 0..=top {
                    for j in 0..=n {
                        if u1.get(&(n, j)).unwrap_or(&zero) != phi(ctx, n, j as i64).p_rep()
                            || u2.get(&(n, j)).unwrap_or(&zero) != psi(ctx, n, j as i64).p_rep()
                        {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            });
            let dmax = top.min(5);
            r.check(format!("p-rep operators = conjugated x-rep operators, degree <= {dmax}"), || {
                for d in 0..=dmax {
                    for alpha in Monomial::all_of_degree(nv, d) {
                        let g = MultiPoly::monomial(alpha.clone(), F::one(), Rep::P);
                        let x = ctx.psi_inverse(&g)?;
                        for i in 0..nv {
                            let via_p = ctx.apply_dunkl_p(i, &g)?;
                            if ctx.psi_inverse(&via_p)? != ctx.apply_dunkl_x(i, &x)? {
                                return Ok(false);
                            }
                        }
                    }
                }
                Ok(true)
            });
            r.check(format!("explicit monomial action = p-rep operators, degree <= {dmax}"), || {
                for d in 0..=dmax {
                    for alpha in Monomial::all_of_degree(nv, d) {
                        let g = MultiPoly::monomial(alpha.clone(), F::one(), Rep::P);
                        for i in 0..nv {
                            if ctx.dunkl_on_p_monomial(i, &alpha)? != ctx.apply_dunkl_p(i, &g)? {
                                return Ok(false);
                            }
                        }
                    }
                }
                Ok(true)
            });
        }
        Suite::Commutativity => {
            let mut rng = StdRng::seed_from_u64(opts.seed ^ 0xc0);
            r.check(format!("T_i T_j = T_j T_i on {} random inputs (N={nv})", opts.random_cases), || {
                for _ in 0..opts.random_cases {
                    let f = random_poly::<F>(&mut rng, nv, 5, 6);
                    let i = rng.random_range(0..nv);
                    let j = rng.random_range(0..nv);
                    let a = ctx.apply_dunkl_x(i, &ctx.apply_dunkl_x(j, &f)?)?;
                    let b = ctx.apply_dunkl_x(j, &ctx.apply_dunkl_x(i, &f)?)?;
                    if a != b {
                        return Ok(false);
                    }
                }
                Ok(true)
            });
        }
    }
    r.out
}

/// Runs several suites in the given order.
pub fn run_suites<F: Field>(ctx: &DunklContext<F>, suites: &[Suite], opts: &VerifyOptions) -> Vec<CheckOutcome> {
    suites.iter().flat_map(|&s| run_suite(ctx, s, opts)).collect()
}

fn exists(n: u32, s: Symmetry) -> bool {
    !(n == 0 && s == Symmetry::Minus)
}

fn series_matches<F: Scalar>(a: &F, b: &F, n_max: u32) -> Result<bool> {
    for ((n, j), v) in g_series_oracle(a, b, n_max) {
        if v != s_constant(n, j, a, b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The eight `(T_1 +- T_2) h` identities as `(label, n, sign, op, m)`,
/// restricted to degree at most `top`.
fn tth_cases(top: u32) -> Vec<(String, u32, Symmetry, SumDiff, u32)> {
    use Symmetry::{Minus, Plus};
    use SumDiff::{Diff, Sum};
    let mut out = Vec::new();
    for m in 0..=top / 2 {
        let cases: [(&str, u32, Symmetry, SumDiff, bool); 8] = [
            ("(T1-T2)h_{2m+1}^- = 2(Nk+m+1)h_{2m}^+", 2 * m + 1, Minus, Diff, true),
            ("(T1-T2)h_{2m}^- = 2(Nk+m+1)h_{2m-1}^+", 2 * m, Minus, Diff, m >= 1),
            ("(T1+T2)h_{2m+1}^- = (Nk-k+m)h_{2m}^-", 2 * m + 1, Minus, Sum, true),
            ("(T1+T2)h_{2m}^- = 2(Nk+m+1)h_{2m-1}^-", 2 * m, Minus, Sum, m >= 1),
            ("(T1-T2)h_{2m+1}^+ = -(Nk-k+m)h_{2m}^-", 2 * m + 1, Plus, Diff, true),
            ("(T1-T2)h_{2m}^+ = -(Nk-k+m)h_{2m-1}^-", 2 * m, Plus, Diff, m >= 1),
            ("(T1+T2)h_{2m+1}^+ = 2(Nk+m+1)h_{2m}^+", 2 * m + 1, Plus, Sum, true),
            ("(T1+T2)h_{2m}^+ = (Nk-k+m)h_{2m-1}^+", 2 * m, Plus, Sum, m >= 1),
        ];
        for (label, n, s, op, ok) in cases {
            if ok && n <= top {
                out.push((label.to_string(), n, s, op, m));
            }
        }
    }
    out
}

fn tth_rhs<F: Scalar>(ctx: &DunklContext<F>, s: Symmetry, op: SumDiff, n: u32, m: u32) -> (Symmetry, F) {
    let mi = m as i64;
    let odd = n % 2 == 1;
    let twice = ctx.affine(1, 0, mi + 1).mul_int(2);
    let shifted = ctx.affine(1, -1, mi);
    match (s, op, odd) {
        (Symmetry::Minus, SumDiff::Diff, _) => (Symmetry::Plus, twice),
        (Symmetry::Minus, SumDiff::Sum, true) => (Symmetry::Minus, shifted),
        (Symmetry::Minus, SumDiff::Sum, false) => (Symmetry::Minus, twice),
        (Symmetry::Plus, SumDiff::Diff, _) => (Symmetry::Minus, -shifted),
        (Symmetry::Plus, SumDiff::Sum, true) => (Symmetry::Plus, twice),
        (Symmetry::Plus, SumDiff::Sum, false) => (Symmetry::Plus, shifted),
    }
}

fn random_rational(rng: &mut StdRng) -> Rational {
    let n: i64 = rng.random_range(-9..=9);
    let d: i64 = rng.random_range(1..=7);
    rat(n, d)
}

/// A polynomial with `terms` random monomials of degree at most
/// `max_degree` and small integer coefficients.
pub fn random_poly<F: Scalar>(rng: &mut StdRng, nvars: usize, max_degree: u32, terms: usize) -> MultiPoly<F> {
    let mut out = MultiPoly::zero(nvars, Rep::X);
    for _ in 0..terms {
        let d = rng.random_range(0..=max_degree);
        let mut e = vec![0u32; nvars];
        for _ in 0..d {
            e[rng.random_range(0..nvars)] += 1;
        }
        let c: i64 = rng.random_range(-5..=5);
        out.add_term(Monomial::new(e), F::from_int(c));
    }
    out
}

/// A Clifford-valued polynomial with a few random blades.
pub fn random_clifford<F: Scalar>(rng: &mut StdRng, nvars: usize, max_degree: u32) -> CliffordPoly<F> {
    let mut out = CliffordPoly::zero(nvars);
    let blades = rng.random_range(1..=3);
    for _ in 0..blades {
        let indices: Vec<usize> = (1..=nvars).filter(|_| rng.random_bool(0.5)).collect();
        let b = Blade::from_indices(&indices).expect("increasing indices");
        let p = random_poly(rng, nvars, max_degree, 4);
        out.add_component(b, &p).expect("matching variables");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_run_passes() {
        let ctx = DunklContext::<KappaScalar>::symbolic(3).unwrap();
        let opts = VerifyOptions { max_degree: 3, random_cases: 3, ..Default::default() };
        let out = run_suites(&ctx, &Suite::ALL, &opts);
        let failed: Vec<_> = out.iter().filter(|o| !o.passed).collect();
        assert!(failed.is_empty(), "{failed:?}");
    }

    #[test]
    fn perturbed_g_is_caught() {
        let ctx = DunklContext::<KappaScalar>::symbolic(3).unwrap();
        let opts = VerifyOptions {
            max_degree: 5,
            tables: GTables::perturbed(crate::planar::GKind::Odd, 2, rat(1, 1)),
            ..Default::default()
        };
        let out = run_suite(&ctx, Suite::Harmonicity, &opts);
        assert!(out.iter().any(|o| !o.passed));
    }
}
