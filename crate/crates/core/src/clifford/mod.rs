//! The Clifford algebra with generators `e_1, ..., e_N`, `e_i^2 = -1`,
//! `e_i e_j = -e_j e_i`, the Dirac operator `D = sum_i e_i T_i` and the
//! planar monogenic polynomials.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dunkl::{DunklContext, SumDiff};
use crate::error::{Error, Result};
use crate::planar::{harmonic_with, GTables, Symmetry};
use crate::poly::{MultiPoly, PolyJson, Rep};
use crate::scalar::{Field, Scalar, ScalarText};

/// A basis element `e_{i_1} ... e_{i_k}`, `i_1 < ... < i_k`, stored as a
/// bit set (bit `i` is `e_{i+1}`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Blade(u64);

impl Blade {
    pub const MAX_GENERATORS: usize = 64;

    pub fn scalar() -> Self {
        Blade(0)
    }

    /// `e_i`, with `i` zero-based.
    pub fn generator(i: usize) -> Self {
        assert!(i < Self::MAX_GENERATORS);
        Blade(1 << i)
    }

    /// From 1-based indices; they must be strictly increasing.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        let mut last = 0;
        for &i in indices {
            if i <= last || i > Self::MAX_GENERATORS {
                return Err(Error::IndexOutOfRange(format!("blade indices {indices:?}")));
            }
            bits |= 1 << (i - 1);
            last = i;
        }
        Ok(Blade(bits))
    }

    /// 1-based, increasing.
    pub fn indices(&self) -> Vec<usize> {
        (0..Self::MAX_GENERATORS).filter(|&i| self.0 >> i & 1 == 1).map(|i| i + 1).collect()
    }

    pub fn grade(&self) -> u32 {
        self.0.count_ones()
    }

    /// Largest generator index plus one (0 for the scalar blade).
    fn span(&self) -> usize {
        Self::MAX_GENERATORS - self.0.leading_zeros() as usize
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        for i in self.indices() {
            write!(f, "e{i}")?;
        }
        Ok(())
    }
}

/// `a b = sign * c`.
pub fn blade_product(a: Blade, b: Blade) -> (i64, Blade) {
    // moving each generator of b left past the larger generators of a
    let mut swaps = 0;
    let mut rest = b.0;
    while rest != 0 {
        let i = rest.trailing_zeros();
        rest &= rest - 1;
        swaps += (a.0 >> i >> 1).count_ones();
    }
    // each shared generator squares to -1
    swaps += (a.0 & b.0).count_ones();
    let sign = if swaps % 2 == 0 { 1 } else { -1 };
    (sign, Blade(a.0 ^ b.0))
}

/// A polynomial with Clifford coefficients: `sum_B B f_B` with X-rep `f_B`.
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordPoly<F: Scalar> {
    nvars: usize,
    components: BTreeMap<Blade, MultiPoly<F>>,
}

impl<F: Scalar> CliffordPoly<F> {
    pub fn zero(nvars: usize) -> Self {
        CliffordPoly { nvars, components: BTreeMap::new() }
    }

    pub fn from_component(blade: Blade, f: MultiPoly<F>) -> Result<Self> {
        let mut out = Self::zero(f.nvars());
        out.add_component(blade, &f)?;
        Ok(out)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &BTreeMap<Blade, MultiPoly<F>> {
        &self.components
    }

    pub fn component(&self, blade: Blade) -> MultiPoly<F> {
        self.components.get(&blade).cloned().unwrap_or_else(|| MultiPoly::zero(self.nvars, Rep::X))
    }

    /// Adds `blade * f`.
    pub fn add_component(&mut self, blade: Blade, f: &MultiPoly<F>) -> Result<()> {
        if f.rep() != Rep::X {
            return Err(Error::RepMismatch("Clifford components are X rep".into()));
        }
        if f.nvars() != self.nvars {
            return Err(Error::NVarsMismatch { expected: self.nvars, got: f.nvars() });
        }
        if blade.span() > self.nvars {
            return Err(Error::IndexOutOfRange(format!("blade {blade} with N = {}", self.nvars)));
        }
        if f.is_zero() {
            return Ok(());
        }
        let entry = self.components.entry(blade).or_insert_with(|| MultiPoly::zero(f.nvars(), Rep::X));
        entry.add_assign_poly(f);
        if entry.is_zero() {
            self.components.remove(&blade);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (b, f) in &other.components {
            out.add_component(*b, f)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.nvars);
        for (b, f) in &self.components {
            let g = f.scale(c);
            if !g.is_zero() {
                out.components.insert(*b, g);
            }
        }
        out
    }

    /// `blade * self`.
    pub fn left_mul(&self, blade: Blade) -> Self {
        let mut out = Self::zero(self.nvars);
        for (b, f) in &self.components {
            let (sign, c) = blade_product(blade, *b);
            out.components.insert(c, f.mul_int(sign));
        }
        out
    }

    /// Applies a scalar linear operator to every component.
    pub fn map_components(&self, op: impl Fn(&MultiPoly<F>) -> Result<MultiPoly<F>>) -> Result<Self> {
        let mut out = Self::zero(self.nvars);
        for (b, f) in &self.components {
            out.add_component(*b, &op(f)?)?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> CliffordJson {
        CliffordJson {
            blades: self
                .components
                .iter()
                .map(|(b, f)| BladeJson { indices: b.indices(), poly: f.to_json() })
                .collect(),
        }
    }
}

impl<F: ScalarText> CliffordPoly<F> {
    pub fn from_json(j: &CliffordJson, nvars: usize) -> Result<Self> {
        let mut out = Self::zero(nvars);
        for b in &j.blades {
            out.add_component(Blade::from_indices(&b.indices)?, &MultiPoly::from_json(&b.poly)?)?;
        }
        Ok(out)
    }
}

impl<F: Scalar> fmt::Display for CliffordPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("0");
        }
        for (k, (b, p)) in self.components.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{b}*({p})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BladeJson {
    pub indices: Vec<usize>,
    pub poly: PolyJson,
}

/// Wire form: `{"blades": [{"indices": [1-based], "poly": ...}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordJson {
    pub blades: Vec<BladeJson>,
}

/// `D f = sum_i e_i T_i f`.
pub fn dirac<F: Scalar>(ctx: &DunklContext<F>, f: &CliffordPoly<F>) -> Result<CliffordPoly<F>> {
    if f.nvars != ctx.nvars() {
        return Err(Error::NVarsMismatch { expected: ctx.nvars(), got: f.nvars });
    }
    let mut out = CliffordPoly::zero(f.nvars);
    for i in 0..ctx.nvars() {
        let ti = f.map_components(|p| ctx.apply_dunkl_x(i, p))?;
        out = out.checked_add(&ti.left_mul(Blade::generator(i)))?;
    }
    Ok(out)
}

/// `(T_1 +- T_2)` on every component.
pub fn apply_sum_diff_clifford<F: Scalar>(
    ctx: &DunklContext<F>,
    f: &CliffordPoly<F>,
    op: SumDiff,
) -> Result<CliffordPoly<F>> {
    f.map_components(|p| ctx.apply_sum_diff_x(op, p))
}

/// The coefficient `c` in `h_n^+ + c e_1 e_2 h_n^-`: one for odd `n`,
/// `(N kappa - kappa + m) / (2 (N kappa + m + 1))` for `n = 2m`.
pub fn monogenic_coefficient<F: Field>(ctx: &DunklContext<F>, n: u32) -> Result<F> {
    if n % 2 == 1 {
        return Ok(F::one());
    }
    let m = (n / 2) as i64;
    ctx.affine(1, -1, m)
        .try_div(&ctx.affine(1, 0, m + 1).mul_int(2))
        .map_err(|e| ctx.pole(e))
}

/// `Psi^{-1} h_n^+ + c e_1 e_2 Psi^{-1} h_n^-`, annihilated by `D`.
pub fn monogenic<F: Field>(ctx: &DunklContext<F>, n: u32) -> Result<CliffordPoly<F>> {
    monogenic_with(ctx, GTables::standard(), n)
}

/// [`monogenic`] with the harmonics built from `tables`.
pub fn monogenic_with<F: Field>(ctx: &DunklContext<F>, tables: &GTables, n: u32) -> Result<CliffordPoly<F>> {
    if n == 0 {
        return Err(Error::Precondition("monogenic polynomials start at degree 1".into()));
    }
    let c = monogenic_coefficient(ctx, n)?;
    let plus = harmonic_with(ctx, tables, n, Symmetry::Plus)?.x_rep(ctx)?;
    let minus = harmonic_with(ctx, tables, n, Symmetry::Minus)?.x_rep(ctx)?.scale(&c);
    let mut out = CliffordPoly::from_component(Blade::scalar(), plus)?;
    out.add_component(Blade::from_indices(&[1, 2])?, &minus)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, KappaScalar, Rational};

    type K = KappaScalar;

    #[test]
    fn generator_relations() {
        let e = Blade::generator;
        assert_eq!(blade_product(e(0), e(0)), (-1, Blade::scalar()));
        let (s12, b12) = blade_product(e(0), e(1));
        let (s21, b21) = blade_product(e(1), e(0));
        assert_eq!(b12, b21);
        assert_eq!(s12, -s21);
        assert_eq!(blade_product(b12, e(1)), (-1, e(0)));
    }

    #[test]
    fn blade_indices() {
        let b = Blade::from_indices(&[1, 3]).unwrap();
        assert_eq!(b.indices(), vec![1, 3]);
        assert_eq!(b.grade(), 2);
        assert_eq!(b.to_string(), "e1e3");
        assert!(Blade::from_indices(&[2, 2]).is_err());
        assert!(Blade::from_indices(&[3, 1]).is_err());
        assert!(Blade::from_indices(&[0]).is_err());
    }

    #[test]
    fn dirac_of_constant_vanishes() {
        let ctx = DunklContext::<K>::symbolic(3).unwrap();
        let c = CliffordPoly::from_component(Blade::scalar(), MultiPoly::constant(3, Rep::X, K::from_int(5))).unwrap();
        assert!(dirac(&ctx, &c).unwrap().is_zero());
    }

    #[test]
    fn classical_dirac_at_kappa_zero() {
        // D(x_1 e_1) = e_1 e_1 = -1 at kappa = 0
        let ctx = DunklContext::specialized(2, rat(0, 1)).unwrap();
        let f = CliffordPoly::from_component(Blade::generator(0), MultiPoly::<Rational>::var(2, Rep::X, 0)).unwrap();
        let want = CliffordPoly::from_component(Blade::scalar(), MultiPoly::constant(2, Rep::X, rat(-1, 1))).unwrap();
        assert_eq!(dirac(&ctx, &f).unwrap(), want);
    }

    #[test]
    fn low_degree_monogenics() {
        let ctx = DunklContext::<K>::symbolic(3).unwrap();
        for n in 1..=3 {
            let f = monogenic(&ctx, n).unwrap();
            assert_eq!(f.components().len(), 2);
            assert!(dirac(&ctx, &f).unwrap().is_zero(), "n={n}");
        }
        assert!(monogenic(&ctx, 0).is_err());
    }

    #[test]
    fn json_uses_one_based_indices() {
        let f = CliffordPoly::from_component(
            Blade::from_indices(&[1, 2]).unwrap(),
            MultiPoly::<Rational>::var(2, Rep::X, 1),
        )
        .unwrap();
        let s = serde_json::to_string(&f.to_json()).unwrap();
        assert!(s.starts_with(r#"{"blades":[{"indices":[1,2],"poly":"#));
        let back: CliffordJson = serde_json::from_str(&s).unwrap();
        assert_eq!(CliffordPoly::<Rational>::from_json(&back, 2).unwrap(), f);
    }
}
