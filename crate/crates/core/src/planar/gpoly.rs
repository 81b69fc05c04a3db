//! The monic families `g^o`, `g^e` that carry the coefficients of the
//! harmonic polynomials:
//!
//! ```text
//! g^o_{n+1}(v) = (v + 3n + 1) g^o_n(v) - n(2n - 1) g^o_{n-1}(v)
//! g^e_{n+1}(v) = (v + 3n + 2) g^e_n(v) - n(2n + 1) g^e_{n-1}(v)
//! ```
//!
//! with `g_0 = 1`. Values are polynomials in an abstract variable `v`,
//! stored as [`KappaPoly`] (whose indeterminate then plays the role of `v`).

use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::scalar::{KappaPoly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GKind {
    #[serde(rename = "o")]
    Odd,
    #[serde(rename = "e")]
    Even,
}

impl GKind {
    // (c, d) in g_{n+1} = (v + 3n + c) g_n - n(2n + d) g_{n-1}
    fn shifts(self) -> (i64, i64) {
        match self {
            GKind::Odd => (1, -1),
            GKind::Even => (2, 1),
        }
    }
}

/// Memoized `g_0, g_1, ...` of one kind.
///
/// A family may carry a perturbation: a rational added to the constant term
/// of one `g_n` on output. The recurrence itself is never perturbed. This
/// exists so that the verification suites can be shown to detect a wrong
/// coefficient.
#[derive(Debug)]
pub struct GPolyFamily {
    kind: GKind,
    perturbation: Option<(u32, Rational)>,
    values: RwLock<Vec<KappaPoly>>,
}

impl GPolyFamily {
    pub fn new(kind: GKind) -> Self {
        GPolyFamily { kind, perturbation: None, values: RwLock::new(Vec::new()) }
    }

    pub fn perturbed(kind: GKind, n: u32, delta: Rational) -> Self {
        GPolyFamily { kind, perturbation: Some((n, delta)), values: RwLock::new(Vec::new()) }
    }

    pub fn kind(&self) -> GKind {
        self.kind
    }

    pub fn is_perturbed(&self) -> bool {
        self.perturbation.is_some()
    }

    pub fn get(&self, n: u32) -> KappaPoly {
        let raw = self.raw(n);
        match &self.perturbation {
            Some((at, delta)) if *at == n => raw + KappaPoly::constant(delta.clone()),
            _ => raw,
        }
    }

    fn raw(&self, n: u32) -> KappaPoly {
        if let Some(g) = self.values.read().unwrap().get(n as usize) {
            return g.clone();
        }
        let mut table = self.values.write().unwrap();
        let (c, d) = self.kind.shifts();
        while table.len() <= n as usize {
            let next = match table.len() {
                0 => KappaPoly::from_ints(&[1]),
                1 => KappaPoly::from_ints(&[c, 1]),
                len => {
                    let k = len as i64 - 1;
                    let lin = KappaPoly::from_ints(&[3 * k + c, 1]);
                    lin * table[len - 1].clone()
                        - table[len - 2].clone() * KappaPoly::from_ints(&[k * (2 * k + d)])
                }
            };
            table.push(next);
        }
        table[n as usize].clone()
    }
}

/// `g_n^o` or `g_n^e` from the shared unperturbed tables.
pub fn g_poly(kind: GKind, n: u32) -> KappaPoly {
    GTables::standard().get(kind).get(n)
}

/// One family of each kind.
#[derive(Debug)]
pub struct GTables {
    odd: GPolyFamily,
    even: GPolyFamily,
}

impl GTables {
    pub fn new() -> Self {
        GTables { odd: GPolyFamily::new(GKind::Odd), even: GPolyFamily::new(GKind::Even) }
    }

    /// The process-wide unperturbed tables.
    pub fn standard() -> &'static GTables {
        static TABLES: OnceLock<GTables> = OnceLock::new();
        TABLES.get_or_init(GTables::new)
    }

    /// Tables in which `g_n` of `kind` has `delta` added to its constant term.
    pub fn perturbed(kind: GKind, n: u32, delta: Rational) -> Self {
        let mut t = Self::new();
        match kind {
            GKind::Odd => t.odd = GPolyFamily::perturbed(kind, n, delta),
            GKind::Even => t.even = GPolyFamily::perturbed(kind, n, delta),
        }
        t
    }

    pub fn get(&self, kind: GKind) -> &GPolyFamily {
        match kind {
            GKind::Odd => &self.odd,
            GKind::Even => &self.even,
        }
    }

    pub fn is_perturbed(&self) -> bool {
        self.odd.is_perturbed() || self.even.is_perturbed()
    }
}

impl Default for GTables {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn first_values() {
        assert_eq!(g_poly(GKind::Odd, 0), KappaPoly::from_ints(&[1]));
        assert_eq!(g_poly(GKind::Odd, 1), KappaPoly::from_ints(&[1, 1]));
        assert_eq!(g_poly(GKind::Odd, 2), KappaPoly::from_ints(&[3, 5, 1]));
        assert_eq!(g_poly(GKind::Odd, 3), KappaPoly::from_ints(&[15, 32, 12, 1]));
        assert_eq!(g_poly(GKind::Even, 1), KappaPoly::from_ints(&[2, 1]));
        assert_eq!(g_poly(GKind::Even, 2), KappaPoly::from_ints(&[7, 7, 1]));
        assert_eq!(g_poly(GKind::Even, 3), KappaPoly::from_ints(&[36, 53, 15, 1]));
    }

    #[test]
    fn monic_of_exact_degree() {
        for kind in [GKind::Odd, GKind::Even] {
            for n in 0..12 {
                let g = g_poly(kind, n);
                assert_eq!(g.degree(), Some(n as usize));
                assert!(g.leading().unwrap() == &rat(1, 1));
            }
        }
    }

    #[test]
    fn perturbation_is_local() {
        let t = GTables::perturbed(GKind::Odd, 2, rat(1, 1));
        assert_eq!(t.get(GKind::Odd).get(2), KappaPoly::from_ints(&[4, 5, 1]));
        assert_eq!(t.get(GKind::Odd).get(3), g_poly(GKind::Odd, 3));
        assert_eq!(t.get(GKind::Even).get(2), g_poly(GKind::Even, 2));
    }
}
