use serde::{Deserialize, Serialize};

use super::{Monomial, MultiPoly, Rep};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, ScalarText};

/// Wire form of a polynomial: terms in descending graded-lex order, each
/// coefficient in its scalar text format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub rep: Rep,
    pub nvars: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coeff: String,
}

impl<F: Scalar> MultiPoly<F> {
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            rep: self.rep,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermJson { exp: m.exps().to_vec(), coeff: c.to_string() })
                .collect(),
        }
    }
}

impl<F: ScalarText> MultiPoly<F> {
    pub fn from_json(j: &PolyJson) -> Result<Self> {
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            if t.exp.len() != j.nvars {
                return Err(Error::NVarsMismatch { expected: j.nvars, got: t.exp.len() });
            }
            terms.push((Monomial::new(t.exp.clone()), F::parse_text(&t.coeff)?));
        }
        MultiPoly::from_terms(j.nvars, j.rep, terms)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: PolyJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&j)
    }
}

impl<F: Scalar> MultiPoly<F> {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("polynomial json")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::KappaScalar;

    #[test]
    fn wire_format_is_sorted_descending() {
        let x = |i| MultiPoly::<KappaScalar>::var(2, Rep::X, i);
        let f = x(0) * x(1) + x(1).scale(&KappaScalar::kappa()) + x(0) * x(0);
        let s = f.to_json_string();
        assert_eq!(
            s,
            r#"{"rep":"X","nvars":2,"terms":[{"exp":[2,0],"coeff":"1 | 1"},{"exp":[1,1],"coeff":"1 | 1"},{"exp":[0,1],"coeff":"k | 1"}]}"#
        );
        assert_eq!(MultiPoly::<KappaScalar>::from_json_str(&s).unwrap(), f);
    }

    #[test]
    fn wrong_exponent_length_rejected() {
        let s = r#"{"rep":"P","nvars":2,"terms":[{"exp":[1],"coeff":"1"}]}"#;
        assert!(MultiPoly::<KappaScalar>::from_json_str(s).is_err());
    }
}
