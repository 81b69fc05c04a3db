//! Type-A Dunkl operators, planar harmonic and monogenic polynomials, and
//! their structure constants, in exact arithmetic.
//!
//! Everything is generic over a [`scalar::Field`]; the aliases below fix the
//! two scalars used in practice: symbolic kappa (rational functions in kappa)
//! and a specialized rational kappa.

pub mod clifford;
pub mod dunkl;
pub mod error;
pub mod inner;
pub mod planar;
pub mod poly;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{Field, Gaussian, KappaPoly, KappaScalar, Rational, Scalar};

pub type SymbolicContext = dunkl::DunklContext<KappaScalar>;
pub type RationalContext = dunkl::DunklContext<Rational>;
pub type KappaMultiPoly = poly::MultiPoly<KappaScalar>;
pub type RationalMultiPoly = poly::MultiPoly<Rational>;
pub type GaussianKappa = Gaussian<KappaScalar>;
pub type KappaPlanarPoly = planar::PlanarPoly<KappaScalar>;
