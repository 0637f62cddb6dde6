//! Exact-arithmetic diagrammatic calculus for the functorial LMO invariant
//! of Lagrangian cobordisms.
//!
//! The crate provides, bottom up:
//!
//! * [`diagram`] — canonical connected Jacobi diagrams with colored legs and
//!   antisymmetry sign tracking;
//! * [`sector`] — the IHX quotient by exact rational elimination;
//! * [`series`] — truncated series of diagram monomials ([`series::YSeries`]);
//! * [`matrix`] — symmetric rational strut matrices;
//! * [`pairing`] — contraction brackets, Wick contraction and formal
//!   Gaussian integration;
//! * [`tscat`] — the category of top-substantial diagrams: split elements,
//!   tensor, composition, star products and star inversion;
//! * [`generators`] — built-in and loadable tables of generator values;
//! * [`coblang`] — parser, word-level type checker and evaluator for
//!   cobordism expressions;
//! * [`cylinders`] — homology-cylinder arithmetic: tau-one, the theta
//!   coefficient, the Casson invariant and the Morita composition formula;
//! * [`notation`] — the shared textual grammar (bit-exact round trips);
//! * [`sampling`] — seeded random generators for property tests and the
//!   CLI check suites.
//!
//! All coefficients are exact rationals; no floating point is used anywhere.

pub mod coblang;
pub mod cylinders;
pub mod diagram;
pub mod error;
pub mod generators;
pub mod matrix;
pub mod notation;
pub mod pairing;
pub mod sampling;
pub mod sector;
pub mod series;
pub mod tscat;

/// Exact rational scalar used throughout.
pub type Rational = num_rational::BigRational;

/// Shorthand for building a rational from a numerator and denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
