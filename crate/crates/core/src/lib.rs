//! Exact time-power-series solutions of heat-like `u_t = L u + f` and
//! wave-like `u_tt = L u + f` problems whose operator `L`, source `f` and
//! initial data are polynomial in the spatial variables.
//!
//! The series is generated from initial data alone, recognized as a finite
//! sum of polynomial-times-exponential terms, and compared term by term with
//! the homotopy-perturbation iterates of the same problem.

pub mod closedform;
pub mod corpus;
pub mod diffop;
pub mod hpm;
pub mod parse;
pub mod poly;
pub mod problem;
pub mod rational;
pub mod report;
pub mod series;

pub use closedform::{recognize, ClosedForm, NotRecognized};
pub use diffop::{DerivIndex, DiffOp, DiffOpTerm};
pub use poly::{Limits, Monomial, PolyError, Polynomial, VariableSet};
pub use problem::ProblemSpec;
pub use rational::Rational;
pub use series::{HeatProblem, Kind, Problem, ResidualFloor, SeriesSolution, WaveProblem};
