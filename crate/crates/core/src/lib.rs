//! Numerical laboratory for Lichnerowicz-type equations
//! Δu + a u − b u^σ + c u^τ = 0 on rotationally symmetric model manifolds.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotic;
pub mod bounds;
pub mod demos;
pub mod error;
pub mod field;
pub mod grid;
pub mod hypotheses;
pub mod model;
pub mod nonlinearity;
pub mod ode;
pub mod operator;
pub mod quadrature;
pub mod roots;
pub mod solver;
pub mod spectral;
pub mod suite;
pub mod tridiag;

pub use error::{Error, Result};
pub use field::RadialField;
pub use grid::{RadialFunction, RadialGrid};
pub use model::{ModelManifold, WarpingFunction};
pub use nonlinearity::CoefficientSet;
