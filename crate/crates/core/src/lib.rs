//! Explicit terms of the gluing formula for analytic torsion on
//! odd-dimensional hyperbolic manifolds with cusps.
//!
//! The crate is organised bottom-up:
//!
//! * [`weights`]: type-D root data, Weyl groups, highest weights.
//! * [`kostant`]: the Kostant set `W¹`, its weight data and the boundary
//!   cohomology profile.
//! * [`nilcoh`]: brute-force Lie algebra cohomology of the nilradical, used
//!   as an independent check on [`kostant`].
//! * [`torsion`]: exact Reidemeister torsion of based cochain complexes.
//! * [`cusp`]: model heat kernel on a cusp and its truncated trace.
//! * [`assembler`]: determinant, anomaly and cohomology terms of the
//!   gluing formula.
//! * [`problem`]: the JSON problem description consumed by the CLI.

pub mod error;
pub mod kostant;
pub mod assembler;
pub mod cusp;
pub mod linalg;
pub mod nilcoh;
pub mod problem;
pub mod quadrature;
pub mod rational;
pub mod torsion;
pub mod weights;

pub use error::{Error, ErrorKind, Result};
