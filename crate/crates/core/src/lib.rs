//! Exact-arithmetic engine for star products with separation of variables.
//!
//! Everything is computed over the fraction field of a sparse multivariate
//! polynomial ring with Gaussian-rational coefficients: no floats, no
//! tolerances. On top of that sit finite-order differential operators on a
//! coordinate chart, their ν-truncated formal series, an abstract shift
//! algebra used for operator roots, the star-product construction itself,
//! and the machinery that certifies smooth extension of operators across a
//! hypersurface `{ψ = 0}`.

pub mod chart;
pub mod diffop;
pub mod extension;
pub mod linalg;
pub mod probe;
pub mod scalar;
pub mod scenarios;
pub mod series;
pub mod shiftalg;
pub mod starprod;
pub mod verify;

pub use chart::{Chart, Var};
pub use scalar::{ExactScalar, GaussianRational, Poly};
pub use series::FormalFunc;
