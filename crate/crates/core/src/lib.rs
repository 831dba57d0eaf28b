//! Construction and numerical verification of solutions to the c-biwave equation
//!
//! ```text
//! u_xxxx - 2c u_xxyy + u_yyyy = 0,   c > 0, c != 1
//! ```
//!
//! through the commutative algebras attached to it: a four-dimensional real
//! algebra for `c > 1` and a two-dimensional complex one for `0 < c < 1`.

// NaN-rejecting checks are written as `!(x > 0.0)` on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod analytic;
pub mod cli;
pub mod error;
pub mod grid;
pub mod pde;
pub mod synthesis;

pub use algebra::{make_params, AlgebraParams, Element, Regime};
pub use error::{Error, Result};
pub use grid::{GridSpec, Rect, ResidualGrid, ScalarGrid};
pub use pde::{biwave_apply_poly, biwave_residual_fd, Poly2D};
pub use synthesis::{PlaneWaveField, ScalarField, SolutionSpec};
