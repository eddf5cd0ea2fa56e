//! Newton maps of complex polynomials and of polynomial maps of the real
//! plane: forward basins, backward orbits and trees, IFS iteration on
//! rasters, and checks of one-dimensional real dynamics.

// `!(a > b)` is used on purpose so that NaN falls on the rejecting side
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod backward;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod forward;
pub mod geom;
pub mod newton;
pub mod poly;

pub use error::{Error, Result};
