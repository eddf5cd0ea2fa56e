//! Polynomial algebra: bivariate real polynomials and maps of the plane,
//! univariate complex polynomials, and root finding for both.

pub mod interval;
mod multi;
mod parse;
mod roots;
mod system;
mod uni;

pub use multi::{Exponents, MultiPoly, PlaneMap};
pub use parse::parse_with_vars;
pub use roots::{cluster_roots, univariate_complex_roots, DEFAULT_ROOT_TOL};
pub use system::{
    merge_points, solve2, system_real_roots, PolySystem, SystemRoots, DEFAULT_MAX_DEPTH,
    DEFAULT_SYSTEM_TOL,
};
pub use uni::UniComplexPoly;
