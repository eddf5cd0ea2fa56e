//! Newton maps of complex polynomials and of polynomial maps of the plane,
//! their homogeneous form, ghost lines, and pullbacks by polynomial
//! diffeomorphisms.

mod complex;
mod ghost;
mod plane;
mod projective;
mod pullback;

pub use complex::{build_newton_complex, NewtonComplexMap, RationalMap};
pub use ghost::{
    complex_solutions, ghost_lines, ghost_lines_from, ComplexSolution, GhostLine, DEDUP_RADIUS,
    GHOST_SEEDS,
};
pub use plane::{build_newton_plane, newton_step_plane, NewtonPlaneMap, COUNTERIMAGE_CHECK};
pub use projective::{
    homogenize_newton, indeterminacy_points, jacobian_at_infinity, HomogeneousPoly,
    ProjectivePlaneMap,
};
pub use pullback::{conjugated_step, pullback_map};
