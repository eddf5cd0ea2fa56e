//! α-limits by backward iteration: counterimages, random backward orbits,
//! backward trees and Hutchinson iteration on rasters.

mod ifs;
mod occupancy;
mod orbit;
mod tree;

pub use ifs::{hutchinson_iterate, Disk, HutchinsonRun};
pub use occupancy::{hausdorff_pixel_distance, OccupancyRaster};
pub use orbit::{random_backward_orbit, random_backward_orbits, BackwardOrbit, DEFAULT_BURN_IN, MAX_RETRIES};
pub use tree::{backward_tree, BackwardTree, DEFAULT_TREE_CAP};

use crate::dynamics::Invertible;
use crate::geom::{Point, Window};
use crate::Result;

/// All `w` with `N(w) = z` (complex maps: with multiplicity; planar maps:
/// real solutions inside `domain`, which is then required).
pub fn counterimages<M: Invertible + ?Sized>(n: &M, z: Point, domain: Option<&Window>) -> Result<Vec<Point>> {
    n.counterimages(z, domain)
}
