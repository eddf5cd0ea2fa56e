//! Forward orbits: classification of ω-limits, basin rasters, and scans over
//! a parameter plane.

mod classify;
mod raster;
mod scan;

pub use classify::{classify_orbit, cycle_multiplier, nearest_root, OrbitOutcome, ScanConfig};
pub use raster::{BasinRaster, CycleSample, PixelCode};
pub use scan::{parameter_scan, render_basins};
