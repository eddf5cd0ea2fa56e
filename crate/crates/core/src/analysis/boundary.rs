use serde::Serialize;

use crate::backward::{hausdorff_pixel_distance, OccupancyRaster};
use crate::forward::{BasinRaster, PixelCode};
use crate::{Error, Result};

/// Basin-boundary pixels of a raster with their neighborhood diversity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryMap {
    pub boundary: OccupancyRaster,
    /// Boundary pixels whose neighborhood meets three or more attractors.
    pub nonregular: OccupancyRaster,
    /// Number of distinct attractor codes in each pixel's 3×3 neighborhood.
    #[serde(skip)]
    pub diversity: Vec<u8>,
}

impl BoundaryMap {
    pub fn nonregular_fraction(&self) -> f64 {
        if self.boundary.is_empty() {
            0.0
        } else {
            self.nonregular.count() as f64 / self.boundary.count() as f64
        }
    }
}

/// Marks every pixel whose 3×3 neighborhood holds two or more distinct
/// attractor codes (root basins or attracting cycles).
pub fn extract_boundary(basins: &BasinRaster) -> Result<BoundaryMap> {
    let attractors: std::collections::BTreeSet<u8> =
        basins.codes.iter().copied().filter(|&c| PixelCode::is_attractor(c)).collect();
    if attractors.len() < 2 {
        return Err(Error::invalid(format!(
            "boundary extraction needs at least two attractor codes, found {}",
            attractors.len()
        )));
    }
    let (w, h) = (basins.width, basins.height);
    let grid = basins.grid();
    let mut diversity = vec![0u8; w * h];
    let mut bits = vec![false; w * h];
    let mut hard = vec![false; w * h];
    for row in 0..h {
        for col in 0..w {
            let mut seen = [0u8; 9];
            let mut k = 0usize;
            for r in row.saturating_sub(1)..=(row + 1).min(h - 1) {
                for c in col.saturating_sub(1)..=(col + 1).min(w - 1) {
                    let code = basins.codes[r * w + c];
                    if PixelCode::is_attractor(code) && !seen[..k].contains(&code) {
                        seen[k] = code;
                        k += 1;
                    }
                }
            }
            let i = row * w + col;
            diversity[i] = k as u8;
            bits[i] = k >= 2;
            hard[i] = k >= 3;
        }
    }
    Ok(BoundaryMap {
        boundary: OccupancyRaster::from_bits(grid, bits)?,
        nonregular: OccupancyRaster::from_bits(grid, hard)?,
        diversity,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryComparison {
    pub hausdorff_pixels: f64,
    pub boundary_pixel_count: usize,
    pub alpha_pixel_count: usize,
    pub nonregular_fraction: f64,
    pub nonregular_only: bool,
}

/// Hausdorff distance between an α-limit raster and the boundary (or only
/// its non-regular part).
pub fn compare_alpha_boundary(alpha: &OccupancyRaster, boundary: &BoundaryMap, nonregular_only: bool) -> Result<BoundaryComparison> {
    let target = if nonregular_only { &boundary.nonregular } else { &boundary.boundary };
    if !alpha.same_geometry(target) {
        return Err(Error::invalid("α raster and boundary differ in geometry"));
    }
    Ok(BoundaryComparison {
        hausdorff_pixels: hausdorff_pixel_distance(alpha, target)?,
        boundary_pixel_count: target.count(),
        alpha_pixel_count: alpha.count(),
        nonregular_fraction: boundary.nonregular_fraction(),
        nonregular_only,
    })
}
