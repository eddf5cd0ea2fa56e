use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::backward::{hausdorff_pixel_distance, OccupancyRaster};
use crate::dynamics::Invertible;
use crate::geom::Point;
use crate::{Error, Result};

/// Closed disk removed from every Hutchinson iterate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub center: Point,
    pub radius: f64,
}

impl Disk {
    pub fn contains(&self, p: Point) -> bool {
        p.dist(self.center) <= self.radius
    }
}

/// Iterates `K ↦ N⁻¹(K) \ disks` on rasters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HutchinsonRun {
    /// `K_1, …, K_steps` (the initial raster is not repeated).
    pub iterates: Vec<OccupancyRaster>,
    /// `gaps[i]` is the Hausdorff distance between `K_i` and `K_{i+1}`
    /// (with `K_0` the initial raster), in pixels.
    pub gaps: Vec<f64>,
}

impl HutchinsonRun {
    pub fn last(&self) -> Option<&OccupancyRaster> {
        self.iterates.last()
    }
}

/// Applies the inverse branches of `n` to every set pixel center of
/// `initial`, drops images in `excluded` disks or outside the window, and
/// re-rasterizes, `steps` times. Planar maps search the raster window for
/// counterimages.
pub fn hutchinson_iterate<M: Invertible + ?Sized>(
    n: &M,
    initial: &OccupancyRaster,
    excluded: &[Disk],
    steps: usize,
) -> Result<HutchinsonRun> {
    if initial.is_empty() {
        return Err(Error::invalid("Hutchinson iteration needs a non-empty initial raster"));
    }
    let mut current = initial.clone();
    let mut run = HutchinsonRun { iterates: Vec::with_capacity(steps), gaps: Vec::with_capacity(steps) };
    for step in 1..=steps {
        let next = hutchinson_step(n, &current, excluded)?;
        if next.is_empty() {
            return Err(Error::EmptySet { step });
        }
        run.gaps.push(hausdorff_pixel_distance(&current, &next)?);
        run.iterates.push(next.clone());
        current = next;
    }
    Ok(run)
}

fn hutchinson_step<M: Invertible + ?Sized>(n: &M, k: &OccupancyRaster, excluded: &[Disk]) -> Result<OccupancyRaster> {
    let grid = k.grid();
    let window = grid.window;
    let centers = k.centers();
    let hits: Vec<Vec<usize>> = centers
        .par_iter()
        .map(|&z| {
            let pre = n.counterimages(z, Some(&window))?;
            Ok(pre
                .into_iter()
                .filter(|w| !excluded.iter().any(|d| d.contains(*w)))
                .filter_map(|w| grid.index_of(w))
                .collect())
        })
        .collect::<Result<_>>()?;
    let mut out = OccupancyRaster::empty(grid);
    for idx in hits.into_iter().flatten() {
        out.set_index(idx);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{Grid, Window};
    use crate::newton::build_newton_complex;
    use crate::poly::UniComplexPoly;

    fn cubic() -> crate::newton::NewtonComplexMap {
        build_newton_complex(&UniComplexPoly::from_real(&[-1.0, 0.0, 0.0, 1.0])).unwrap()
    }

    #[test]
    fn covering_disk_empties_the_set() {
        let grid = Grid::new(Window::square(2.0), 16, 16);
        let all = OccupancyRaster::full(grid);
        let disks = [Disk { center: Point::ORIGIN, radius: 1e6 }];
        assert!(matches!(hutchinson_iterate(&cubic(), &all, &disks, 3), Err(Error::EmptySet { step: 1 })));
    }

    #[test]
    fn fixed_raster_has_zero_gap() {
        let n = cubic();
        let grid = Grid::new(Window::square(2.0), 48, 48);
        let roots = n.roots().unwrap();
        let disks: Vec<Disk> = roots.iter().map(|&c| Disk { center: c, radius: 0.3 }).collect();
        let run = hutchinson_iterate(&n, &OccupancyRaster::full(grid), &disks, 40).unwrap();
        let pos = run.gaps.iter().position(|&g| g == 0.0).expect("pixel iteration settles");
        let again = hutchinson_iterate(&n, &run.iterates[pos], &disks, 1).unwrap();
        assert_eq!(again.gaps, vec![0.0]);
    }
}
