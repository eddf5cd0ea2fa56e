use num_complex::Complex64;
use rayon::prelude::*;

use crate::dynamics::Dynamics;
use crate::forward::{classify_orbit, BasinRaster, OrbitOutcome, ScanConfig};
use crate::geom::{Grid, Point, Window};
use crate::newton::build_newton_complex;
use crate::poly::UniComplexPoly;
use crate::{Error, Result};

fn check_grid(window: &Window, width: usize, height: usize) -> Result<Grid> {
    if width == 0 || height == 0 {
        return Err(Error::invalid(format!("raster size must be positive, got {width}x{height}")));
    }
    if window.is_degenerate() {
        return Err(Error::invalid(format!("degenerate window {window:?}")));
    }
    Ok(Grid::new(*window, width, height))
}

fn classify_grid<F>(grid: Grid, classify: F) -> Vec<OrbitOutcome>
where
    F: Fn(Point) -> OrbitOutcome + Sync,
{
    let mut out = vec![OrbitOutcome::Undecided; grid.len()];
    out.par_chunks_mut(grid.width).enumerate().for_each(|(row, line)| {
        for (col, slot) in line.iter_mut().enumerate() {
            *slot = classify(grid.center(col, row));
        }
    });
    out
}

/// Classifies the center of every pixel of `window` under `n`.
pub fn render_basins<M: Dynamics + ?Sized>(
    n: &M,
    roots: &[Point],
    window: &Window,
    width: usize,
    height: usize,
    cfg: &ScanConfig,
) -> Result<BasinRaster> {
    cfg.validate()?;
    let grid = check_grid(window, width, height)?;
    let outcomes = classify_grid(grid, |p| classify_orbit(n, p, roots, cfg));
    Ok(BasinRaster::from_outcomes(grid, &outcomes, |i| {
        let r = roots[i];
        format!("root {i} at ({:.6}, {:.6})", r.x, r.y)
    }))
}

/// For each parameter `A` at a pixel center (as `re + i·im`), builds the
/// Newton map of `family(A)` and classifies the orbit of `seed`.
pub fn parameter_scan<F>(
    family: F,
    seed: Point,
    window: &Window,
    width: usize,
    height: usize,
    cfg: &ScanConfig,
) -> Result<BasinRaster>
where
    F: Fn(Complex64) -> UniComplexPoly + Sync,
{
    cfg.validate()?;
    let grid = check_grid(window, width, height)?;
    let outcomes = classify_grid(grid, |a| {
        let p = family(a.to_complex());
        let Ok(n) = build_newton_complex(&p) else {
            return OrbitOutcome::Undecided;
        };
        let Ok(roots) = n.roots() else {
            return OrbitOutcome::Undecided;
        };
        classify_orbit(&n, seed, &roots, cfg)
    });
    // root order varies with the parameter; codes only name the sorted slot
    Ok(BasinRaster::from_outcomes(grid, &outcomes, |i| format!("root slot {i}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forward::PixelCode;
    use crate::newton::build_newton_complex;

    fn cubic() -> UniComplexPoly {
        UniComplexPoly::from_real(&[-1.0, 0.0, 0.0, 1.0])
    }

    #[test]
    fn single_pixel_raster() {
        let n = build_newton_complex(&cubic()).unwrap();
        let roots = n.roots().unwrap();
        let r = render_basins(&n, &roots, &Window::new(0.5, 1.5, -0.5, 0.5), 1, 1, &ScanConfig::default()).unwrap();
        assert_eq!(r.len(), 1);
        assert!(PixelCode::is_attractor(r.codes[0]) && r.codes[0] < PixelCode::CYCLE);
        assert!(roots[r.codes[0] as usize].dist(Point::new(1.0, 0.0)) < 1e-9);
    }

    #[test]
    fn rejects_empty_grid() {
        let n = build_newton_complex(&cubic()).unwrap();
        assert!(render_basins(&n, &[], &Window::square(1.0), 0, 3, &ScanConfig::default()).is_err());
    }

    #[test]
    fn cubic_conjugate_basins_match() {
        // the grid is symmetric under y -> -y, which swaps the two complex roots
        let n = build_newton_complex(&cubic()).unwrap();
        let roots = n.roots().unwrap();
        let r = render_basins(&n, &roots, &Window::square(2.0), 90, 90, &ScanConfig::default()).unwrap();
        let complex: Vec<u8> = (0..3u8).filter(|&c| roots[c as usize].y.abs() > 0.1).collect();
        assert_eq!(r.count(complex[0]), r.count(complex[1]));
        let covered: f64 = (0..3).map(|c| r.fraction(c)).sum();
        assert!(covered > 0.999);
    }

    #[test]
    fn constant_family_gives_uniform_raster() {
        let r = parameter_scan(|_| cubic(), Point::new(0.3, 0.2), &Window::square(1.0), 4, 3, &ScanConfig::default())
            .unwrap();
        assert!(r.codes.iter().all(|&c| c == r.codes[0]));
    }

    #[test]
    fn family_at_a_equal_one_hits_singularity() {
        let family = |a: Complex64| {
            UniComplexPoly::new(vec![-a, a - Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])
        };
        let r = parameter_scan(family, Point::ORIGIN, &Window::new(0.5, 1.5, -0.5, 0.5), 1, 1, &ScanConfig::default())
            .unwrap();
        assert_eq!(r.codes[0], PixelCode::SINGULAR);
    }
}
