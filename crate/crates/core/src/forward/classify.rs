use serde::{Deserialize, Serialize};

use crate::dynamics::{mat_mul, spectral_radius, Dynamics};
use crate::geom::Point;
use crate::{Error, Result};

/// Iteration budget and tolerances for forward classification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ScanConfig {
    pub root_tol: f64,
    pub escape_radius: f64,
    pub max_iter: usize,
    pub cycle_window: usize,
    pub cycle_tol: f64,
    pub multiplier_step: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            root_tol: 1e-8,
            escape_radius: 1e8,
            max_iter: 200,
            cycle_window: 64,
            cycle_tol: 1e-9,
            multiplier_step: 1e-6,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("root_tol", self.root_tol),
            ("escape_radius", self.escape_radius),
            ("cycle_tol", self.cycle_tol),
            ("multiplier_step", self.multiplier_step),
        ];
        for (name, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::invalid(format!("{name} must be positive, got {v}")));
            }
        }
        if self.max_iter == 0 {
            return Err(Error::invalid("max_iter must be positive"));
        }
        if self.cycle_window < 2 || self.cycle_window > self.max_iter {
            return Err(Error::invalid(format!(
                "cycle_window must lie in [2, max_iter = {}], got {}",
                self.max_iter, self.cycle_window
            )));
        }
        Ok(())
    }
}

/// Where a forward orbit ends up.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrbitOutcome {
    /// Converged to `roots[root_index]`; `iterations` steps to enter the
    /// root's neighborhood for good.
    Root { root_index: usize, iterations: usize },
    /// Attracted to a cycle of the given period (period 1 only for fixed
    /// points missing from the root list).
    Cycle { period: usize, representative: Point, multiplier: f64 },
    Escaped { iterations: usize },
    SingularHit { iterations: usize },
    Undecided,
}

/// Index of the root within `tol` of `p`, if any.
pub fn nearest_root(p: Point, roots: &[Point], tol: f64) -> Option<usize> {
    roots
        .iter()
        .enumerate()
        .filter(|(_, r)| r.dist(p) <= tol)
        .min_by(|a, b| a.1.dist(p).total_cmp(&b.1.dist(p)))
        .map(|(i, _)| i)
}

/// Iterates `n` from `x0` and classifies the orbit.
pub fn classify_orbit<M: Dynamics + ?Sized>(
    n: &M,
    x0: Point,
    roots: &[Point],
    cfg: &ScanConfig,
) -> OrbitOutcome {
    let window = cfg.cycle_window.max(2);
    let mut history: Vec<Point> = Vec::with_capacity(window);
    let mut head = 0usize;
    let mut x = x0;
    let mut prev = nearest_root(x, roots, cfg.root_tol);

    for it in 1..=cfg.max_iter {
        x = match n.step(x) {
            Ok(p) => p,
            Err(_) => return OrbitOutcome::SingularHit { iterations: it },
        };
        if !x.is_finite() || x.norm() > cfg.escape_radius {
            return OrbitOutcome::Escaped { iterations: it };
        }
        let here = nearest_root(x, roots, cfg.root_tol);
        if let (Some(i), Some(j)) = (here, prev) {
            if i == j {
                return OrbitOutcome::Root { root_index: i, iterations: it - 1 };
            }
        }
        prev = here;
        if history.len() < window {
            history.push(x);
        } else {
            history[head] = x;
            head = (head + 1) % window;
        }
    }

    // oldest first
    history.rotate_left(head);
    detect_cycle(n, &history, cfg).unwrap_or(OrbitOutcome::Undecided)
}

fn detect_cycle<M: Dynamics + ?Sized>(n: &M, hist: &[Point], cfg: &ScanConfig) -> Option<OrbitOutcome> {
    let last = hist.len().checked_sub(1)?;
    let x = hist[last];
    let tol = cfg.cycle_tol * (1.0 + x.norm());
    let period = (1..hist.len()).find(|&q| {
        hist[last].dist(hist[last - q]) <= tol
            // confirm on the previous iterate as well when available
            && (last < q + 1 || hist[last - 1].dist(hist[last - 1 - q]) <= tol)
    })?;
    let multiplier = cycle_multiplier(n, x, period, cfg.multiplier_step).ok()?;
    if multiplier < 1.0 {
        Some(OrbitOutcome::Cycle { period, representative: x, multiplier })
    } else {
        None
    }
}

/// Spectral radius of the Jacobian of `n^period` at `x`, by the chain rule
/// over one-step Jacobians (exact for complex maps, central differences with
/// step `h` otherwise).
pub fn cycle_multiplier<M: Dynamics + ?Sized>(n: &M, x: Point, period: usize, h: f64) -> Result<f64> {
    let mut m = [[1.0, 0.0], [0.0, 1.0]];
    let mut p = x;
    for _ in 0..period {
        m = mat_mul(n.jacobian(p, h)?, m);
        p = n.step(p)?;
    }
    Ok(spectral_radius(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::{build_newton_complex, build_newton_plane};
    use crate::poly::{PlaneMap, UniComplexPoly};

    #[test]
    fn default_config_is_valid() {
        ScanConfig::default().validate().unwrap();
        let bad = ScanConfig { cycle_window: 500, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = ScanConfig { root_tol: 0.0, ..Default::default() };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn cubic_from_two_reaches_one() {
        let n = build_newton_complex(&UniComplexPoly::from_real(&[-1.0, 0.0, 0.0, 1.0])).unwrap();
        let roots = n.roots().unwrap();
        let one = nearest_root(Point::new(1.0, 0.0), &roots, 1e-9).unwrap();
        match classify_orbit(&n, Point::new(2.0, 0.0), &roots, &ScanConfig::default()) {
            OrbitOutcome::Root { root_index, .. } => assert_eq!(root_index, one),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn two_cycle_of_cgs_cubic() {
        let n = build_newton_complex(&UniComplexPoly::from_real(&[2.0, -2.0, 0.0, 1.0])).unwrap();
        let roots = n.roots().unwrap();
        match classify_orbit(&n, Point::ORIGIN, &roots, &ScanConfig::default()) {
            OrbitOutcome::Cycle { period, multiplier, representative } => {
                assert_eq!(period, 2);
                assert!(multiplier < 1e-6);
                assert!(representative.dist(Point::ORIGIN) < 1e-12 || representative.dist(Point::new(1.0, 0.0)) < 1e-12);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn linear_plane_map_converges_in_one_step() {
        let f = PlaneMap::new("x".parse().unwrap(), "y".parse().unwrap()).unwrap();
        let n = build_newton_plane(&f).unwrap();
        let out = classify_orbit(&n, Point::new(3.0, -7.0), &[Point::ORIGIN], &ScanConfig::default());
        assert_eq!(out, OrbitOutcome::Root { root_index: 0, iterations: 1 });
    }

    #[test]
    fn pole_gives_singular_hit() {
        let n = build_newton_complex(&UniComplexPoly::from_real(&[-1.0, 0.0, 0.0, 1.0])).unwrap();
        let roots = n.roots().unwrap();
        assert_eq!(
            classify_orbit(&n, Point::ORIGIN, &roots, &ScanConfig::default()),
            OrbitOutcome::SingularHit { iterations: 1 }
        );
    }

    #[test]
    fn repelling_fixed_point_is_undecided() {
        // z ↦ 2z fixes 0 with multiplier 2; start exactly there
        struct Double;
        impl Dynamics for Double {
            fn step(&self, p: Point) -> Result<Point> {
                Ok(p * 2.0)
            }
        }
        assert_eq!(classify_orbit(&Double, Point::ORIGIN, &[], &ScanConfig::default()), OrbitOutcome::Undecided);
    }

    #[test]
    fn attracting_fixed_point_outside_root_list_is_a_cycle() {
        struct Half;
        impl Dynamics for Half {
            fn step(&self, p: Point) -> Result<Point> {
                Ok(p * 0.5)
            }
        }
        match classify_orbit(&Half, Point::new(1.0, 1.0), &[], &ScanConfig { max_iter: 2000, ..Default::default() }) {
            OrbitOutcome::Cycle { period: 1, multiplier, .. } => assert!((multiplier - 0.5).abs() < 1e-9),
            other => panic!("{other:?}"),
        }
    }
}
