use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::Dynamics;
use crate::newton::{ghost_lines, GhostLine, NewtonPlaneMap};
use crate::geom::Window;

/// Parameters of a ghost-attractor probe.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ProbeConfig {
    pub seeds: usize,
    /// Seeds start within `delta / 2` of the line and must stay within `delta`.
    pub delta: f64,
    pub iterations: usize,
    /// Seeds are spread over `|t| ≤ half_length` along the line.
    pub half_length: f64,
    pub invariance_samples: usize,
    pub invariance_tol: f64,
    pub divergence_pairs: usize,
    pub divergence_steps: usize,
    pub divergence_offset: f64,
    pub prng_seed: u64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            seeds: 400,
            delta: 0.1,
            iterations: 500,
            half_length: 2.0,
            invariance_samples: 50,
            invariance_tol: 1e-6,
            divergence_pairs: 32,
            divergence_steps: 30,
            divergence_offset: 1e-9,
            prng_seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GhostProbe {
    pub line: GhostLine,
    /// Largest distance from the line of the image of a sampled line point.
    pub invariance_residual: f64,
    pub line_invariant: bool,
    pub seeds: usize,
    /// Seeds whose orbit stayed within `delta` of the line for every step.
    pub staying_fraction: f64,
    pub mean_final_distance: Option<f64>,
    pub max_final_distance: Option<f64>,
    /// Final points of the first few staying orbits.
    pub samples: Vec<crate::geom::Point>,
    /// Mean slope of log-separation per step for nearby seed pairs.
    pub sensitivity_exponent: Option<f64>,
    pub config: ProbeConfig,
}

/// Iterates seeds near `line` and measures how many stay near it and how
/// fast nearby orbits separate.
pub fn probe_ghost_attractor(n: &NewtonPlaneMap, line: &GhostLine, cfg: &ProbeConfig) -> GhostProbe {
    let invariance_residual = line.invariance_residual(n, cfg.invariance_samples, cfg.half_length);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.prng_seed);
    let starts: Vec<_> = (0..cfg.seeds)
        .map(|_| {
            let t = rng.gen_range(-cfg.half_length..=cfg.half_length);
            let s = rng.gen_range(-0.5 * cfg.delta..=0.5 * cfg.delta);
            line.point_at(t) + line.normal() * s
        })
        .collect();
    let finals: Vec<Option<crate::geom::Point>> = starts
        .par_iter()
        .map(|&x0| {
            let mut x = x0;
            for _ in 0..cfg.iterations {
                x = n.step(x).ok()?;
                if line.distance(x) > cfg.delta {
                    return None;
                }
            }
            Some(x)
        })
        .collect();
    let staying: Vec<_> = finals.iter().flatten().copied().collect();
    let dists: Vec<f64> = staying.iter().map(|&p| line.distance(p)).collect();
    let mean_final_distance = (!dists.is_empty()).then(|| dists.iter().sum::<f64>() / dists.len() as f64);
    let max_final_distance = dists.iter().copied().reduce(f64::max);

    let pair_starts: Vec<f64> = (0..cfg.divergence_pairs).map(|_| rng.gen_range(-cfg.half_length..=cfg.half_length)).collect();
    let slopes: Vec<f64> = pair_starts
        .par_iter()
        .filter_map(|&t| separation_slope(n, line, t, cfg))
        .collect();
    let sensitivity_exponent = (!slopes.is_empty()).then(|| slopes.iter().sum::<f64>() / slopes.len() as f64);

    GhostProbe {
        line: line.clone(),
        invariance_residual,
        line_invariant: invariance_residual <= cfg.invariance_tol,
        seeds: cfg.seeds,
        staying_fraction: if cfg.seeds == 0 { 0.0 } else { staying.len() as f64 / cfg.seeds as f64 },
        mean_final_distance,
        max_final_distance,
        samples: staying.into_iter().take(16).collect(),
        sensitivity_exponent,
        config: *cfg,
    }
}

/// Least-squares slope of `ln |x_k - y_k|` against `k` for two orbits
/// started `divergence_offset` apart along the line.
fn separation_slope(n: &NewtonPlaneMap, line: &GhostLine, t: f64, cfg: &ProbeConfig) -> Option<f64> {
    let mut x = line.point_at(t);
    let mut y = line.point_at(t + cfg.divergence_offset);
    let mut logs = Vec::with_capacity(cfg.divergence_steps + 1);
    logs.push(cfg.divergence_offset.ln());
    for _ in 0..cfg.divergence_steps {
        x = n.step(x).ok()?;
        y = n.step(y).ok()?;
        let d = x.dist(y);
        if !(d > 0.0) || !d.is_finite() {
            return None;
        }
        logs.push(d.ln());
    }
    let m = logs.len() as f64;
    let mean_k = (m - 1.0) / 2.0;
    let mean_l = logs.iter().sum::<f64>() / m;
    let (mut num, mut den) = (0.0, 0.0);
    for (k, l) in logs.iter().enumerate() {
        let dk = k as f64 - mean_k;
        num += dk * (l - mean_l);
        den += dk * dk;
    }
    Some(num / den)
}

/// Probes every ghost line of `n.source` found in `bounds`; empty when the
/// map has no complex solution pairs.
pub fn probe_ghost_attractors(n: &NewtonPlaneMap, bounds: &Window, cfg: &ProbeConfig) -> Vec<GhostProbe> {
    ghost_lines(&n.source, bounds).iter().map(|l| probe_ghost_attractor(n, l, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::build_newton_plane;
    use crate::poly::PlaneMap;

    fn map(a: &str, b: &str) -> PlaneMap {
        PlaneMap::new(a.parse().unwrap(), b.parse().unwrap()).unwrap()
    }

    #[test]
    fn decoupled_map_has_nothing_to_probe() {
        let n = build_newton_plane(&map("x*(x^2 - 1)", "y*(y^2 - 1)")).unwrap();
        assert!(probe_ghost_attractors(&n, &Window::square(2.0), &ProbeConfig::default()).is_empty());
    }

    #[test]
    fn seeds_on_an_invariant_line_stay_on_it() {
        // quadratic map: its ghost lines are invariant under Newton
        let f = map("y - x^2", "x + 1 - (y - 2)^2");
        let n = build_newton_plane(&f).unwrap();
        let lines = ghost_lines(&f, &Window::square(4.0));
        assert!(!lines.is_empty());
        let line = &lines[0];
        assert!(line.invariance_residual(&n, 50, 2.0) < 1e-9);
        for k in 0..10 {
            let mut x = line.point_at(-1.0 + 0.2 * k as f64);
            for _ in 0..100 {
                match n.step(x) {
                    Ok(y) => x = y,
                    Err(_) => break,
                }
                if !x.is_finite() || x.norm() > 1e6 {
                    break;
                }
                assert!(line.distance(x) < 1e-6 * (1.0 + x.norm()));
            }
        }
    }
}
