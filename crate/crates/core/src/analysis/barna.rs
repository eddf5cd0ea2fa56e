use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{enumerate_cycles_1d, periodic_points_1d, CycleRecord, RealNewton1d, Stability};
use crate::poly::{cluster_roots, univariate_complex_roots, UniComplexPoly};
use crate::Result;

/// Budgets for [`barna_check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BarnaConfig {
    pub max_period: usize,
    pub samples: usize,
    pub sample_lo: f64,
    pub sample_hi: f64,
    pub max_iter: usize,
    pub root_tol: f64,
    pub cycle_tol: f64,
    pub prng_seed: u64,
}

impl Default for BarnaConfig {
    fn default() -> Self {
        BarnaConfig {
            max_period: 5,
            samples: 1_000_000,
            sample_lo: -10.0,
            sample_hi: 10.0,
            max_iter: 500,
            root_tol: 1e-8,
            cycle_tol: 1e-10,
            prng_seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootWithMultiplicity {
    pub re: f64,
    pub im: f64,
    pub multiplicity: usize,
}

/// Cycle inventory for one period.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodSummary {
    pub period: usize,
    /// Cycles of exactly this minimal period.
    pub cycles: Vec<CycleRecord>,
    /// Points with `N^k(x) = x` (minimal period dividing `k`), roots included.
    pub periodic_points: usize,
    /// Points of minimal period `k`.
    pub minimal_period_points: usize,
    /// `(n - 2)^k`.
    pub bound: u64,
    pub bound_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BarnaReport {
    pub polynomial: String,
    pub degree: usize,
    pub roots: Vec<RootWithMultiplicity>,
    pub all_roots_real: bool,
    pub hypotheses_met: bool,
    pub notes: Vec<String>,
    pub interval: [f64; 2],
    pub cycles_by_period: Vec<PeriodSummary>,
    /// Some cycle of period at least 2 is attracting.
    pub attracting_higher_cycle: bool,
    pub nonconvergent_fraction: f64,
    pub sample_count: usize,
    pub config: BarnaConfig,
}

/// Checks the conclusions of Barna's theorem numerically for a real
/// polynomial: root reality, cycle inventory up to `max_period`, and the
/// measure of non-converging starting points.
pub fn barna_check(p: &UniComplexPoly, cfg: &BarnaConfig) -> Result<BarnaReport> {
    let n = RealNewton1d::from_poly(p)?;
    let degree = n.degree();
    let mut notes = Vec::new();

    let raw = univariate_complex_roots(p, 1e-12)?;
    let clustered = cluster_roots(&raw, 1e-6);
    let roots: Vec<RootWithMultiplicity> = clustered
        .iter()
        .map(|(r, m)| RootWithMultiplicity { re: r.re, im: r.im, multiplicity: *m })
        .collect();
    let all_roots_real = raw.iter().all(|r| r.im.abs() < 1e-8);
    let distinct_real = roots.iter().filter(|r| r.im.abs() < 1e-8).count();
    if degree < 4 {
        notes.push(format!("degree {degree} < 4: Barna hypotheses unmet"));
    }
    if !all_roots_real {
        notes.push("polynomial has non-real roots: Barna hypotheses unmet".to_string());
    }
    if roots.iter().any(|r| r.multiplicity > 1) {
        notes.push("repeated roots detected".to_string());
    }
    let hypotheses_met = degree >= 4 && all_roots_real && distinct_real >= 4;

    // bracket around all real roots and critical points of N
    let breaks = n.breakpoints()?;
    let lo = breaks.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = breaks.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (lo, hi) = if lo.is_finite() { (lo - 1.0, hi + 1.0) } else { (-1.0, 1.0) };

    let mut cycles_by_period = Vec::new();
    let base = degree.saturating_sub(2) as u64;
    for k in 1..=cfg.max_period {
        let cycles = enumerate_cycles_1d(&n, k, lo, hi, cfg.cycle_tol)?;
        let periodic_points = periodic_points_1d(&n, k, lo, hi, cfg.cycle_tol)?.len();
        let minimal_period_points = cycles.len() * k;
        let bound = base.saturating_pow(k as u32);
        cycles_by_period.push(PeriodSummary {
            period: k,
            cycles,
            periodic_points,
            minimal_period_points,
            bound,
            bound_ok: periodic_points as u64 >= bound,
        });
    }
    let attracting_higher_cycle = cycles_by_period
        .iter()
        .filter(|s| s.period >= 2)
        .flat_map(|s| &s.cycles)
        .any(|c| c.stability == Stability::Attracting);

    let real_roots: Vec<f64> = roots.iter().filter(|r| r.im.abs() < 1e-8).map(|r| r.re).collect();
    let nonconvergent = count_nonconvergent(&n, &real_roots, cfg);
    let nonconvergent_fraction = if cfg.samples == 0 { 0.0 } else { nonconvergent as f64 / cfg.samples as f64 };

    Ok(BarnaReport {
        polynomial: p.to_string(),
        degree,
        roots,
        all_roots_real,
        hypotheses_met,
        notes,
        interval: [lo, hi],
        cycles_by_period,
        attracting_higher_cycle,
        nonconvergent_fraction,
        sample_count: cfg.samples,
        config: *cfg,
    })
}

const SAMPLE_CHUNK: usize = 8192;

fn count_nonconvergent(n: &RealNewton1d, roots: &[f64], cfg: &BarnaConfig) -> usize {
    let chunks = cfg.samples.div_ceil(SAMPLE_CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.prng_seed);
            rng.set_stream(c as u64);
            let size = SAMPLE_CHUNK.min(cfg.samples - c * SAMPLE_CHUNK);
            (0..size)
                .filter(|_| {
                    let x0 = rng.gen_range(cfg.sample_lo..cfg.sample_hi);
                    !converges(n, x0, roots, cfg)
                })
                .count()
        })
        .sum()
}

fn converges(n: &RealNewton1d, mut x: f64, roots: &[f64], cfg: &BarnaConfig) -> bool {
    let near = |x: f64| roots.iter().position(|r| (x - r).abs() <= cfg.root_tol);
    let mut prev = near(x);
    for _ in 0..cfg.max_iter {
        x = n.eval(x);
        if !x.is_finite() {
            return false;
        }
        let here = near(x);
        if here.is_some() && here == prev {
            return true;
        }
        prev = here;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> BarnaConfig {
        BarnaConfig { samples: 20_000, max_period: 3, ..Default::default() }
    }

    #[test]
    fn quartic_with_real_roots() {
        let p = UniComplexPoly::from_real(&[4.0, 0.0, -5.0, 0.0, 1.0]);
        let r = barna_check(&p, &small()).unwrap();
        assert!(r.all_roots_real && r.hypotheses_met);
        assert!(!r.attracting_higher_cycle);
        assert!(r.nonconvergent_fraction < 1e-3);
        assert!(r.cycles_by_period.iter().all(|s| s.bound_ok));
    }

    #[test]
    fn cgs_cubic_fails_the_conclusion() {
        let p = UniComplexPoly::from_real(&[2.0, -2.0, 0.0, 1.0]);
        let r = barna_check(&p, &small()).unwrap();
        assert!(!r.all_roots_real && !r.hypotheses_met);
        assert!(r.attracting_higher_cycle);
        assert!(r.nonconvergent_fraction > 0.0);
    }

    #[test]
    fn cubic_with_real_roots_flags_degree() {
        let p = UniComplexPoly::from_real(&[0.0, -1.0, 0.0, 1.0]);
        let r = barna_check(&p, &small()).unwrap();
        assert!(r.all_roots_real);
        assert!(!r.hypotheses_met);
        assert!(r.notes.iter().any(|s| s.contains("degree")));
    }
}
