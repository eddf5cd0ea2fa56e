use rayon::prelude::*;
use serde::Serialize;

use crate::poly::{univariate_complex_roots, UniComplexPoly};
use crate::{Error, Result};

/// Newton map of a real univariate polynomial, restricted to the real line.
#[derive(Debug, Clone, PartialEq)]
pub struct RealNewton1d {
    /// Ascending coefficients of `p`, `p'`, `p''`.
    p: Vec<f64>,
    dp: Vec<f64>,
    ddp: Vec<f64>,
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

fn derive(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(i, &a)| a * i as f64).collect()
}

impl RealNewton1d {
    pub fn new(coeffs: &[f64]) -> Result<Self> {
        let mut p = coeffs.to_vec();
        while p.last() == Some(&0.0) {
            p.pop();
        }
        if p.len() < 2 {
            return Err(Error::invalid("Newton map of a constant polynomial"));
        }
        if p.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid("non-finite coefficient"));
        }
        let dp = derive(&p);
        let ddp = derive(&dp);
        Ok(RealNewton1d { p, dp, ddp })
    }

    pub fn from_poly(p: &UniComplexPoly) -> Result<Self> {
        if !p.is_real(0.0) {
            return Err(Error::invalid("real Newton map needs real coefficients"));
        }
        RealNewton1d::new(&p.real_coeffs())
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.p
    }

    pub fn degree(&self) -> usize {
        self.p.len() - 1
    }

    pub fn p(&self, x: f64) -> f64 {
        horner(&self.p, x)
    }

    /// `N(x) = x - p(x)/p'(x)`; infinite at zeros of `p'` that are not
    /// zeros of `p`.
    pub fn eval(&self, x: f64) -> f64 {
        x - horner(&self.p, x) / horner(&self.dp, x)
    }

    /// `N'(x) = p(x) p''(x) / p'(x)²`.
    pub fn derivative(&self, x: f64) -> f64 {
        let d = horner(&self.dp, x);
        horner(&self.p, x) * horner(&self.ddp, x) / (d * d)
    }

    pub fn iterate(&self, mut x: f64, k: usize) -> f64 {
        for _ in 0..k {
            x = self.eval(x);
        }
        x
    }

    /// `N^k(x) = x` up to `tol`, relative to the size of `x` and to the
    /// conditioning `|(N^k)'(x)|` of the residual.
    pub fn is_periodic(&self, x: f64, k: usize, tol: f64) -> bool {
        let r = (self.iterate(x, k) - x).abs();
        r <= tol * (1.0 + x.abs()) * (1.0 + self.multiplier(x, k)) && r <= 1e-4 * (1.0 + x.abs())
    }

    /// Newton refinement of a solution of `N^k(x) = x`.
    pub fn polish_periodic(&self, mut x: f64, k: usize) -> f64 {
        for _ in 0..8 {
            let (mut y, mut d) = (x, 1.0);
            for _ in 0..k {
                d *= self.derivative(y);
                y = self.eval(y);
            }
            let step = (y - x) / (d - 1.0);
            if !step.is_finite() {
                break;
            }
            let next = x - step;
            if (next - x).abs() <= 4.0 * f64::EPSILON * (1.0 + x.abs()) {
                return next;
            }
            x = next;
        }
        x
    }

    /// `|(N^k)'(x)|` by the chain rule along the orbit.
    pub fn multiplier(&self, mut x: f64, k: usize) -> f64 {
        let mut m = 1.0;
        for _ in 0..k {
            m *= self.derivative(x);
            x = self.eval(x);
        }
        m.abs()
    }

    fn real_zeros(c: &[f64]) -> Result<Vec<f64>> {
        if c.len() < 2 {
            return Ok(Vec::new());
        }
        let roots = univariate_complex_roots(&UniComplexPoly::from_real(c), 1e-12)?;
        let mut xs: Vec<f64> = roots
            .into_iter()
            .filter(|r| r.im.abs() <= 1e-8 * (1.0 + r.re.abs()))
            .map(|r| r.re)
            .collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (1.0 + b.abs()));
        Ok(xs)
    }

    /// Real zeros of `p`.
    pub fn real_roots(&self) -> Result<Vec<f64>> {
        Self::real_zeros(&self.p)
    }

    /// Points splitting the line into pieces on which `N` is continuous and
    /// monotone: poles (zeros of `p'`) and critical points (zeros of `p` and
    /// of `p''`).
    pub fn breakpoints(&self) -> Result<Vec<f64>> {
        let mut b = Self::real_zeros(&self.dp)?;
        b.extend(Self::real_zeros(&self.p)?);
        b.extend(Self::real_zeros(&self.ddp)?);
        b.sort_by(f64::total_cmp);
        b.dedup_by(|a, c| (*a - *c).abs() <= 1e-12 * (1.0 + c.abs()));
        Ok(b)
    }

    fn is_pole(&self, x: f64) -> bool {
        let scale = self.dp.iter().fold(0.0f64, |m, c| m.max(c.abs())) * (1.0 + x.abs()).powi(self.degree() as i32);
        horner(&self.dp, x).abs() <= 1e-13 * scale && horner(&self.p, x).abs() > 1e-13 * scale
    }

    /// One-sided limit of `N` at `x` from the side `sign(side)`.
    fn limit(&self, x: f64, side: f64) -> f64 {
        if !self.is_pole(x) {
            return self.eval(x);
        }
        let h = 1e-9 * (1.0 + x.abs());
        let v = self.eval(x + side * h);
        if v > 0.0 {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        }
    }
}

/// Stability label derived from the multiplier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stability {
    Attracting,
    Repelling,
    Neutral,
}

impl Stability {
    pub fn of(multiplier: f64) -> Self {
        if multiplier < 1.0 - 1e-6 {
            Stability::Attracting
        } else if multiplier > 1.0 + 1e-6 {
            Stability::Repelling
        } else {
            Stability::Neutral
        }
    }
}

/// A periodic orbit of minimal period `period`, listed from its smallest
/// point in orbit order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleRecord {
    pub period: usize,
    pub points: Vec<f64>,
    pub multiplier: f64,
    pub stability: Stability,
}

/// Piece of the line on which `N^k` is continuous and monotone: `(a, b)`
/// maps onto the interval between the one-sided limits `ya` and `yb`.
#[derive(Debug, Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    ya: f64,
    yb: f64,
}

fn solve_monotone<F: Fn(f64) -> f64>(g: F, mut a: f64, mut b: f64, ga_negative: bool) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if (g(m) < 0.0) == ga_negative {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

fn refine(n: &RealNewton1d, k: usize, pieces: &[Piece], cuts: &[f64], lo: f64, hi: f64) -> Vec<Piece> {
    let parts: Vec<Vec<Piece>> = pieces
        .par_iter()
        .map(|pc| {
            let increasing = pc.yb > pc.ya;
            let (ymin, ymax) = if increasing { (pc.ya, pc.yb) } else { (pc.yb, pc.ya) };
            let mut s: Vec<f64> = Vec::new();
            s.push(pc.ya);
            let inner = cuts.iter().copied().filter(|&c| c > ymin && c < ymax);
            if increasing {
                s.extend(inner);
            } else {
                s.extend(inner.rev());
            }
            s.push(pc.yb);
            // x-position of each image value
            let mut xs = Vec::with_capacity(s.len());
            xs.push(pc.a);
            for &target in &s[1..s.len() - 1] {
                let g = |x: f64| n.iterate(x, k) - target;
                xs.push(solve_monotone(g, pc.a, pc.b, increasing));
            }
            xs.push(pc.b);
            let mut out = Vec::new();
            for i in 0..s.len() - 1 {
                let (s0, s1) = (s[i], s[i + 1]);
                if s0.min(s1) < lo || s0.max(s1) > hi || !(xs[i + 1] > xs[i]) {
                    continue;
                }
                let toward = (s1 - s0).signum();
                out.push(Piece { a: xs[i], b: xs[i + 1], ya: n.limit(s0, toward), yb: n.limit(s1, -toward) });
            }
            out
        })
        .collect();
    parts.concat()
}

/// Samples per branch when looking for sign changes of `N^k(x) - x`; a
/// monotone branch can still hold several fixed points where its slope
/// crosses 1.
const BRANCH_SAMPLES: usize = 64;

fn piece_fixed_points(n: &RealNewton1d, k: usize, pc: &Piece, tol: f64) -> Vec<f64> {
    let g = |x: f64| n.iterate(x, k) - x;
    let w = pc.b - pc.a;
    // endpoint values are exact limits; nudge inward where they vanish
    // (periodic breakpoints are collected separately)
    let mut ga = pc.ya - pc.a;
    let mut gb = pc.yb - pc.b;
    if ga.abs() <= tol * (1.0 + pc.a.abs()) {
        ga = g(pc.a + 1e-9 * w);
    }
    if gb.abs() <= tol * (1.0 + pc.b.abs()) {
        gb = g(pc.b - 1e-9 * w);
    }
    let mut xs = vec![pc.a];
    let mut gs = vec![ga];
    for i in 1..BRANCH_SAMPLES {
        let x = pc.a + w * i as f64 / BRANCH_SAMPLES as f64;
        xs.push(x);
        gs.push(g(x));
    }
    xs.push(pc.b);
    gs.push(gb);
    let mut out = Vec::new();
    for i in 0..xs.len() - 1 {
        let (g0, g1) = (gs[i], gs[i + 1]);
        if g0.is_nan() || g1.is_nan() || (g0 < 0.0) == (g1 < 0.0) {
            continue;
        }
        let x = solve_monotone(g, xs[i], xs[i + 1], g0 < 0.0);
        if n.is_periodic(x, k, tol) {
            out.push(x);
        }
    }
    out
}

/// Minimal period of `x` under `n` up to `k`, if `x` is periodic.
fn minimal_period(n: &RealNewton1d, x: f64, k: usize, tol: f64) -> Option<usize> {
    (1..=k).find(|&m| n.is_periodic(x, m, tol))
}

/// All solutions of `N^k(x) = x` in `[lo, hi]` whose whole orbit stays in
/// the interval, sorted. Points of every period dividing `k` are included.
pub fn periodic_points_1d(n: &RealNewton1d, k: usize, lo: f64, hi: f64, tol: f64) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(Error::invalid("period must be at least 1"));
    }
    if !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::invalid(format!("bad interval [{lo}, {hi}]")));
    }
    let breaks = n.breakpoints()?;
    let mut cuts: Vec<f64> = breaks.iter().copied().filter(|&b| b > lo && b < hi).collect();
    cuts.push(lo);
    cuts.push(hi);
    cuts.sort_by(f64::total_cmp);

    let mut pieces = vec![Piece { a: lo, b: hi, ya: lo, yb: hi }];
    for j in 0..k {
        pieces = refine(n, j, &pieces, &cuts, lo, hi);
    }

    let mut found: Vec<f64> = cuts.iter().copied().filter(|&c| !n.is_pole(c) && n.is_periodic(c, k, tol)).collect();
    found.extend(
        pieces
            .par_iter()
            .flat_map_iter(|pc| piece_fixed_points(n, k, pc, tol))
            .collect::<Vec<_>>(),
    );
    found.sort_by(f64::total_cmp);
    found.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * (1.0 + b.abs()));
    Ok(found)
}

/// Cycles of minimal period `k` in `[lo, hi]`.
pub fn enumerate_cycles_1d(n: &RealNewton1d, k: usize, lo: f64, hi: f64, tol: f64) -> Result<Vec<CycleRecord>> {
    let points = periodic_points_1d(n, k, lo, hi, tol)?;
    let mut cycles: Vec<CycleRecord> = Vec::new();
    for &x in &points {
        if minimal_period(n, x, k, tol) != Some(k) {
            continue;
        }
        // each point polished on its own so errors do not grow along the orbit
        let mut orbit = Vec::with_capacity(k);
        let mut y = x;
        for _ in 0..k {
            y = n.polish_periodic(y, k);
            orbit.push(y);
            y = n.eval(y);
        }
        let start = (0..k).min_by(|&i, &j| orbit[i].total_cmp(&orbit[j])).unwrap_or(0);
        orbit.rotate_left(start);
        if cycles.iter().any(|c| (c.points[0] - orbit[0]).abs() <= 1e-8 * (1.0 + orbit[0].abs())) {
            continue;
        }
        let multiplier = n.multiplier(orbit[0], k);
        cycles.push(CycleRecord { period: k, points: orbit, multiplier, stability: Stability::of(multiplier) });
    }
    cycles.sort_by(|a, b| a.points[0].total_cmp(&b.points[0]));
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn barna_quartic() -> RealNewton1d {
        // (x^2 - 1)(x^2 - 4) = x^4 - 5x^2 + 4
        RealNewton1d::new(&[4.0, 0.0, -5.0, 0.0, 1.0]).unwrap()
    }

    #[test]
    fn fixed_points_are_the_roots() {
        let n = barna_quartic();
        let c = enumerate_cycles_1d(&n, 1, -10.0, 10.0, 1e-10).unwrap();
        let pts: Vec<f64> = c.iter().map(|r| r.points[0]).collect();
        assert_eq!(pts.len(), 4);
        for (p, e) in pts.iter().zip([-2.0, -1.0, 1.0, 2.0]) {
            assert!((p - e).abs() < 1e-12);
        }
        assert!(c.iter().all(|r| r.stability == Stability::Attracting));
    }

    #[test]
    fn period_two_cycles_are_repelling_and_verified() {
        let n = barna_quartic();
        let c = enumerate_cycles_1d(&n, 2, -10.0, 10.0, 1e-10).unwrap();
        assert!(c.len() >= 2, "{c:?}");
        for r in &c {
            assert_eq!(r.stability, Stability::Repelling);
            assert!((n.eval(r.points[0]) - r.points[1]).abs() < 1e-8);
            assert!((n.eval(r.points[1]) - r.points[0]).abs() < 1e-8);
        }
    }

    #[test]
    fn quadratic_has_no_two_cycles() {
        let n = RealNewton1d::new(&[-1.0, 0.0, 1.0]).unwrap();
        assert!(enumerate_cycles_1d(&n, 2, -10.0, 10.0, 1e-10).unwrap().is_empty());
    }

    #[test]
    fn cgs_cubic_has_superattracting_two_cycle() {
        let n = RealNewton1d::new(&[2.0, -2.0, 0.0, 1.0]).unwrap();
        let c = enumerate_cycles_1d(&n, 2, -5.0, 5.0, 1e-10).unwrap();
        let zero_one = c.iter().find(|r| r.points[0].abs() < 1e-12).expect("cycle through 0");
        assert!((zero_one.points[1] - 1.0).abs() < 1e-12);
        assert_eq!(zero_one.stability, Stability::Attracting);
        assert!(zero_one.multiplier < 1e-6);
    }
}
