//! Ghost lines: real traces of complex lines through conjugate pairs of
//! complex solutions of `f = 0`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::Dynamics;
use crate::geom::{Point, Window};
use crate::poly::PlaneMap;

/// Seeds per complex coordinate axis (the search uses `SEEDS⁴` starts).
pub const GHOST_SEEDS: usize = 32;
pub const DEDUP_RADIUS: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexSolution {
    pub z: [f64; 2],
    pub w: [f64; 2],
}

impl ComplexSolution {
    fn from_pair(z: Complex64, w: Complex64) -> Self {
        ComplexSolution { z: [z.re, z.im], w: [w.re, w.im] }
    }

    pub fn conj(&self) -> Self {
        ComplexSolution { z: [self.z[0], -self.z[1]], w: [self.w[0], -self.w[1]] }
    }

    pub fn imag_norm(&self) -> f64 {
        self.z[1].hypot(self.w[1])
    }

    fn dist(&self, o: &ComplexSolution) -> f64 {
        let d = [self.z[0] - o.z[0], self.z[1] - o.z[1], self.w[0] - o.w[0], self.w[1] - o.w[1]];
        d.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GhostLine {
    /// `(Re z₁, Re w₁)`.
    pub base: Point,
    /// `(Im z₁, Im w₁)` normalized, first nonzero component positive.
    pub direction: Point,
    pub source_pair: (ComplexSolution, ComplexSolution),
}

impl GhostLine {
    /// The line through `(Re z, Re w)` with direction `(Im z, Im w)`.
    /// Returns `None` for a real solution.
    pub fn from_solution(s: ComplexSolution) -> Option<Self> {
        let d = Point::new(s.z[1], s.w[1]);
        let n = d.norm();
        if n <= 1e-8 {
            return None;
        }
        let mut direction = d * (1.0 / n);
        if direction.x < 0.0 || (direction.x == 0.0 && direction.y < 0.0) {
            direction = -direction;
        }
        Some(GhostLine { base: Point::new(s.z[0], s.w[0]), direction, source_pair: (s, s.conj()) })
    }

    pub fn normal(&self) -> Point {
        Point::new(-self.direction.y, self.direction.x)
    }

    pub fn point_at(&self, t: f64) -> Point {
        self.base + self.direction * t
    }

    pub fn distance(&self, p: Point) -> f64 {
        (p - self.base).dot(self.normal()).abs()
    }

    /// Largest distance from the line of `N(p)` over `samples` points evenly
    /// spread on the segment `|t| ≤ half_length`, skipping singular points.
    pub fn invariance_residual<M: Dynamics>(&self, n: &M, samples: usize, half_length: f64) -> f64 {
        (0..samples)
            .filter_map(|k| {
                let t = if samples == 1 {
                    0.0
                } else {
                    -half_length + 2.0 * half_length * k as f64 / (samples - 1) as f64
                };
                n.step(self.point_at(t)).ok().map(|q| self.distance(q))
            })
            .fold(0.0, f64::max)
    }
}

type Terms = Vec<((u32, u32), f64)>;

/// `f` extended to `ℂ²`, with powers shared across all six polynomials.
struct ComplexSystem {
    f: [Terms; 2],
    jac: [[Terms; 2]; 2],
    max_pow: usize,
}

impl ComplexSystem {
    fn new(f: &PlaneMap) -> Self {
        let t = |p: &crate::poly::MultiPoly| p.terms().to_vec();
        let max_pow = [&f.first, &f.second]
            .iter()
            .map(|p| p.degree_in(0).max(p.degree_in(1)).max(0) as usize)
            .max()
            .unwrap_or(0);
        ComplexSystem {
            f: [t(&f.first), t(&f.second)],
            jac: [
                [t(&f.first.diff(0)), t(&f.first.diff(1))],
                [t(&f.second.diff(0)), t(&f.second.diff(1))],
            ],
            max_pow,
        }
    }

    fn eval_terms(terms: &[((u32, u32), f64)], xp: &[Complex64], yp: &[Complex64]) -> Complex64 {
        terms.iter().map(|&((i, j), c)| xp[i as usize] * yp[j as usize] * c).sum()
    }

    /// Newton iteration in `ℂ²` from `(z, w)`.
    fn newton(&self, mut z: Complex64, mut w: Complex64) -> Option<(Complex64, Complex64)> {
        let one = Complex64::new(1.0, 0.0);
        let mut xp = vec![one; self.max_pow + 1];
        let mut yp = vec![one; self.max_pow + 1];
        for _ in 0..60 {
            for k in 1..=self.max_pow {
                xp[k] = xp[k - 1] * z;
                yp[k] = yp[k - 1] * w;
            }
            let f0 = Self::eval_terms(&self.f[0], &xp, &yp);
            let f1 = Self::eval_terms(&self.f[1], &xp, &yp);
            let a = Self::eval_terms(&self.jac[0][0], &xp, &yp);
            let b = Self::eval_terms(&self.jac[0][1], &xp, &yp);
            let c = Self::eval_terms(&self.jac[1][0], &xp, &yp);
            let d = Self::eval_terms(&self.jac[1][1], &xp, &yp);
            let det = a * d - b * c;
            if det.norm() < 1e-14 {
                return None;
            }
            let dz = (d * f0 - b * f1) / det;
            let dw = (a * f1 - c * f0) / det;
            z -= dz;
            w -= dw;
            if !(z.is_finite() && w.is_finite()) || z.norm() > 1e8 || w.norm() > 1e8 {
                return None;
            }
            let step = dz.norm().max(dw.norm());
            if step <= 1e-14 * (1.0 + z.norm().max(w.norm())) {
                break;
            }
        }
        for k in 1..=self.max_pow {
            xp[k] = xp[k - 1] * z;
            yp[k] = yp[k - 1] * w;
        }
        let r0 = Self::eval_terms(&self.f[0], &xp, &yp).norm();
        let r1 = Self::eval_terms(&self.f[1], &xp, &yp).norm();
        (r0.max(r1) <= 1e-9 * (1.0 + z.norm().max(w.norm())).powi(self.max_pow as i32)).then_some((z, w))
    }
}

/// Complex solutions of `f = 0` found by Newton in `ℂ²` from a
/// `GHOST_SEEDS⁴` grid whose real parts cover `bounds` and whose imaginary
/// parts cover a box of the same size centered at zero. Deduplicated within
/// [`DEDUP_RADIUS`] and sorted.
pub fn complex_solutions(f: &PlaneMap, bounds: &Window) -> Vec<ComplexSolution> {
    let sys = ComplexSystem::new(f);
    let n = GHOST_SEEDS;
    let axis = |lo: f64, hi: f64, k: usize| lo + (hi - lo) * (k as f64 + 0.5) / n as f64;
    let (hw, hh) = (0.5 * bounds.width(), 0.5 * bounds.height());

    let mut found: Vec<ComplexSolution> = (0..n * n)
        .into_par_iter()
        .flat_map_iter(|outer| {
            let (a, b) = (outer / n, outer % n);
            let zr = axis(bounds.x_min, bounds.x_max, a);
            let zi = axis(-hw, hw, b);
            let sys = &sys;
            let mut local: Vec<ComplexSolution> = Vec::new();
            for inner in 0..n * n {
                let (c, d) = (inner / n, inner % n);
                let wr = axis(bounds.y_min, bounds.y_max, c);
                let wi = axis(-hh, hh, d);
                if let Some((z, w)) = sys.newton(Complex64::new(zr, zi), Complex64::new(wr, wi)) {
                    let s = ComplexSolution::from_pair(z, w);
                    if !local.iter().any(|o| o.dist(&s) <= DEDUP_RADIUS) {
                        local.push(s);
                    }
                }
            }
            local
        })
        .collect();

    found.sort_by(|a, b| {
        a.z.iter()
            .chain(a.w.iter())
            .zip(b.z.iter().chain(b.w.iter()))
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut out: Vec<ComplexSolution> = Vec::new();
    for s in found {
        if !out.iter().any(|o| o.dist(&s) <= DEDUP_RADIUS) {
            out.push(s);
        }
    }
    // clean tiny imaginary parts of real solutions
    for s in out.iter_mut() {
        if s.imag_norm() <= 1e-9 {
            s.z[1] = 0.0;
            s.w[1] = 0.0;
        }
    }
    out
}

/// One ghost line per conjugate pair of strictly complex solutions.
pub fn ghost_lines(f: &PlaneMap, bounds: &Window) -> Vec<GhostLine> {
    ghost_lines_from(&complex_solutions(f, bounds))
}

pub fn ghost_lines_from(solutions: &[ComplexSolution]) -> Vec<GhostLine> {
    let mut lines: Vec<GhostLine> = solutions
        .iter()
        .filter(|s| s.imag_norm() > 1e-8)
        // keep one member of each conjugate pair
        .filter(|s| s.z[1] > 0.0 || (s.z[1] == 0.0 && s.w[1] > 0.0))
        .filter_map(|s| GhostLine::from_solution(*s))
        .collect();
    lines.sort_by(|a, b| a.base.lex_cmp(&b.base).then(a.direction.lex_cmp(&b.direction)));
    lines
}
