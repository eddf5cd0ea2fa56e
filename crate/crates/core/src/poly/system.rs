//! Real solutions of a polynomial system `f(x, y) = 0` in a rectangle.
//!
//! Boxes are discarded when the interval enclosure of either component
//! excludes zero or when the Krawczyk image misses the box. A box whose
//! Krawczyk image lies in its interior holds exactly one root, which is then
//! polished by damped Newton from the box center. Boxes that survive to
//! `max_depth` are seeded into Newton as well; those whose seed fails are
//! reported as unresolved.

use super::interval::Interval;
use super::{MultiPoly, PlaneMap};
use crate::geom::{Point, Window};
use crate::{Error, Result};

pub const DEFAULT_SYSTEM_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_DEPTH: u32 = 24;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SystemRoots {
    /// Solutions sorted lexicographically, duplicates within `10·tol` merged.
    pub roots: Vec<Point>,
    /// Leaf boxes that could neither be excluded nor resolved.
    pub unresolved: Vec<Window>,
}

/// A polynomial system with its Jacobian entries precomputed.
#[derive(Debug, Clone)]
pub struct PolySystem {
    f: [MultiPoly; 2],
    jac: [[MultiPoly; 2]; 2],
    abs: [MultiPoly; 2],
}

impl PolySystem {
    pub fn new(f: &PlaneMap) -> Self {
        let f = [f.first.clone(), f.second.clone()];
        let jac = [[f[0].diff(0), f[0].diff(1)], [f[1].diff(0), f[1].diff(1)]];
        let abs = [abs_poly(&f[0]), abs_poly(&f[1])];
        PolySystem { f, jac, abs }
    }

    pub fn eval(&self, p: Point) -> [f64; 2] {
        [self.f[0].eval(p), self.f[1].eval(p)]
    }

    pub fn jacobian(&self, p: Point) -> [[f64; 2]; 2] {
        [
            [self.jac[0][0].eval(p), self.jac[0][1].eval(p)],
            [self.jac[1][0].eval(p), self.jac[1][1].eval(p)],
        ]
    }

    /// Residual measured against the magnitude of the summed terms, so that
    /// the tolerance is meaningful for large coefficients.
    fn scaled_residual(&self, p: Point) -> f64 {
        let v = self.eval(p);
        let ap = Point::new(p.x.abs(), p.y.abs());
        (0..2)
            .map(|k| v[k].abs() / (1.0 + self.abs[k].eval(ap)))
            .fold(0.0, f64::max)
    }

    /// Damped Newton from `start`. Returns the converged point when the
    /// scaled residual drops to `tol`.
    pub fn polish(&self, start: Point, tol: f64, max_iter: usize) -> Option<Point> {
        let mut p = start;
        let mut r = self.scaled_residual(p);
        for _ in 0..max_iter {
            if r <= tol {
                return Some(p);
            }
            let v = self.eval(p);
            let step = solve2(self.jacobian(p), v)?;
            let mut lambda = 1.0;
            let mut accepted = false;
            while lambda > 1e-6 {
                let cand = p - Point::new(step[0], step[1]) * lambda;
                let rc = self.scaled_residual(cand);
                if rc.is_finite() && rc < r {
                    p = cand;
                    r = rc;
                    accepted = true;
                    break;
                }
                lambda *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        (r <= tol).then_some(p)
    }

    fn box_values(&self, b: &IBox) -> [Interval; 2] {
        [self.f[0].eval_interval(b.x, b.y), self.f[1].eval_interval(b.x, b.y)]
    }

    fn box_jacobian(&self, b: &IBox) -> [[Interval; 2]; 2] {
        let e = |p: &MultiPoly| p.eval_interval(b.x, b.y);
        [[e(&self.jac[0][0]), e(&self.jac[0][1])], [e(&self.jac[1][0]), e(&self.jac[1][1])]]
    }

    /// Krawczyk test on a box.
    fn krawczyk(&self, b: &IBox) -> Krawczyk {
        let c = Point::new(b.x.mid(), b.y.mid());
        let Some(y) = inverse2(self.jacobian(c)) else {
            return Krawczyk::Inconclusive;
        };
        let fc = self.eval(c);
        let jx = self.box_jacobian(b);
        let d = [b.x - Interval::point(c.x), b.y - Interval::point(c.y)];
        let mut k = [Interval::point(0.0); 2];
        for i in 0..2 {
            let newton = c_coord(c, i) - (y[i][0] * fc[0] + y[i][1] * fc[1]);
            let mut acc = Interval::point(newton);
            for j in 0..2 {
                let ident = if i == j { 1.0 } else { 0.0 };
                let m = Interval::point(ident) - (jx[0][j] * y[i][0] + jx[1][j] * y[i][1]);
                acc = acc + m * d[j];
            }
            k[i] = acc;
        }
        if !k[0].lo.is_finite() || !k[0].hi.is_finite() || !k[1].lo.is_finite() || !k[1].hi.is_finite() {
            return Krawczyk::Inconclusive;
        }
        if k[0].intersect(&b.x).is_none() || k[1].intersect(&b.y).is_none() {
            Krawczyk::Empty
        } else if k[0].interior_of(&b.x) && k[1].interior_of(&b.y) {
            Krawczyk::Unique
        } else {
            Krawczyk::Inconclusive
        }
    }
}

fn c_coord(c: Point, i: usize) -> f64 {
    if i == 0 {
        c.x
    } else {
        c.y
    }
}

fn abs_poly(p: &MultiPoly) -> MultiPoly {
    MultiPoly::from_terms(p.terms().iter().map(|&(e, c)| (e, c.abs())))
}

enum Krawczyk {
    Empty,
    Unique,
    Inconclusive,
}

#[derive(Clone, Copy)]
struct IBox {
    x: Interval,
    y: Interval,
}

impl IBox {
    fn from_window(w: &Window) -> Self {
        IBox { x: Interval::new(w.x_min, w.x_max), y: Interval::new(w.y_min, w.y_max) }
    }

    fn to_window(self) -> Window {
        Window::new(self.x.lo, self.x.hi, self.y.lo, self.y.hi)
    }

    fn center(&self) -> Point {
        Point::new(self.x.mid(), self.y.mid())
    }

    fn split(&self) -> [IBox; 4] {
        let (xm, ym) = (self.x.mid(), self.y.mid());
        let xs = [Interval::new(self.x.lo, xm), Interval::new(xm, self.x.hi)];
        let ys = [Interval::new(self.y.lo, ym), Interval::new(ym, self.y.hi)];
        [
            IBox { x: xs[0], y: ys[0] },
            IBox { x: xs[1], y: ys[0] },
            IBox { x: xs[0], y: ys[1] },
            IBox { x: xs[1], y: ys[1] },
        ]
    }

    fn contains_with_margin(&self, p: Point, margin: f64) -> bool {
        p.x >= self.x.lo - margin
            && p.x <= self.x.hi + margin
            && p.y >= self.y.lo - margin
            && p.y <= self.y.hi + margin
    }
}

/// Solves `m · s = v` by elimination with partial pivoting.
pub fn solve2(m: [[f64; 2]; 2], v: [f64; 2]) -> Option<[f64; 2]> {
    let (mut m, mut v) = (m, v);
    if m[1][0].abs() > m[0][0].abs() {
        m.swap(0, 1);
        v.swap(0, 1);
    }
    if m[0][0] == 0.0 {
        return None;
    }
    let l = m[1][0] / m[0][0];
    let u11 = m[1][1] - l * m[0][1];
    let w1 = v[1] - l * v[0];
    if u11 == 0.0 {
        return None;
    }
    let s1 = w1 / u11;
    let s0 = (v[0] - m[0][1] * s1) / m[0][0];
    (s0.is_finite() && s1.is_finite()).then_some([s0, s1])
}

fn inverse2(m: [[f64; 2]; 2]) -> Option<[[f64; 2]; 2]> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let scale = m.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs()));
    if !(det.abs() > 1e-14 * scale * scale) {
        return None;
    }
    Some([[m[1][1] / det, -m[0][1] / det], [-m[1][0] / det, m[0][0] / det]])
}

/// All real solutions of `f = 0` in `domain`.
pub fn system_real_roots(
    f: &PlaneMap,
    domain: &Window,
    tol: f64,
    max_depth: u32,
) -> Result<SystemRoots> {
    if domain.is_degenerate() {
        return Err(Error::invalid("degenerate search box"));
    }
    if max_depth < 1 {
        return Err(Error::invalid("max_depth must be at least 1"));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    Ok(PolySystem::new(f).solve(domain, tol, max_depth))
}

impl PolySystem {
    pub fn solve(&self, domain: &Window, tol: f64, max_depth: u32) -> SystemRoots {
        let mut found = Vec::new();
        let mut unresolved = Vec::new();
        let mut stack = vec![(IBox::from_window(domain), 0u32)];
        let outer = IBox::from_window(domain);
        let scale = domain.width().max(domain.height());

        while let Some((b, depth)) = stack.pop() {
            let [v0, v1] = self.box_values(&b);
            if !v0.contains_zero() || !v1.contains_zero() {
                continue;
            }
            match self.krawczyk(&b) {
                Krawczyk::Empty => continue,
                Krawczyk::Unique => {
                    if let Some(r) = self.polish(b.center(), tol, 60) {
                        if outer.contains_with_margin(r, 1e-12 * scale) {
                            found.push(r);
                        }
                        continue;
                    }
                }
                Krawczyk::Inconclusive => {}
            }
            if depth >= max_depth {
                match self.polish(b.center(), tol, 60) {
                    Some(r) if b.contains_with_margin(r, b.x.width().max(b.y.width())) => {
                        if outer.contains_with_margin(r, 1e-12 * scale) {
                            found.push(r);
                        }
                    }
                    _ => unresolved.push(b.to_window()),
                }
                continue;
            }
            stack.extend(b.split().into_iter().map(|c| (c, depth + 1)));
        }

        SystemRoots { roots: merge_points(found, 10.0 * tol), unresolved }
    }
}

/// Sorts and merges points closer than `radius` (scaled by magnitude).
pub fn merge_points(mut pts: Vec<Point>, radius: f64) -> Vec<Point> {
    pts.sort_by(Point::lex_cmp);
    let mut out: Vec<Point> = Vec::with_capacity(pts.len());
    for p in pts {
        let r = radius * (1.0 + p.norm());
        if !out.iter().any(|q| q.dist(p) <= r) {
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(a: &str, b: &str) -> PlaneMap {
        PlaneMap::new(a.parse().unwrap(), b.parse().unwrap()).unwrap()
    }

    #[test]
    fn product_of_cubics_has_nine_roots() {
        let f = map("x*(x^2 - 1)", "y*(y^2 - 1)");
        let r = system_real_roots(&f, &Window::square(2.0), 1e-10, 24).unwrap();
        assert_eq!(r.roots.len(), 9);
        let mut k = 0;
        for x in [-1.0, 0.0, 1.0] {
            for y in [-1.0, 0.0, 1.0] {
                assert!(r.roots[k].dist(Point::new(x, y)) < 1e-9, "{:?}", r.roots);
                k += 1;
            }
        }
        assert!(r.unresolved.is_empty());
    }

    #[test]
    fn linear_system_has_origin() {
        let f = map("x", "y");
        let r = system_real_roots(&f, &Window::new(-1.0, 3.0, -2.0, 0.5), 1e-10, 10).unwrap();
        assert_eq!(r.roots, vec![Point::ORIGIN]);
    }

    #[test]
    fn invalid_arguments() {
        let f = map("x", "y");
        assert!(system_real_roots(&f, &Window::new(0.0, 0.0, 0.0, 1.0), 1e-10, 10).is_err());
        assert!(system_real_roots(&f, &Window::square(1.0), 1e-10, 0).is_err());
    }

    #[test]
    fn roots_outside_box_are_ignored() {
        let f = map("x*(x^2 - 1)", "y*(y^2 - 1)");
        let r = system_real_roots(&f, &Window::new(0.5, 2.0, 0.5, 2.0), 1e-10, 24).unwrap();
        assert_eq!(r.roots.len(), 1);
        assert!(r.roots[0].dist(Point::new(1.0, 1.0)) < 1e-9);
    }

    #[test]
    fn solve2_pivots() {
        let s = solve2([[0.0, 1.0], [2.0, 0.0]], [3.0, 4.0]).unwrap();
        assert_eq!(s, [2.0, 3.0]);
        assert!(solve2([[1.0, 2.0], [2.0, 4.0]], [1.0, 1.0]).is_none());
    }
}
