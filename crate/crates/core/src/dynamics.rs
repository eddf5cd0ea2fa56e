//! The two capabilities every map in this crate provides: a forward step and
//! (for maps that can be inverted) the set of counterimages of a point.

use crate::geom::{Point, Window};
use crate::Result;

/// Default finite-difference step for Jacobians.
pub const FD_STEP: f64 = 1e-6;

/// A self-map of the plane (complex maps act on `(re, im)`).
pub trait Dynamics: Sync {
    /// One forward step. Fails with [`crate::Error::SingularJacobian`] where
    /// the map is undefined.
    fn step(&self, p: Point) -> Result<Point>;

    /// Jacobian of one step, by central differences unless overridden.
    fn jacobian(&self, p: Point, h: f64) -> Result<[[f64; 2]; 2]> {
        central_difference(|q| self.step(q), p, h)
    }

    /// `q`-fold iterate.
    fn iterate(&self, mut p: Point, q: usize) -> Result<Point> {
        for _ in 0..q {
            p = self.step(p)?;
        }
        Ok(p)
    }
}

/// Maps whose counterimages can be computed exactly (as roots of a
/// polynomial equation).
pub trait Invertible: Dynamics {
    /// All solutions `w` of `N(w) = z`. Planar maps require a bounded
    /// search `domain`; complex maps ignore it.
    fn counterimages(&self, z: Point, domain: Option<&Window>) -> Result<Vec<Point>>;

    /// Upper bound on the number of counterimages of a generic point.
    fn degree(&self) -> usize;
}

/// Central-difference Jacobian of `g` at `p`.
pub fn central_difference<F>(g: F, p: Point, h: f64) -> Result<[[f64; 2]; 2]>
where
    F: Fn(Point) -> Result<Point>,
{
    let ex = Point::new(h, 0.0);
    let ey = Point::new(0.0, h);
    let dx = (g(p + ex)? - g(p - ex)?) * (0.5 / h);
    let dy = (g(p + ey)? - g(p - ey)?) * (0.5 / h);
    Ok([[dx.x, dy.x], [dx.y, dy.y]])
}

pub fn mat_mul(a: [[f64; 2]; 2], b: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
    let mut c = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

/// Largest eigenvalue modulus of a real 2×2 matrix.
pub fn spectral_radius(m: [[f64; 2]; 2]) -> f64 {
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = tr * tr - 4.0 * det;
    if disc >= 0.0 {
        let s = disc.sqrt();
        (0.5 * (tr + s)).abs().max((0.5 * (tr - s)).abs())
    } else {
        // complex pair: |λ|² = det
        det.abs().sqrt()
    }
}
