use crate::dynamics::{Dynamics, Invertible};
use crate::geom::{Point, Window};
use crate::poly::{merge_points, solve2, MultiPoly, PlaneMap, PolySystem};
use crate::{Error, Result};

/// Scaled residual required of planar counterimages before they are
/// verified through a forward step.
const COUNTERIMAGE_TOL: f64 = 1e-13;
const COUNTERIMAGE_DEPTH: u32 = 40;
/// `‖N(w) - z‖` allowed for an accepted counterimage, relative to `1 + |z|`.
pub const COUNTERIMAGE_CHECK: f64 = 1e-8;

/// Newton map `N(x) = x - (D_x f)^{-1} f(x)` of a polynomial map of the plane.
#[derive(Debug, Clone)]
pub struct NewtonPlaneMap {
    pub source: PlaneMap,
    /// `jacobian[i][j] = ∂f_i/∂x_j`.
    pub jacobian: [[MultiPoly; 2]; 2],
    pub det: MultiPoly,
}

/// Symbolic Jacobian and determinant of `f`; fails for constant `f`.
pub fn build_newton_plane(f: &PlaneMap) -> Result<NewtonPlaneMap> {
    if f.is_constant() {
        return Err(Error::invalid("Newton map of a constant plane map"));
    }
    let jacobian = [
        [f.first.diff(0), f.first.diff(1)],
        [f.second.diff(0), f.second.diff(1)],
    ];
    let det = &(&jacobian[0][0] * &jacobian[1][1]) - &(&jacobian[0][1] * &jacobian[1][0]);
    Ok(NewtonPlaneMap { source: f.clone(), jacobian, det })
}

impl NewtonPlaneMap {
    pub fn jacobian_at(&self, p: Point) -> [[f64; 2]; 2] {
        let j = &self.jacobian;
        [[j[0][0].eval(p), j[0][1].eval(p)], [j[1][0].eval(p), j[1][1].eval(p)]]
    }

    /// True where `|det D_x f| ≤ 1e-12·(1 + ‖D_x f‖∞)`.
    pub fn is_singular_at(&self, p: Point) -> bool {
        let m = self.jacobian_at(p);
        singular(m)
    }

    /// Real roots of the source map inside `domain`.
    pub fn roots(&self, domain: &Window) -> Result<Vec<Point>> {
        let r = crate::poly::system_real_roots(
            &self.source,
            domain,
            crate::poly::DEFAULT_SYSTEM_TOL,
            crate::poly::DEFAULT_MAX_DEPTH,
        )?;
        Ok(r.roots)
    }

    /// The polynomial system `D_w f·(w - z) - f(w)` whose real solutions
    /// off `det = 0` are the counterimages of `z`.
    pub fn counterimage_system(&self, z: Point) -> PlaneMap {
        let dx = &MultiPoly::x() - &MultiPoly::constant(z.x);
        let dy = &MultiPoly::y() - &MultiPoly::constant(z.y);
        let j = &self.jacobian;
        let g0 = &(&(&j[0][0] * &dx) + &(&j[0][1] * &dy)) - &self.source.first;
        let g1 = &(&(&j[1][0] * &dx) + &(&j[1][1] * &dy)) - &self.source.second;
        PlaneMap { first: g0, second: g1 }
    }
}

fn singular(m: [[f64; 2]; 2]) -> bool {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let norm = (m[0][0].abs() + m[0][1].abs()).max(m[1][0].abs() + m[1][1].abs());
    !(det.abs() > 1e-12 * (1.0 + norm))
}

/// One Newton step: solves `D_x f · s = f(x)` with partial pivoting and
/// returns `x - s`.
pub fn newton_step_plane(n: &NewtonPlaneMap, x: Point) -> Result<Point> {
    let m = n.jacobian_at(x);
    if singular(m) {
        return Err(Error::SingularJacobian(x));
    }
    let fx = n.source.eval(x);
    let s = solve2(m, [fx.x, fx.y]).ok_or(Error::SingularJacobian(x))?;
    let out = Point::new(x.x - s[0], x.y - s[1]);
    if !out.is_finite() {
        return Err(Error::SingularJacobian(x));
    }
    Ok(out)
}

impl Dynamics for NewtonPlaneMap {
    fn step(&self, p: Point) -> Result<Point> {
        newton_step_plane(self, p)
    }
}

impl Invertible for NewtonPlaneMap {
    /// Real counterimages inside `domain`, solutions on `det = 0` removed.
    fn counterimages(&self, z: Point, domain: Option<&Window>) -> Result<Vec<Point>> {
        let domain = domain.ok_or_else(|| {
            Error::invalid("planar counterimages need a bounded search domain")
        })?;
        let system = PolySystem::new(&self.counterimage_system(z));
        let found = system.solve(domain, COUNTERIMAGE_TOL, COUNTERIMAGE_DEPTH);
        let tol = COUNTERIMAGE_CHECK * (1.0 + z.norm());
        let accepted = found
            .roots
            .into_iter()
            .filter(|&w| match newton_step_plane(self, w) {
                Ok(nw) => nw.dist(z) <= tol,
                Err(_) => false,
            })
            .collect();
        Ok(merge_points(accepted, 1e-9))
    }

    fn degree(&self) -> usize {
        let d = self.source.first.total_degree().max(self.source.second.total_degree()).max(1);
        (d * d) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(a: &str, b: &str) -> PlaneMap {
        PlaneMap::new(a.parse().unwrap(), b.parse().unwrap()).unwrap()
    }

    #[test]
    fn real_form_of_z_squared_minus_one_at_two() {
        let n = build_newton_plane(&map("x^2 - y^2 - 1", "2*x*y")).unwrap();
        let p = n.step(Point::new(2.0, 0.0)).unwrap();
        assert!(p.dist(Point::new(1.25, 0.0)) < 1e-15);
        // complex form (z^2 + 1)/(2z) at z = 2
        assert_eq!(p.x, (4.0 + 1.0) / 4.0);
        assert_eq!(n.step(Point::new(1.0, 0.0)).unwrap(), Point::new(1.0, 0.0));
    }

    #[test]
    fn decoupled_map_is_coordinatewise_newton() {
        let n = build_newton_plane(&map("x*(x^2 - 1)", "y*(y^2 - 1)")).unwrap();
        let uni = |t: f64| t - (t * t * t - t) / (3.0 * t * t - 1.0);
        for &(x, y) in &[(0.3, -2.0), (1.7, 0.2), (-0.9, 0.95)] {
            let p = n.step(Point::new(x, y)).unwrap();
            assert!((p.x - uni(x)).abs() < 1e-14);
            assert!((p.y - uni(y)).abs() < 1e-14);
        }
        assert_eq!(n.step(Point::ORIGIN).unwrap(), Point::ORIGIN);
        assert!(matches!(
            n.step(Point::new(1.0 / 3f64.sqrt(), 0.4)),
            Err(Error::SingularJacobian(_))
        ));
    }

    #[test]
    fn linear_map_converges_in_one_step() {
        let n = build_newton_plane(&map("x", "y")).unwrap();
        for &(x, y) in &[(3.0, -1.0), (1e5, 2e-3)] {
            assert_eq!(n.step(Point::new(x, y)).unwrap(), Point::ORIGIN);
        }
    }

    #[test]
    fn constant_map_rejected() {
        assert!(build_newton_plane(&map("1", "2")).is_err());
    }

    #[test]
    fn counterimages_need_domain() {
        let n = build_newton_plane(&map("x*(x^2 - 1)", "y*(y^2 - 1)")).unwrap();
        assert!(n.counterimages(Point::ORIGIN, None).is_err());
    }

    #[test]
    fn counterimages_of_origin_for_decoupled_map() {
        let n = build_newton_plane(&map("x*(x^2 - 1)", "y*(y^2 - 1)")).unwrap();
        let w = n.counterimages(Point::ORIGIN, Some(&Window::square(2.0))).unwrap();
        // univariate: w - (w^3 - w)/(3w^2 - 1) = 0  <=>  w(2w^2) = 0, so w = 0
        // (double); the real counterimages of 0 are only 0 in each coordinate
        assert_eq!(w.len(), 1);
        assert!(w[0].dist(Point::ORIGIN) < 1e-9);
        for p in &w {
            assert!(n.step(*p).unwrap().dist(Point::ORIGIN) < 1e-8);
        }
    }
}
