//! Homogeneous form of a planar Newton map on the real projective plane.

use super::NewtonPlaneMap;
use crate::dynamics::central_difference;
use crate::geom::{Point, Window};
use crate::poly::{
    merge_points, system_real_roots, MultiPoly, PlaneMap, UniComplexPoly, DEFAULT_MAX_DEPTH,
    DEFAULT_ROOT_TOL, DEFAULT_SYSTEM_TOL,
};
use crate::{Error, Result};

/// Homogeneous polynomial in `(x, y, z)` of a fixed degree, stored through its
/// dehomogenization at `z = 1`: the term `c·x^i y^j` stands for
/// `c·x^i y^j z^(degree - i - j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneousPoly {
    pub affine: MultiPoly,
    pub degree: u32,
}

impl HomogeneousPoly {
    pub fn new(affine: MultiPoly, degree: u32) -> Result<Self> {
        if affine.total_degree() > degree as i32 {
            return Err(Error::invalid(format!(
                "cannot homogenize a degree-{} polynomial to degree {degree}",
                affine.total_degree()
            )));
        }
        Ok(HomogeneousPoly { affine, degree })
    }

    pub fn eval(&self, p: [f64; 3]) -> f64 {
        self.affine
            .terms()
            .iter()
            .map(|&((i, j), c)| {
                c * p[0].powi(i as i32) * p[1].powi(j as i32) * p[2].powi((self.degree - i - j) as i32)
            })
            .sum()
    }

    /// Exponent of `z` common to every term.
    fn z_content(&self) -> u32 {
        let top = self.affine.total_degree();
        if top < 0 {
            self.degree
        } else {
            self.degree - top as u32
        }
    }

    /// Restriction to the chart `y = 1`, as a polynomial in `(x, z)`.
    pub fn chart_y(&self) -> MultiPoly {
        MultiPoly::from_terms(
            self.affine.terms().iter().map(|&((i, j), c)| ((i, self.degree - i - j), c)),
        )
    }
}

/// A rational self-map of the real projective plane given by three
/// homogeneous components of equal degree.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectivePlaneMap {
    pub components: [HomogeneousPoly; 3],
}

impl ProjectivePlaneMap {
    pub fn new(components: [HomogeneousPoly; 3]) -> Result<Self> {
        let d = components[0].degree;
        if components.iter().any(|c| c.degree != d) {
            return Err(Error::invalid("homogeneous components of unequal degree"));
        }
        Ok(ProjectivePlaneMap { components })
    }

    pub fn degree(&self) -> u32 {
        self.components[0].degree
    }

    pub fn eval(&self, p: [f64; 3]) -> [f64; 3] {
        [self.components[0].eval(p), self.components[1].eval(p), self.components[2].eval(p)]
    }

    /// Affine chart `z = 1`; fails where the third component vanishes.
    pub fn eval_affine(&self, p: Point) -> Result<Point> {
        let [a, b, c] = self.eval([p.x, p.y, 1.0]);
        if c.abs() <= 1e-300 || !(a / c).is_finite() || !(b / c).is_finite() {
            return Err(Error::SingularJacobian(p));
        }
        Ok(Point::new(a / c, b / c))
    }

    /// Chart `y = 1` with coordinates `(x, z)`.
    pub fn eval_chart_y(&self, xz: Point) -> Result<Point> {
        let [a, b, c] = self.eval([xz.x, 1.0, xz.y]);
        let scale = a.abs().max(b.abs()).max(c.abs());
        if b.abs() <= 1e-14 * scale || scale == 0.0 {
            return Err(Error::SingularJacobian(xz));
        }
        Ok(Point::new(a / b, c / b))
    }

    /// True when all three components vanish at `p` (after normalization).
    pub fn is_indeterminate(&self, p: [f64; 3], tol: f64) -> bool {
        let n = p.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if n == 0.0 {
            return true;
        }
        let q = [p[0] / n, p[1] / n, p[2] / n];
        let scale: f64 = self.components.iter().map(|c| c.affine.max_abs_coeff()).fold(0.0, f64::max);
        self.eval(q).iter().all(|v| v.abs() <= tol * scale.max(1.0))
    }
}

/// Clears denominators of `N(x) = (det·x - adj(D_x f)·f(x)) / det`, giving
/// `[det·x - (adj f)₁ : det·y - (adj f)₂ : z·det]` homogenized to a common
/// degree with common monomial content removed. Also returns the real
/// indeterminacy points found on the chart `z = 1` inside `search` and on the
/// line at infinity.
pub fn homogenize_newton(
    n: &NewtonPlaneMap,
    search: &Window,
) -> Result<(ProjectivePlaneMap, Vec<[f64; 3]>)> {
    let f = &n.source;
    let j = &n.jacobian;
    let adj_f0 = &(&j[1][1] * &f.first) - &(&j[0][1] * &f.second);
    let adj_f1 = &(&j[0][0] * &f.second) - &(&j[1][0] * &f.first);
    let p0 = &(&n.det * &MultiPoly::x()) - &adj_f0;
    let p1 = &(&n.det * &MultiPoly::y()) - &adj_f1;
    let q = n.det.clone();

    let degree = p0.total_degree().max(p1.total_degree()).max(q.total_degree() + 1).max(0) as u32;
    // z·det^h: det read at full degree carries the extra factor z
    let mut comps = [
        HomogeneousPoly::new(p0, degree)?,
        HomogeneousPoly::new(p1, degree)?,
        HomogeneousPoly::new(q, degree)?,
    ];

    // common monomial content x^a y^b z^c
    let nonzero: Vec<&HomogeneousPoly> = comps.iter().filter(|c| !c.affine.is_zero()).collect();
    if !nonzero.is_empty() {
        let a = nonzero.iter().map(|c| c.affine.monomial_content().0).min().unwrap();
        let b = nonzero.iter().map(|c| c.affine.monomial_content().1).min().unwrap();
        let zc = nonzero.iter().map(|c| c.z_content()).min().unwrap();
        if a + b + zc > 0 {
            for c in comps.iter_mut() {
                let affine = if c.affine.is_zero() { c.affine.clone() } else { c.affine.div_monomial((a, b)) };
                *c = HomogeneousPoly { affine, degree: degree - a - b - zc };
            }
        }
    }
    let map = ProjectivePlaneMap::new(comps)?;
    let points = indeterminacy_points(&map, search)?;
    Ok((map, points))
}

fn normalize3(p: [f64; 3]) -> [f64; 3] {
    let n = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
    let mut q = [p[0] / n, p[1] / n, p[2] / n].map(|v| if v.abs() < 1e-12 { 0.0 } else { v });
    // sign convention: first nonzero coordinate positive
    if let Some(first) = q.iter().copied().find(|v| v.abs() > 1e-12) {
        if first < 0.0 {
            q = [-q[0], -q[1], -q[2]];
        }
    }
    q
}

/// Common real zeros of the three components: on the chart `z = 1` by solving
/// each pair of components and checking the third, on the line at infinity
/// `z = 0` by univariate roots in the chart `y = 1`, and at `[1:0:0]`.
pub fn indeterminacy_points(p: &ProjectivePlaneMap, search: &Window) -> Result<Vec<[f64; 3]>> {
    let tol = 1e-8;
    let mut affine_pts = Vec::new();
    let comps: Vec<MultiPoly> = p.components.iter().map(|c| c.affine.clone()).collect();
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        if comps[a].is_zero() || comps[b].is_zero() {
            continue;
        }
        let sys = PlaneMap { first: comps[a].clone(), second: comps[b].clone() };
        let r = system_real_roots(&sys, search, DEFAULT_SYSTEM_TOL, DEFAULT_MAX_DEPTH)?;
        for pt in r.roots {
            if p.is_indeterminate([pt.x, pt.y, 1.0], tol) {
                affine_pts.push(pt);
            }
        }
    }
    let mut out: Vec<[f64; 3]> = merge_points(affine_pts, 1e-7)
        .into_iter()
        .map(|pt| normalize3([pt.x, pt.y, 1.0]))
        .collect();

    // line at infinity, chart y = 1: components restricted to z = 0
    let at_inf: Vec<UniComplexPoly> = p
        .components
        .iter()
        .map(|c| {
            let chart = c.chart_y();
            let coeffs: Vec<f64> = (0..=chart.degree_in(0).max(0) as u32).map(|i| chart.coeff(i, 0)).collect();
            UniComplexPoly::from_real(&coeffs)
        })
        .collect();
    if let Some(base) = at_inf.iter().find(|u| u.degree() >= 1) {
        for r in crate::poly::univariate_complex_roots(base, DEFAULT_ROOT_TOL)? {
            if r.im.abs() < 1e-8 && p.is_indeterminate([r.re, 1.0, 0.0], tol) {
                let q = normalize3([r.re, 1.0, 0.0]);
                if !out.iter().any(|o| dist3(*o, q) < 1e-7) {
                    out.push(q);
                }
            }
        }
    } else if at_inf.iter().all(|u| u.is_zero()) {
        // the whole line at infinity is indeterminate; report its chart origin
        out.push(normalize3([0.0, 1.0, 0.0]));
    }
    if p.is_indeterminate([1.0, 0.0, 0.0], tol) {
        out.push([1.0, 0.0, 0.0]);
    }
    Ok(out)
}

fn dist3(a: [f64; 3], b: [f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

/// Central-difference Jacobian (step `1e-6`) of the chart `y = 1`
/// representation `(x, z) ↦ (P₀/P₁, P₂/P₁)` at the point `(x, 0)` of the line
/// at infinity.
pub fn jacobian_at_infinity(p: &ProjectivePlaneMap, x: f64) -> Result<[[f64; 2]; 2]> {
    if p.is_indeterminate([x, 1.0, 0.0], 1e-10) {
        return Err(Error::invalid(format!("[{x}:1:0] is an indeterminacy point")));
    }
    central_difference(|q| p.eval_chart_y(q), Point::new(x, 0.0), 1e-6)
        .map_err(|_| Error::invalid(format!("[{x}:1:0] leaves the chart y = 1")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::build_newton_plane;

    fn z2_minus_1() -> NewtonPlaneMap {
        let f = PlaneMap::new("x^2 - y^2 - 1".parse().unwrap(), "2*x*y".parse().unwrap()).unwrap();
        build_newton_plane(&f).unwrap()
    }

    fn expected_triple(p: [f64; 3]) -> [f64; 3] {
        let [x, y, z] = p;
        [x * (x * x + y * y + z * z), y * (x * x + y * y - z * z), 2.0 * z * (x * x + y * y)]
    }

    #[test]
    fn reproduces_homogeneous_triple() {
        let (pm, _) = homogenize_newton(&z2_minus_1(), &Window::square(3.0)).unwrap();
        assert_eq!(pm.degree(), 3);
        for &p in &[[0.3, -1.2, 0.7], [2.0, 1.0, -0.5], [1.0, 0.0, 0.0]] {
            let a = pm.eval(p);
            let b = expected_triple(p);
            // common scalar
            let s = a.iter().zip(&b).find(|(_, b)| b.abs() > 1e-9).map(|(a, b)| a / b).unwrap();
            for k in 0..3 {
                assert!((a[k] - s * b[k]).abs() <= 1e-12 * a[k].abs().max(1.0));
            }
        }
    }

    #[test]
    fn origin_is_the_only_indeterminacy_point() {
        let (pm, pts) = homogenize_newton(&z2_minus_1(), &Window::square(3.0)).unwrap();
        assert_eq!(pts, vec![[0.0, 0.0, 1.0]]);
        assert_eq!(pm.eval([0.0, 0.0, 1.0]), [0.0, 0.0, 0.0]);
        let at_inf = pm.eval([1.0, 0.0, 0.0]);
        assert!(at_inf[1] == 0.0 && at_inf[2] == 0.0 && at_inf[0] != 0.0);
    }

    #[test]
    fn eigenvalue_two_at_infinity() {
        let (pm, _) = homogenize_newton(&z2_minus_1(), &Window::square(3.0)).unwrap();
        for &x in &[-3.0, -0.5, 0.0, 0.7, 2.5] {
            let j = jacobian_at_infinity(&pm, x).unwrap();
            assert!((j[0][0] - 1.0).abs() < 1e-6, "{j:?}");
            assert!(j[0][1].abs() < 1e-6 && j[1][0].abs() < 1e-6);
            assert!((j[1][1] - 2.0).abs() < 1e-6);
            let on_axis = pm.eval_chart_y(Point::new(x, 0.0)).unwrap();
            assert!((on_axis.x - x).abs() < 1e-14 && on_axis.y == 0.0);
        }
    }

    #[test]
    fn chart_z_agrees_with_newton_step() {
        use crate::dynamics::Dynamics;
        let n = z2_minus_1();
        let (pm, _) = homogenize_newton(&n, &Window::square(3.0)).unwrap();
        for &(x, y) in &[(0.4, 0.9), (-1.5, 0.2), (2.2, -1.1)] {
            let a = pm.eval_affine(Point::new(x, y)).unwrap();
            let b = n.step(Point::new(x, y)).unwrap();
            assert!(a.dist(b) < 1e-12);
        }
    }

    #[test]
    fn unequal_degrees_rejected() {
        let a = HomogeneousPoly::new(MultiPoly::x(), 1).unwrap();
        let b = HomogeneousPoly::new(MultiPoly::x(), 2).unwrap();
        assert!(ProjectivePlaneMap::new([a.clone(), a, b]).is_err());
        assert!(HomogeneousPoly::new("x^3".parse().unwrap(), 2).is_err());
    }
}
