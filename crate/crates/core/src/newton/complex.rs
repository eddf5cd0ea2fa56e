use num_complex::Complex64;

use crate::dynamics::{Dynamics, Invertible};
use crate::geom::{Point, Window};
use crate::poly::{univariate_complex_roots, UniComplexPoly, DEFAULT_ROOT_TOL};
use crate::{Error, Result};

/// A rational map `numerator / denominator` of the Riemann sphere, acting on
/// finite points.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalMap {
    pub numerator: UniComplexPoly,
    pub denominator: UniComplexPoly,
}

impl RationalMap {
    pub fn new(numerator: UniComplexPoly, denominator: UniComplexPoly) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::invalid("rational map with zero denominator"));
        }
        let (numerator, denominator) = cancel_common_z_power(numerator, denominator);
        Ok(RationalMap { numerator, denominator })
    }

    pub fn degree(&self) -> usize {
        self.numerator.degree().max(self.denominator.degree()).max(0) as usize
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let d = self.denominator.eval(z);
        let n = self.numerator.eval(z);
        if d.norm() <= 1e-300 || d.norm() <= 1e-15 * n.norm() {
            return Err(Error::SingularJacobian(z.into()));
        }
        let w = n / d;
        if !w.is_finite() {
            return Err(Error::SingularJacobian(z.into()));
        }
        Ok(w)
    }

    /// Exact complex derivative.
    pub fn derivative(&self, z: Complex64) -> Result<Complex64> {
        let (n, dn) = self.numerator.eval_with_derivative(z);
        let (d, dd) = self.denominator.eval_with_derivative(z);
        if d.norm() <= 1e-300 {
            return Err(Error::SingularJacobian(z.into()));
        }
        Ok((dn * d - n * dd) / (d * d))
    }

    /// The polynomial whose roots are the counterimages of `z`:
    /// `numerator(w) - z·denominator(w)`.
    pub fn counterimage_poly(&self, z: Complex64) -> UniComplexPoly {
        &self.numerator - &self.denominator.scale(z)
    }
}

fn cancel_common_z_power(n: UniComplexPoly, d: UniComplexPoly) -> (UniComplexPoly, UniComplexPoly) {
    let zero = Complex64::new(0.0, 0.0);
    let low = |p: &UniComplexPoly| p.coeffs().iter().take_while(|c| **c == zero).count();
    let k = if n.is_zero() { low(&d) } else { low(&n).min(low(&d)) };
    if k == 0 {
        return (n, d);
    }
    (
        UniComplexPoly::new(n.coeffs().get(k..).unwrap_or_default().to_vec()),
        UniComplexPoly::new(d.coeffs()[k..].to_vec()),
    )
}

impl Dynamics for RationalMap {
    fn step(&self, p: Point) -> Result<Point> {
        self.eval(p.to_complex()).map(Point::from)
    }

    fn jacobian(&self, p: Point, _h: f64) -> Result<[[f64; 2]; 2]> {
        let d = self.derivative(p.to_complex())?;
        Ok([[d.re, -d.im], [d.im, d.re]])
    }
}

impl Invertible for RationalMap {
    /// Roots of `numerator(w) - z·denominator(w)`, with multiplicity.
    fn counterimages(&self, z: Point, _domain: Option<&Window>) -> Result<Vec<Point>> {
        let q = self.counterimage_poly(z.to_complex());
        if q.degree() < 1 {
            return Ok(Vec::new());
        }
        Ok(univariate_complex_roots(&q, DEFAULT_ROOT_TOL)?.into_iter().map(Point::from).collect())
    }

    fn degree(&self) -> usize {
        RationalMap::degree(self)
    }
}

/// Newton map `N(z) = z - p(z)/p'(z) = (z·p' - p) / p'` of a complex polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonComplexMap {
    pub source: UniComplexPoly,
    pub map: RationalMap,
    pub degree: usize,
}

/// Builds `N_p`; fails for constant `p`.
pub fn build_newton_complex(p: &UniComplexPoly) -> Result<NewtonComplexMap> {
    if p.degree() < 1 {
        return Err(Error::invalid("Newton map of a constant polynomial"));
    }
    let dp = p.derivative();
    let numerator = &(&UniComplexPoly::z() * &dp) - p;
    let map = RationalMap::new(numerator, dp)?;
    let degree = map.degree();
    Ok(NewtonComplexMap { source: p.clone(), map, degree })
}

impl NewtonComplexMap {
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        self.map.eval(z)
    }

    /// Roots of the source polynomial as points, clustered with multiplicity
    /// dropped.
    pub fn roots(&self) -> Result<Vec<Point>> {
        let r = univariate_complex_roots(&self.source, DEFAULT_ROOT_TOL)?;
        let pts = r.into_iter().map(Point::from).collect();
        Ok(crate::poly::merge_points(pts, 1e-7))
    }
}

impl Dynamics for NewtonComplexMap {
    fn step(&self, p: Point) -> Result<Point> {
        self.map.step(p)
    }

    fn jacobian(&self, p: Point, h: f64) -> Result<[[f64; 2]; 2]> {
        self.map.jacobian(p, h)
    }
}

impl Invertible for NewtonComplexMap {
    fn counterimages(&self, z: Point, domain: Option<&Window>) -> Result<Vec<Point>> {
        self.map.counterimages(z, domain)
    }

    fn degree(&self) -> usize {
        self.degree
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cubic_newton_map_formula() {
        let n = build_newton_complex(&UniComplexPoly::from_real(&[-1.0, 0.0, 0.0, 1.0])).unwrap();
        assert_eq!(n.map.numerator, UniComplexPoly::from_real(&[1.0, 0.0, 0.0, 2.0]));
        assert_eq!(n.map.denominator, UniComplexPoly::from_real(&[0.0, 0.0, 3.0]));
        assert_eq!(n.degree, 3);
    }

    #[test]
    fn z_squared_reduces_to_halving() {
        let n = build_newton_complex(&UniComplexPoly::from_real(&[0.0, 0.0, 1.0])).unwrap();
        assert_eq!(n.map.numerator, UniComplexPoly::from_real(&[0.0, 1.0]));
        assert_eq!(n.map.denominator, UniComplexPoly::from_real(&[2.0]));
        assert_eq!(n.eval(c(3.0, -1.0)).unwrap(), c(1.5, -0.5));
        assert_eq!(n.eval(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn superattracting_two_cycle() {
        let n = build_newton_complex(&UniComplexPoly::from_real(&[2.0, -2.0, 0.0, 1.0])).unwrap();
        assert_eq!(n.eval(c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert_eq!(n.eval(c(1.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert_eq!(n.map.derivative(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn constant_polynomial_rejected() {
        assert!(build_newton_complex(&UniComplexPoly::from_real(&[2.0])).is_err());
    }

    #[test]
    fn pole_is_singular() {
        let n = build_newton_complex(&UniComplexPoly::from_real(&[-1.0, 0.0, 0.0, 1.0])).unwrap();
        assert!(matches!(n.step(Point::ORIGIN), Err(Error::SingularJacobian(_))));
    }

    #[test]
    fn counterimages_of_one() {
        // 2w^3 - 3w^2 + 1 = (w - 1)^2 (2w + 1)
        let n = build_newton_complex(&UniComplexPoly::from_real(&[-1.0, 0.0, 0.0, 1.0])).unwrap();
        let w = n.counterimages(Point::new(1.0, 0.0), None).unwrap();
        assert_eq!(w.len(), 3);
        assert!(w.iter().filter(|p| p.dist(Point::new(1.0, 0.0)) < 1e-7).count() == 2);
        assert!(w.iter().any(|p| p.dist(Point::new(-0.5, 0.0)) < 1e-12));
    }

    #[test]
    fn roots_are_fixed() {
        let p = UniComplexPoly::from_real(&[2.0, -2.0, 0.0, 1.0]);
        let n = build_newton_complex(&p).unwrap();
        for r in n.roots().unwrap() {
            assert!(n.step(r).unwrap().dist(r) < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn matches_direct_formula(
            coeffs in prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 4),
            zs in prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 100),
        ) {
            let mut cs: Vec<Complex64> = coeffs.iter().map(|&(a, b)| c(a, b)).collect();
            if cs[3].norm() < 0.1 { cs[3] = c(1.0, 0.0); }
            let p = UniComplexPoly::new(cs);
            let n = build_newton_complex(&p).unwrap();
            let dp = p.derivative();
            for (a, b) in zs {
                let z = c(a, b);
                let d = dp.eval(z);
                if d.norm() <= 1e-6 { continue; }
                let direct = z - p.eval(z) / d;
                let via_map = n.eval(z).unwrap();
                prop_assert!((direct - via_map).norm() <= 1e-12 * direct.norm().max(1.0));
            }
        }
    }
}
