use super::NewtonPlaneMap;
use crate::dynamics::Dynamics;
use crate::geom::Point;
use crate::poly::PlaneMap;
use crate::{Error, Result};

/// `ψ* f = ψ⁻¹ ∘ f ∘ ψ`. The inverse is checked symbolically:
/// `ψ ∘ ψ⁻¹` must be the identity polynomial map.
pub fn pullback_map(f: &PlaneMap, psi: &PlaneMap, psi_inv: &PlaneMap) -> Result<PlaneMap> {
    if !psi.compose(psi_inv).approx_eq(&PlaneMap::identity(), 1e-12) {
        return Err(Error::invalid("psi ∘ psi_inv is not the identity"));
    }
    Ok(psi_inv.compose(&f.compose(psi)))
}

/// `ψ* N_f = ψ⁻¹ ∘ N_f ∘ ψ` evaluated at a point.
pub fn conjugated_step(n: &NewtonPlaneMap, psi: &PlaneMap, psi_inv: &PlaneMap, p: Point) -> Result<Point> {
    Ok(psi_inv.eval(n.step(psi.eval(p))?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::build_newton_plane;
    use crate::poly::MultiPoly;

    fn pm(a: &str, b: &str) -> PlaneMap {
        PlaneMap::new(a.parse().unwrap(), b.parse().unwrap()).unwrap()
    }

    #[test]
    fn shear_pullback_of_z_squared_minus_one() {
        let f = pm("x^2 - y^2 - 1", "2*x*y");
        let psi = pm("x", "y + x^2");
        let psi_inv = pm("x", "y - x^2");
        let g = pullback_map(&f, &psi, &psi_inv).unwrap();
        let first: MultiPoly = "x^2 - (y + x^2)^2 - 1".parse().unwrap();
        let second: MultiPoly = "2*x*(y + x^2) - (x^2 - (y + x^2)^2 - 1)^2".parse().unwrap();
        assert_eq!(g.first, first);
        assert!(g.second.approx_eq(&second, 1e-14));
    }

    #[test]
    fn identity_pullback() {
        let f = pm("x^3 - y", "x*y + 2");
        let id = PlaneMap::identity();
        assert_eq!(pullback_map(&f, &id, &id).unwrap(), f);
    }

    #[test]
    fn wrong_inverse_rejected() {
        let f = pm("x", "y");
        assert!(pullback_map(&f, &pm("x", "y + x^2"), &pm("x", "y + x^2")).is_err());
    }

    #[test]
    fn newton_is_not_natural() {
        let f = pm("x^2 - y^2 - 1", "2*x*y");
        let psi = pm("x", "y + x^2");
        let psi_inv = pm("x", "y - x^2");
        let g = pullback_map(&f, &psi, &psi_inv).unwrap();
        let ng = build_newton_plane(&g).unwrap();
        let nf = build_newton_plane(&f).unwrap();
        let p = Point::new(1.0, 1.0);
        let a = ng.step(p).unwrap();
        let b = conjugated_step(&nf, &psi, &psi_inv, p).unwrap();
        assert!(a.dist(b) > 1e-3, "{a:?} vs {b:?}");
    }
}
