//! Homogenizes the planar Newton map of the real form of z^2 - 1 and looks at
//! its behavior on the line at infinity.

use newton_dynamics::geom::Window;
use newton_dynamics::newton::{build_newton_plane, homogenize_newton, jacobian_at_infinity};
use newton_dynamics::poly::UniComplexPoly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = UniComplexPoly::parse("z^2 - 1")?.real_form();
    let n = build_newton_plane(&f)?;
    let (map, indeterminate) = homogenize_newton(&n, &Window::square(3.0))?;

    println!("degree {}", map.degree());
    println!("indeterminacy points: {indeterminate:?}");
    for p in [[1.0, 2.0, 1.0], [0.5, -1.0, 2.0], [1.0, 0.0, 0.0]] {
        println!("{p:?} -> {:?}", map.eval(p));
    }
    for x in [-2.0, 0.0, 1.5] {
        // chart y = 1, coordinates (x, z)
        println!("Jacobian at [{x}:1:0] = {:?}", jacobian_at_infinity(&map, x)?);
    }
    Ok(())
}
