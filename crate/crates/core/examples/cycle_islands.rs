//! z^3 - 2z + 2 has a superattracting 2-cycle {0, 1}; its basin shows up as
//! islands that converge to no root.

use newton_dynamics::dynamics::Dynamics;
use newton_dynamics::forward::{classify_orbit, render_basins, OrbitOutcome, PixelCode, ScanConfig};
use newton_dynamics::geom::{Point, Window};
use newton_dynamics::newton::build_newton_complex;
use newton_dynamics::poly::UniComplexPoly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = UniComplexPoly::parse("z^3 - 2*z + 2")?;
    let n = build_newton_complex(&p)?;
    let roots = n.roots()?;
    let cfg = ScanConfig::default();

    println!("N(0) = {:?}, N(1) = {:?}", n.step(Point::ORIGIN)?, n.step(Point::new(1.0, 0.0))?);
    if let OrbitOutcome::Cycle { period, multiplier, .. } = classify_orbit(&n, Point::ORIGIN, &roots, &cfg) {
        println!("orbit of 0: period {period}, multiplier {multiplier:.2e}");
    }

    let raster = render_basins(&n, &roots, &Window::square(1.5), 300, 300, &cfg)?;
    println!("cycle fraction on [-1.5, 1.5]^2: {:.4}", raster.fraction(PixelCode::CYCLE));
    Ok(())
}
