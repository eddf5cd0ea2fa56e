//! Newton's method does not commute with changes of coordinates: pulling f
//! back by the shear psi(x, y) = (x, y + x^2) gives a different Newton map,
//! one with an attracting direction at infinity.

use std::path::PathBuf;

use newton_dynamics::cli::write_raster;
use newton_dynamics::dynamics::Dynamics;
use newton_dynamics::forward::{render_basins, PixelCode, ScanConfig};
use newton_dynamics::geom::{Point, Window};
use newton_dynamics::newton::{build_newton_plane, conjugated_step, pullback_map};
use newton_dynamics::poly::{PlaneMap, UniComplexPoly};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "out".into()));
    std::fs::create_dir_all(&out)?;

    let f = UniComplexPoly::parse("z^2 - 1")?.real_form();
    let psi = PlaneMap::new("x".parse()?, "y + x^2".parse()?)?;
    let psi_inv = PlaneMap::new("x".parse()?, "y - x^2".parse()?)?;

    let nf = build_newton_plane(&f)?;
    let g = build_newton_plane(&pullback_map(&f, &psi, &psi_inv)?)?;

    let p = Point::new(1.0, 1.0);
    println!("N of the pullback at (1,1): {:?}", g.step(p)?);
    println!("pullback of N at (1,1):     {:?}", conjugated_step(&nf, &psi, &psi_inv, p)?);

    let window = Window::square(2.0);
    let cfg = ScanConfig::default();
    let roots = g.roots(&Window::square(10.0))?;
    let pulled = render_basins(&g, &roots, &window, 256, 256, &cfg)?;
    let plain = render_basins(&nf, &nf.roots(&Window::square(10.0))?, &window, 256, 256, &cfg)?;
    println!("escaped fraction, pullback: {:.4}", pulled.fraction(PixelCode::ESCAPED));
    println!("escaped fraction, plain:    {:.4}", plain.fraction(PixelCode::ESCAPED));

    write_raster(&pulled, &out.join("pullback_basins.ppm"))?;
    Ok(())
}
