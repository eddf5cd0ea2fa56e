//! Scans z^3 + (A - 1)z - A over complex A and marks parameters where the
//! free critical point 0 is captured by an attracting cycle.

use std::path::PathBuf;

use num_complex::Complex64;

use newton_dynamics::cli::write_raster;
use newton_dynamics::forward::{parameter_scan, PixelCode, ScanConfig};
use newton_dynamics::geom::{Point, Window};
use newton_dynamics::poly::UniComplexPoly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "out".into()));
    std::fs::create_dir_all(&out)?;

    let one = Complex64::new(1.0, 0.0);
    let family = |a: Complex64| UniComplexPoly::new(vec![-a, a - one, Complex64::new(0.0, 0.0), one]);
    let window = Window::new(-2.3, 1.7, -2.0, 2.0);
    let raster = parameter_scan(family, Point::ORIGIN, &window, 200, 200, &ScanConfig::default())?;

    println!("cycle pixels: {}", raster.count(PixelCode::CYCLE));
    for c in raster.cycles.iter().take(5) {
        println!("  pixel {} period {} |multiplier| {:.3}", c.pixel, c.period, c.multiplier);
    }
    let path = out.join("family_scan.ppm");
    write_raster(&raster, &path)?;
    println!("wrote {}", path.display());
    Ok(())
}
