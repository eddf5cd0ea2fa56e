//! Basins of attraction of the Newton map of z^3 - 1 on [-2, 2]^2.
//!
//! cargo run --release --example basins -- [out_dir]

use std::path::PathBuf;

use newton_dynamics::cli::write_raster;
use newton_dynamics::forward::{render_basins, ScanConfig};
use newton_dynamics::geom::Window;
use newton_dynamics::newton::build_newton_complex;
use newton_dynamics::poly::UniComplexPoly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "out".into()));
    std::fs::create_dir_all(&out)?;

    let p = UniComplexPoly::parse("z^3 - 1")?;
    let n = build_newton_complex(&p)?;
    let roots = n.roots()?;
    let raster = render_basins(&n, &roots, &Window::square(2.0), 300, 300, &ScanConfig::default())?;

    for (code, label) in &raster.legend {
        println!("{label}: {:.4}", raster.fraction(*code));
    }
    let path = out.join("cubic_basins.ppm");
    write_raster(&raster, &path)?;
    println!("wrote {}", path.display());
    Ok(())
}
