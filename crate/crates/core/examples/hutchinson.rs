//! Hutchinson iteration of the inverse branches of the Newton map of z^3 - 1,
//! with small disks around the roots removed so the attractor is the Julia set.

use std::path::PathBuf;

use newton_dynamics::backward::{hutchinson_iterate, Disk, OccupancyRaster};
use newton_dynamics::cli::write_raster;
use newton_dynamics::geom::{Grid, Window};
use newton_dynamics::newton::build_newton_complex;
use newton_dynamics::poly::UniComplexPoly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "out".into()));
    std::fs::create_dir_all(&out)?;

    let n = build_newton_complex(&UniComplexPoly::parse("z^3 - 1")?)?;
    let disks: Vec<Disk> = n.roots()?.into_iter().map(|center| Disk { center, radius: 0.3 }).collect();
    let start = OccupancyRaster::full(Grid::new(Window::square(2.0), 256, 256));

    let run = hutchinson_iterate(&n, &start, &disks, 12)?;
    for (k, (r, gap)) in run.iterates.iter().zip(&run.gaps).enumerate() {
        println!("step {:2}: {:6} pixels, gap {:.2} px", k + 1, r.count(), gap);
    }
    if let Some(last) = run.last() {
        write_raster(last, &out.join("cubic_ifs.ppm"))?;
    }
    Ok(())
}
