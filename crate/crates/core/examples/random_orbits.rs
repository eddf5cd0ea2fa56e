//! Random backward orbits of the Newton map of z^3 - 1. Each orbit draws its
//! branches from its own ChaCha8 stream, so runs are reproducible.

use newton_dynamics::backward::{hausdorff_pixel_distance, random_backward_orbits, OccupancyRaster};
use newton_dynamics::geom::{Grid, Point, Window};
use newton_dynamics::newton::build_newton_complex;
use newton_dynamics::poly::UniComplexPoly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = build_newton_complex(&UniComplexPoly::parse("z^3 - 1")?)?;
    let grid = Grid::new(Window::square(2.0), 256, 256);

    let orbits = random_backward_orbits(&n, Point::new(5.0, 1.0), 2000, 100, 7, 4, None)?;
    let rasters: Vec<OccupancyRaster> =
        orbits.iter().map(|o| OccupancyRaster::from_points(grid, o.recorded().iter())).collect();
    for (o, r) in orbits.iter().zip(&rasters) {
        println!("stream {}: {} points kept, {} pixels", o.stream, o.recorded().len(), r.count());
    }
    println!(
        "Hausdorff distance between streams 0 and 1: {:.2} px",
        hausdorff_pixel_distance(&rasters[0], &rasters[1])?
    );
    Ok(())
}
