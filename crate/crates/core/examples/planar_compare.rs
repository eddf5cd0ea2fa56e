//! Forward basins and backward counterimages of a planar Newton map. Real
//! counterimages often leave the picture before coming back, so they are
//! searched in a much larger square than the one drawn.

use std::path::PathBuf;

use newton_dynamics::analysis::{compare_alpha_boundary, extract_boundary};
use newton_dynamics::backward::backward_tree;
use newton_dynamics::cli::write_raster;
use newton_dynamics::forward::{render_basins, ScanConfig};
use newton_dynamics::geom::{Grid, Point, Window};
use newton_dynamics::newton::build_newton_plane;
use newton_dynamics::poly::PlaneMap;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "out".into()));
    std::fs::create_dir_all(&out)?;

    let n = build_newton_plane(&PlaneMap::new("y - x^2".parse()?, "x + 2 - (y - 2)^2".parse()?)?)?;
    let window = Window::square(4.0);
    let search = Window::square(50.0);
    let roots = n.roots(&search)?;

    let basins = render_basins(&n, &roots, &window, 512, 512, &ScanConfig::default())?;
    let boundary = extract_boundary(&basins)?;
    let tree = backward_tree(&n, Point::new(3.63, -0.49), 10, 2_000_000, Some(&search), Grid::new(window, 512, 512))?;

    for nonregular_only in [false, true] {
        let cmp = compare_alpha_boundary(&tree.raster, &boundary, nonregular_only)?;
        println!(
            "nonregular_only={nonregular_only}: {} boundary px, {} tree px, Hausdorff {:.2}",
            cmp.boundary_pixel_count, cmp.alpha_pixel_count, cmp.hausdorff_pixels
        );
    }
    write_raster(&basins, &out.join("planar_basins.ppm"))?;
    write_raster(&tree.raster, &out.join("planar_tree.ppm"))?;
    Ok(())
}
