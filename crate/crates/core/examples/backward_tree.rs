//! Iterated counterimages of 5 + i under the Newton map of z^3 - 1, drawn
//! next to the basin boundary they accumulate on.

use std::path::PathBuf;

use newton_dynamics::analysis::{compare_alpha_boundary, extract_boundary};
use newton_dynamics::backward::{backward_tree, DEFAULT_TREE_CAP};
use newton_dynamics::cli::write_raster;
use newton_dynamics::forward::{render_basins, ScanConfig};
use newton_dynamics::geom::{Grid, Point, Window};
use newton_dynamics::newton::build_newton_complex;
use newton_dynamics::poly::UniComplexPoly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "out".into()));
    std::fs::create_dir_all(&out)?;

    let n = build_newton_complex(&UniComplexPoly::parse("z^3 - 1")?)?;
    let window = Window::square(2.0);
    let grid = Grid::new(window, 256, 256);

    let tree = backward_tree(&n, Point::new(5.0, 1.0), 10, DEFAULT_TREE_CAP, None, grid)?;
    println!(
        "depth {} reached, {} nodes, {} points in the last level, {} pixels set",
        tree.completed_depth,
        tree.nodes,
        tree.deepest_level_size,
        tree.raster.count()
    );

    let basins = render_basins(&n, &n.roots()?, &window, 256, 256, &ScanConfig::default())?;
    let boundary = extract_boundary(&basins)?;
    let cmp = compare_alpha_boundary(&tree.raster, &boundary, false)?;
    println!("Hausdorff distance to the basin boundary: {:.2} px", cmp.hausdorff_pixels);

    write_raster(&tree.raster, &out.join("cubic_tree.ppm"))?;
    write_raster(&boundary.boundary, &out.join("cubic_boundary.ppm"))?;
    Ok(())
}
