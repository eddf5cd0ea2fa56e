//! Real solutions of a polynomial system by interval subdivision.

use newton_dynamics::geom::Window;
use newton_dynamics::poly::{system_real_roots, PlaneMap, DEFAULT_MAX_DEPTH, DEFAULT_SYSTEM_TOL};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = PlaneMap::new("y - x^2".parse()?, "x + 2 - (y - 2)^2".parse()?)?;
    let found = system_real_roots(&f, &Window::square(5.0), DEFAULT_SYSTEM_TOL, DEFAULT_MAX_DEPTH)?;
    for r in &found.roots {
        println!("({:.12}, {:.12})  residual {:?}", r.x, r.y, f.eval(*r));
    }
    println!("{} unresolved boxes", found.unresolved.len());
    Ok(())
}
