//! Enumerates the real cycles of a Newton map on the line and classifies them.

use newton_dynamics::analysis::{enumerate_cycles_1d, RealNewton1d};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // z^3 - 2z + 2, ascending coefficients
    let n = RealNewton1d::new(&[2.0, -2.0, 0.0, 1.0])?;
    for k in 1..=4 {
        for c in enumerate_cycles_1d(&n, k, -10.0, 10.0, 1e-10)? {
            println!("period {k}: {:?} multiplier {:.3e} {:?}", c.points, c.multiplier, c.stability);
        }
    }
    Ok(())
}
