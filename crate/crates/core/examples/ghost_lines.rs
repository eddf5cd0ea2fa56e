//! Ghost lines: real lines through conjugate pairs of complex zeros of a
//! planar map, and how the Newton map behaves near them.

use newton_dynamics::analysis::{probe_ghost_attractors, ProbeConfig};
use newton_dynamics::geom::Window;
use newton_dynamics::newton::build_newton_plane;
use newton_dynamics::poly::PlaneMap;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let systems = [
        ("y - x^2", "x + 1 - (y - 2)^2"),
        ("x^2*(x - 1) + y", "x + 0.5 - y^2"),
    ];
    let cfg = ProbeConfig::default();
    for (a, b) in systems {
        let n = build_newton_plane(&PlaneMap::new(a.parse()?, b.parse()?)?)?;
        println!("f = ({a}, {b})");
        for probe in probe_ghost_attractors(&n, &Window::square(10.0), &cfg) {
            println!(
                "  line through {:?} along {:?}: residual {:.2e}, staying fraction {:.3}, exponent {:?}",
                probe.line.base,
                probe.line.direction,
                probe.invariance_residual,
                probe.staying_fraction,
                probe.sensitivity_exponent
            );
        }
    }
    Ok(())
}
