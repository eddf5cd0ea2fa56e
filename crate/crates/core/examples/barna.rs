//! Real Newton dynamics of (x^2 - 1)(x^2 - 4): cycle counts per period and a
//! Monte Carlo estimate of the non-convergent set.

use newton_dynamics::analysis::{barna_check, BarnaConfig};
use newton_dynamics::poly::UniComplexPoly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = UniComplexPoly::parse("(z^2 - 1)*(z^2 - 4)")?;
    let report = barna_check(&p, &BarnaConfig::default())?;

    println!("all roots real: {}", report.all_roots_real);
    for s in &report.cycles_by_period {
        println!(
            "period {}: {} periodic points ({} of minimal period), bound {} ok={}",
            s.period, s.periodic_points, s.minimal_period_points, s.bound, s.bound_ok
        );
    }
    println!("attracting cycle of period >= 2: {}", report.attracting_higher_cycle);
    println!(
        "non-convergent fraction over {} samples: {:.2e}",
        report.sample_count, report.nonconvergent_fraction
    );
    Ok(())
}
