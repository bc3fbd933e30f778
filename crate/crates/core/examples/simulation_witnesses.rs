//! Simulation witnesses: diffusion and discrepancy slopes for the 3-cycle,
//! drift of the transient 7-cycle and bounded orbits of the coboundary 5-cycle.
//!
//! Run with `cargo run --release --example simulation_witnesses`.

use rotodo::maps::rational::rat;
use rotodo::sim::{
    default_depth, diffusion_from_trace, drift_from_trace, empirical_discrepancy, random_starts,
    run_orbit,
};
use rotodo::RotatedOdometer;

fn main() -> rotodo::Result<()> {
    let steps = 1_000_000;
    let f = RotatedOdometer::parse(3, "(012)")?;
    println!("(012), q = 3: ceiling γ0 = 1/2, discrepancy exponent −1/2");
    for x0 in random_starts(3, 2024, 5) {
        let trace = run_orbit(&f, &x0, steps)?;
        let diff = diffusion_from_trace(&trace);
        let disc = empirical_discrepancy(&f, &x0, steps, default_depth(&f))?;
        println!(
            "  diffusion slope {:+.3} ± {:.3}   discrepancy slope {:+.3} ± {:.3}   max|S| {}",
            diff.slope,
            diff.slope_halfwidth,
            disc.slope,
            disc.slope_halfwidth,
            trace.max_abs()
        );
    }

    let f = RotatedOdometer::parse(7, "(0,6,5,4,3,2,1)")?;
    let trace = run_orbit(&f, &rat(0, 1), steps)?;
    let drift = drift_from_trace(&trace);
    println!(
        "(0,6,5,4,3,2,1), q = 7, x0 = 0: S_n/n → {:.5} (theory (λ−2)/(λ+6) = {:.5}), last-decade oscillation {:.2}%, S_n > 0 after n = {}",
        drift.limit,
        (7f64.sqrt() - 1.0) / (7f64.sqrt() + 7.0),
        100.0 * drift.last_decade_oscillation,
        drift.last_nonpositive
    );

    let f = RotatedOdometer::parse(5, "(01234)")?;
    for x0 in random_starts(5, 2024, 3) {
        let trace = run_orbit(&f, &x0, 100_000)?;
        let tail_max = trace.displacement[10_000..].iter().map(|s| s.abs()).max().unwrap_or(0);
        println!("(01234), q = 5: max|S| = {} (over the final 9·10^4 steps: {})", trace.max_abs(), tail_max);
    }
    Ok(())
}
