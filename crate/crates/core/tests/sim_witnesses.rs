//! Statistical witnesses from long exact orbits. These are evidence, not
//! proofs; tolerances are conventions of this crate.

use rotodo::criteria::{classify_odometer, ClassifyConfig};
use rotodo::maps::rational::rat;
use rotodo::maps::{Rational, RotatedOdometer};
use rotodo::sim::{
    default_depth, drift_from_trace, empirical_discrepancy, essential_value_scan, pooled_slope, random_starts,
    run_orbit, ScanCell,
};

/// Same seed as the acceptance suite.
const SEED: u64 = 20_240_601;

#[test]
fn covering_orbits_keep_returning_to_zero() {
    let f = RotatedOdometer::parse(3, "(012)").unwrap();
    let growing = random_starts(3, SEED, 10)
        .iter()
        .filter(|x0| {
            let t = run_orbit(&f, x0, 1_000_000).unwrap();
            // Zeros keep occurring after the first 1% of the run.
            t.zeros_up_to(1_000_000) > t.zeros_up_to(10_000)
        })
        .count();
    assert!(growing >= 9, "{growing}/10 starts with growing zero counts");
}

#[test]
fn return_displacements_are_even_for_the_three_cycle() {
    let f = RotatedOdometer::parse(3, "(012)").unwrap();
    let x0 = &random_starts(3, SEED, 1)[0];
    let scan = essential_value_scan(&f, x0, 1_000_000, ScanCell::section(1)).unwrap();
    assert!(scan.returns > 1000);
    assert!(scan.all_divisible_by(2), "gcd {}", scan.gcd);
}

#[test]
fn return_displacements_are_even_for_the_eleven_cycle() {
    let f = RotatedOdometer::parse(11, "(0,2,7,6,5,4,3,8,10,1,9)").unwrap();
    let x0 = &random_starts(11, SEED, 1)[0];
    let scan = essential_value_scan(&f, x0, 1_000_000, ScanCell::section(1)).unwrap();
    assert!(scan.returns > 100);
    assert!(scan.all_divisible_by(2), "gcd {}", scan.gcd);
}

#[test]
fn coboundary_orbit_is_bounded() {
    let f = RotatedOdometer::parse(5, "(01234)").unwrap();
    let x0 = &random_starts(5, SEED, 1)[0];
    let t = run_orbit(&f, x0, 1_000_000).unwrap();
    assert_eq!(t.running_max(1_000), t.max_abs());
    let scan = essential_value_scan(&f, x0, 200_000, ScanCell::section(1)).unwrap();
    assert!(scan.support().contains(&0));
    assert!(scan.support().len() <= 2 * t.max_abs() as usize + 1);
}

/// Brute force over every interval with endpoints on the `m`-grid.
fn direct_discrepancy(f: &RotatedOdometer, x0: &Rational, r: usize, m: usize) -> f64 {
    let mut counts = vec![0u64; m];
    let mut x = x0.clone();
    for _ in 0..r {
        counts[rotodo::maps::rational::cell_index(&x, m)] += 1;
        x = f.f_pi(&x).unwrap();
    }
    let mut worst = 0f64;
    for a in 0..m {
        let mut c = 0u64;
        for (len, &n) in counts[a..].iter().enumerate() {
            c += n;
            let dev = (c as f64 / r as f64 - (len + 1) as f64 / m as f64).abs();
            worst = worst.max(dev);
        }
    }
    worst
}

#[test]
fn discrepancy_curve_matches_direct_count() {
    let f = RotatedOdometer::parse(5, "(01234)").unwrap();
    let x0 = &random_starts(5, SEED, 1)[0];
    let curve = empirical_discrepancy(&f, x0, 5_000, 1).unwrap();
    assert_eq!(curve.resolution, 40);
    for s in curve.samples.iter().step_by(4) {
        let d = direct_discrepancy(&f, x0, s.r, curve.resolution);
        assert!((s.d - d).abs() < 1e-12, "R = {}: {} vs {d}", s.r, s.d);
    }
}

#[test]
fn coboundary_discrepancy_follows_the_spectral_exponent() {
    // Discrepancy of the base map depends on the matrix spectrum only, so the
    // bounded cocycle does not speed it up beyond R^{γ0-1} with γ0 = 1/3.
    let f = RotatedOdometer::parse(5, "(01234)").unwrap();
    let expected = classify_odometer(&f, &ClassifyConfig::default()).unwrap().discrepancy_exponent.unwrap();
    assert!((expected + 2.0 / 3.0).abs() < 1e-12);
    let series: Vec<_> = random_starts(5, SEED, 20)
        .iter()
        .map(|x0| empirical_discrepancy(&f, x0, 1_000_000, default_depth(&f)).unwrap().series())
        .collect();
    let (slope, _) = pooled_slope(&series).unwrap();
    assert!((slope - expected).abs() <= 0.15, "pooled slope {slope:.3} vs {expected:.3}");
}

#[test]
fn transient_seven_cycle_drifts_at_a_stable_rate() {
    let f = RotatedOdometer::parse(7, "(0,6,5,4,3,2,1)").unwrap();
    let t = run_orbit(&f, &rat(0, 1), 1_000_000).unwrap();
    let drift = drift_from_trace(&t);
    assert!(drift.last_nonpositive < 1_000_000 / 10);
    assert!(drift.last_decade_oscillation < 0.10);
    let theory = (7f64.sqrt() - 1.0) / (7f64.sqrt() + 7.0);
    assert!((drift.limit - theory).abs() < 0.01, "{} vs {theory}", drift.limit);
}
