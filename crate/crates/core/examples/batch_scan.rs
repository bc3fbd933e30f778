//! Classify every permutation of a small alphabet and tally the verdicts.
//!
//! Run with `cargo run --release --example batch_scan -- 5`.

use rayon::prelude::*;
use rotodo::cli::all_permutations;
use rotodo::criteria::{classify_odometer, ClassifyConfig};
use rotodo::{Permutation, RotatedOdometer};
use std::collections::BTreeMap;

fn main() -> rotodo::Result<()> {
    let q: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let config = ClassifyConfig::default();
    let reports = all_permutations(q)
        .into_par_iter()
        .map(|images| classify_odometer(&RotatedOdometer::new(Permutation::new(images)?), &config))
        .collect::<rotodo::Result<Vec<_>>>()?;
    let mut tally: BTreeMap<String, usize> = BTreeMap::new();
    for r in &reports {
        let key = format!(
            "covering={:<5} coboundary={:<5} d={} Ē={}",
            r.covering, r.coboundary, r.gcd_d, r.essential_values
        );
        *tally.entry(key).or_default() += 1;
    }
    println!("{} permutations of {q} symbols", reports.len());
    for (k, n) in tally {
        println!("{n:>6}  {k}");
    }
    Ok(())
}
