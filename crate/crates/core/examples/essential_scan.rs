//! Histogram of the displacement `S_n` at returns to a level-k section:
//! heuristic evidence for the essential-value verdict of the report.
//!
//! Run with `cargo run --release --example essential_scan -- 3 "(012)" 1`.

use rotodo::criteria::{classify, ClassifyConfig};
use rotodo::sim::{essential_value_scan, random_starts, ScanCell};
use rotodo::RotatedOdometer;

fn main() -> rotodo::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let q: usize = args.first().map_or(Ok(3), |s| s.parse()).map_err(|e| rotodo::Error::Parse(format!("q: {e}")))?;
    let perm = args.get(1).map_or("(012)", String::as_str);
    let level: u32 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(1);
    let report = classify(q, perm, &ClassifyConfig::default())?;
    let f = RotatedOdometer::parse(q, perm)?;
    let x0 = &random_starts(q, 5, 1)[0];
    let scan = essential_value_scan(&f, x0, 1_000_000, ScanCell::section(level))?;
    println!("{perm}: symbolic Ē(Ψ) = {}, d = {}", report.essential_values, report.gcd_d);
    println!("{} returns to L_{level} in {} steps ({})", scan.returns, scan.steps, scan.label);
    println!("gcd of observed values: {}", scan.gcd);
    let peak = scan.histogram.iter().map(|&(_, c)| c).max().unwrap_or(1);
    for &(value, count) in scan.histogram.iter().filter(|&&(v, _)| v.abs() <= 40) {
        let bar = "#".repeat((60 * count / peak) as usize);
        println!("{value:>5} {count:>8} {bar}");
    }
    Ok(())
}
