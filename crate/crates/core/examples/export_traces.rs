//! Write plot-ready CSV data for one orbit: the displacement trace, the
//! discrepancy curve and the diffusion windows.
//!
//! Run with `cargo run --release --example export_traces -- out-dir`.

use rotodo::sim::export::{write_diffusion_csv, write_discrepancy_csv, write_trace_csv};
use rotodo::sim::{default_depth, diffusion_from_trace, empirical_discrepancy, random_starts, run_orbit};
use rotodo::RotatedOdometer;
use std::fs::File;
use std::path::PathBuf;

fn main() -> rotodo::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "traces".into()));
    std::fs::create_dir_all(&dir)?;
    let f = RotatedOdometer::parse(3, "(012)")?;
    let x0 = &random_starts(3, 42, 1)[0];
    let trace = run_orbit(&f, x0, 1_000_000)?;
    write_trace_csv(&trace, File::create(dir.join("trace.csv"))?, 100)?;
    write_diffusion_csv(&diffusion_from_trace(&trace), File::create(dir.join("diffusion.csv"))?)?;
    let curve = empirical_discrepancy(&f, x0, 1_000_000, default_depth(&f))?;
    write_discrepancy_csv(&curve, File::create(dir.join("discrepancy.csv"))?)?;
    println!("wrote trace.csv, diffusion.csv and discrepancy.csv to {}", dir.display());
    Ok(())
}
