//! CSV and JSON export of simulation artifacts.

use super::scan::EssentialScan;
use super::stats::{DiffusionEstimate, DiscrepancyCurve, DriftEstimate};
use super::OrbitTrace;
use crate::error::{Error, Result};
use serde::Serialize;
use std::io::Write;

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

fn write_rows<W: Write, R: Serialize>(w: W, header: &[&str], rows: impl IntoIterator<Item = R>) -> Result<()> {
    let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    out.write_record(header).map_err(csv_err)?;
    for r in rows {
        out.serialize(r).map_err(csv_err)?;
    }
    out.flush()?;
    Ok(())
}

/// `(n, S_n)` for every `stride`-th step and the final one.
pub fn write_trace_csv<W: Write>(trace: &OrbitTrace, w: W, stride: usize) -> Result<()> {
    let stride = stride.max(1);
    let rows = (0..=trace.length)
        .filter(|&k| k % stride == 0 || k == trace.length)
        .map(|k| (k, trace.displacement[k]));
    write_rows(w, &["n", "S_n"], rows)
}

pub fn write_discrepancy_csv<W: Write>(curve: &DiscrepancyCurve, w: W) -> Result<()> {
    write_rows(w, &["R", "D_R"], curve.samples.iter().map(|s| (s.r, s.d)))
}

pub fn write_diffusion_csv<W: Write>(est: &DiffusionEstimate, w: W) -> Result<()> {
    write_rows(w, &["m", "max_abs_S"], est.windows.iter().map(|x| (x.m, x.max_abs)))
}

pub fn write_drift_csv<W: Write>(drift: &DriftEstimate, w: W) -> Result<()> {
    write_rows(w, &["n", "S_n_over_n"], drift.samples.iter().copied())
}

pub fn write_histogram_csv<W: Write>(scan: &EssentialScan, w: W) -> Result<()> {
    write_rows(w, &["value", "count"], scan.histogram.iter().copied())
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::rational::rat;
    use crate::maps::RotatedOdometer;
    use crate::sim::run_orbit;

    #[test]
    fn trace_csv_round_trip() {
        let f = RotatedOdometer::parse(3, "(012)").unwrap();
        let t = run_orbit(&f, &rat(1, 7), 10).unwrap();
        let mut buf = Vec::new();
        write_trace_csv(&t, &mut buf, 3).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "n,S_n");
        assert_eq!(lines.len(), 1 + 5);
        assert_eq!(lines.last().unwrap(), &format!("10,{}", t.final_displacement()));
        let json = to_json(&t).unwrap();
        let back: crate::sim::OrbitTrace = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }
}
