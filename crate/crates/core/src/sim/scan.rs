//! Heuristic scan of displacements at returns to a section.
//!
//! The histogram of `S_n` between visits to a cell illustrates the symbolic
//! essential-value verdict; it is evidence only and never upgrades a verdict.

use super::orbit::Orbit;
use crate::error::{Error, Result};
use crate::maps::{Rational, RotatedOdometer};
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const SCAN_LABEL: &str = "heuristic evidence";

/// `L_k`, or one of its `q` sub-cells `[c, c+1)/(q·2^{kN})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanCell {
    pub level: u32,
    pub cell: Option<usize>,
}

impl ScanCell {
    pub fn section(level: u32) -> Self {
        Self { level, cell: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EssentialScan {
    pub cell: ScanCell,
    pub steps: usize,
    pub first_visit: Option<usize>,
    pub returns: usize,
    /// `(value, count)` of `S_n − S_{t_0}` at returns after the first visit `t_0`.
    pub histogram: Vec<(i64, u64)>,
    /// Displacement at each return relative to the previous one.
    pub step_gcd: u64,
    /// gcd of all observed values.
    pub gcd: u64,
    pub label: String,
    /// Symbolic verdict supplied by the caller, for side-by-side display.
    pub verdict: Option<String>,
}

impl EssentialScan {
    pub fn support(&self) -> Vec<i64> {
        self.histogram.iter().map(|(v, _)| *v).collect()
    }

    pub fn all_divisible_by(&self, d: u64) -> bool {
        d != 0 && self.histogram.iter().all(|(v, _)| v.unsigned_abs() % d == 0)
    }
}

pub fn essential_value_scan(
    f: &RotatedOdometer,
    x0: &Rational,
    n: usize,
    cell: ScanCell,
) -> Result<EssentialScan> {
    let bits = cell.level * f.big_n();
    if bits > 60 {
        return Err(Error::InvalidArgument(format!("scan level {} too deep", cell.level)));
    }
    if cell.cell.is_some_and(|c| c >= f.q()) {
        return Err(Error::InvalidArgument("scan sub-cell index must be below q".into()));
    }
    let inside = |o: &Orbit| match cell.cell {
        None => o.in_section(cell.level),
        Some(c) => o.floor_times((f.q() as u64) << bits) == c as u64,
    };
    let mut orbit = Orbit::new(f, x0)?;
    let mut hist: BTreeMap<i64, u64> = BTreeMap::new();
    let (mut s, mut origin, mut last) = (0i64, None, 0i64);
    let (mut gcd, mut step_gcd, mut returns) = (0u64, 0u64, 0usize);
    for k in 0..=n {
        if inside(&orbit) {
            match origin {
                None => origin = Some((k, s)),
                Some((_, s0)) => {
                    let v = s - s0;
                    *hist.entry(v).or_default() += 1;
                    gcd = gcd.gcd(&v.unsigned_abs());
                    step_gcd = step_gcd.gcd(&(s - last).unsigned_abs());
                    returns += 1;
                }
            }
            last = s;
        }
        if k < n {
            s += orbit.advance()?;
        }
    }
    Ok(EssentialScan {
        cell,
        steps: n,
        first_visit: origin.map(|(k, _)| k),
        returns,
        histogram: hist.into_iter().collect(),
        step_gcd,
        gcd,
        label: SCAN_LABEL.into(),
        verdict: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::random_starts;

    #[test]
    fn three_cycle_returns_are_even() {
        let f = RotatedOdometer::parse(3, "(012)").unwrap();
        let x0 = random_starts(3, 5, 1).remove(0);
        let scan = essential_value_scan(&f, &x0, 100_000, ScanCell::section(1)).unwrap();
        assert!(scan.returns > 1000);
        assert!(scan.all_divisible_by(2));
        assert_eq!(scan.step_gcd % 2, 0);
    }

    #[test]
    fn coboundary_histogram_is_finite_and_hits_zero() {
        let f = RotatedOdometer::parse(5, "(01234)").unwrap();
        let x0 = random_starts(5, 5, 1).remove(0);
        let scan = essential_value_scan(&f, &x0, 100_000, ScanCell::section(1)).unwrap();
        assert!(scan.histogram.iter().any(|(v, _)| *v == 0));
        assert!(scan.histogram.len() <= 10);
    }

    #[test]
    fn sub_cell_scan() {
        let f = RotatedOdometer::parse(3, "(012)").unwrap();
        let x0 = random_starts(3, 6, 1).remove(0);
        let scan = essential_value_scan(&f, &x0, 50_000, ScanCell { level: 1, cell: Some(0) }).unwrap();
        assert!(scan.returns > 0);
        assert!(essential_value_scan(&f, &x0, 10, ScanCell { level: 1, cell: Some(3) }).is_err());
    }
}
