//! Empirical discrepancy, diffusion and drift along exact orbits.
//!
//! Every tolerance used downstream (±0.15 on slopes, 10% drift oscillation)
//! is a reporting convention; the theorems behind the ceilings are asymptotic.

use super::orbit::{run_orbit, Orbit, OrbitTrace};
use crate::error::{Error, Result};
use crate::maps::{Rational, RotatedOdometer};
use serde::{Deserialize, Serialize};

/// Number of points of every geometric sampling grid.
pub const GRID_POINTS: usize = 24;
/// Largest binary refinement of the discrepancy test grid.
pub const MAX_GRID_BITS: u32 = 20;
/// Default binary refinement `kN ≤ 16`.
pub const DEFAULT_GRID_BITS: u32 = 16;

/// `GRID_POINTS` geometrically spaced integers in `[lo, hi]`, deduplicated.
pub fn geometric_grid(lo: usize, hi: usize) -> Vec<usize> {
    let lo = lo.clamp(1, hi.max(1));
    let ratio = (hi as f64 / lo as f64).ln();
    let mut out: Vec<usize> = (0..GRID_POINTS)
        .map(|i| {
            let t = i as f64 / (GRID_POINTS - 1) as f64;
            ((lo as f64) * (ratio * t).exp()).round() as usize
        })
        .map(|v| v.clamp(lo, hi))
        .collect();
    out.dedup();
    if out.last() != Some(&hi) {
        out.push(hi);
    }
    out
}

/// Least-squares slope of `ys` against `xs` and twice its standard error.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return (f64::NAN, f64::INFINITY);
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    if xs.len() < 3 {
        return (slope, f64::INFINITY);
    }
    let resid: f64 = xs.iter().zip(ys).map(|(x, y)| (y - my - slope * (x - mx)).powi(2)).sum();
    let se = (resid / (n - 2.0) / sxx).sqrt();
    (slope, 2.0 * se)
}

/// Fit over the last two thirds of a log-log series.
fn tail_fit(points: &[(usize, f64)]) -> (f64, f64, usize) {
    let from = points.len() / 3;
    let tail = &points[from..];
    let xs: Vec<f64> = tail.iter().map(|(r, _)| (*r as f64).ln()).collect();
    let ys: Vec<f64> = tail.iter().map(|(_, d)| d.ln()).collect();
    let (s, w) = fit_slope(&xs, &ys);
    (s, w, from)
}

/// Slope of the mean of `log y` over several runs sampled on the same grid,
/// fitted on the last two thirds; pools independent starting points.
pub fn pooled_slope(runs: &[Vec<(usize, f64)>]) -> Result<(f64, f64)> {
    let first = runs.first().ok_or_else(|| Error::InvalidArgument("no runs to pool".into()))?;
    if runs.iter().any(|r| r.len() != first.len() || r.iter().zip(first).any(|(a, b)| a.0 != b.0)) {
        return Err(Error::InvalidArgument("pooled runs must share one sampling grid".into()));
    }
    let mean: Vec<(usize, f64)> = (0..first.len())
        .map(|i| {
            let m = runs.iter().map(|r| r[i].1.max(f64::MIN_POSITIVE).ln()).sum::<f64>() / runs.len() as f64;
            (first[i].0, m.exp())
        })
        .collect();
    let (s, w, _) = tail_fit(&mean);
    Ok((s, w))
}

/// Visit counts on the grid of `m` equal cells; evaluates the discrepancy over
/// every interval with endpoints on the grid.
#[derive(Clone, Debug)]
pub struct DiscrepancyCounter {
    counts: Vec<u32>,
    total: u64,
}

impl DiscrepancyCounter {
    pub fn new(m: usize) -> Self {
        Self { counts: vec![0; m], total: 0 }
    }

    pub fn resolution(&self) -> usize {
        self.counts.len()
    }

    pub fn push_cell(&mut self, cell: usize) {
        self.counts[cell] += 1;
        self.total += 1;
    }

    /// `sup_{a<b on the grid} |#{x_j ∈ [a,b)}/R − (b − a)|`.
    pub fn discrepancy(&self) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        let m = self.counts.len() as i128;
        let r = self.total as i128;
        // E(t) = C(t)·m − R·t is the scaled deviation of [0, t/m).
        let (mut lo, mut hi, mut acc) = (0i128, 0i128, 0i128);
        for (t, &c) in self.counts.iter().enumerate() {
            acc += c as i128;
            let e = acc * m - r * (t as i128 + 1);
            lo = lo.min(e);
            hi = hi.max(e);
        }
        (hi - lo) as f64 / (r * m) as f64
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancySample {
    pub r: usize,
    pub d: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyCurve {
    /// Test intervals have endpoints on the grid of `q·2^bits` cells.
    pub resolution: usize,
    pub bits: u32,
    pub samples: Vec<DiscrepancySample>,
    /// Slope of `log D_R` against `log R` over the last two thirds of the grid.
    pub slope: f64,
    pub slope_halfwidth: f64,
    pub fit_from: usize,
}

/// Default level `k` with `kN ≤ 16`.
pub fn default_depth(f: &RotatedOdometer) -> u32 {
    (DEFAULT_GRID_BITS / f.big_n()).max(1)
}

/// `D_R` of `x_0, …, x_{R−1}` over the `q·2^{kN}`-adic intervals, `k ≤ depth`.
pub fn empirical_discrepancy(
    f: &RotatedOdometer,
    x0: &Rational,
    r_max: usize,
    depth: u32,
) -> Result<DiscrepancyCurve> {
    let bits = depth * f.big_n();
    if bits == 0 || bits > MAX_GRID_BITS {
        return Err(Error::InvalidArgument(format!(
            "discrepancy grid of 2^{bits} sub-cells outside 1..=2^{MAX_GRID_BITS}"
        )));
    }
    if r_max < 2 {
        return Err(Error::InvalidArgument("R_max must be at least 2".into()));
    }
    let m = f.q() << bits;
    let mut counter = DiscrepancyCounter::new(m);
    let mut orbit = Orbit::new(f, x0)?;
    let grid = geometric_grid(r_max.min(100), r_max);
    let mut samples = Vec::with_capacity(grid.len());
    for &r in &grid {
        while counter.total < r as u64 {
            counter.push_cell(orbit.floor_times(m as u64) as usize);
            orbit.advance()?;
        }
        samples.push(DiscrepancySample { r, d: counter.discrepancy() });
    }
    let pts: Vec<(usize, f64)> = samples.iter().map(|s| (s.r, s.d.max(f64::MIN_POSITIVE))).collect();
    let (slope, slope_halfwidth, fit_from) = tail_fit(&pts);
    Ok(DiscrepancyCurve { resolution: m, bits, samples, slope, slope_halfwidth, fit_from })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiffusionWindow {
    pub m: usize,
    pub max_abs: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiffusionEstimate {
    pub steps: usize,
    pub windows: Vec<DiffusionWindow>,
    /// Slope of `log max_{k≤m}|S_k|` against `log m` (last two thirds).
    pub slope: f64,
    pub slope_halfwidth: f64,
    /// The theoretical ceiling `γ_0`, when the caller knows it.
    pub ceiling: Option<f64>,
}

/// Minimum orbit length for a diffusion estimate.
pub const MIN_DIFFUSION_STEPS: usize = 10_000;

pub fn diffusion_from_trace(trace: &OrbitTrace) -> DiffusionEstimate {
    let grid = geometric_grid(100.min(trace.length), trace.length);
    let mut windows = Vec::with_capacity(grid.len());
    let (mut k, mut running) = (0usize, 0i64);
    for &m in &grid {
        while k < m {
            k += 1;
            running = running.max(trace.displacement[k].abs());
        }
        windows.push(DiffusionWindow { m, max_abs: running });
    }
    let pts: Vec<(usize, f64)> = windows.iter().map(|w| (w.m, w.max_abs.max(1) as f64)).collect();
    let (slope, slope_halfwidth, _) = tail_fit(&pts);
    DiffusionEstimate { steps: trace.length, windows, slope, slope_halfwidth, ceiling: None }
}

pub fn empirical_diffusion(f: &RotatedOdometer, x0: &Rational, n: usize) -> Result<DiffusionEstimate> {
    if n < MIN_DIFFUSION_STEPS {
        return Err(Error::InvalidArgument(format!(
            "diffusion estimates need at least {MIN_DIFFUSION_STEPS} steps"
        )));
    }
    Ok(diffusion_from_trace(&run_orbit(f, x0, n)?))
}

impl DiscrepancyCurve {
    pub fn series(&self) -> Vec<(usize, f64)> {
        self.samples.iter().map(|s| (s.r, s.d)).collect()
    }
}

impl DiffusionEstimate {
    pub fn series(&self) -> Vec<(usize, f64)> {
        self.windows.iter().map(|w| (w.m, w.max_abs.max(1) as f64)).collect()
    }

    pub fn with_ceiling(mut self, gamma0: Option<f64>) -> Self {
        self.ceiling = gamma0;
        self
    }
}

/// Drift `S_n/n` sampled on a geometric grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DriftEstimate {
    pub samples: Vec<(usize, f64)>,
    pub limit: f64,
    /// `(max − min)/|limit|` of `S_n/n` over `n ∈ [N/10, N]`.
    pub last_decade_oscillation: f64,
    /// Last time `S_n ≤ 0`.
    pub last_nonpositive: usize,
}

pub fn drift_from_trace(trace: &OrbitTrace) -> DriftEstimate {
    let n = trace.length;
    let samples: Vec<(usize, f64)> = geometric_grid(1, n)
        .into_iter()
        .map(|m| (m, trace.displacement[m] as f64 / m as f64))
        .collect();
    let limit = trace.final_displacement() as f64 / n as f64;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for m in (n / 10).max(1)..=n {
        let v = trace.displacement[m] as f64 / m as f64;
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let last_nonpositive = (1..=n).rev().find(|&m| trace.displacement[m] <= 0).unwrap_or(0);
    DriftEstimate {
        samples,
        limit,
        last_decade_oscillation: (hi - lo) / limit.abs(),
        last_nonpositive,
    }
}
