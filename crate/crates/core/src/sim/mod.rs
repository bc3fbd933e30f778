//! Exact orbit simulation of `F_π` and `T_π`: displacement traces, empirical
//! discrepancy and diffusion, symbolic cross-validation of itineraries and a
//! heuristic essential-value scan.

pub mod coding;
pub mod export;
pub mod orbit;
pub mod scan;
pub mod stats;

pub use coding::{check_decomposition, cross_validate_coding, cross_validate_coding_at, CodingCheck};
pub use orbit::{itinerary, random_starts, run_orbit, sample_start, Orbit, OrbitTrace, WindowMax};
pub use scan::{essential_value_scan, EssentialScan, ScanCell, SCAN_LABEL};
pub use stats::{
    default_depth, diffusion_from_trace, drift_from_trace, empirical_diffusion, empirical_discrepancy,
    fit_slope, geometric_grid, pooled_slope, DiffusionEstimate, DiscrepancyCounter, DiscrepancyCurve, DriftEstimate,
};
