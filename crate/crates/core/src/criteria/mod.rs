//! Verdicts of the recurrence, coboundary, gcd, Pisot, diffusion and
//! discrepancy criteria, assembled into a [`ClassificationReport`].

mod classify;
mod render;
mod report;

pub use classify::{
    classify, classify_odometer, coboundary_check, discrepancy_exponent, gcd_criterion,
    minimal_recurrence, pisot_criterion, recurrence_leb, ClassifyConfig, MinimalRecurrence,
};
pub use render::{render_csv_header, render_csv_row, render_json, render_markdown};
pub use report::{
    ClassificationReport, EssentialKind, EssentialValueSet, Gamma0, HypothesisCheck, Level1Data,
    MeasureCount, PisotVerdict, Recurrence, REPORT_SCHEMA_VERSION,
};
