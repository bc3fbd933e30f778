use crate::spectral::{BlockSummary, EigenSummary, IntPoly, WeightPattern};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Version of the JSON layout of [`ClassificationReport`].
pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Recurrence {
    Recurrent,
    Transient,
    NotApplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PisotVerdict {
    Applies,
    Fails,
    NotChecked,
}

/// Number of ergodic invariant measures of `F_π`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MeasureCount {
    Finite { count: usize },
    /// Infinitely many (periodic intervals); the aperiodic part has `aperiodic_count`.
    Infinite { aperiodic_count: usize },
}

impl fmt::Display for MeasureCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureCount::Finite { count } => write!(f, "{count}"),
            MeasureCount::Infinite { .. } => f.write_str("∞"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EssentialKind {
    /// The closed set of essential values is known exactly.
    Exact,
    /// Only an upper bound `⊆ dℤ ∪ {∞}` is known.
    UpperBound,
    /// The criteria are inconclusive; the listed members are certain.
    Unknown,
}

/// Symbolic description of the extended essential values `Ē(Ψ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EssentialValueSet {
    pub kind: EssentialKind,
    pub modulus: Option<u64>,
    pub contains_zero: bool,
    pub contains_infinity: bool,
    pub zero_nontrivial: bool,
}

impl EssentialValueSet {
    pub fn exact(zero: bool, infinity: bool) -> Self {
        Self {
            kind: EssentialKind::Exact,
            modulus: None,
            contains_zero: zero,
            contains_infinity: infinity,
            zero_nontrivial: false,
        }
    }

    pub fn upper_bound(d: u64) -> Self {
        Self {
            kind: EssentialKind::UpperBound,
            modulus: Some(d),
            contains_zero: true,
            contains_infinity: true,
            zero_nontrivial: false,
        }
    }

    pub fn unknown(zero: bool, infinity: bool) -> Self {
        Self { kind: EssentialKind::Unknown, ..Self::exact(zero, infinity) }
    }

    fn members(&self) -> String {
        let mut m = Vec::new();
        if self.contains_zero {
            m.push("0");
        }
        if self.contains_infinity {
            m.push("∞");
        }
        format!("{{{}}}", m.join(","))
    }
}

impl fmt::Display for EssentialValueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            EssentialKind::Exact => f.write_str(&self.members()),
            EssentialKind::UpperBound => {
                write!(f, "⊆ {}ℤ∪{{∞}}", self.modulus.unwrap_or(0))
            }
            EssentialKind::Unknown if !self.contains_zero && !self.contains_infinity => f.write_str("?"),
            EssentialKind::Unknown => write!(f, "{}∪?", self.members()),
        }
    }
}

/// `γ_0` with the rule that produced it; `value` is `None` when withheld.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gamma0 {
    pub value: Option<f64>,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub criterion: String,
    pub hypothesis: String,
    pub holds: Option<bool>,
    pub detail: String,
}

/// Data of the level-1 substitution `χ_1` (doubled alphabet when q is odd).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Level1Data {
    pub alphabet: Vec<String>,
    pub words: Vec<String>,
    pub matrix: Vec<Vec<i64>>,
    pub weights: Vec<i64>,
    pub char_poly: IntPoly,
    pub char_poly_factored: String,
    pub factors: Vec<(IntPoly, usize)>,
}

/// Machine-readable classification of one rotated odometer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub schema_version: u32,
    pub q: usize,
    pub pi: String,
    pub pi_one_line: Vec<usize>,
    pub big_n: u32,
    pub stationary: bool,
    pub k0: usize,
    pub p0: usize,
    pub renormalization: Vec<String>,
    pub analysis_on_return_system: bool,
    pub covering: bool,
    pub level1: Level1Data,
    pub analysis_alphabet: Vec<String>,
    pub analysis_matrix: Vec<Vec<i64>>,
    pub letter_weights: Vec<i64>,
    pub weights: Vec<i64>,
    pub char_poly: IntPoly,
    pub char_poly_factored: String,
    pub eigenvalues: Vec<EigenSummary>,
    pub leading_eigenvalue: Option<String>,
    pub frobenius_blocks: Vec<BlockSummary>,
    /// Diagonal block sizes, consecutive zero letters merged into one block.
    pub frobenius_block_sizes: Vec<usize>,
    pub frobenius_count: usize,
    pub frobenius_direct_count: usize,
    pub ergodic_measures: MeasureCount,
    pub gcd_d: u64,
    pub coboundary: bool,
    pub leb_recurrent: Option<bool>,
    pub minimal_recurrence: Recurrence,
    pub minimal_drift: Option<f64>,
    pub pisot_verdict: PisotVerdict,
    pub pisot_eigenvalue: Option<String>,
    pub not_ergodic: bool,
    pub essential_values: EssentialValueSet,
    pub gamma0: Gamma0,
    pub discrepancy_exponent: Option<f64>,
    pub zero_weight_patterns: Vec<WeightPattern>,
    pub hypothesis_log: Vec<HypothesisCheck>,
    pub errors: Vec<String>,
    pub precision_bits: u32,
}

impl ClassificationReport {
    /// Inconclusive verdict accompanied by certification errors.
    pub fn inconclusive_with_errors(&self) -> bool {
        !self.errors.is_empty()
    }

    pub fn from_json(s: &str) -> crate::Result<Self> {
        serde_json::from_str(s).map_err(|e| crate::Error::Parse(e.to_string()))
    }
}
