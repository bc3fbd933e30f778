//! Linear algebra on associated matrices: exact characteristic polynomials,
//! integer factorization with certified roots, left eigen-data over number
//! fields, the Frobenius form and weight patterns.

pub mod eigen;
pub mod factor;
pub mod field;
pub mod frobenius;
pub mod matrix;
pub mod numeric;
pub mod patterns;
pub mod poly;
pub mod roots;

pub use eigen::{eigen_data, pisot_check, EigenClass, EigenRef, EigenSummary, PisotOutcome, SpectralData};
pub use factor::{factor_over_integers, Factor, Factorization, RootInfo};
pub use frobenius::{frobenius_form, BlockSummary, FrobeniusForm};
pub use matrix::IntMatrix;
pub use patterns::{zero_weight_patterns, WeightPattern};
pub use poly::IntPoly;
