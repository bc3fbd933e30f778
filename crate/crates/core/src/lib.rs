//! Exact renormalization and spectral classification of rotated odometers.
//!
//! A rotated odometer is the infinite interval exchange `F_π = 𝔞 ∘ R_π` on
//! `[0,1)`: a rigid permutation `R_π` of `q` equal cells followed by the
//! von Neumann–Kakutani adding machine `𝔞`. Together with the skew function
//! `ψ = ±1` it defines the ℤ-extension `T_π(x, n) = (F_π(x), n + ψ(x))`.
//!
//! The crate is organised as a pipeline:
//!
//! * [`maps`] — exact evaluation of `𝔞`, `R_π`, `F_π`, `ψ`, `T_π` and orbit coding;
//! * [`renorm`] — first-return maps to `L_k = [0, 2^{-kN})`, substitution
//!   extraction and pre-periodicity detection;
//! * [`spectral`] — associated matrices, exact characteristic polynomials,
//!   integer factorization, left eigen-data over number fields, Frobenius form;
//! * [`criteria`] — recurrence, gcd, Pisot, coboundary, diffusion and
//!   discrepancy verdicts assembled into a [`criteria::ClassificationReport`];
//! * [`sim`] — exact orbit simulation, empirical discrepancy/diffusion and
//!   symbolic cross-validation;
//! * [`golden`] — a registry of reference tables and a field-by-field comparer;
//! * [`cli`] — the `rotodo` command-line front end.

// Dense linear algebra reads best with explicit row/column indices.
#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod criteria;
pub mod error;
pub mod golden;
pub mod maps;
pub mod renorm;
pub mod sim;
pub mod spectral;

pub use error::{Error, Result};
pub use maps::{Letter, Permutation, Rational, RotatedOdometer, SkewState};
pub use renorm::{Substitution, SubstitutionSequence};
