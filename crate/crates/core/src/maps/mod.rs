//! Exact interval maps over arbitrary-precision rationals.

pub mod alphabet;
pub mod odometer;
pub mod perm;
pub mod rational;

pub use alphabet::{Alphabet, Letter};
pub use odometer::{level_shift, psi, vnk, vnk_branch, RotatedOdometer, SkewState};
pub use perm::Permutation;
pub use rational::Rational;
