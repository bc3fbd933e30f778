//! Cross-validation of simulated itineraries against iterated substitutions.
//!
//! After its first visit to `L_k` at time `t_0` an orbit is coded by
//! `χ_1 ∘ ⋯ ∘ χ_k` applied to the itinerary of the rescaled point
//! `2^{kN}·F^{t_0}(x_0)` under `F_{π_k}`; the first `t_0` letters are a proper
//! suffix of one such composite word.

use super::orbit::Orbit;
use crate::error::{Error, Result};
use crate::maps::{Letter, Rational, RotatedOdometer};
use crate::renorm::{detect_periodicity, Substitution};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// Default renormalization level of the check.
pub const DEFAULT_CODING_LEVEL: usize = 2;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodingCheck {
    pub level: usize,
    /// First time the orbit enters `L_k`.
    pub entry_time: usize,
    /// Number of letters compared.
    pub checked: usize,
}

/// `χ_1 ∘ ⋯ ∘ χ_k` together with `π_k`.
pub fn composite(f: &RotatedOdometer, k: usize) -> Result<(Substitution, RotatedOdometer)> {
    let seq = detect_periodicity(f, None)?;
    if !seq.covering() {
        return Err(Error::StructureViolation("coding check needs a covering system".into()));
    }
    let period = seq.k0 + seq.p0;
    let at = |i: usize| {
        let j = if i < period { i } else { seq.k0 + (i - seq.k0) % seq.p0 };
        &seq.entries[j]
    };
    let mut acc = at(0).1.clone();
    for i in 1..k {
        acc = Substitution::compose(&acc, &at(i).1);
    }
    Ok((acc, RotatedOdometer::new(at(k).0.clone())))
}

/// Checks that the first `entry` letters of the orbit form a proper suffix of a
/// composite word and that the rest of `itinerary` is the expansion of
/// `coarse`. `entry` may exceed the itinerary length, in which case only the
/// visible part of the suffix is compared. On failure the error carries the
/// first mismatching index.
pub fn check_decomposition(
    itinerary: &[Letter],
    chi: &Substitution,
    entry: usize,
    coarse: &[Letter],
) -> Result<()> {
    let head = &itinerary[..entry.min(itinerary.len())];
    if entry > 0 {
        let fits = chi.cell_words().iter().any(|w| {
            w.len() > entry && w[w.len() - entry..].starts_with(head)
        });
        if !fits {
            return Err(Error::ValidationFailed {
                index: 0,
                detail: "initial segment is not a suffix of any composite word".into(),
            });
        }
    }
    let expanded = chi.apply(coarse);
    let tail = itinerary.get(entry..).unwrap_or(&[]);
    for (i, &a) in tail.iter().enumerate() {
        match expanded.get(i) {
            Some(&b) if b == a => {}
            Some(&b) => {
                return Err(Error::ValidationFailed {
                    index: entry + i,
                    detail: format!("simulated letter {a}, substitution letter {b}"),
                })
            }
            None => {
                return Err(Error::ValidationFailed {
                    index: entry + i,
                    detail: "coarse itinerary too short".into(),
                })
            }
        }
    }
    Ok(())
}

/// Simulate `n` letters from `x_0` and check them against `χ_1 ∘ ⋯ ∘ χ_k`.
pub fn cross_validate_coding_at(
    f: &RotatedOdometer,
    x0: &Rational,
    n: usize,
    k: usize,
) -> Result<CodingCheck> {
    if k == 0 {
        return Err(Error::InvalidArgument("coding level must be at least 1".into()));
    }
    let (chi, fine) = composite(f, k)?;
    let mut orbit = Orbit::new(f, x0)?;
    let mut itinerary = Vec::with_capacity(n);
    let mut entry = None;
    while itinerary.len() < n || entry.is_none() {
        if entry.is_none() && orbit.in_section(k as u32) {
            entry = Some((orbit.steps(), orbit.point()));
        }
        if itinerary.len() >= n && entry.is_none() && orbit.steps() > 64 * n.max(1) {
            return Err(Error::ValidationFailed {
                index: orbit.steps(),
                detail: format!("orbit did not reach L_{k}"),
            });
        }
        if itinerary.len() < n {
            itinerary.push(orbit.letter(true));
        }
        orbit.advance()?;
    }
    let (t0, y) = entry.expect("entry found");
    let scale = BigInt::from(1u8) << (k * f.big_n() as usize);
    let y = y * Rational::from_integer(scale);
    let mut coarse = Vec::new();
    let mut coarse_orbit = Orbit::new(&fine, &y)?;
    let mut covered = 0;
    while covered < n.saturating_sub(t0) {
        let a = coarse_orbit.letter(true);
        covered += chi.word(a).len();
        coarse.push(a);
        coarse_orbit.advance()?;
    }
    check_decomposition(&itinerary, &chi, t0, &coarse)?;
    Ok(CodingCheck { level: k, entry_time: t0, checked: n })
}

pub fn cross_validate_coding(f: &RotatedOdometer, x0: &Rational, n: usize) -> Result<CodingCheck> {
    cross_validate_coding_at(f, x0, n, DEFAULT_CODING_LEVEL)
}
