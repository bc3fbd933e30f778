use super::report::*;
use crate::error::{Error, Result};
use crate::maps::{Alphabet, RotatedOdometer};
use crate::renorm::{analysis_model, detect_periodicity, AnalysisModel, SubstitutionSequence};
use crate::spectral::field::NumberField;
use crate::spectral::roots::{DEFAULT_PRECISION, MAX_PRECISION};
use crate::spectral::{
    eigen::eigen_data_with_precision, factor::factor_with_precision, frobenius_form, pisot_check,
    zero_weight_patterns, EigenRef, FrobeniusForm, IntMatrix, IntPoly, PisotOutcome, SpectralData,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use std::cmp::Ordering;

/// Knobs for [`classify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifyConfig {
    pub precision_bits: u32,
    pub max_precision_bits: u32,
    /// Renormalization depth bound; `None` means `q!`.
    pub max_depth: Option<usize>,
    pub allow_pow2: bool,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        Self {
            precision_bits: DEFAULT_PRECISION,
            max_precision_bits: MAX_PRECISION,
            max_depth: None,
            allow_pow2: false,
        }
    }
}

/// All word weights vanish.
pub fn coboundary_check(weights: &[i64]) -> bool {
    weights.iter().all(|&w| w == 0)
}

/// `gcd` of the nonzero weights (0 when all vanish) and whether it is ≥ 2.
pub fn gcd_criterion(weights: &[i64]) -> (u64, bool) {
    let d = weights.iter().fold(0i64, |g, &w| g.gcd(&w)).unsigned_abs();
    (d, d >= 2)
}

/// Covering systems are recurrent for Lebesgue; otherwise undecided here.
pub fn recurrence_leb(covering: bool) -> Option<bool> {
    covering.then_some(true)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinimalRecurrence {
    pub verdict: Recurrence,
    /// `ψ(ℓ)/‖ℓ‖_1` for the Perron left eigenvector `ℓ` of the minimal block.
    pub drift: Option<f64>,
    pub diagonalizable: bool,
}

/// Recurrence of the skew product over the minimal subsystem (block `D_1`).
pub fn minimal_recurrence(
    ff: &FrobeniusForm,
    m: &IntMatrix,
    letter_weights: &[BigInt],
    precision: (u32, u32),
) -> Result<MinimalRecurrence> {
    let block = &ff.blocks[0];
    let Some(perron) = &block.perron else {
        return Ok(MinimalRecurrence { verdict: Recurrence::NotApplicable, drift: None, diagonalizable: false });
    };
    let sub = m.principal(&block.letters);
    let w: Vec<BigInt> = block.letters.iter().map(|&i| letter_weights[i].clone()).collect();
    let sd = eigen_data_with_precision(&sub, &w, precision.0, precision.1)?;
    let diagonalizable = sd.semisimple_nonzero();
    let field = NumberField::new(&perron.minimal_poly);
    let basis = field.left_eigenspace(&sub);
    let [ell] = basis.as_slice() else {
        return Err(Error::StructureViolation("Perron eigenvalue of the minimal block is not simple".into()));
    };
    let weight = field.dot_int(ell, &w);
    let z = &perron.root.value;
    let num = field.embed(&weight, z).re_f64();
    let norm: f64 = ell.iter().map(|c| field.embed(c, z).re_f64().abs()).sum();
    if !diagonalizable {
        return Ok(MinimalRecurrence { verdict: Recurrence::NotApplicable, drift: Some(num / norm), diagonalizable });
    }
    let verdict = if field.is_zero(&weight) { Recurrence::Recurrent } else { Recurrence::Transient };
    Ok(MinimalRecurrence { verdict, drift: Some(num / norm), diagonalizable })
}

fn log_entry(log: &mut Vec<HypothesisCheck>, criterion: &str, hypothesis: &str, holds: Option<bool>, detail: String) {
    log.push(HypothesisCheck {
        criterion: criterion.into(),
        hypothesis: hypothesis.into(),
        holds,
        detail,
    });
}

/// The Pisot criterion: exactly one eigenvalue of modulus ≥ 1 carries
/// nonzero-weight eigenvectors, it is real with `|λ| > 1` and Pisot up to sign,
/// and it is semisimple.
pub fn pisot_criterion(
    sd: &SpectralData,
    log: &mut Vec<HypothesisCheck>,
) -> (PisotVerdict, Option<EigenRef>, Option<Error>) {
    const NAME: &str = "pisot-criterion";
    let mut candidates = Vec::new();
    for (ci, c) in sd.classes.iter().enumerate() {
        if c.weight_zero() {
            continue;
        }
        for (ri, r) in c.roots().iter().enumerate() {
            match r.vs_one {
                Some(Ordering::Less) => {}
                Some(_) => candidates.push(EigenRef { class: ci, root: ri }),
                None => {
                    let e = Error::CertificationFailed(format!(
                        "modulus of a root of {} against 1",
                        c.minimal_poly()
                    ));
                    log_entry(log, NAME, "(a) unique nonzero-weight eigenvalue with |λ| ≥ 1", None, e.to_string());
                    return (PisotVerdict::NotChecked, None, Some(e));
                }
            }
        }
    }
    let describe = |e: &EigenRef| sd.summary(*e).value;
    if candidates.len() != 1 {
        let list: Vec<String> = candidates.iter().map(describe).collect();
        log_entry(
            log,
            NAME,
            "(a) unique nonzero-weight eigenvalue with |λ| ≥ 1",
            Some(false),
            format!("{} such eigenvalues: [{}]", candidates.len(), list.join(", ")),
        );
        return (PisotVerdict::Fails, None, None);
    }
    let c = candidates[0];
    log_entry(log, NAME, "(a) unique nonzero-weight eigenvalue with |λ| ≥ 1", Some(true), describe(&c));
    let class = sd.class(c);
    match pisot_check(class, c.root, true) {
        Ok(PisotOutcome::Pisot) => {
            let negative = sd.root(c).re() < 0.0;
            log_entry(
                log,
                NAME,
                "(b) real, |λ_c| > 1, conjugates strictly inside the unit circle",
                Some(true),
                format!("minimal polynomial {}{}", class.minimal_poly(), if negative { " (negative λ_c)" } else { "" }),
            );
        }
        Ok(PisotOutcome::NotPisot) => {
            log_entry(
                log,
                NAME,
                "(b) real, |λ_c| > 1, conjugates strictly inside the unit circle",
                Some(false),
                format!("minimal polynomial {}", class.minimal_poly()),
            );
            return (PisotVerdict::Fails, Some(c), None);
        }
        Err(e) => {
            log_entry(log, NAME, "(b) Pisot certification", None, e.to_string());
            return (PisotVerdict::NotChecked, Some(c), Some(e));
        }
    }
    let semisimple = class.is_semisimple();
    log_entry(
        log,
        NAME,
        "(c) algebraic = geometric multiplicity of λ_c",
        Some(semisimple),
        format!("{} / {}", class.algebraic_multiplicity(), class.geometric_multiplicity),
    );
    if semisimple {
        (PisotVerdict::Applies, Some(c), None)
    } else {
        (PisotVerdict::Fails, Some(c), None)
    }
}

/// `log|λ_1| / log λ_0` from the ordered spectrum, if `λ_1` exists.
fn spectral_ratio(sd: &SpectralData) -> Option<(f64, EigenRef)> {
    let lead = sd.leading()?;
    let second = sd.second()?;
    let l0 = sd.root(lead).abs();
    let l1 = sd.root(second).abs();
    (l1 > 0.0).then(|| (l1.ln() / l0.ln(), second))
}

/// Exponent `max(log|λ_1|/log λ_0, 0) − 1` of the discrepancy bound, when the
/// hypotheses (semisimple nonzero spectrum, simple dominant `λ_0 > 1`) hold.
pub fn discrepancy_exponent(sd: &SpectralData) -> Option<f64> {
    let lead = sd.leading()?;
    if !(sd.semisimple_nonzero() && sd.leading_simple_dominant() && sd.root(lead).re() > 1.0) {
        return None;
    }
    let g = spectral_ratio(sd).map(|(g, _)| g).unwrap_or(0.0);
    Some(g.max(0.0) - 1.0)
}

fn to_i64(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("weight fits in i64")).collect()
}

pub fn classify(q: usize, perm: &str, config: &ClassifyConfig) -> Result<ClassificationReport> {
    let pi = crate::maps::Permutation::parse(q, perm, config.allow_pow2)?;
    classify_odometer(&RotatedOdometer::new(pi), config)
}

pub fn classify_odometer(f: &RotatedOdometer, config: &ClassifyConfig) -> Result<ClassificationReport> {
    let seq = detect_periodicity(f, config.max_depth)?;
    let model = analysis_model(&seq);
    build_report(f, &seq, &model, config)
}

fn build_report(
    f: &RotatedOdometer,
    seq: &SubstitutionSequence,
    model: &AnalysisModel,
    config: &ClassifyConfig,
) -> Result<ClassificationReport> {
    let prec = (config.precision_bits, config.max_precision_bits.max(config.precision_bits));
    let mut log = Vec::new();
    let mut errors = Vec::new();

    // Level-1 data as printed in the tables.
    let chi1 = &seq.entries[0].1;
    for (_, chi) in &seq.entries {
        chi.check_proper()?;
    }
    let m1 = chi1.matrix();
    let cp1 = IntPoly::char_poly(&m1);
    let fac1 = factor_with_precision(&cp1, prec.0, prec.1)?;
    let level1 = Level1Data {
        alphabet: chi1.alphabet.labels(),
        words: chi1.letter_words().iter().map(|w| chi1.alphabet.format_word(w)).collect(),
        matrix: m1.to_i64_rows(),
        weights: chi1.word_weights(),
        char_poly: cp1.clone(),
        char_poly_factored: fac1.display(),
        factors: fac1.canonical(),
    };

    let covering = seq.covering();
    let weights = to_i64(&model.word_weights);
    let letter_weights = to_i64(&model.letter_weights);
    let sd = eigen_data_with_precision(&model.matrix, &model.letter_weights, prec.0, prec.1)?;
    let ff = frobenius_form(&model.matrix)?;
    if !ff.is_lower_block_triangular(&model.matrix) {
        return Err(Error::StructureViolation("Frobenius form is not block triangular".into()));
    }
    let frobenius_count = ff.ergodic_measure_count();
    let frobenius_direct_count = ff.direct_edge_count();
    log_entry(
        &mut log,
        "ergodic-measure-count",
        "accessibility rule agrees with the direct-edge rule",
        Some(frobenius_count == frobenius_direct_count),
        format!("{frobenius_count} vs {frobenius_direct_count}"),
    );
    if model.alphabet.doubled && seq.k0 == 0 && seq.p0 == 1 {
        let und = chi1.undoubled().matrix();
        let und_count = frobenius_form(&und)?.ergodic_measure_count();
        log_entry(
            &mut log,
            "ergodic-measure-count",
            "doubled and undoubled matrices give the same count",
            Some(und_count == frobenius_count),
            format!("{frobenius_count} vs {und_count}"),
        );
    }
    let ergodic_measures = if covering {
        MeasureCount::Finite { count: frobenius_count }
    } else {
        MeasureCount::Infinite { aperiodic_count: frobenius_count }
    };

    let lead = sd.leading();
    let leading_eigenvalue = lead.map(|e| sd.summary(e).value);
    if covering {
        let expected = BigInt::from(1) << (f.big_n() as usize * seq.p0);
        let ok = lead.is_some_and(|e| sd.class(e).factor.integer_root() == Some(expected.clone()))
            && lead.is_some_and(|e| sd.class(e).weight_zero());
        log_entry(
            &mut log,
            "covering",
            "leading eigenvalue is 2^(N·p0) with weight-zero eigenvector",
            Some(ok),
            format!("λ0 = {}", leading_eigenvalue.clone().unwrap_or_default()),
        );
    }

    let coboundary = model.is_coboundary();
    let (gcd_d, gcd_veto) = gcd_criterion(&weights);
    let leb_recurrent = recurrence_leb(covering);
    let minimal = minimal_recurrence(&ff, &model.matrix, &model.letter_weights, prec)?;
    log_entry(
        &mut log,
        "minimal-recurrence",
        "minimal block D_1 diagonalizable on nonzero eigenvalues",
        Some(minimal.diagonalizable),
        format!("letters {:?}", ff.blocks[0].letters),
    );

    let (pisot_verdict, pisot_ref) = if covering {
        let (v, r, err) = pisot_criterion(&sd, &mut log);
        if let Some(e) = err {
            errors.push(e.to_string());
        }
        (v, r)
    } else {
        log_entry(&mut log, "pisot-criterion", "covering", Some(false), "not covering".into());
        (PisotVerdict::NotChecked, None)
    };
    let pisot_eigenvalue = pisot_ref.map(|e| sd.summary(e).value);

    // |λ| > 1 with a nonzero-weight eigenvector gives unbounded sums, so ∞ is essential.
    let unbounded = sd.classes.iter().any(|c| {
        !c.weight_zero() && c.roots().iter().any(|r| r.vs_one == Some(Ordering::Greater))
    });
    let essential_values = if !covering {
        if minimal.verdict == Recurrence::Transient {
            EssentialValueSet::exact(false, true)
        } else {
            EssentialValueSet::unknown(false, unbounded)
        }
    } else if coboundary {
        EssentialValueSet::exact(true, false)
    } else if pisot_verdict == PisotVerdict::Applies {
        EssentialValueSet { zero_nontrivial: true, ..EssentialValueSet::exact(true, true) }
    } else if gcd_veto {
        EssentialValueSet::upper_bound(gcd_d)
    } else {
        EssentialValueSet::unknown(true, unbounded)
    };
    let not_ergodic = covering && (coboundary || gcd_veto || pisot_verdict == PisotVerdict::Applies);

    // Diffusion coefficient.
    let semisimple = sd.semisimple_nonzero();
    let simple_lead = sd.leading_simple_dominant();
    let ratio = spectral_ratio(&sd);
    let gamma0 = if covering && coboundary {
        Gamma0 { value: Some(0.0), provenance: "coboundary".into() }
    } else if !covering && minimal.verdict == Recurrence::Transient {
        Gamma0 { value: Some(1.0), provenance: "transient-minimal-part".into() }
    } else if covering {
        let big = ratio.is_some_and(|(_, e)| sd.root(e).vs_one == Some(Ordering::Greater));
        log_entry(&mut log, "diffusion", "nonzero eigenvalues semisimple", Some(semisimple), String::new());
        log_entry(&mut log, "diffusion", "λ0 simple and strictly dominant", Some(simple_lead), String::new());
        log_entry(
            &mut log,
            "diffusion",
            "|λ1| > 1",
            Some(big),
            ratio.map(|(_, e)| sd.summary(e).value).unwrap_or_default(),
        );
        match ratio {
            Some((g, _)) if semisimple && simple_lead && big => {
                Gamma0 { value: Some(g), provenance: "diffusion-theorem".into() }
            }
            _ => Gamma0 { value: None, provenance: "withheld".into() },
        }
    } else {
        Gamma0 { value: None, provenance: "withheld".into() }
    };
    let discrepancy_exponent = if covering { discrepancy_exponent(&sd) } else { None };
    if !sd.semisimple() {
        log_entry(
            &mut log,
            "diagonalizability",
            "zero eigenvalue semisimple",
            Some(false),
            "nilpotent part at eigenvalue 0 ignored".into(),
        );
    }
    if !errors.is_empty() && essential_values.kind != EssentialKind::Unknown {
        log_entry(&mut log, "report", "no certification errors", Some(false), errors.join("; "));
    }

    let alphabet: Alphabet = model.alphabet;
    Ok(ClassificationReport {
        schema_version: REPORT_SCHEMA_VERSION,
        q: f.q(),
        pi: f.pi().to_cycle_string(),
        pi_one_line: f.pi().images().to_vec(),
        big_n: f.big_n(),
        stationary: seq.stationary,
        k0: seq.k0,
        p0: seq.p0,
        renormalization: seq.permutations().iter().map(|p| p.to_cycle_string()).collect(),
        analysis_on_return_system: model.on_return_system,
        covering,
        level1,
        analysis_alphabet: alphabet.labels(),
        analysis_matrix: model.matrix.to_i64_rows(),
        letter_weights,
        weights,
        char_poly: sd.char_poly.clone(),
        char_poly_factored: sd.factorization.display(),
        eigenvalues: sd.summaries(),
        leading_eigenvalue,
        frobenius_blocks: ff.summaries(),
        frobenius_block_sizes: ff.merged_block_sizes(),
        frobenius_count,
        frobenius_direct_count,
        ergodic_measures,
        gcd_d,
        coboundary,
        leb_recurrent,
        minimal_recurrence: minimal.verdict,
        minimal_drift: minimal.drift,
        pisot_verdict,
        pisot_eigenvalue,
        not_ergodic,
        essential_values,
        gamma0,
        discrepancy_exponent,
        zero_weight_patterns: zero_weight_patterns(&m1, &chi1.alphabet),
        hypothesis_log: log,
        errors,
        precision_bits: sd
            .classes
            .iter()
            .map(|c| c.factor.precision)
            .max()
            .unwrap_or(prec.0),
    })
}
