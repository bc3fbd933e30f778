use super::report::{ClassificationReport, Recurrence};
use std::fmt::Write;

pub fn render_json(r: &ClassificationReport) -> String {
    serde_json::to_string_pretty(r).expect("report serializes")
}

fn gamma_text(r: &ClassificationReport) -> String {
    match r.gamma0.value {
        Some(v) => format!("{v:.6} ({})", r.gamma0.provenance),
        None => format!("— ({})", r.gamma0.provenance),
    }
}

fn matrix_md(out: &mut String, labels: &[String], rows: &[Vec<i64>]) {
    let _ = writeln!(out, "| | {} |", labels.join(" | "));
    let _ = writeln!(out, "|---|{}", "---|".repeat(labels.len()));
    for (l, row) in labels.iter().zip(rows) {
        let cells: Vec<String> = row.iter().map(i64::to_string).collect();
        let _ = writeln!(out, "| **{l}** | {} |", cells.join(" | "));
    }
}

/// Markdown rendering with the layout of the reference tables: header facts,
/// matrix, weight row, factored characteristic polynomial, eigenvalue/weight
/// rows and the verdict lines.
pub fn render_markdown(r: &ClassificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "## π = {}, q = {}\n", r.pi, r.q);
    let _ = writeln!(out, "| property | value |\n|---|---|");
    let _ = writeln!(out, "| covering | {} |", if r.covering { "covering" } else { "not covering" });
    let _ = writeln!(out, "| #{{ergodic measures}} | {} |", r.ergodic_measures);
    let _ = writeln!(out, "| γ0 | {} |", gamma_text(r));
    let _ = writeln!(out, "| Ē(Ψ) | {} |", r.essential_values);
    let _ = writeln!(
        out,
        "| renormalization | {} (k0 = {}, p0 = {}{}) |",
        r.renormalization.join(" → "),
        r.k0,
        r.p0,
        if r.stationary { ", stationary" } else { "" }
    );
    let _ = writeln!(out, "| gcd of weights | {} |", r.gcd_d);
    let _ = writeln!(out, "| Pisot criterion | {:?} |", r.pisot_verdict);
    let rec = match r.minimal_recurrence {
        Recurrence::Recurrent => "recurrent".to_string(),
        Recurrence::Transient => format!("transient (drift {:.6})", r.minimal_drift.unwrap_or(f64::NAN)),
        Recurrence::NotApplicable => "not applicable".to_string(),
    };
    let _ = writeln!(out, "| minimal part | {rec} |");
    if let Some(e) = r.discrepancy_exponent {
        let _ = writeln!(out, "| discrepancy exponent | {e:.6} |");
    }

    let _ = writeln!(out, "\n### Matrix M (level 1)\n");
    matrix_md(&mut out, &r.level1.alphabet, &r.level1.matrix);
    let _ = writeln!(out, "\n### Weight ψ(χ(a))\n");
    let _ = writeln!(out, "| {} |", r.level1.alphabet.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(r.level1.alphabet.len()));
    let w: Vec<String> = r.level1.weights.iter().map(i64::to_string).collect();
    let _ = writeln!(out, "| {} |", w.join(" | "));
    let _ = writeln!(out, "\n### Characteristic polynomial\n\n`{}`", r.level1.char_poly_factored);

    if r.analysis_on_return_system {
        let _ = writeln!(out, "\n### Analysis on the return system\n");
        matrix_md(&mut out, &r.analysis_alphabet, &r.analysis_matrix);
        let w: Vec<String> = r.weights.iter().map(i64::to_string).collect();
        let _ = writeln!(out, "\nInduced word weights: {}", w.join(", "));
        let _ = writeln!(out, "\nCharacteristic polynomial: `{}`", r.char_poly_factored);
    }

    let _ = writeln!(out, "\n### Eigenvalues and weights of left eigenvectors\n");
    let _ = writeln!(out, "| eigenvalue | minimal polynomial | alg | geo | weights |\n|---|---|---|---|---|");
    for e in &r.eigenvalues {
        let ws: Vec<String> = e
            .weights
            .iter()
            .zip(&e.weights_im)
            .map(|(re, im)| {
                if *im == 0.0 {
                    format!("{re:.6}")
                } else {
                    format!("{re:.6}{im:+.6}i")
                }
            })
            .collect();
        let weights = if e.weight_zero { "0 (exact)".to_string() } else { ws.join(", ") };
        let _ = writeln!(
            out,
            "| {} | `{}` | {} | {} | {} |",
            e.value,
            e.minimal_polynomial.compact(),
            e.algebraic_multiplicity,
            e.geometric_multiplicity,
            weights
        );
    }

    let _ = writeln!(out, "\n### Frobenius blocks\n");
    for (i, b) in r.frobenius_blocks.iter().enumerate() {
        let letters: Vec<String> = b.letters.iter().map(|&a| r.analysis_alphabet[a].clone()).collect();
        let _ = writeln!(
            out,
            "- D{}: {{{}}}{}{}",
            i + 1,
            letters.join(","),
            match b.perron_value {
                Some(v) if !b.zero => format!(", Perron value {v:.6}"),
                _ => ", zero block".into(),
            },
            if b.distinguished { ", distinguished" } else { "" }
        );
    }

    let _ = writeln!(out, "\n### Hypotheses\n");
    for h in &r.hypothesis_log {
        let mark = match h.holds {
            Some(true) => "holds",
            Some(false) => "fails",
            None => "undecided",
        };
        let detail = if h.detail.is_empty() { String::new() } else { format!(" — {}", h.detail) };
        let _ = writeln!(out, "- [{}] {}: {}{}", h.criterion, h.hypothesis, mark, detail);
    }
    if !r.errors.is_empty() {
        let _ = writeln!(out, "\n### Errors\n");
        for e in &r.errors {
            let _ = writeln!(out, "- {e}");
        }
    }
    out
}

fn kebab<T: serde::Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        _ => String::new(),
    }
}

pub fn render_csv_header() -> Vec<&'static str> {
    vec![
        "q",
        "pi",
        "covering",
        "stationary",
        "k0",
        "p0",
        "ergodic_measures",
        "gcd_d",
        "coboundary",
        "pisot",
        "minimal_recurrence",
        "essential_values",
        "gamma0",
        "discrepancy_exponent",
        "char_poly",
    ]
}

pub fn render_csv_row(r: &ClassificationReport) -> Vec<String> {
    vec![
        r.q.to_string(),
        r.pi.clone(),
        r.covering.to_string(),
        r.stationary.to_string(),
        r.k0.to_string(),
        r.p0.to_string(),
        r.ergodic_measures.to_string(),
        r.gcd_d.to_string(),
        r.coboundary.to_string(),
        kebab(&r.pisot_verdict),
        kebab(&r.minimal_recurrence),
        r.essential_values.to_string(),
        r.gamma0.value.map(|v| format!("{v:.6}")).unwrap_or_default(),
        r.discrepancy_exponent.map(|v| format!("{v:.6}")).unwrap_or_default(),
        r.char_poly_factored.clone(),
    ]
}
