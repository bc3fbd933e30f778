//! Exact spectral data of the analysis matrix: factored characteristic
//! polynomial, eigenvalues with the weights of their left eigenvectors,
//! Frobenius blocks and zero-weight eigenvector patterns.
//!
//! Run with `cargo run --release --example spectral_structure -- 9 "(0,6,5,8,4,7,3)"`.

use rotodo::renorm::{analysis_model, detect_periodicity};
use rotodo::spectral::{eigen_data, frobenius_form, zero_weight_patterns};
use rotodo::RotatedOdometer;

fn main() -> rotodo::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let q: usize = args.first().map_or(Ok(9), |s| s.parse()).map_err(|e| rotodo::Error::Parse(format!("q: {e}")))?;
    let perm = args.get(1).map_or("(0,6,5,8,4,7,3)", String::as_str);
    let f = RotatedOdometer::parse(q, perm)?;
    let model = analysis_model(&detect_periodicity(&f, None)?);
    println!("analysis matrix over {:?}:\n{}", model.alphabet.labels(), model.matrix);

    let sd = eigen_data(&model.matrix, &model.letter_weights)?;
    println!("char poly = {}", sd.factorization.display());
    for e in sd.summaries() {
        println!(
            "  λ = {:<18} |λ| = {:<8.4} mult {}/{}  weight {}",
            e.value,
            e.abs,
            e.algebraic_multiplicity,
            e.geometric_multiplicity,
            if e.weight_zero { "0".to_string() } else { format!("{:.4}", e.weights[0]) }
        );
    }
    println!("max eigen-equation residual {:.2e}", sd.max_residual(&model.matrix));

    let ff = frobenius_form(&model.matrix)?;
    println!("\nFrobenius blocks (merged sizes {:?}):", ff.merged_block_sizes());
    for b in ff.summaries() {
        let letters: Vec<String> = b.letters.iter().map(|&a| model.alphabet.label(a)).collect();
        println!(
            "  {:<24} perron {:<10} distinguished {}",
            letters.join(" "),
            b.perron_value.map_or("0".to_string(), |v| format!("{v:.4}")),
            b.distinguished
        );
    }
    println!("ergodic measures: {}", ff.ergodic_measure_count());

    for p in zero_weight_patterns(&model.matrix, &model.alphabet) {
        println!("zero-weight pattern: eigenvalue {} vector {:?} weight {}", p.eigenvalue, p.vector, p.weight);
    }
    Ok(())
}
