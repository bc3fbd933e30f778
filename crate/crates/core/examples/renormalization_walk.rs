//! Follow the renormalization sequence `π → π_1 → π_2 → …` until it becomes
//! periodic, printing each return permutation and its substitution words.
//!
//! Run with `cargo run --release --example renormalization_walk -- 5 "(01243)"`.

use rotodo::renorm::detect_periodicity;
use rotodo::RotatedOdometer;

fn main() -> rotodo::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let q: usize = args.first().map_or(Ok(5), |s| s.parse()).map_err(|e| rotodo::Error::Parse(format!("q: {e}")))?;
    let perm = args.get(1).map_or("(01243)", String::as_str);
    let f = RotatedOdometer::parse(q, perm)?;
    let seq = detect_periodicity(&f, None)?;
    println!("π = {}, q = {q}, N = {}", f.pi(), f.big_n());
    for (k, (source, chi)) in seq.entries.iter().enumerate() {
        println!("\nπ_{k} = {source}: χ_{}, |χ| = {}", k + 1, chi.total_length());
        for (a, w) in chi.letter_words().iter().enumerate() {
            println!("  {:>3} ↦ {}", chi.alphabet.label(a), chi.alphabet.format_word(w));
        }
    }
    println!(
        "\npre-period k0 = {}, period p0 = {}, stationary = {}, covering = {}",
        seq.k0,
        seq.p0,
        seq.stationary,
        seq.covering()
    );
    Ok(())
}
