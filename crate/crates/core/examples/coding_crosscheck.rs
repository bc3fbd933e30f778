//! Cross-validate the substitution words against exact orbit itineraries:
//! every simulated orbit must decompose into composite substitution words.
//!
//! Run with `cargo run --release --example coding_crosscheck`.

use rotodo::sim::{cross_validate_coding, random_starts};
use rotodo::RotatedOdometer;

fn main() -> rotodo::Result<()> {
    let systems = [(3, "(012)"), (5, "(02431)"), (5, "(01234)"), (5, "(01243)"), (9, "(0,6,5,8,4,7,3)")];
    for (q, perm) in systems {
        let f = RotatedOdometer::parse(q, perm)?;
        for x0 in random_starts(q, 11, 3) {
            let check = cross_validate_coding(&f, &x0, 100_000)?;
            println!(
                "{perm:<18} x0 = {:.6}  level {}  entry after {:>4} steps, {} letters checked",
                rotodo::maps::rational::to_f64(&x0),
                check.level,
                check.entry_time,
                check.checked
            );
        }
    }
    Ok(())
}
