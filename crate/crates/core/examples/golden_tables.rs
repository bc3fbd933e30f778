//! Reproduce the reference example tables and print one PASS/FAIL line per field.
//!
//! Run with `cargo run --release --example golden_tables`.

use rotodo::criteria::{classify, ClassifyConfig};
use rotodo::golden::{compare, registry};

fn main() {
    let config = ClassifyConfig::default();
    let mut failures = 0;
    for g in registry() {
        match classify(g.q, g.perm, &config) {
            Ok(report) => {
                for c in compare(&g, &report) {
                    failures += usize::from(!c.pass);
                    println!("{c}");
                }
            }
            Err(e) => {
                failures += 1;
                println!("FAIL {:<5} {}", g.id, e);
            }
        }
    }
    println!("{failures} failing field(s)");
}
