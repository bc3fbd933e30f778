//! Classify one rotated odometer and print the report as markdown or JSON.
//!
//! Run with `cargo run --release --example analyze_system -- 5 "(02431)" [json]`.

use rotodo::criteria::{classify, render_json, render_markdown, ClassifyConfig};

fn main() -> rotodo::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let q: usize = args.first().map_or(Ok(3), |s| s.parse()).map_err(|e| rotodo::Error::Parse(format!("q: {e}")))?;
    let perm = args.get(1).map_or("(012)", String::as_str);
    let report = classify(q, perm, &ClassifyConfig::default())?;
    if args.get(2).is_some_and(|f| f == "json") {
        println!("{}", render_json(&report));
    } else {
        print!("{}", render_markdown(&report));
    }
    Ok(())
}
