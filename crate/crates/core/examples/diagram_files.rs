//! Read a diagram file, report on it, and write it back out.

use falkit::format::{parse, serialize};
use falkit::report::{report, ReportOptions};

fn main() {
    let text = std::env::args()
        .nth(1)
        .map(|p| std::fs::read_to_string(p).expect("readable file"))
        .unwrap_or_else(|| include_str!("../diagrams/torus_chain.fal").to_string());
    let d = match parse(&text) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    let r = report(&d, &ReportOptions { dehn_m: Some(7), slopes: 4, ..Default::default() });
    print!("{}", r.render_human());
    println!("\n{} report keys; round trip exact: {}", r.entries.len(), parse(&serialize(&d)).unwrap() == d);
}
