//! Slope lengths and volume after inserting crossings into twist regions.

use falkit::cusp::slope_bound_for_crossings;
use falkit::diagram::samples;
use falkit::volume::{dehn_filled_lower_bound, lower_bound};

fn main() {
    println!(" n  k  half-twist  slope length >=");
    for n in 1..=10 {
        let b = slope_bound_for_crossings(n).unwrap();
        println!("{n:>2} {:>2}  {:>10}  {:.9}", b.k, b.needs_half_twist, b.length_lower_bound);
    }

    let d = samples::borromean();
    println!("\nBorromean diagram, unfilled lower bound {:.9}", lower_bound(&d).unwrap());
    for m in [7, 8, 10, 20, 50, 100, 1000] {
        println!("  m = {m:>4}: volume >= {:.9}", dehn_filled_lower_bound(&d, m).unwrap());
    }
    println!("  m = 6: {}", dehn_filled_lower_bound(&d, 6).unwrap_err());
}
