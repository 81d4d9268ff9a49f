//! Hyperbolic constants and the volume bounds across manifold types.

use std::f64::consts::PI;

use falkit::diagram::ManifoldSpec;
use falkit::volume::{lobachevsky, lower_bound_formula, v_oct, v_tet, virtual_upper_bound_formula};

fn main() {
    println!("Λ(π/4) = {:.15}", lobachevsky(PI / 4.0));
    println!("Λ(π/3) = {:.15}", lobachevsky(PI / 3.0));
    println!("v_oct = {:.15}", v_oct());
    println!("v_tet = {:.15}", v_tet());
    println!();
    for (m, c) in [
        (ManifoldSpec::Ball, 2),
        (ManifoldSpec::Handlebody { genus: 2 }, 3),
        (ManifoldSpec::ThickenedSurface { genus: 1 }, 1),
        (ManifoldSpec::ThickenedSurface { genus: 3 }, 5),
    ] {
        let lower = lower_bound_formula(c, m.euler_characteristic());
        let upper = match m {
            ManifoldSpec::ThickenedSurface { genus } => virtual_upper_bound_formula(genus, c).ok(),
            _ => None,
        };
        match upper {
            Some(u) => println!("{m:>20}, c = {c}: {lower:.7} <= vol <= {u:.7}"),
            None => println!("{m:>20}, c = {c}: vol >= {lower:.7}"),
        }
    }
}
