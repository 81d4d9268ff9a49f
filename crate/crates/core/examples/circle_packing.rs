//! Nerves of planar diagrams, their packings, and SVG output.

use falkit::format::parse;
use falkit::packing::{nerve_from_diagram, solve_packing, Nerve};
use falkit::svg::render_packing;

fn main() {
    for (name, text) in [
        ("borromean", include_str!("../diagrams/borromean.fal")),
        ("bipyramid", include_str!("../diagrams/bipyramid.fal")),
    ] {
        let d = parse(text).unwrap();
        let nerve = nerve_from_diagram(&d).unwrap();
        let p = solve_packing(&nerve, 1e-10).unwrap();
        println!(
            "{name}: nerve V={} E={} F={}, removed {:?}",
            nerve.vertices.len(),
            nerve.edges().len(),
            nerve.triangles.len(),
            p.removed_triangle.as_ref().unwrap()
        );
        for (v, r) in &p.radii {
            let c = p.centers[v];
            println!("  {v:>4}: r = {r:.10} at ({:.6}, {:.6})", c.x, c.y);
        }
        println!("  residuals: angle {:.1e}, tangency {:.1e}", p.max_angle_residual, p.max_tangency_residual);
        let path = std::env::temp_dir().join(format!("falkit_{name}_packing.svg"));
        std::fs::write(&path, render_packing(&p)).unwrap();
        println!("  wrote {}", path.display());
    }

    let soddy = Nerve::new(
        ["a", "b", "c", "x"].map(String::from).to_vec(),
        vec![[0, 1, 3], [1, 2, 3], [2, 0, 3]],
    )
    .unwrap();
    let p = solve_packing(&soddy, 1e-10).unwrap();
    println!("inner Soddy circle: {:.10} (1/(3+2√3) = {:.10})", p.radii["x"], 1.0 / (3.0 + 2.0 * 3f64.sqrt()));
}
