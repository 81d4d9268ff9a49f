//! Validate a few diagrams and watch half twists re-pair link components.

use falkit::diagram::{
    resolve_components, samples, twist_effect, validate, CrossingCircle, Direction, FalDiagram,
    HalfTwist, ManifoldSpec, Passage, Slot, Strand,
};

fn show(name: &str, d: &FalDiagram) {
    let report = validate(d);
    if !report.is_valid() {
        println!("{name}: invalid");
        for v in &report.violations {
            println!("  [{}] {}", v.code.as_str(), v.message);
        }
        return;
    }
    let link = resolve_components(d).expect("valid diagram");
    let ns: Vec<String> = link
        .surface_knots()
        .map(|k| format!("{} (n={})", k.label, k.passage_count().unwrap_or(0)))
        .collect();
    println!("{name}: {} circles, knots {}", d.circles.len(), ns.join(", "));
}

fn main() {
    let borromean = samples::borromean();
    show("borromean", &borromean);
    let link = resolve_components(&borromean).unwrap();
    for c in ["C1", "C2"] {
        println!("  twisting {c}: {:?}", twist_effect(&link, c).unwrap());
    }
    show("borromean, C1 twisted", &borromean.with_half_twist("C1", HalfTwist::Positive).unwrap());

    let parallel = FalDiagram::new(
        0,
        ManifoldSpec::Ball,
        vec![CrossingCircle::new("C1", HalfTwist::Positive)],
        vec![Strand::new(
            "K",
            vec![
                Passage::new("C1", Slot::A, Direction::Plus),
                Passage::new("C1", Slot::B, Direction::Plus),
            ],
        )],
    );
    show("parallel passages, twisted", &parallel);

    let mut broken = borromean.clone();
    broken.strands[0].passages.truncate(3);
    show("missing passage", &broken);
}
