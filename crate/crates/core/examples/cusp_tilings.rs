//! Cusp tilings of every component, their translations and areas.

use falkit::cusp::{cusp_area_lower_bound, cusp_tilings, normalized_translations, word_string, WhiteLengths};
use falkit::diagram::{resolve_components, samples, HalfTwist};

fn main() {
    let d = samples::borromean().with_half_twist("C2", HalfTwist::Negative).unwrap();
    let link = resolve_components(&d).unwrap();
    let mut total = 0.0;
    for t in cusp_tilings(&link).unwrap() {
        let (m, l) = normalized_translations(&t, &WhiteLengths::uniform(&t, 1.0)).unwrap();
        println!(
            "{:>4}: {} rectangles, meridian [{}] = ({}, {}), longitude [{}] = ({}, {})",
            t.component,
            t.rectangle_count(),
            word_string(&t.meridian_word),
            m.x,
            m.y,
            word_string(&t.longitude_word),
            l.x,
            l.y
        );
        total += cusp_area_lower_bound(&t);
    }
    println!("total cusp area at least {total} (6c = {})", 6 * d.circles.len());

    // wider white sides stretch the translations
    let t = &cusp_tilings(&link).unwrap()[1];
    let (m, _) = normalized_translations(t, &WhiteLengths::uniform(t, 1.5)).unwrap();
    println!("C2 meridian with w = 1.5: length {:.6}", m.length());
}
