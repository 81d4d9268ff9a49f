//! Build ring embeddings from arc-side choices and read off their genus.

use falkit::diagram::samples;
use falkit::embedding::{genus_of_embedding, is_cellular, ring_embedding, ArcSide};

fn main() {
    let d = samples::borromean();
    for sides in [[ArcSide::Left, ArcSide::Right], [ArcSide::Left, ArcSide::Left]] {
        let fd = ring_embedding(&d, &sides).unwrap();
        let lengths: Vec<usize> = fd.faces.iter().map(Vec::len).collect();
        println!(
            "borromean {sides:?}: V={} E={} F={} face lengths {lengths:?} genus {}",
            fd.vertices.len(),
            fd.edges.len(),
            fd.faces.len(),
            genus_of_embedding(&fd).unwrap()
        );
    }

    let torus = samples::torus_chain_link();
    for side in [ArcSide::Left, ArcSide::Right] {
        let fd = ring_embedding(&torus, &[side]).unwrap();
        let g = genus_of_embedding(&fd).unwrap();
        let cellular = is_cellular(&torus.clone().with_embedding(fd)).unwrap();
        println!("torus chain link {side:?}: genus {g}, cellular on the torus: {cellular}");
    }
}
