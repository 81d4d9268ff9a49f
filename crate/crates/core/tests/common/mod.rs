//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use falkit::diagram::{
    validate, CrossingCircle, Direction, FalDiagram, HalfTwist, ManifoldSpec, Passage, Slot, Strand,
};
use falkit::packing::Nerve;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_twist(rng: &mut TestRng) -> HalfTwist {
    [HalfTwist::None, HalfTwist::Positive, HalfTwist::Negative][rng.gen_range(0..3)]
}

/// Builds a diagram from passage cycles; `None` if it is not connected.
pub fn assemble(
    twists: &[HalfTwist],
    cycles: &[Vec<(usize, Slot, Direction)>],
) -> Option<FalDiagram> {
    let circles = twists
        .iter()
        .enumerate()
        .map(|(i, t)| CrossingCircle::new(format!("C{}", i + 1), *t))
        .collect();
    let strands = cycles
        .iter()
        .enumerate()
        .map(|(i, cyc)| {
            let passages = cyc
                .iter()
                .map(|&(c, s, d)| Passage::new(format!("C{}", c + 1), s, d))
                .collect();
            Strand::new(format!("S{}", i + 1), passages)
        })
        .collect();
    let d = FalDiagram::new(0, ManifoldSpec::Ball, circles, strands);
    validate(&d).is_valid().then_some(d)
}

/// A valid diagram with `1..=max_circles` circles and up to `max_strands` strands.
pub fn random_diagram(rng: &mut TestRng, max_circles: usize, max_strands: usize) -> FalDiagram {
    loop {
        let c = rng.gen_range(1..=max_circles);
        let twists: Vec<HalfTwist> = (0..c).map(|_| random_twist(rng)).collect();
        let mut slots: Vec<(usize, Slot, Direction)> = (0..c)
            .flat_map(|i| [Slot::A, Slot::B].map(|s| (i, s, Direction::Plus)))
            .collect();
        slots.shuffle(rng);
        for p in &mut slots {
            if rng.gen_bool(0.5) {
                p.2 = Direction::Minus;
            }
        }
        let k = rng.gen_range(1..=max_strands.min(2 * c));
        let mut cuts: Vec<usize> = (1..2 * c).collect();
        cuts.shuffle(rng);
        let mut cuts: Vec<usize> = cuts.into_iter().take(k - 1).collect();
        cuts.sort_unstable();
        let mut cycles = Vec::new();
        let mut start = 0;
        for end in cuts.into_iter().chain([2 * c]) {
            cycles.push(slots[start..end].to_vec());
            start = end;
        }
        if let Some(d) = assemble(&twists, &cycles) {
            return d;
        }
    }
}

/// Surface knot components found by gluing arc ends with a union-find,
/// independently of the tracing resolver. Each set holds `(strand, arc)`.
pub fn brute_force_components(d: &FalDiagram) -> BTreeSet<BTreeSet<(String, usize)>> {
    // node 2*a is the tail of arc a, 2*a+1 its head
    let mut arcs = Vec::new();
    let mut ends: BTreeMap<(String, Slot, bool), usize> = BTreeMap::new();
    for s in &d.strands {
        let k = s.passages.len();
        for (i, p) in s.passages.iter().enumerate() {
            let a = arcs.len();
            arcs.push((s.id.clone(), i));
            let plus = p.direction == Direction::Plus;
            // leaving passage i on its far side; arriving at passage i+1 on its near side
            ends.insert((p.circle.clone(), p.slot, plus), 2 * a);
            let q = &s.passages[(i + 1) % k];
            let q_plus = q.direction == Direction::Plus;
            ends.insert((q.circle.clone(), q.slot, !q_plus), 2 * a + 1);
        }
    }
    let mut parent: Vec<usize> = (0..2 * arcs.len()).collect();
    fn find(p: &mut Vec<usize>, mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let join = |p: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(p, a), find(p, b));
        p[ra] = rb;
    };
    for a in 0..arcs.len() {
        join(&mut parent, 2 * a, 2 * a + 1);
    }
    for c in &d.circles {
        for slot in [Slot::A, Slot::B] {
            // the near side of a slot meets the far side of the same slot,
            // or of the other slot under a half twist
            let far = if c.half_twist.is_twisted() { slot.other() } else { slot };
            let a = ends[&(c.id.clone(), slot, false)];
            let b = ends[&(c.id.clone(), far, true)];
            join(&mut parent, a, b);
        }
    }
    let mut groups: BTreeMap<usize, BTreeSet<(String, usize)>> = BTreeMap::new();
    for (a, arc) in arcs.iter().enumerate() {
        let r = find(&mut parent, 2 * a);
        groups.entry(r).or_default().insert(arc.clone());
    }
    groups.into_values().collect()
}

/// Every diagram with exactly `c` circles and at most `max_strands` strands,
/// up to the order of strands and the rotation of each strand. Negative half
/// twists resolve like positive ones, so only `None` and `Positive` appear.
pub fn all_diagrams(c: usize, max_strands: usize) -> Vec<FalDiagram> {
    let n = 2 * c;
    let mut out = Vec::new();
    for perm in permutations_by_cycles(n, max_strands) {
        for dirs in 0u32..(1 << n) {
            for tw in 0u32..(1 << c) {
                let twists: Vec<HalfTwist> = (0..c)
                    .map(|i| if tw >> i & 1 == 1 { HalfTwist::Positive } else { HalfTwist::None })
                    .collect();
                let cycles: Vec<Vec<(usize, Slot, Direction)>> = perm
                    .iter()
                    .map(|cyc| {
                        cyc.iter()
                            .map(|&x| {
                                let slot = if x % 2 == 0 { Slot::A } else { Slot::B };
                                let dir = if dirs >> x & 1 == 1 { Direction::Minus } else { Direction::Plus };
                                (x / 2, slot, dir)
                            })
                            .collect()
                    })
                    .collect();
                if let Some(d) = assemble(&twists, &cycles) {
                    out.push(d);
                }
            }
        }
    }
    out
}

/// Permutations of `0..n` with at most `max_cycles` cycles, as cycle lists
/// each starting at its smallest element, ordered by that element.
fn permutations_by_cycles(n: usize, max_cycles: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(remaining: &[usize], max_cycles: usize, acc: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        let Some((&first, rest)) = remaining.split_first() else {
            out.push(acc.clone());
            return;
        };
        if acc.len() == max_cycles {
            return;
        }
        // choose an ordered subset of the rest to follow `first`
        let mut cycle = vec![first];
        grow(rest, &mut cycle, max_cycles, acc, out);
    }
    fn grow(
        pool: &[usize],
        cycle: &mut Vec<usize>,
        max_cycles: usize,
        acc: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        acc.push(cycle.clone());
        go(pool, max_cycles, acc, out);
        acc.pop();
        for i in 0..pool.len() {
            let mut next = pool.to_vec();
            let x = next.remove(i);
            cycle.push(x);
            grow(&next, cycle, max_cycles, acc, out);
            cycle.pop();
        }
    }
    let all: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    go(&all, max_cycles, &mut Vec::new(), &mut out);
    out
}

/// A random triangulated disc with exactly `n >= 3` vertices, grown by
/// interior splits and boundary ears and then shuffled by edge flips.
pub fn random_disc(rng: &mut TestRng, n: usize) -> Nerve {
    assert!(n >= 3);
    let mut tris: Vec<[usize; 3]> = vec![[0, 1, 2]];
    let mut next = 3;
    while next < n {
        if rng.gen_bool(0.6) {
            let t = rng.gen_range(0..tris.len());
            let [a, b, c] = tris[t];
            tris[t] = [a, b, next];
            tris.push([b, c, next]);
            tris.push([c, a, next]);
        } else {
            let boundary = boundary_edges(&tris);
            let (a, b) = boundary[rng.gen_range(0..boundary.len())];
            tris.push([b, a, next]);
        }
        next += 1;
    }
    for _ in 0..n {
        flip_random_edge(rng, &mut tris);
    }
    let names = (0..n).map(|i| format!("v{i:03}")).collect();
    Nerve::new(names, tris).expect("generated disc is a valid nerve")
}

/// Oriented boundary edges `(a, b)` of a consistently oriented triangle list.
fn boundary_edges(tris: &[[usize; 3]]) -> Vec<(usize, usize)> {
    let directed: BTreeSet<(usize, usize)> = tris
        .iter()
        .flat_map(|t| (0..3).map(move |k| (t[k], t[(k + 1) % 3])))
        .collect();
    directed
        .iter()
        .copied()
        .filter(|&(a, b)| !directed.contains(&(b, a)))
        .collect()
}

fn flip_random_edge(rng: &mut TestRng, tris: &mut [[usize; 3]]) {
    let mut owner: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, t) in tris.iter().enumerate() {
        for k in 0..3 {
            owner.insert((t[k], t[(k + 1) % 3]), i);
            *degree.entry(t[k]).or_default() += 1;
        }
    }
    let interior: Vec<(usize, usize)> = owner
        .keys()
        .copied()
        .filter(|&(a, b)| a < b && owner.contains_key(&(b, a)))
        .collect();
    if interior.is_empty() {
        return;
    }
    let (a, b) = interior[rng.gen_range(0..interior.len())];
    let (t1, t2) = (owner[&(a, b)], owner[&(b, a)]);
    let third = |t: [usize; 3]| t.into_iter().find(|&v| v != a && v != b).unwrap();
    let (c, d) = (third(tris[t1]), third(tris[t2]));
    let adjacent = owner.contains_key(&(c, d)) || owner.contains_key(&(d, c));
    if adjacent || degree[&a] < 4 || degree[&b] < 4 {
        return;
    }
    // (a, b, c) and (b, a, d) become (c, d, b) and (d, c, a)
    tris[t1] = [c, d, b];
    tris[t2] = [d, c, a];
}
