use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::diagram::{validate, Direction, FalDiagram, Slot};
use crate::embedding::{genus_of_embedding, is_cellular, ring_vertex, CombinatorialMap, EmbeddingError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NerveKind {
    Sphere,
    Disc,
}

/// A consistently oriented simplicial surface, sphere or disc.
///
/// Vertices are kept sorted by token, triangles start at their smallest
/// vertex and are sorted; together that is the canonical order used by the
/// solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nerve {
    pub vertices: Vec<String>,
    pub triangles: Vec<[usize; 3]>,
    /// Vertices on the boundary; `None` for a sphere.
    pub boundary: Option<BTreeSet<usize>>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NerveError {
    #[error("nerve construction failed: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("diagram is invalid")]
    InvalidDiagram,
    #[error("nerves are only built for genus 0 diagrams, got genus {0}")]
    UnsupportedGenus(u32),
    #[error("diagram is not cellular")]
    NotCellular,
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

fn invalid(msg: impl Into<String>) -> NerveError {
    NerveError::Invalid(vec![msg.into()])
}

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl Nerve {
    /// Validates and orients a triangulated sphere or disc given by named
    /// vertices and unoriented triangles.
    pub fn new(vertices: Vec<String>, triangles: Vec<[usize; 3]>) -> Result<Nerve, NerveError> {
        let mut problems = Vec::new();
        let n = vertices.len();
        let unique: BTreeSet<&String> = vertices.iter().collect();
        if unique.len() != n {
            problems.push("repeated vertex token".to_string());
        }
        if triangles.is_empty() {
            problems.push("no triangles".to_string());
        }
        for t in &triangles {
            if t.iter().any(|&v| v >= n) {
                problems.push(format!("triangle {t:?} references a missing vertex"));
            } else if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                problems.push(format!(
                    "triangle ({} {} {}) repeats a vertex",
                    vertices[t[0]], vertices[t[1]], vertices[t[2]]
                ));
            }
        }
        if !problems.is_empty() {
            return Err(NerveError::Invalid(problems));
        }

        // canonical relabeling: sorted tokens
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| vertices[a].cmp(&vertices[b]));
        let mut new_index = vec![0; n];
        for (i, &old) in order.iter().enumerate() {
            new_index[old] = i;
        }
        let vertices: Vec<String> = order.iter().map(|&i| vertices[i].clone()).collect();
        let mut tris: Vec<[usize; 3]> = triangles
            .iter()
            .map(|t| {
                let mut s = t.map(|v| new_index[v]);
                s.sort_unstable();
                s
            })
            .collect();
        tris.sort_unstable();
        for w in tris.windows(2) {
            if w[0] == w[1] {
                problems.push(format!(
                    "triangle ({} {} {}) appears twice",
                    vertices[w[0][0]], vertices[w[0][1]], vertices[w[0][2]]
                ));
            }
        }

        let mut edge_tris: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (ti, t) in tris.iter().enumerate() {
            for k in 0..3 {
                edge_tris.entry(edge_key(t[k], t[(k + 1) % 3])).or_default().push(ti);
            }
        }
        for (&(a, b), ts) in &edge_tris {
            if ts.len() > 2 {
                problems.push(format!(
                    "edge {}-{} lies in {} triangles",
                    vertices[a],
                    vertices[b],
                    ts.len()
                ));
            }
        }
        if !problems.is_empty() {
            return Err(NerveError::Invalid(problems));
        }

        // vertex links must be a single cycle or a single path
        let mut link: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for t in &tris {
            for k in 0..3 {
                link[t[k]].push(edge_key(t[(k + 1) % 3], t[(k + 2) % 3]));
            }
        }
        let mut boundary = BTreeSet::new();
        for (v, edges) in link.iter().enumerate() {
            if edges.is_empty() {
                problems.push(format!("vertex {} lies in no triangle", vertices[v]));
                continue;
            }
            let mut deg: BTreeMap<usize, usize> = BTreeMap::new();
            for &(a, b) in edges {
                *deg.entry(a).or_default() += 1;
                *deg.entry(b).or_default() += 1;
            }
            let ends = deg.values().filter(|&&d| d == 1).count();
            let connected = {
                let mut seen = BTreeSet::from([edges[0].0]);
                let mut changed = true;
                while changed {
                    changed = false;
                    for &(a, b) in edges {
                        if seen.contains(&a) != seen.contains(&b) {
                            seen.insert(a);
                            seen.insert(b);
                            changed = true;
                        }
                    }
                }
                seen.len() == deg.len()
            };
            match (ends, connected) {
                (0, true) => {}
                (2, true) => {
                    boundary.insert(v);
                }
                _ => problems.push(format!(
                    "link of vertex {} is neither a cycle nor a path",
                    vertices[v]
                )),
            }
        }
        if !problems.is_empty() {
            return Err(NerveError::Invalid(problems));
        }

        // orient by breadth-first propagation across shared edges
        let mut oriented: Vec<Option<[usize; 3]>> = vec![None; tris.len()];
        oriented[0] = Some(tris[0]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(ti) = queue.pop_front() {
            let t = oriented[ti].unwrap();
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                for &tj in &edge_tris[&edge_key(a, b)] {
                    if tj == ti {
                        continue;
                    }
                    let other = tris[tj];
                    let c = other.iter().copied().find(|&x| x != a && x != b).unwrap();
                    // the neighbour must traverse the shared edge as b -> a
                    let want = [b, a, c];
                    match oriented[tj] {
                        None => {
                            oriented[tj] = Some(want);
                            queue.push_back(tj);
                        }
                        Some(o) => {
                            if !same_cycle(o, want) {
                                return Err(invalid("triangulation is not orientable"));
                            }
                        }
                    }
                }
            }
        }
        if oriented.iter().any(Option::is_none) {
            return Err(invalid("triangulation is not connected"));
        }
        let mut triangles: Vec<[usize; 3]> = oriented
            .into_iter()
            .map(|t| {
                let mut t = t.unwrap();
                let m = (0..3).min_by_key(|&i| t[i]).unwrap();
                t.rotate_left(m);
                t
            })
            .collect();
        triangles.sort_unstable_by_key(|t| {
            let mut s = *t;
            s.sort_unstable();
            s
        });

        let chi = n as i64 - edge_tris.len() as i64 + triangles.len() as i64;
        let boundary = if boundary.is_empty() {
            if chi != 2 {
                return Err(invalid(format!("closed nerve has V-E+F = {chi}, expected 2")));
            }
            None
        } else {
            if chi != 1 {
                return Err(invalid(format!("nerve with boundary has V-E+F = {chi}, expected 1")));
            }
            Some(boundary)
        };
        Ok(Nerve {
            vertices,
            triangles,
            boundary,
        })
    }

    pub fn kind(&self) -> NerveKind {
        if self.boundary.is_some() {
            NerveKind::Disc
        } else {
            NerveKind::Sphere
        }
    }

    /// Unordered edges, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let set: BTreeSet<(usize, usize)> = self
            .triangles
            .iter()
            .flat_map(|t| (0..3).map(move |k| edge_key(t[k], t[(k + 1) % 3])))
            .collect();
        set.into_iter().collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges().len() as i64 + self.triangles.len() as i64
    }

    pub fn index_of(&self, token: &str) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.as_str().cmp(token)).ok()
    }

    /// Triangles as token triples.
    pub fn named_triangles(&self) -> Vec<[&str; 3]> {
        self.triangles
            .iter()
            .map(|t| t.map(|v| self.vertices[v].as_str()))
            .collect()
    }
}

fn same_cycle(a: [usize; 3], b: [usize; 3]) -> bool {
    (0..3).any(|r| {
        let mut x = a;
        x.rotate_left(r);
        x == b
    })
}

/// Smallest rotation of `seq` or of its reverse.
fn canonical_cycle(seq: &[usize]) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    let mut rev = seq.to_vec();
    rev.reverse();
    for s in [seq.to_vec(), rev] {
        for r in 0..s.len() {
            let mut x = s.clone();
            x.rotate_left(r);
            if best.as_ref().map_or(true, |b| x < *b) {
                best = Some(x);
            }
        }
    }
    best.unwrap_or_default()
}

/// Darts of `cycle` relabeled so that dart `i` runs from `pattern[i]` to
/// `pattern[i + 1]`.
fn align(map: &CombinatorialMap, cycle: &[usize], pattern: &[usize]) -> Option<Vec<usize>> {
    let len = cycle.len();
    for reversed in [false, true] {
        let darts: Vec<usize> = if reversed {
            cycle.iter().rev().map(|&d| d ^ 1).collect()
        } else {
            cycle.to_vec()
        };
        for r in 0..len {
            if (0..len).all(|i| map.tail[darts[(i + r) % len]] == pattern[i]) {
                return Some((0..len).map(|i| darts[(i + r) % len]).collect());
            }
        }
    }
    None
}

/// The nerve of the white regions of a cellular planar diagram.
///
/// Straight-ahead walks through the 4-valent ring vertices identify the
/// strands and projected circles. Faces touching an inner strand edge lie
/// inside a ring; the rest are white regions, named `F<k>` after their
/// position in the face list. Each circle contributes one triangle per side
/// of its crossing arc, spanning the regions beyond either strand and the
/// region on that side.
pub fn nerve_from_diagram(diagram: &FalDiagram) -> Result<Nerve, NerveError> {
    if !validate(diagram).is_valid() {
        return Err(NerveError::InvalidDiagram);
    }
    if diagram.surface_genus != 0 {
        return Err(NerveError::UnsupportedGenus(diagram.surface_genus));
    }
    let faces = diagram.embedding.as_ref().ok_or(EmbeddingError::MissingEmbedding)?;
    let genus = genus_of_embedding(faces)?;
    if !is_cellular(diagram)? {
        return Err(if genus != 0 {
            NerveError::UnsupportedGenus(genus)
        } else {
            NerveError::NotCellular
        });
    }
    let map = faces.build_map().map_err(NerveError::Invalid)?;
    let vid = |name: &str| faces.vertex_index(name).expect("validated ring vertex");

    // straight-ahead cycles, each stored once
    let mut used = vec![false; map.dart_count()];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for start in 0..map.dart_count() {
        if used[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut d = start;
        loop {
            used[d] = true;
            used[d ^ 1] = true;
            cyc.push(d);
            d = map.straight_on(d);
            if d == start || cyc.len() > map.dart_count() {
                break;
            }
        }
        if d != start {
            return Err(invalid("straight-ahead walk does not close"));
        }
        cycles.push(cyc);
    }

    enum Role {
        Strand,
        Ring(usize),
    }
    let mut patterns: Vec<(Role, Vec<usize>)> = Vec::new();
    for s in &diagram.strands {
        let seq = s
            .passages
            .iter()
            .flat_map(|p| [vid(&ring_vertex(&p.circle, p.slot, false)), vid(&ring_vertex(&p.circle, p.slot, true))])
            .collect();
        patterns.push((Role::Strand, seq));
    }
    for (ci, c) in diagram.circles.iter().enumerate() {
        let dir = |slot: Slot| {
            diagram
                .strands
                .iter()
                .flat_map(|s| &s.passages)
                .find(|p| p.circle == c.id && p.slot == slot)
                .map(|p| p.direction)
                .expect("validated passage")
        };
        let pos = |slot: Slot| vid(&ring_vertex(&c.id, slot, dir(slot) == Direction::Plus));
        let neg = |slot: Slot| vid(&ring_vertex(&c.id, slot, dir(slot) == Direction::Minus));
        patterns.push((Role::Ring(ci), vec![neg(Slot::A), pos(Slot::A), pos(Slot::B), neg(Slot::B)]));
    }

    let mut by_key: BTreeMap<Vec<usize>, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (ci, cyc) in cycles.iter().enumerate() {
        let seq: Vec<usize> = cyc.iter().map(|&d| map.tail[d]).collect();
        by_key.entry(canonical_cycle(&seq)).or_default().0.push(ci);
    }
    for (pi, (_, seq)) in patterns.iter().enumerate() {
        by_key.entry(canonical_cycle(seq)).or_default().1.push(pi);
    }

    let mut inner_darts = Vec::new();
    let mut ring_darts: Vec<Option<[usize; 4]>> = vec![None; diagram.circles.len()];
    for (cs, ps) in by_key.values() {
        if cs.len() != ps.len() {
            return Err(invalid(
                "straight-ahead walks of the face data do not match the strands and circles",
            ));
        }
        for (&ci, &pi) in cs.iter().zip(ps) {
            let (role, seq) = &patterns[pi];
            let darts = align(&map, &cycles[ci], seq).ok_or_else(|| invalid("cannot align walk"))?;
            match role {
                Role::Strand => inner_darts.extend(darts.iter().step_by(2).copied()),
                Role::Ring(c) => ring_darts[*c] = Some([darts[0], darts[1], darts[2], darts[3]]),
            }
        }
    }

    let interior: BTreeSet<usize> = inner_darts
        .iter()
        .flat_map(|&d| [map.face_of[d], map.face_of[d ^ 1]])
        .collect();
    let exterior = |d: usize| -> Result<usize, NerveError> {
        let (f, g) = (map.face_of[d], map.face_of[d ^ 1]);
        match (interior.contains(&f), interior.contains(&g)) {
            (true, false) => Ok(g),
            (false, true) => Ok(f),
            _ => Err(invalid(format!(
                "ring edge {} does not separate the ring from a white region",
                faces.edges[d / 2].id
            ))),
        }
    };

    let white: Vec<usize> = (0..map.face_count).filter(|f| !interior.contains(f)).collect();
    let index_of_face: BTreeMap<usize, usize> = white.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let names: Vec<String> = white.iter().map(|f| format!("F{}", f + 1)).collect();
    let mut triangles = Vec::new();
    for darts in ring_darts {
        let [ta, mp, tb, mn] = darts.ok_or_else(|| invalid("circle ring not found"))?;
        let (ea, eb) = (exterior(ta)?, exterior(tb)?);
        for mid in [mp, mn] {
            let em = exterior(mid)?;
            triangles.push([index_of_face[&em], index_of_face[&ea], index_of_face[&eb]]);
        }
    }
    let nerve = Nerve::new(names, triangles)?;
    if nerve.kind() != NerveKind::Sphere {
        return Err(invalid("nerve of a planar diagram must be a sphere"));
    }
    Ok(nerve)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::samples;
    use crate::embedding::{ring_embedding, ArcSide};

    fn planar_borromean() -> FalDiagram {
        let d = samples::borromean();
        let fd = ring_embedding(&d, &[ArcSide::Left, ArcSide::Right]).unwrap();
        d.with_embedding(fd)
    }

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn borromean_nerve_is_a_tetrahedron() {
        let nerve = nerve_from_diagram(&planar_borromean()).unwrap();
        assert_eq!(nerve.kind(), NerveKind::Sphere);
        assert_eq!(nerve.vertices.len(), 4);
        assert_eq!(nerve.edges().len(), 6);
        assert_eq!(nerve.triangles.len(), 4);
        assert_eq!(nerve.euler_characteristic(), 2);
    }

    #[test]
    fn diagrams_without_a_planar_embedding_are_rejected() {
        assert!(matches!(
            nerve_from_diagram(&samples::borromean()),
            Err(NerveError::Embedding(EmbeddingError::MissingEmbedding))
        ));
        // both arcs on the same side give a torus
        let d = samples::borromean();
        let fd = ring_embedding(&d, &[ArcSide::Left, ArcSide::Left]).unwrap();
        let g = genus_of_embedding(&fd).unwrap();
        if g != 0 {
            let err = nerve_from_diagram(&d.with_embedding(fd)).unwrap_err();
            assert!(matches!(err, NerveError::NotCellular | NerveError::UnsupportedGenus(_)));
        }
        assert!(matches!(
            nerve_from_diagram(&samples::torus_chain_link()),
            Err(NerveError::UnsupportedGenus(1))
        ));
    }

    #[test]
    fn abstract_tetrahedron_and_orientation() {
        let n = Nerve::new(names(&["d", "c", "b", "a"]), vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap();
        assert_eq!(n.vertices, names(&["a", "b", "c", "d"]));
        let mut directed = BTreeSet::new();
        for t in &n.triangles {
            for k in 0..3 {
                assert!(directed.insert((t[k], t[(k + 1) % 3])), "edge used twice in one direction");
            }
        }
        assert_eq!(directed.len(), 12);
    }

    #[test]
    fn disc_nerve() {
        let n = Nerve::new(names(&["a", "b", "c", "x"]), vec![[0, 1, 3], [1, 2, 3], [2, 0, 3]]).unwrap();
        assert_eq!(n.kind(), NerveKind::Disc);
        assert_eq!(n.boundary, Some(BTreeSet::from([0, 1, 2])));
        assert_eq!(n.euler_characteristic(), 1);
    }

    #[test]
    fn rejects_non_manifold_and_degenerate_input() {
        assert!(Nerve::new(names(&["a", "b"]), vec![[0, 1, 1]]).is_err());
        assert!(Nerve::new(names(&["a", "b", "c"]), vec![[0, 1, 2], [2, 1, 0]]).is_err());
        // three triangles on one edge
        assert!(Nerve::new(
            names(&["a", "b", "c", "d", "e"]),
            vec![[0, 1, 2], [0, 1, 3], [0, 1, 4]]
        )
        .is_err());
        // two triangles meeting in a single vertex
        assert!(Nerve::new(names(&["a", "b", "c", "d", "e"]), vec![[0, 1, 2], [0, 3, 4]]).is_err());
        // an annulus
        let annulus = vec![
            [0, 1, 3],
            [1, 4, 3],
            [1, 2, 4],
            [2, 5, 4],
            [2, 0, 5],
            [0, 3, 5],
        ];
        let err = Nerve::new(names(&["a", "b", "c", "d", "e", "f"]), annulus).unwrap_err();
        assert!(err.to_string().contains("expected 1"));
    }
}
