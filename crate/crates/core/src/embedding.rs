//! Embedding of the diagram graph on the projection surface.
//!
//! Face data is a combinatorial map: every edge has two sides (darts), `e^`
//! running from the edge's tail to its head and `e_` running back, and every
//! face is a closed walk of darts with the face on the left. The projected
//! crossing circles are kept as small rings around their crossing arcs, so
//! each circle contributes four 4-valent vertices named
//! `<circle>.<slot>.in` / `<circle>.<slot>.out` after the strand crossing
//! the ring there.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::diagram::{validate, Direction, FalDiagram, Slot};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeSide {
    /// `^`: traversed from tail to head.
    Forward,
    /// `_`: traversed from head to tail.
    Backward,
}

impl EdgeSide {
    pub fn marker(self) -> char {
        match self {
            EdgeSide::Forward => '^',
            EdgeSide::Backward => '_',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub edge: String,
    pub side: EdgeSide,
}

impl Dart {
    pub fn forward(edge: impl Into<String>) -> Self {
        Dart {
            edge: edge.into(),
            side: EdgeSide::Forward,
        }
    }

    pub fn backward(edge: impl Into<String>) -> Self {
        Dart {
            edge: edge.into(),
            side: EdgeSide::Backward,
        }
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.edge, self.side.marker())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub tail: String,
    pub head: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FaceData {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
    pub faces: Vec<Vec<Dart>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("malformed face data: {}", .0.join("; "))]
    Structural(Vec<String>),
    #[error("Euler characteristic {0} is not that of a closed orientable surface")]
    BadEulerCharacteristic(i64),
    #[error("embedding data required")]
    MissingEmbedding,
    #[error("diagram is invalid")]
    InvalidDiagram,
    #[error("expected {expected} crossing-arc sides, got {got}")]
    ArcSideCount { expected: usize, got: usize },
}

/// Indexed form of [`FaceData`]. Dart `2e` is edge `e` forward, `2e + 1` backward.
#[derive(Debug, Clone)]
pub(crate) struct CombinatorialMap {
    pub(crate) tail: Vec<usize>,
    /// Next dart along the face on the left.
    pub(crate) face_next: Vec<usize>,
    pub(crate) face_of: Vec<usize>,
    pub(crate) vertex_count: usize,
    pub(crate) face_count: usize,
}

impl CombinatorialMap {
    pub(crate) fn reverse(d: usize) -> usize {
        d ^ 1
    }

    pub(crate) fn dart_count(&self) -> usize {
        self.tail.len()
    }

    /// Next dart clockwise around the tail vertex of `d`.
    pub(crate) fn rotate(&self, d: usize) -> usize {
        self.face_next[Self::reverse(d)]
    }

    /// Dart leaving `head(d)` straight ahead of `d` at a 4-valent vertex.
    pub(crate) fn straight_on(&self, d: usize) -> usize {
        let back = Self::reverse(d);
        self.rotate(self.rotate(back))
    }

    pub(crate) fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - (self.dart_count() / 2) as i64 + self.face_count as i64
    }
}

impl FaceData {
    pub fn vertex_index(&self, v: &str) -> Option<usize> {
        self.vertices.iter().position(|x| x == v)
    }

    pub fn edge_index(&self, e: &str) -> Option<usize> {
        self.edges.iter().position(|x| x.id == e)
    }

    /// Every reason this face data fails to describe a closed oriented surface
    /// with the graph cellularly embedded. Valence is not checked here.
    pub fn structural_problems(&self) -> Vec<String> {
        self.build_map().err().unwrap_or_default()
    }

    /// Vertices whose valence differs from `valence`.
    pub fn valence_problems(&self, valence: usize) -> Vec<String> {
        let mut count: BTreeMap<&str, usize> =
            self.vertices.iter().map(|v| (v.as_str(), 0)).collect();
        for e in &self.edges {
            for v in [&e.tail, &e.head] {
                if let Some(c) = count.get_mut(v.as_str()) {
                    *c += 1;
                }
            }
        }
        self.vertices
            .iter()
            .filter(|v| count[v.as_str()] != valence)
            .map(|v| {
                format!(
                    "vertex {v} has valence {}, expected {valence}",
                    count[v.as_str()]
                )
            })
            .collect()
    }

    pub(crate) fn dart_index(&self, dart: &Dart) -> Option<usize> {
        let e = self.edge_index(&dart.edge)?;
        Some(match dart.side {
            EdgeSide::Forward => 2 * e,
            EdgeSide::Backward => 2 * e + 1,
        })
    }

    pub(crate) fn build_map(&self) -> Result<CombinatorialMap, Vec<String>> {
        let mut problems = Vec::new();

        let mut vindex = BTreeMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if vindex.insert(v.as_str(), i).is_some() {
                problems.push(format!("vertex {v} declared twice"));
            }
        }
        let mut eindex = BTreeMap::new();
        let mut tail = vec![usize::MAX; 2 * self.edges.len()];
        for (i, e) in self.edges.iter().enumerate() {
            if eindex.insert(e.id.as_str(), i).is_some() {
                problems.push(format!("edge {} declared twice", e.id));
            }
            match (vindex.get(e.tail.as_str()), vindex.get(e.head.as_str())) {
                (Some(&t), Some(&h)) => {
                    tail[2 * i] = t;
                    tail[2 * i + 1] = h;
                }
                _ => problems.push(format!("edge {} has an undeclared endpoint", e.id)),
            }
        }
        if !problems.is_empty() {
            return Err(problems);
        }

        let ndarts = tail.len();
        let mut face_next = vec![usize::MAX; ndarts];
        let mut face_of = vec![usize::MAX; ndarts];
        let mut uses = vec![0usize; ndarts];
        for (fi, face) in self.faces.iter().enumerate() {
            if face.is_empty() {
                problems.push(format!("face {} is empty", fi + 1));
                continue;
            }
            let mut idx = Vec::with_capacity(face.len());
            for dart in face {
                match eindex.get(dart.edge.as_str()) {
                    Some(&e) => idx.push(match dart.side {
                        EdgeSide::Forward => 2 * e,
                        EdgeSide::Backward => 2 * e + 1,
                    }),
                    None => problems.push(format!("face {} uses unknown edge {}", fi + 1, dart.edge)),
                }
            }
            if idx.len() != face.len() {
                continue;
            }
            for (k, &d) in idx.iter().enumerate() {
                let next = idx[(k + 1) % idx.len()];
                uses[d] += 1;
                face_next[d] = next;
                face_of[d] = fi;
                if tail[d ^ 1] != tail[next] {
                    problems.push(format!(
                        "face {} is not a closed walk at {}",
                        fi + 1,
                        face[k]
                    ));
                }
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            let total = uses[2 * i] + uses[2 * i + 1];
            if total != 2 || uses[2 * i] != 1 {
                problems.push(format!(
                    "edge {} used in {} face sides ({}^ x{}, {}_ x{})",
                    e.id, total, e.id, uses[2 * i], e.id, uses[2 * i + 1]
                ));
            }
        }
        if !problems.is_empty() {
            return Err(problems);
        }

        let map = CombinatorialMap {
            tail,
            face_next,
            face_of,
            vertex_count: self.vertices.len(),
            face_count: self.faces.len(),
        };

        // the corners at each vertex must close up into a single disc
        let mut seen = vec![false; ndarts];
        let mut orbits_at = vec![0usize; self.vertices.len()];
        for d in 0..ndarts {
            if seen[d] {
                continue;
            }
            orbits_at[map.tail[d]] += 1;
            let mut x = d;
            while !seen[x] {
                seen[x] = true;
                x = map.rotate(x);
            }
        }
        for (v, &n) in orbits_at.iter().enumerate() {
            match n {
                0 => problems.push(format!("vertex {} has no incident edges", self.vertices[v])),
                1 => {}
                _ => problems.push(format!(
                    "faces around vertex {} do not form a disc",
                    self.vertices[v]
                )),
            }
        }

        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            r
        }
        for e in 0..self.edges.len() {
            let (a, b) = (find(&mut parent, map.tail[2 * e]), find(&mut parent, map.tail[2 * e + 1]));
            parent[a] = b;
        }
        if !self.vertices.is_empty() {
            let root = find(&mut parent, 0);
            if (0..self.vertices.len()).any(|v| find(&mut parent, v) != root) {
                problems.push("embedded graph is not connected".to_string());
            }
        }

        if problems.is_empty() {
            Ok(map)
        } else {
            Err(problems)
        }
    }
}

/// Genus `g` of the closed surface assembled from the faces, from `2 − 2g = V − E + F`.
pub fn genus_of_embedding(face_data: &FaceData) -> Result<u32, EmbeddingError> {
    let map = face_data.build_map().map_err(EmbeddingError::Structural)?;
    let chi = map.euler_characteristic();
    if chi > 2 || chi % 2 != 0 {
        return Err(EmbeddingError::BadEulerCharacteristic(chi));
    }
    Ok(((2 - chi) / 2) as u32)
}

/// Whether every complementary region of the diagram is a disc.
///
/// Faces of consistent face data are discs by construction, so this reduces
/// to comparing the genus of the face complex with the declared surface
/// genus. Half twists do not enter.
pub fn is_cellular(diagram: &FalDiagram) -> Result<bool, EmbeddingError> {
    let faces = diagram
        .embedding
        .as_ref()
        .ok_or(EmbeddingError::MissingEmbedding)?;
    Ok(genus_of_embedding(faces)? == diagram.surface_genus)
}

/// Name of the ring vertex where the strand occupying `slot` crosses the
/// projected circle on its way into (`out = false`) or out of the ring.
pub fn ring_vertex(circle: &str, slot: Slot, out: bool) -> String {
    format!("{circle}.{slot}.{}", if out { "out" } else { "in" })
}

/// The four ring vertices of every circle, in circle order.
pub fn expected_ring_vertices(diagram: &FalDiagram) -> Vec<String> {
    diagram
        .circles
        .iter()
        .flat_map(|c| {
            [
                ring_vertex(&c.id, Slot::A, false),
                ring_vertex(&c.id, Slot::A, true),
                ring_vertex(&c.id, Slot::B, false),
                ring_vertex(&c.id, Slot::B, true),
            ]
        })
        .collect()
}

/// Problems tying face data to the diagram it is attached to: one ring
/// vertex per circle slot crossing, all 4-valent.
pub fn diagram_face_problems(diagram: &FalDiagram) -> Vec<String> {
    let Some(faces) = &diagram.embedding else {
        return Vec::new();
    };
    let mut problems = faces.structural_problems();
    problems.extend(faces.valence_problems(4));
    let expected: BTreeSet<String> = expected_ring_vertices(diagram).into_iter().collect();
    let declared: BTreeSet<String> = faces.vertices.iter().cloned().collect();
    for missing in expected.difference(&declared) {
        problems.push(format!("ring vertex {missing} is not declared"));
    }
    for extra in declared.difference(&expected) {
        problems.push(format!("vertex {extra} is not a ring vertex of any circle"));
    }
    problems
}

/// Side of a strand, looking along its orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArcSide {
    Left,
    Right,
}

/// Builds ring-representation face data for a valid diagram.
///
/// `arc_sides[i]` says on which side of the strand through slot `A` of circle
/// `i` the crossing arc leaves towards slot `B`. The side at slot `B` follows
/// from the disc co-orientation. The surface is whatever the resulting
/// rotation system produces; read it off with [`genus_of_embedding`].
pub fn ring_embedding(
    diagram: &FalDiagram,
    arc_sides: &[ArcSide],
) -> Result<FaceData, EmbeddingError> {
    let mut plain = diagram.clone();
    plain.embedding = None;
    if !validate(&plain).is_valid() {
        return Err(EmbeddingError::InvalidDiagram);
    }
    if arc_sides.len() != diagram.circles.len() {
        return Err(EmbeddingError::ArcSideCount {
            expected: diagram.circles.len(),
            got: arc_sides.len(),
        });
    }

    let mut edges = Vec::new();
    let mut add_edge = |id: String, tail: String, head: String| {
        edges.push(Edge { id, tail, head });
    };

    // passage lookup: (circle, slot) -> (strand, position)
    let mut at = BTreeMap::new();
    for (si, s) in diagram.strands.iter().enumerate() {
        for (pi, p) in s.passages.iter().enumerate() {
            at.insert((p.circle.clone(), p.slot), (si, pi));
        }
    }

    // rotations, counter-clockwise, as (edge id, side)
    let mut rotation: BTreeMap<String, Vec<Dart>> = BTreeMap::new();

    for s in &diagram.strands {
        let k = s.passages.len();
        for (i, p) in s.passages.iter().enumerate() {
            let inner = format!("{}.p{i}", s.id);
            add_edge(
                inner,
                ring_vertex(&p.circle, p.slot, false),
                ring_vertex(&p.circle, p.slot, true),
            );
            let next = &s.passages[(i + 1) % k];
            add_edge(
                format!("{}.a{i}", s.id),
                ring_vertex(&p.circle, p.slot, true),
                ring_vertex(&next.circle, next.slot, false),
            );
        }
    }

    for (ci, c) in diagram.circles.iter().enumerate() {
        let dir = |slot: Slot| {
            let (si, pi) = at[&(c.id.clone(), slot)];
            diagram.strands[si].passages[pi].direction
        };
        // the positive side of slot X is its `out` vertex when the strand crosses with +
        let pos = |slot: Slot| ring_vertex(&c.id, slot, dir(slot) == Direction::Plus);
        let neg = |slot: Slot| ring_vertex(&c.id, slot, dir(slot) == Direction::Minus);
        add_edge(
            format!("{}.tA", c.id),
            ring_vertex(&c.id, Slot::A, false),
            ring_vertex(&c.id, Slot::A, true),
        );
        add_edge(
            format!("{}.tB", c.id),
            ring_vertex(&c.id, Slot::B, false),
            ring_vertex(&c.id, Slot::B, true),
        );
        add_edge(format!("{}.mp", c.id), pos(Slot::A), pos(Slot::B));
        add_edge(format!("{}.mn", c.id), neg(Slot::A), neg(Slot::B));

        let side_a = arc_sides[ci];
        // positive side lies to the right of the arc's travel direction at A
        // iff (side == Left) == (direction == Plus); at B the travel direction
        // is reversed, which fixes the side there.
        let plus_right_a = (side_a == ArcSide::Left) == (dir(Slot::A) == Direction::Plus);
        let side_b = if (dir(Slot::B) == Direction::Plus) != plus_right_a {
            ArcSide::Left
        } else {
            ArcSide::Right
        };
        for (slot, side) in [(Slot::A, side_a), (Slot::B, side_b)] {
            let (si, pi) = at[&(c.id.clone(), slot)];
            let strand = &diagram.strands[si];
            let k = strand.passages.len();
            let inner = format!("{}.p{pi}", strand.id);
            let arrive = format!("{}.a{}", strand.id, (pi + k - 1) % k);
            let leave = format!("{}.a{pi}", strand.id);
            let tip = format!("{}.t{slot}", c.id);
            let (in_is_pos, out_is_pos) = (dir(slot) == Direction::Minus, dir(slot) == Direction::Plus);
            let mid_dart = |is_pos: bool, vertex_is_tail_side: bool| {
                let e = if is_pos {
                    format!("{}.mp", c.id)
                } else {
                    format!("{}.mn", c.id)
                };
                // mid edges run from slot A to slot B
                if vertex_is_tail_side {
                    Dart::forward(e)
                } else {
                    Dart::backward(e)
                }
            };
            let at_a = slot == Slot::A;
            let in_v = ring_vertex(&c.id, slot, false);
            let out_v = ring_vertex(&c.id, slot, true);
            // local frame: strand runs east, north is its left
            let (in_rot, out_rot) = match side {
                ArcSide::Left => (
                    vec![
                        Dart::forward(&inner),
                        mid_dart(in_is_pos, at_a),
                        Dart::backward(&arrive),
                        Dart::forward(&tip),
                    ],
                    vec![
                        Dart::forward(&leave),
                        mid_dart(out_is_pos, at_a),
                        Dart::backward(&inner),
                        Dart::backward(&tip),
                    ],
                ),
                ArcSide::Right => (
                    vec![
                        Dart::forward(&inner),
                        Dart::forward(&tip),
                        Dart::backward(&arrive),
                        mid_dart(in_is_pos, at_a),
                    ],
                    vec![
                        Dart::forward(&leave),
                        Dart::backward(&tip),
                        Dart::backward(&inner),
                        mid_dart(out_is_pos, at_a),
                    ],
                ),
            };
            rotation.insert(in_v, in_rot);
            rotation.insert(out_v, out_rot);
        }
    }

    let vertices = expected_ring_vertices(diagram);
    let mut fd = FaceData {
        vertices,
        edges,
        faces: Vec::new(),
    };
    fd.faces = faces_from_rotation(&fd, &rotation);
    Ok(fd)
}

/// Traces faces from a counter-clockwise rotation system: after arriving at
/// a vertex along a dart, the face continues with the dart clockwise-next to
/// its reverse.
pub fn faces_from_rotation(
    skeleton: &FaceData,
    rotation: &BTreeMap<String, Vec<Dart>>,
) -> Vec<Vec<Dart>> {
    let ne = skeleton.edges.len();
    let mut cw_next = vec![usize::MAX; 2 * ne];
    for darts in rotation.values() {
        let idx: Vec<usize> = darts
            .iter()
            .filter_map(|d| skeleton.dart_index(d))
            .collect();
        let n = idx.len();
        for k in 0..n {
            cw_next[idx[k]] = idx[(k + n - 1) % n];
        }
    }
    let dart_of = |d: usize| {
        let e = &skeleton.edges[d / 2].id;
        if d % 2 == 0 {
            Dart::forward(e.clone())
        } else {
            Dart::backward(e.clone())
        }
    };
    let mut seen = vec![false; 2 * ne];
    let mut faces = Vec::new();
    for start in 0..2 * ne {
        if seen[start] || cw_next[start ^ 1] == usize::MAX {
            continue;
        }
        let mut walk = Vec::new();
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            walk.push(dart_of(d));
            let next = cw_next[d ^ 1];
            if next == usize::MAX {
                break;
            }
            d = next;
        }
        faces.push(walk);
    }
    faces
}
