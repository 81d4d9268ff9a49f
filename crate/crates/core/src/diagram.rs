//! Combinatorial model of a fully augmented link on a surface.
//!
//! A diagram consists of knot strands embedded in the projection surface and
//! crossing circles, each bounding a crossing disc that the strands pierce in
//! exactly two points. Each piercing is recorded as a [`Passage`] on the
//! strand, naming the circle, the slot (`A` or `B`) of the disc it occupies,
//! and the direction in which the strand crosses the disc relative to a fixed
//! co-orientation of that disc.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::embedding::{diagram_face_problems, FaceData};

/// The compact 3-manifold `M` whose double carries the link.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ManifoldSpec {
    Ball,
    Handlebody { genus: u32 },
    /// `Σ × [−1, 0]`, doubled along `Σ × {0}`.
    ThickenedSurface { genus: u32 },
    /// Arbitrary compact orientable `M`; the Euler characteristic is taken on trust.
    Custom { chi: i64, label: String },
}

impl ManifoldSpec {
    pub fn euler_characteristic(&self) -> i64 {
        match self {
            ManifoldSpec::Ball => 1,
            ManifoldSpec::Handlebody { genus } => 1 - i64::from(*genus),
            ManifoldSpec::ThickenedSurface { genus } => 2 - 2 * i64::from(*genus),
            ManifoldSpec::Custom { chi, .. } => *chi,
        }
    }

    /// False when χ is user-asserted rather than computed.
    pub fn chi_verified(&self) -> bool {
        !matches!(self, ManifoldSpec::Custom { .. })
    }

    /// Genus the projection surface must have, when the manifold determines it.
    pub fn required_surface_genus(&self) -> Option<u32> {
        match self {
            ManifoldSpec::Ball => Some(0),
            ManifoldSpec::Handlebody { genus } | ManifoldSpec::ThickenedSurface { genus } => {
                Some(*genus)
            }
            ManifoldSpec::Custom { .. } => None,
        }
    }
}

impl fmt::Display for ManifoldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifoldSpec::Ball => write!(f, "ball"),
            ManifoldSpec::Handlebody { genus } => write!(f, "handlebody {genus}"),
            ManifoldSpec::ThickenedSurface { genus } => write!(f, "thickened_surface {genus}"),
            ManifoldSpec::Custom { chi, label } => write!(f, "custom chi {chi} {label}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum HalfTwist {
    #[default]
    None,
    Positive,
    Negative,
}

impl HalfTwist {
    pub fn is_twisted(self) -> bool {
        self != HalfTwist::None
    }

    /// Shift of the cusp gluing, in black side units.
    pub fn shear(self) -> i8 {
        match self {
            HalfTwist::None => 0,
            HalfTwist::Positive => 1,
            HalfTwist::Negative => -1,
        }
    }

    /// `None` becomes `Positive`; any twist becomes `None`.
    pub fn toggled(self) -> HalfTwist {
        match self {
            HalfTwist::None => HalfTwist::Positive,
            _ => HalfTwist::None,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            HalfTwist::None => "none",
            HalfTwist::Positive => "+",
            HalfTwist::Negative => "-",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    A,
    B,
}

impl Slot {
    pub fn other(self) -> Slot {
        match self {
            Slot::A => Slot::B,
            Slot::B => Slot::A,
        }
    }

    fn index(self) -> usize {
        match self {
            Slot::A => 0,
            Slot::B => 1,
        }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Slot::A => "A",
            Slot::B => "B",
        })
    }
}

/// Orientation of a strand crossing a disc, relative to the disc's co-orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Plus,
    Minus,
}

impl Direction {
    pub fn sign(self) -> i8 {
        match self {
            Direction::Plus => 1,
            Direction::Minus => -1,
        }
    }

    pub fn reversed(self) -> Direction {
        match self {
            Direction::Plus => Direction::Minus,
            Direction::Minus => Direction::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Direction::Plus => '+',
            Direction::Minus => '-',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CrossingCircle {
    pub id: String,
    pub half_twist: HalfTwist,
}

impl CrossingCircle {
    pub fn new(id: impl Into<String>, half_twist: HalfTwist) -> Self {
        CrossingCircle {
            id: id.into(),
            half_twist,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Passage {
    pub circle: String,
    pub slot: Slot,
    pub direction: Direction,
}

impl Passage {
    pub fn new(circle: impl Into<String>, slot: Slot, direction: Direction) -> Self {
        Passage {
            circle: circle.into(),
            slot,
            direction,
        }
    }
}

impl fmt::Display for Passage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}{}", self.circle, self.slot, self.direction.symbol())
    }
}

/// A knot strand: a closed curve on the surface, listed as the cyclic
/// sequence of disc passages met along its orientation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Strand {
    pub id: String,
    pub passages: Vec<Passage>,
}

impl Strand {
    pub fn new(id: impl Into<String>, passages: Vec<Passage>) -> Self {
        Strand {
            id: id.into(),
            passages,
        }
    }

    /// Equality up to cyclic rotation of the passage sequence.
    pub fn cyclically_eq(&self, other: &Strand) -> bool {
        if self.id != other.id || self.passages.len() != other.passages.len() {
            return false;
        }
        let n = self.passages.len();
        if n == 0 {
            return true;
        }
        (0..n).any(|shift| (0..n).all(|i| self.passages[i] == other.passages[(i + shift) % n]))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FalDiagram {
    pub surface_genus: u32,
    pub manifold: ManifoldSpec,
    pub strands: Vec<Strand>,
    pub circles: Vec<CrossingCircle>,
    pub embedding: Option<FaceData>,
}

impl FalDiagram {
    pub fn new(
        surface_genus: u32,
        manifold: ManifoldSpec,
        circles: Vec<CrossingCircle>,
        strands: Vec<Strand>,
    ) -> Self {
        FalDiagram {
            surface_genus,
            manifold,
            strands,
            circles,
            embedding: None,
        }
    }

    pub fn with_embedding(mut self, embedding: FaceData) -> Self {
        self.embedding = Some(embedding);
        self
    }

    pub fn circle(&self, id: &str) -> Option<&CrossingCircle> {
        self.circles.iter().find(|c| c.id == id)
    }

    pub fn circle_index(&self, id: &str) -> Option<usize> {
        self.circles.iter().position(|c| c.id == id)
    }

    /// Copy of the diagram with the half-twist flag of one circle replaced.
    pub fn with_half_twist(&self, circle: &str, half_twist: HalfTwist) -> Option<FalDiagram> {
        let idx = self.circle_index(circle)?;
        let mut out = self.clone();
        out.circles[idx].half_twist = half_twist;
        Some(out)
    }

    pub fn passage_count(&self) -> usize {
        self.strands.iter().map(|s| s.passages.len()).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationCode {
    EmptyDiagram,
    DuplicateId,
    UnknownCircle,
    PassageCount,
    DuplicateSlot,
    EmptyStrand,
    Disconnected,
    GenusMismatch,
    FaceData,
}

impl ViolationCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationCode::EmptyDiagram => "empty-diagram",
            ViolationCode::DuplicateId => "duplicate-id",
            ViolationCode::UnknownCircle => "unknown-circle",
            ViolationCode::PassageCount => "passage-count",
            ViolationCode::DuplicateSlot => "duplicate-slot",
            ViolationCode::EmptyStrand => "empty-strand",
            ViolationCode::Disconnected => "disconnected",
            ViolationCode::GenusMismatch => "genus-mismatch",
            ViolationCode::FaceData => "face-data",
        }
    }
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub code: ViolationCode,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, code: ViolationCode) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }

    fn push(&mut self, code: ViolationCode, message: String) {
        self.violations.push(Violation { code, message });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "[{}] {}", v.code, v.message)?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("invalid diagram:\n{0}")]
    Invalid(ValidationReport),
}

/// Checks every defining condition of a fully augmented link diagram.
///
/// Never fails: violations are returned as data, and an empty report means
/// the diagram is valid.
pub fn validate(diagram: &FalDiagram) -> ValidationReport {
    let mut report = ValidationReport::default();

    if diagram.strands.is_empty() {
        report.push(
            ViolationCode::EmptyDiagram,
            "diagram has no knot strands".to_string(),
        );
    }

    let mut seen_ids = BTreeSet::new();
    for id in diagram
        .circles
        .iter()
        .map(|c| &c.id)
        .chain(diagram.strands.iter().map(|s| &s.id))
    {
        if !seen_ids.insert(id.as_str()) {
            report.push(ViolationCode::DuplicateId, format!("id {id} declared twice"));
        }
    }

    let circle_index: BTreeMap<&str, usize> = diagram
        .circles
        .iter()
        .enumerate()
        .map(|(i, c)| (c.id.as_str(), i))
        .collect();

    let mut slot_use: BTreeMap<(usize, Slot), usize> = BTreeMap::new();
    let mut per_circle = vec![0usize; diagram.circles.len()];
    let nstrands = diagram.strands.len();
    let mut components = UnionFind::new(nstrands + diagram.circles.len());

    for (si, strand) in diagram.strands.iter().enumerate() {
        if strand.passages.is_empty() {
            report.push(
                ViolationCode::EmptyStrand,
                format!("strand {} has no passages", strand.id),
            );
        }
        for p in &strand.passages {
            let Some(&ci) = circle_index.get(p.circle.as_str()) else {
                report.push(
                    ViolationCode::UnknownCircle,
                    format!("strand {} references unknown circle {}", strand.id, p.circle),
                );
                continue;
            };
            per_circle[ci] += 1;
            *slot_use.entry((ci, p.slot)).or_default() += 1;
            components.union(si, nstrands + ci);
        }
    }

    for (ci, circle) in diagram.circles.iter().enumerate() {
        if per_circle[ci] != 2 {
            report.push(
                ViolationCode::PassageCount,
                format!("circle {} has {} of 2 passages", circle.id, per_circle[ci]),
            );
        }
    }
    for ((ci, slot), n) in &slot_use {
        if *n > 1 {
            report.push(
                ViolationCode::DuplicateSlot,
                format!(
                    "slot {}.{} is used by {} passages",
                    diagram.circles[*ci].id, slot, n
                ),
            );
        }
    }

    let total = nstrands + diagram.circles.len();
    if total > 0 {
        let root = components.find(0);
        if (1..total).any(|i| components.find(i) != root) {
            report.push(
                ViolationCode::Disconnected,
                "diagram not connected".to_string(),
            );
        }
    }

    if let Some(required) = diagram.manifold.required_surface_genus() {
        if required != diagram.surface_genus {
            report.push(
                ViolationCode::GenusMismatch,
                format!(
                    "manifold {} needs a surface of genus {}, diagram declares {}",
                    diagram.manifold, required, diagram.surface_genus
                ),
            );
        }
    }

    for problem in diagram_face_problems(diagram) {
        report.push(ViolationCode::FaceData, problem);
    }

    report
}

pub fn count_crossing_circles(diagram: &FalDiagram) -> usize {
    diagram.circles.len()
}

/// Which side of a crossing disc a strand end lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Neg,
    Pos,
}

/// A stretch of a strand between two consecutive disc passages.
///
/// Arc `index` of a strand runs from passage `index` to passage `index + 1`
/// (cyclically). `reversed` is set when a component traverses the arc
/// against the strand orientation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectedArc {
    pub strand: String,
    pub index: usize,
    pub reversed: bool,
}

/// Where a surface knot component passes through a crossing disc.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Junction {
    pub circle: String,
    pub half_twist: HalfTwist,
    /// Slot of the disc the component arrives at.
    pub entry_slot: Slot,
    /// Slot of the disc the component leaves from; differs from
    /// `entry_slot` exactly when the circle carries a half twist.
    pub exit_slot: Slot,
    /// `Plus` when the component crosses from the negative to the positive side.
    pub direction: Direction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentKind {
    CrossingCircle {
        circle: String,
        half_twist: HalfTwist,
    },
    /// `junctions[i]` sits at the head of `blocks[i]`.
    SurfaceKnot {
        blocks: Vec<DirectedArc>,
        junctions: Vec<Junction>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkComponent {
    pub label: String,
    pub kind: ComponentKind,
}

impl LinkComponent {
    /// Number of disc passages, counted with multiplicity (`n_j`); `None` for
    /// crossing circles.
    pub fn passage_count(&self) -> Option<usize> {
        match &self.kind {
            ComponentKind::CrossingCircle { .. } => None,
            ComponentKind::SurfaceKnot { blocks, .. } => Some(blocks.len()),
        }
    }

    pub fn is_crossing_circle(&self) -> bool {
        matches!(self.kind, ComponentKind::CrossingCircle { .. })
    }
}

/// Link components after re-pairing at half twists.
///
/// Crossing circles come first, in declaration order, followed by surface
/// knot components in order of their first arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedLink {
    pub components: Vec<LinkComponent>,
}

impl ResolvedLink {
    pub fn component(&self, label: &str) -> Option<&LinkComponent> {
        self.components.iter().find(|c| c.label == label)
    }

    pub fn surface_knots(&self) -> impl Iterator<Item = &LinkComponent> {
        self.components.iter().filter(|c| !c.is_crossing_circle())
    }

    pub fn crossing_circles(&self) -> impl Iterator<Item = &LinkComponent> {
        self.components.iter().filter(|c| c.is_crossing_circle())
    }

    pub fn knot_count(&self) -> usize {
        self.surface_knots().count()
    }

    /// Partition of strand arcs into surface knot components, as sets of
    /// `(strand, arc index)` pairs.
    pub fn arc_partition(&self) -> BTreeSet<BTreeSet<(String, usize)>> {
        self.surface_knots()
            .map(|c| match &c.kind {
                ComponentKind::SurfaceKnot { blocks, .. } => blocks
                    .iter()
                    .map(|b| (b.strand.clone(), b.index))
                    .collect(),
                ComponentKind::CrossingCircle { .. } => BTreeSet::new(),
            })
            .collect()
    }

    /// The component and direction with which each slot of `circle` is crossed.
    fn junctions_at(&self, circle: &str) -> Vec<(usize, &Junction)> {
        let mut out = Vec::new();
        for (ci, comp) in self.components.iter().enumerate() {
            if let ComponentKind::SurfaceKnot { junctions, .. } = &comp.kind {
                out.extend(junctions.iter().filter(|j| j.circle == circle).map(|j| (ci, j)));
            }
        }
        out
    }
}

/// Effect on the number of surface knot components of inserting a half
/// twist at an untwisted crossing circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistEffect {
    /// Both passages belong to one component and cross in the same direction.
    Split,
    /// One component crossing in opposite directions; the block between is reversed.
    Reverse,
    /// The passages belong to two different components.
    Merge,
}

impl TwistEffect {
    pub fn component_delta(self) -> i64 {
        match self {
            TwistEffect::Split => 1,
            TwistEffect::Reverse => 0,
            TwistEffect::Merge => -1,
        }
    }
}

/// Classifies what inserting a half twist at `circle` will do, read off the
/// current resolution. Returns `None` if the circle is unknown or already twisted.
pub fn twist_effect(resolved: &ResolvedLink, circle: &str) -> Option<TwistEffect> {
    let twisted = resolved.components.iter().any(|c| {
        matches!(&c.kind, ComponentKind::CrossingCircle { circle: id, half_twist } if id == circle && half_twist.is_twisted())
    });
    if twisted {
        return None;
    }
    let hits = resolved.junctions_at(circle);
    let [(ca, ja), (cb, jb)] = hits.as_slice() else {
        return None;
    };
    Some(if ca != cb {
        TwistEffect::Merge
    } else if ja.direction == jb.direction {
        TwistEffect::Split
    } else {
        TwistEffect::Reverse
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum End {
    Tail,
    Head,
}

/// Resolves the link components by arc tracing.
///
/// Each strand is cut at its passages into arcs. At an untwisted circle the
/// arc ends on the two sides of a slot are joined; a half twist instead joins
/// the negative side of each slot to the positive side of the other.
pub fn resolve_components(diagram: &FalDiagram) -> Result<ResolvedLink, DiagramError> {
    let report = validate(diagram);
    if !report.is_valid() {
        return Err(DiagramError::Invalid(report));
    }

    let circle_index: BTreeMap<&str, usize> = diagram
        .circles
        .iter()
        .enumerate()
        .map(|(i, c)| (c.id.as_str(), i))
        .collect();

    // stub (circle, slot, side) -> arc end sitting there
    let mut stubs: BTreeMap<(usize, usize, Side), (usize, usize, End)> = BTreeMap::new();
    for (si, strand) in diagram.strands.iter().enumerate() {
        let k = strand.passages.len();
        for (ai, p) in strand.passages.iter().enumerate() {
            let ci = circle_index[p.circle.as_str()];
            let (out_side, in_side) = match p.direction {
                Direction::Plus => (Side::Pos, Side::Neg),
                Direction::Minus => (Side::Neg, Side::Pos),
            };
            // arc ai leaves passage ai; arc ai-1 arrives at it
            stubs.insert((ci, p.slot.index(), out_side), (si, ai, End::Tail));
            stubs.insert((ci, p.slot.index(), in_side), (si, (ai + k - 1) % k, End::Head));
        }
    }

    let stub_of = |si: usize, ai: usize, end: End| -> (usize, usize, Side) {
        let strand = &diagram.strands[si];
        let k = strand.passages.len();
        let (p, leaving) = match end {
            End::Tail => (&strand.passages[ai], true),
            End::Head => (&strand.passages[(ai + 1) % k], false),
        };
        let side = match (p.direction, leaving) {
            (Direction::Plus, true) | (Direction::Minus, false) => Side::Pos,
            _ => Side::Neg,
        };
        (circle_index[p.circle.as_str()], p.slot.index(), side)
    };

    let partner = |(ci, slot, side): (usize, usize, Side)| -> (usize, usize, Side) {
        let twisted = diagram.circles[ci].half_twist.is_twisted();
        let other_slot = if twisted { 1 - slot } else { slot };
        let other_side = match side {
            Side::Neg => Side::Pos,
            Side::Pos => Side::Neg,
        };
        (ci, other_slot, other_side)
    };

    let mut components: Vec<LinkComponent> = diagram
        .circles
        .iter()
        .map(|c| LinkComponent {
            label: c.id.clone(),
            kind: ComponentKind::CrossingCircle {
                circle: c.id.clone(),
                half_twist: c.half_twist,
            },
        })
        .collect();

    let mut visited: Vec<Vec<bool>> = diagram
        .strands
        .iter()
        .map(|s| vec![false; s.passages.len()])
        .collect();

    for (si, strand) in diagram.strands.iter().enumerate() {
        for start in 0..strand.passages.len() {
            if visited[si][start] {
                continue;
            }
            let mut blocks = Vec::new();
            let mut junctions = Vec::new();
            let (mut cur_s, mut cur_a, mut reversed) = (si, start, false);
            loop {
                visited[cur_s][cur_a] = true;
                blocks.push(DirectedArc {
                    strand: diagram.strands[cur_s].id.clone(),
                    index: cur_a,
                    reversed,
                });
                let arrive_end = if reversed { End::Tail } else { End::Head };
                let here = stub_of(cur_s, cur_a, arrive_end);
                let there = partner(here);
                let (ns, na, nend) = stubs[&there];
                let circle = &diagram.circles[here.0];
                junctions.push(Junction {
                    circle: circle.id.clone(),
                    half_twist: circle.half_twist,
                    entry_slot: if here.1 == 0 { Slot::A } else { Slot::B },
                    exit_slot: if there.1 == 0 { Slot::A } else { Slot::B },
                    direction: if here.2 == Side::Neg {
                        Direction::Plus
                    } else {
                        Direction::Minus
                    },
                });
                cur_s = ns;
                cur_a = na;
                reversed = nend == End::Head;
                if cur_s == si && cur_a == start {
                    debug_assert!(!reversed);
                    break;
                }
            }
            let label = if start == 0 {
                strand.id.clone()
            } else {
                format!("{}:{}", strand.id, start)
            };
            components.push(LinkComponent {
                label,
                kind: ComponentKind::SurfaceKnot { blocks, junctions },
            });
        }
    }

    Ok(ResolvedLink { components })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Hand-built reference diagrams used across the test suites and examples.
pub mod samples {
    use super::*;

    fn p(circle: &str, slot: Slot, direction: Direction) -> Passage {
        Passage::new(circle, slot, direction)
    }

    /// The Borromean rings as a planar fully augmented link: one unknotted
    /// strand and two crossing circles, one crossing arc inside the strand and
    /// one outside, so the passages interleave.
    pub fn borromean() -> FalDiagram {
        use Direction::*;
        use Slot::*;
        FalDiagram::new(
            0,
            ManifoldSpec::Ball,
            vec![
                CrossingCircle::new("C1", HalfTwist::None),
                CrossingCircle::new("C2", HalfTwist::None),
            ],
            vec![Strand::new(
                "K",
                vec![
                    p("C1", A, Plus),
                    p("C2", A, Plus),
                    p("C1", B, Minus),
                    p("C2", B, Minus),
                ],
            )],
        )
    }

    /// One strand running twice through a single crossing circle on a torus;
    /// its cover is the infinite chain link fence.
    pub fn torus_chain_link() -> FalDiagram {
        use Direction::*;
        use Slot::*;
        FalDiagram::new(
            1,
            ManifoldSpec::ThickenedSurface { genus: 1 },
            vec![CrossingCircle::new("C1", HalfTwist::None)],
            vec![Strand::new("K", vec![p("C1", A, Plus), p("C1", B, Plus)])],
        )
    }
}
