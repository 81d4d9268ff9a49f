//! Rectangle tilings of cusp tori, their normalized translations and the
//! slope-length estimates used for Dehn filling.
//!
//! Coordinates put black sides vertical with unit length and white sides
//! horizontal with length `w_i >= 1`. Every cusp is a strip of columns, two
//! rectangles tall; the right edge of column `i` is glued to the left edge
//! of column `i + 1` with a vertical shift of one black unit per half twist.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::diagram::{ComponentKind, HalfTwist, ResolvedLink};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// One black side, `(0, 1)`.
    Black,
    /// One white side of column `i` (1-based), `(w_i, 0)`.
    White(usize),
    /// The diagonal of column `i`: a white side followed by a black side,
    /// `(w_i, shear)`.
    Diagonal(usize, i8),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Black => f.write_str("B"),
            Letter::White(i) => write!(f, "W{i}"),
            Letter::Diagonal(i, s) => write!(f, "D{i}{}", if *s < 0 { '-' } else { '+' }),
        }
    }
}

/// Formats a word as space separated letters.
pub fn word_string(word: &[Letter]) -> String {
    word.iter().map(Letter::to_string).collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CuspKind {
    CrossingCircle,
    SurfaceKnot,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rectangle {
    pub id: usize,
    /// 0-based column; the white parameter of the rectangle is `column + 1`.
    pub column: usize,
    /// 0 (lower) or 1 (upper).
    pub row: usize,
    /// Left and right sides, lying on crossing discs.
    pub black_sides: (String, String),
    /// Bottom and top sides, lying on the reflection surface.
    pub white_sides: (String, String),
}

impl Rectangle {
    pub fn white_param(&self) -> usize {
        self.column + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuspTiling {
    pub component: String,
    pub kind: CuspKind,
    pub rectangles: Vec<Rectangle>,
    /// Vertical shift of the gluing on the right edge of each column.
    pub shears: Vec<i8>,
    pub meridian_word: Vec<Letter>,
    pub longitude_word: Vec<Letter>,
    /// Columns whose block is traversed against its strand orientation.
    pub reversed_columns: Vec<usize>,
}

const ROWS: usize = 2;

impl CuspTiling {
    pub fn columns(&self) -> usize {
        self.shears.len()
    }

    pub fn rectangle_count(&self) -> usize {
        self.rectangles.len()
    }

    /// Total vertical shift picked up going once around the strip.
    pub fn total_shear(&self) -> i64 {
        self.shears.iter().map(|&s| i64::from(s)).sum()
    }

    /// The word running across the columns (meridian of a crossing circle,
    /// longitude of a knot).
    pub fn horizontal_word(&self) -> &[Letter] {
        match self.kind {
            CuspKind::CrossingCircle => &self.meridian_word,
            CuspKind::SurfaceKnot => &self.longitude_word,
        }
    }

    /// The word running up a column.
    pub fn vertical_word(&self) -> &[Letter] {
        match self.kind {
            CuspKind::CrossingCircle => &self.longitude_word,
            CuspKind::SurfaceKnot => &self.meridian_word,
        }
    }

    /// Checks that a word returns to its starting rectangle.
    ///
    /// Crossing a column along a white side keeps the row; passing the
    /// sheared gluing moves it by the shear; a diagonal climbs by its own
    /// shear first. Columns must be visited in order.
    pub fn word_closes(&self, word: &[Letter]) -> bool {
        let n = self.columns();
        let (mut col, mut row) = (0usize, 0i64);
        for &letter in word {
            match letter {
                Letter::Black => row += 1,
                Letter::White(i) | Letter::Diagonal(i, _) => {
                    if i != col + 1 || i > n {
                        return false;
                    }
                    if let Letter::Diagonal(_, s) = letter {
                        row += i64::from(s);
                    }
                    row -= i64::from(self.shears[col]);
                    col = (col + 1) % n;
                }
            }
        }
        col == 0 && row.rem_euclid(ROWS as i64) == 0
    }

    pub fn check_closure(&self) -> Result<(), CuspError> {
        for (name, word) in [("meridian", &self.meridian_word), ("longitude", &self.longitude_word)] {
            if !self.word_closes(word) {
                return Err(CuspError::NotClosed {
                    component: self.component.clone(),
                    word: name,
                });
            }
        }
        Ok(())
    }

    /// White parameters referenced by the tiling, `1..=columns`.
    pub fn white_params(&self) -> impl Iterator<Item = usize> {
        1..=self.columns()
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CuspError {
    #[error("unknown component {0}")]
    UnknownComponent(String),
    #[error("{word} of {component} does not close up")]
    NotClosed { component: String, word: &'static str },
    #[error("w{index} = {value} violates white-side lower bound")]
    WhiteBound { index: usize, value: f64 },
    #[error("white parameter w{0} not supplied")]
    MissingWhite(usize),
    #[error("no filling needed for n = 0")]
    ZeroCrossings,
}

fn letter_for(column: usize, twist: HalfTwist) -> Letter {
    if twist.is_twisted() {
        Letter::Diagonal(column + 1, twist.shear())
    } else {
        Letter::White(column + 1)
    }
}

fn build_rectangles(label: &str, discs: &[String]) -> Vec<Rectangle> {
    let n = discs.len();
    let mut out = Vec::with_capacity(ROWS * n);
    for column in 0..n {
        let left = &discs[(column + n - 1) % n];
        let right = &discs[column];
        for row in 0..ROWS {
            out.push(Rectangle {
                id: out.len(),
                column,
                row,
                black_sides: (format!("{left}.{row}"), format!("{right}.{row}")),
                white_sides: (
                    format!("{label}.c{column}.h{row}"),
                    format!("{label}.c{column}.h{}", (row + 1) % ROWS),
                ),
            });
        }
    }
    out
}

/// The tiling of the cusp of component `label`.
pub fn cusp_tiling(resolved: &ResolvedLink, label: &str) -> Result<CuspTiling, CuspError> {
    let component = resolved
        .component(label)
        .ok_or_else(|| CuspError::UnknownComponent(label.to_string()))?;
    let tiling = match &component.kind {
        ComponentKind::CrossingCircle { circle, half_twist } => CuspTiling {
            component: label.to_string(),
            kind: CuspKind::CrossingCircle,
            rectangles: build_rectangles(label, std::slice::from_ref(circle)),
            shears: vec![half_twist.shear()],
            meridian_word: vec![letter_for(0, *half_twist)],
            longitude_word: vec![Letter::Black; ROWS],
            reversed_columns: Vec::new(),
        },
        ComponentKind::SurfaceKnot { blocks, junctions } => {
            let discs: Vec<String> = junctions.iter().map(|j| j.circle.clone()).collect();
            CuspTiling {
                component: label.to_string(),
                kind: CuspKind::SurfaceKnot,
                rectangles: build_rectangles(label, &discs),
                shears: junctions.iter().map(|j| j.half_twist.shear()).collect(),
                meridian_word: vec![Letter::Black; ROWS],
                longitude_word: junctions
                    .iter()
                    .enumerate()
                    .map(|(i, j)| letter_for(i, j.half_twist))
                    .collect(),
                reversed_columns: blocks
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| b.reversed)
                    .map(|(i, _)| i)
                    .collect(),
            }
        }
    };
    tiling.check_closure()?;
    Ok(tiling)
}

/// Tilings of every cusp, in component order.
pub fn cusp_tilings(resolved: &ResolvedLink) -> Result<Vec<CuspTiling>, CuspError> {
    resolved
        .components
        .iter()
        .map(|c| cusp_tiling(resolved, &c.label))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn length(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }
}

/// White side lengths by 1-based column, each at least one.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct WhiteLengths(pub BTreeMap<usize, f64>);

impl WhiteLengths {
    /// Every column of `tiling` at length `w`.
    pub fn uniform(tiling: &CuspTiling, w: f64) -> Self {
        WhiteLengths(tiling.white_params().map(|i| (i, w)).collect())
    }
}

/// Translation vector of a word.
pub fn word_vector(word: &[Letter], white: &WhiteLengths) -> Result<Vec2, CuspError> {
    let mut v = Vec2::new(0.0, 0.0);
    for &letter in word {
        let (i, dy) = match letter {
            Letter::Black => {
                v.y += 1.0;
                continue;
            }
            Letter::White(i) => (i, 0.0),
            Letter::Diagonal(i, s) => (i, f64::from(s)),
        };
        let w = *white.0.get(&i).ok_or(CuspError::MissingWhite(i))?;
        if !(w >= 1.0) {
            return Err(CuspError::WhiteBound { index: i, value: w });
        }
        v.x += w;
        v.y += dy;
    }
    Ok(v)
}

/// Meridian and longitude translations for the given white side lengths.
pub fn normalized_translations(
    tiling: &CuspTiling,
    white: &WhiteLengths,
) -> Result<(Vec2, Vec2), CuspError> {
    for (&i, &w) in &white.0 {
        if !(w >= 1.0) {
            return Err(CuspError::WhiteBound { index: i, value: w });
        }
    }
    Ok((
        word_vector(&tiling.meridian_word, white)?,
        word_vector(&tiling.longitude_word, white)?,
    ))
}

/// Each rectangle has area at least one in the normalization.
pub fn cusp_area_lower_bound(tiling: &CuspTiling) -> f64 {
    tiling.rectangle_count() as f64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeBound {
    pub n: u64,
    pub k: u64,
    pub needs_half_twist: bool,
    pub length_lower_bound: f64,
}

/// Length estimate for the slope `1/k` that inserts `n` crossings into a
/// twist region: `√(1 + 4k²)` for `n = 2k`, `√(1 + (2k+1)²)` for `n = 2k + 1`.
pub fn slope_bound_for_crossings(n: u64) -> Result<SlopeBound, CuspError> {
    if n == 0 {
        return Err(CuspError::ZeroCrossings);
    }
    let k = n / 2;
    let needs_half_twist = n % 2 == 1;
    // the sheared meridian adds one extra black unit per crossing pair
    let vertical = if needs_half_twist { 2 * k + 1 } else { 2 * k } as f64;
    Ok(SlopeBound {
        n,
        k,
        needs_half_twist,
        length_lower_bound: 1.0f64.hypot(vertical),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{
        resolve_components, samples, CrossingCircle, Direction, FalDiagram, ManifoldSpec, Passage,
        Slot, Strand,
    };

    fn unit(t: &CuspTiling) -> WhiteLengths {
        WhiteLengths::uniform(t, 1.0)
    }

    fn one_circle(twist: HalfTwist) -> FalDiagram {
        FalDiagram::new(
            0,
            ManifoldSpec::Ball,
            vec![CrossingCircle::new("C1", twist)],
            vec![Strand::new(
                "K",
                vec![
                    Passage::new("C1", Slot::A, Direction::Plus),
                    Passage::new("C1", Slot::B, Direction::Minus),
                ],
            )],
        )
    }

    #[test]
    fn crossing_circle_untwisted() {
        let r = resolve_components(&one_circle(HalfTwist::None)).unwrap();
        let t = cusp_tiling(&r, "C1").unwrap();
        assert_eq!(t.rectangle_count(), 2);
        assert_eq!(t.longitude_word, vec![Letter::Black, Letter::Black]);
        assert_eq!(t.meridian_word, vec![Letter::White(1)]);
        let (m, l) = normalized_translations(&t, &unit(&t)).unwrap();
        assert_eq!((m, l), (Vec2::new(1.0, 0.0), Vec2::new(0.0, 2.0)));
    }

    #[test]
    fn crossing_circle_twisted() {
        let r = resolve_components(&one_circle(HalfTwist::Positive)).unwrap();
        let t = cusp_tiling(&r, "C1").unwrap();
        assert_eq!(t.meridian_word, vec![Letter::Diagonal(1, 1)]);
        assert_eq!(t.longitude_word, vec![Letter::Black, Letter::Black]);
        let (m, l) = normalized_translations(&t, &unit(&t)).unwrap();
        assert_eq!((m, l), (Vec2::new(1.0, 1.0), Vec2::new(0.0, 2.0)));

        let r = resolve_components(&one_circle(HalfTwist::Negative)).unwrap();
        let t = cusp_tiling(&r, "C1").unwrap();
        assert_eq!(t.meridian_word, vec![Letter::Diagonal(1, -1)]);
    }

    #[test]
    fn borromean_knot_cusp() {
        let r = resolve_components(&samples::borromean()).unwrap();
        let t = cusp_tiling(&r, "K").unwrap();
        assert_eq!(t.rectangle_count(), 8);
        assert_eq!(t.meridian_word, vec![Letter::Black; 2]);
        assert_eq!(
            t.longitude_word,
            (1..=4).map(Letter::White).collect::<Vec<_>>()
        );
        assert_eq!(t.total_shear(), 0);
        let (m, l) = normalized_translations(&t, &unit(&t)).unwrap();
        assert_eq!(m.cross(l).abs(), 8.0);
    }

    #[test]
    fn white_words_fail_to_close_across_a_shear() {
        let r = resolve_components(&one_circle(HalfTwist::Positive)).unwrap();
        let mut t = cusp_tiling(&r, "C1").unwrap();
        assert!(!t.word_closes(&[Letter::White(1)]));
        t.meridian_word = vec![Letter::White(1)];
        assert!(matches!(t.check_closure(), Err(CuspError::NotClosed { .. })));
    }

    #[test]
    fn white_bound_enforced() {
        let r = resolve_components(&one_circle(HalfTwist::None)).unwrap();
        let t = cusp_tiling(&r, "C1").unwrap();
        let bad = WhiteLengths(BTreeMap::from([(1, 0.5)]));
        let err = normalized_translations(&t, &bad).unwrap_err();
        assert!(err.to_string().contains("violates white-side lower bound"));
        assert_eq!(
            normalized_translations(&t, &WhiteLengths::default()),
            Err(CuspError::MissingWhite(1))
        );
    }

    #[test]
    fn unknown_component() {
        let r = resolve_components(&samples::borromean()).unwrap();
        assert_eq!(
            cusp_tiling(&r, "nope"),
            Err(CuspError::UnknownComponent("nope".into()))
        );
    }

    #[test]
    fn area_and_totals() {
        let d = samples::borromean();
        let r = resolve_components(&d).unwrap();
        let ts = cusp_tilings(&r).unwrap();
        let counts: Vec<usize> = ts.iter().map(CuspTiling::rectangle_count).collect();
        assert_eq!(counts, vec![2, 2, 8]);
        let total: f64 = ts.iter().map(cusp_area_lower_bound).sum();
        assert_eq!(total, 6.0 * d.circles.len() as f64);
    }

    #[test]
    fn toggling_twist_swaps_meridian_letter_only() {
        let d = samples::borromean();
        let before = cusp_tiling(&resolve_components(&d).unwrap(), "C1").unwrap();
        let twisted = d.with_half_twist("C1", HalfTwist::Positive).unwrap();
        let after = cusp_tiling(&resolve_components(&twisted).unwrap(), "C1").unwrap();
        assert_eq!(before.longitude_word, after.longitude_word);
        assert_eq!(before.meridian_word, vec![Letter::White(1)]);
        assert_eq!(after.meridian_word, vec![Letter::Diagonal(1, 1)]);
    }

    #[test]
    fn slope_bounds() {
        let b = slope_bound_for_crossings(4).unwrap();
        assert_eq!((b.k, b.needs_half_twist), (2, false));
        assert!((b.length_lower_bound - 17f64.sqrt()).abs() < 1e-12);
        let b = slope_bound_for_crossings(7).unwrap();
        assert_eq!((b.k, b.needs_half_twist), (3, true));
        assert!((b.length_lower_bound - 50f64.sqrt()).abs() < 1e-12);
        let b = slope_bound_for_crossings(1).unwrap();
        assert_eq!((b.k, b.needs_half_twist), (0, true));
        assert!((b.length_lower_bound - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(slope_bound_for_crossings(0), Err(CuspError::ZeroCrossings));
        for n in 1..=1_000_000 {
            assert!(slope_bound_for_crossings(n).unwrap().length_lower_bound > n as f64);
        }
    }

    #[test]
    fn letters_display() {
        assert_eq!(
            word_string(&[Letter::Black, Letter::White(2), Letter::Diagonal(3, -1)]),
            "B W2 D3-"
        );
    }
}
