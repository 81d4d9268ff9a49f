//! Hyperbolic volume constants and the closed-form volume bounds.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::diagram::{count_crossing_circles, validate, FalDiagram, ManifoldSpec};
use crate::embedding::{is_cellular, EmbeddingError};

const SERIES_TERMS: usize = 40;

/// `ζ(2n) / (n (2n + 1) π^{2n})` for `n = 1..=SERIES_TERMS`.
fn series_coefficients() -> &'static [f64; SERIES_TERMS] {
    static TABLE: OnceLock<[f64; SERIES_TERMS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = [0.0; SERIES_TERMS];
        for (i, slot) in out.iter_mut().enumerate() {
            let n = (i + 1) as f64;
            let zeta_over_pi = zeta_even(i + 1) / PI.powi(2 * (i as i32 + 1));
            *slot = zeta_over_pi / (n * (2.0 * n + 1.0));
        }
        out
    })
}

/// `ζ(2n)`, exact for small `n` and summed with an integral tail otherwise.
fn zeta_even(n: usize) -> f64 {
    match n {
        1 => PI.powi(2) / 6.0,
        2 => PI.powi(4) / 90.0,
        3 => PI.powi(6) / 945.0,
        _ => {
            let s = 2.0 * n as f64;
            let cutoff = 200u32;
            let mut sum = 0.0;
            for k in (1..cutoff).rev() {
                sum += f64::from(k).powf(-s);
            }
            let big_k = f64::from(cutoff);
            sum + big_k.powf(1.0 - s) / (s - 1.0) + 0.5 * big_k.powf(-s)
        }
    }
}

/// The Lobachevsky function `Λ(θ) = −∫₀^θ ln|2 sin t| dt`.
///
/// Odd and π-periodic. After reduction to `[0, π/2]` it is evaluated from
/// `Λ(θ) = θ − θ ln(2θ) + Σ ζ(2n) θ^{2n+1} / (n (2n+1) π^{2n})`, whose terms
/// decay at least like `4^{−n}`.
pub fn lobachevsky(theta: f64) -> f64 {
    if !theta.is_finite() {
        return f64::NAN;
    }
    let mut x = theta.rem_euclid(PI);
    if x > PI / 2.0 {
        x -= PI;
    }
    let sign = x.signum();
    let x = x.abs();
    if x == 0.0 {
        return 0.0;
    }
    let ratio = x * x;
    let mut power = x * ratio;
    let mut tail = 0.0;
    let mut comp = 0.0;
    for &c in series_coefficients() {
        let term = c * power - comp;
        let t = tail + term;
        comp = (t - tail) - term;
        tail = t;
        power *= ratio;
    }
    sign * (x - x * (2.0 * x).ln() + tail)
}

/// Volume of the regular ideal octahedron, `8 Λ(π/4)`.
pub fn v_oct() -> f64 {
    static V: OnceLock<f64> = OnceLock::new();
    *V.get_or_init(|| 8.0 * lobachevsky(PI / 4.0))
}

/// Volume of the regular ideal tetrahedron, `3 Λ(π/3)`.
pub fn v_tet() -> f64 {
    static V: OnceLock<f64> = OnceLock::new();
    *V.get_or_init(|| 3.0 * lobachevsky(PI / 3.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Assumption {
    /// Hyperbolicity of the link complement is assumed, never checked.
    HyperbolicAssumed,
    /// The cellularity hypothesis of the upper bound was verified.
    CellularVerified,
    /// χ(M) was supplied by the user.
    ChiUnverified,
}

impl Assumption {
    pub fn as_str(self) -> &'static str {
        match self {
            Assumption::HyperbolicAssumed => "hyperbolic_assumed",
            Assumption::CellularVerified => "cellular_verified",
            Assumption::ChiUnverified => "chi_unverified",
        }
    }
}

impl fmt::Display for Assumption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VolumeError {
    #[error("diagram is invalid")]
    InvalidDiagram,
    #[error("genus 0 is not covered by the virtual upper bound")]
    GenusZero,
    #[error("upper bound needs a thickened surface, got {0}")]
    UnsupportedManifold(String),
    #[error("cellularity hypothesis fails")]
    NotCellular,
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error("theorem hypothesis m >= 7 violated (m = {0})")]
    TooFewCrossings(u64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct VolumeReport {
    pub lower_bound: f64,
    pub upper_bound: Option<f64>,
    pub dehn_filled_lower: Option<f64>,
    pub assumptions: BTreeSet<Assumption>,
}

impl VolumeReport {
    /// False when an upper bound is present and falls below the lower bound,
    /// which signals bad input such as a wrong χ.
    pub fn is_consistent(&self) -> bool {
        self.upper_bound.map_or(true, |u| self.lower_bound <= u)
    }
}

/// `2 v_oct (c − χ)`.
pub fn lower_bound_formula(crossing_circles: usize, chi: i64) -> f64 {
    2.0 * v_oct() * (crossing_circles as f64 - chi as f64)
}

/// `10 v_tet c` on the torus, `6 v_oct c` for genus above one.
pub fn virtual_upper_bound_formula(genus: u32, crossing_circles: usize) -> Result<f64, VolumeError> {
    let c = crossing_circles as f64;
    match genus {
        0 => Err(VolumeError::GenusZero),
        1 => Ok(10.0 * v_tet() * c),
        _ => Ok(6.0 * v_oct() * c),
    }
}

/// `(1 − (2π/m)²)^{3/2}`, the volume factor for fillings along slopes of
/// length at least `m`.
pub fn dehn_filling_factor(m: u64) -> Result<f64, VolumeError> {
    if m < 7 {
        return Err(VolumeError::TooFewCrossings(m));
    }
    let r = 2.0 * PI / m as f64;
    Ok((1.0 - r * r).powf(1.5))
}

fn require_valid(diagram: &FalDiagram) -> Result<(), VolumeError> {
    if validate(diagram).is_valid() {
        Ok(())
    } else {
        Err(VolumeError::InvalidDiagram)
    }
}

pub fn lower_bound(diagram: &FalDiagram) -> Result<f64, VolumeError> {
    require_valid(diagram)?;
    Ok(lower_bound_formula(
        count_crossing_circles(diagram),
        diagram.manifold.euler_characteristic(),
    ))
}

pub fn upper_bound_virtual(diagram: &FalDiagram) -> Result<f64, VolumeError> {
    require_valid(diagram)?;
    let ManifoldSpec::ThickenedSurface { genus } = diagram.manifold else {
        return Err(VolumeError::UnsupportedManifold(diagram.manifold.to_string()));
    };
    if genus == 0 {
        return Err(VolumeError::GenusZero);
    }
    if !is_cellular(diagram)? {
        return Err(VolumeError::NotCellular);
    }
    virtual_upper_bound_formula(genus, count_crossing_circles(diagram))
}

/// Lower bound after inserting at least `m ≥ 7` crossings in every twist region.
pub fn dehn_filled_lower_bound(diagram: &FalDiagram, m: u64) -> Result<f64, VolumeError> {
    let factor = dehn_filling_factor(m)?;
    Ok(factor * lower_bound(diagram)?)
}

/// All bounds that apply to `diagram`. The upper bound is attempted only for
/// thickened surfaces of positive genus; its failure is reported as absence.
pub fn volume_report(diagram: &FalDiagram, dehn_m: Option<u64>) -> Result<VolumeReport, VolumeError> {
    let lower = lower_bound(diagram)?;
    let mut assumptions = BTreeSet::from([Assumption::HyperbolicAssumed]);
    if !diagram.manifold.chi_verified() {
        assumptions.insert(Assumption::ChiUnverified);
    }
    let upper = match upper_bound_virtual(diagram) {
        Ok(u) => {
            assumptions.insert(Assumption::CellularVerified);
            Some(u)
        }
        Err(_) => None,
    };
    let dehn = dehn_m.map(|m| dehn_filling_factor(m).map(|f| f * lower)).transpose()?;
    Ok(VolumeReport {
        lower_bound: lower,
        upper_bound: upper,
        dehn_filled_lower: dehn,
        assumptions,
    })
}
