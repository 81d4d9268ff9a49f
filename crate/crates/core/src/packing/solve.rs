use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::f64::consts::PI;

use thiserror::Error;

use super::nerve::{Nerve, NerveKind};
use crate::cusp::Vec2;

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_MAX_SWEEPS: usize = 100_000;

/// Residual below which the sweeps hand over to Newton steps.
const POLISH_BELOW: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PackingOptions {
    /// Target for the largest angle-sum error at an interior vertex.
    pub tolerance: f64,
    pub max_sweeps: usize,
    /// Radius given to every boundary vertex.
    pub boundary_radius: f64,
}

impl Default for PackingOptions {
    fn default() -> Self {
        PackingOptions {
            tolerance: DEFAULT_TOLERANCE,
            max_sweeps: DEFAULT_MAX_SWEEPS,
            boundary_radius: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Packing {
    pub radii: BTreeMap<String, f64>,
    pub centers: BTreeMap<String, Vec2>,
    pub boundary: BTreeSet<String>,
    /// Nerve edges, each a tangency.
    pub edges: Vec<(String, String)>,
    /// The triangle dropped from a sphere nerve before solving.
    pub removed_triangle: Option<[String; 3]>,
    pub max_angle_residual: f64,
    pub max_tangency_residual: f64,
    pub sweeps: usize,
    /// Largest angle residual after each sweep or Newton step.
    pub residual_history: Vec<f64>,
}

impl Packing {
    /// Contact point of two tangent circles, on the segment between centers.
    pub fn tangency_point(&self, a: &str, b: &str) -> Option<Vec2> {
        let (pa, pb) = (self.centers.get(a)?, self.centers.get(b)?);
        let (ra, rb) = (self.radii[a], self.radii[b]);
        let t = ra / (ra + rb);
        Some(Vec2::new(pa.x + t * (pb.x - pa.x), pa.y + t * (pb.y - pa.y)))
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PackingError {
    #[error("tolerance {0} outside (0, 1e-4]")]
    BadTolerance(f64),
    #[error("boundary radius {0} must be positive and finite")]
    BadBoundaryRadius(f64),
    #[error("no convergence after {sweeps} sweeps; angle residual {residual:e}")]
    NonConvergence {
        sweeps: usize,
        residual: f64,
        history: Vec<f64>,
    },
    #[error("layout failed: {0}")]
    Layout(String),
}

/// Angle at the circle of radius `r` in the triangle of three mutually
/// tangent circles with radii `r`, `a`, `b`.
pub fn angle_at(r: f64, a: f64, b: f64) -> f64 {
    2.0 * (a * b / (r * (r + a + b))).sqrt().atan()
}

/// `∂α_r / ∂(ln r, ln a, ln b)` for [`angle_at`].
fn angle_gradient(r: f64, a: f64, b: f64) -> [f64; 3] {
    let s = r + a + b;
    let k = (r * a * b * s).sqrt() / (r * s + a * b);
    [-k * (1.0 + r / s), k * (1.0 - a / s), k * (1.0 - b / s)]
}

struct Problem {
    n: usize,
    /// Per vertex, the opposite pairs of its incident triangles.
    fans: Vec<Vec<(usize, usize)>>,
    interior: Vec<usize>,
}

impl Problem {
    fn angle_sum(&self, radii: &[f64], v: usize) -> f64 {
        self.fans[v]
            .iter()
            .map(|&(a, b)| angle_at(radii[v], radii[a], radii[b]))
            .sum()
    }

    fn residual(&self, radii: &[f64]) -> f64 {
        self.interior
            .iter()
            .map(|&v| (self.angle_sum(radii, v) - 2.0 * PI).abs())
            .fold(0.0, f64::max)
    }

    /// One Gauss–Seidel sweep of uniform-neighbour updates in vertex order.
    fn sweep(&self, radii: &mut [f64]) {
        for &v in &self.interior {
            let theta = self.angle_sum(radii, v);
            let k = self.fans[v].len() as f64;
            let beta = (theta / (2.0 * k)).sin();
            let delta = (PI / k).sin();
            let neighbour = beta * radii[v] / (1.0 - beta);
            let next = (1.0 - delta) / delta * neighbour;
            radii[v] = if next.is_finite() && next > 0.0 {
                next
            } else {
                self.bisect(radii, v)
            };
        }
    }

    /// Radius at `v` making its angle sum `2π`, the other radii held fixed.
    /// The angle sum decreases strictly in the vertex's own radius.
    fn bisect(&self, radii: &mut [f64], v: usize) -> f64 {
        let original = radii[v];
        let at = |radii: &mut [f64], r: f64| {
            radii[v] = r;
            self.angle_sum(radii, v) - 2.0 * PI
        };
        let (mut lo, mut hi) = (original.max(f64::MIN_POSITIVE), original.max(f64::MIN_POSITIVE));
        while at(radii, lo) < 0.0 && lo > 1e-300 {
            lo *= 0.5;
        }
        while at(radii, hi) > 0.0 && hi < 1e300 {
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if at(radii, mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        radii[v] = original;
        0.5 * (lo + hi)
    }

    /// Newton iteration on log radii with backtracking. Returns the residual
    /// reached; `radii` holds the best iterate.
    fn polish(&self, radii: &mut [f64], target: f64) -> f64 {
        let m = self.interior.len();
        let mut slot = vec![usize::MAX; self.n];
        for (i, &v) in self.interior.iter().enumerate() {
            slot[v] = i;
        }
        let mut best = self.residual(radii);
        for _ in 0..60 {
            if best <= target {
                break;
            }
            let mut jac = vec![0.0; m * m];
            let mut rhs = vec![0.0; m];
            for (i, &v) in self.interior.iter().enumerate() {
                rhs[i] = 2.0 * PI - self.angle_sum(radii, v);
                for &(a, b) in &self.fans[v] {
                    let g = angle_gradient(radii[v], radii[a], radii[b]);
                    jac[i * m + i] += g[0];
                    for (w, gw) in [(a, g[1]), (b, g[2])] {
                        if slot[w] != usize::MAX {
                            jac[i * m + slot[w]] += gw;
                        }
                    }
                }
            }
            let Some(step) = solve_dense(jac, rhs, m) else {
                break;
            };
            let mut scale = 1.0;
            let mut improved = false;
            let mut trial = radii.to_vec();
            for _ in 0..40 {
                for (i, &v) in self.interior.iter().enumerate() {
                    trial[v] = radii[v] * (scale * step[i]).exp();
                }
                let r = self.residual(&trial);
                if r < best {
                    radii.copy_from_slice(&trial);
                    best = r;
                    improved = true;
                    break;
                }
                scale *= 0.5;
            }
            if !improved {
                break;
            }
        }
        best
    }
}

/// Gaussian elimination with partial pivoting on a dense row-major system.
fn solve_dense(mut a: Vec<f64>, mut b: Vec<f64>, n: usize) -> Option<Vec<f64>> {
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs()))?;
        if a[pivot * n + col].abs() < 1e-300 {
            return None;
        }
        if pivot != col {
            for k in 0..n {
                a.swap(col * n + k, pivot * n + k);
            }
            b.swap(col, pivot);
        }
        let d = a[col * n + col];
        for row in col + 1..n {
            let f = a[row * n + col] / d;
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                a[row * n + k] -= f * a[col * n + k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for k in row + 1..n {
            s -= a[row * n + k] * x[k];
        }
        x[row] = s / a[row * n + row];
    }
    Some(x)
}

pub fn solve_packing(nerve: &Nerve, tolerance: f64) -> Result<Packing, PackingError> {
    solve_packing_with(
        nerve,
        &PackingOptions {
            tolerance,
            ..PackingOptions::default()
        },
    )
}

/// Solves for radii with every interior angle sum `2π`, then lays out centers.
///
/// A sphere nerve first loses its first triangle in canonical order; the
/// three vertices of that triangle become the boundary. Boundary vertices
/// keep `boundary_radius`. Interior vertices are swept in token order with
/// the uniform-neighbour update; once the residual is small Newton steps
/// on the log radii finish the job. Centers are placed triangle by triangle
/// starting from the first remaining triangle, its first vertex at the
/// origin and its second on the positive x axis.
pub fn solve_packing_with(nerve: &Nerve, options: &PackingOptions) -> Result<Packing, PackingError> {
    let tol = options.tolerance;
    if !(tol > 0.0 && tol <= 1e-4) {
        return Err(PackingError::BadTolerance(tol));
    }
    let r0 = options.boundary_radius;
    if !(r0 > 0.0 && r0.is_finite()) {
        return Err(PackingError::BadBoundaryRadius(r0));
    }

    let n = nerve.vertices.len();
    let (triangles, boundary, removed): (&[[usize; 3]], BTreeSet<usize>, Option<[usize; 3]>) =
        match nerve.kind() {
            NerveKind::Sphere => {
                let t = nerve.triangles[0];
                (&nerve.triangles[1..], t.into_iter().collect(), Some(t))
            }
            NerveKind::Disc => (&nerve.triangles[..], nerve.boundary.clone().unwrap_or_default(), None),
        };
    let mut fans = vec![Vec::new(); n];
    for t in triangles {
        for k in 0..3 {
            fans[t[k]].push((t[(k + 1) % 3], t[(k + 2) % 3]));
        }
    }
    let problem = Problem {
        n,
        fans,
        interior: (0..n).filter(|v| !boundary.contains(v)).collect(),
    };

    let mut radii = vec![r0; n];
    let target = tol * 1e-2;
    let mut history = Vec::new();
    let mut residual = problem.residual(&radii);
    let mut sweeps = 0;
    let mut polish_below = POLISH_BELOW;
    while residual > target && sweeps < options.max_sweeps {
        problem.sweep(&mut radii);
        sweeps += 1;
        residual = problem.residual(&radii);
        history.push(residual);
        if residual < polish_below && residual > target {
            residual = problem.polish(&mut radii, target);
            history.push(residual);
            // if Newton stalls, sweep on and retry once much closer
            polish_below = residual * 1e-2;
        }
    }
    if !(residual < tol) {
        return Err(PackingError::NonConvergence {
            sweeps,
            residual,
            history,
        });
    }

    let centers = layout(n, triangles, &radii)?;
    let name = |v: usize| nerve.vertices[v].clone();
    let edges: Vec<(usize, usize)> = nerve.edges();
    let max_tangency_residual = edges
        .iter()
        .map(|&(a, b)| {
            let (pa, pb) = (centers[a], centers[b]);
            ((pa.x - pb.x).hypot(pa.y - pb.y) - (radii[a] + radii[b])).abs()
        })
        .fold(0.0, f64::max);

    Ok(Packing {
        radii: (0..n).map(|v| (name(v), radii[v])).collect(),
        centers: (0..n).map(|v| (name(v), centers[v])).collect(),
        boundary: boundary.iter().map(|&v| name(v)).collect(),
        edges: edges.iter().map(|&(a, b)| (name(a), name(b))).collect(),
        removed_triangle: removed.map(|t| t.map(name)),
        max_angle_residual: residual,
        max_tangency_residual,
        sweeps,
        residual_history: history,
    })
}

fn layout(n: usize, triangles: &[[usize; 3]], radii: &[f64]) -> Result<Vec<Vec2>, PackingError> {
    let mut pos: Vec<Option<Vec2>> = vec![None; n];
    let Some(&seed) = triangles.first() else {
        return Err(PackingError::Layout("no triangles".into()));
    };
    let mut directed: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (ti, t) in triangles.iter().enumerate() {
        for k in 0..3 {
            directed.insert((t[k], t[(k + 1) % 3]), ti);
        }
    }
    // third vertex to the left of a -> b
    let place = |pos: &[Option<Vec2>], a: usize, b: usize, c: usize| -> Vec2 {
        let (pa, pb) = (pos[a].unwrap(), pos[b].unwrap());
        let alpha = angle_at(radii[a], radii[b], radii[c]);
        let base = (pb.y - pa.y).atan2(pb.x - pa.x) + alpha;
        let d = radii[a] + radii[c];
        Vec2::new(pa.x + d * base.cos(), pa.y + d * base.sin())
    };
    let [a, b, c] = seed;
    pos[a] = Some(Vec2::new(0.0, 0.0));
    pos[b] = Some(Vec2::new(radii[a] + radii[b], 0.0));
    pos[c] = Some(place(&pos, a, b, c));

    let mut done = vec![false; triangles.len()];
    done[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(ti) = queue.pop_front() {
        let t = triangles[ti];
        for k in 0..3 {
            let (x, y) = (t[k], t[(k + 1) % 3]);
            let Some(&tj) = directed.get(&(y, x)) else {
                continue;
            };
            if done[tj] {
                continue;
            }
            done[tj] = true;
            let u = triangles[tj];
            let w = u.into_iter().find(|&v| v != x && v != y).unwrap();
            if pos[w].is_none() {
                pos[w] = Some(place(&pos, y, x, w));
            }
            queue.push_back(tj);
        }
    }
    pos.into_iter()
        .enumerate()
        .map(|(v, p)| p.ok_or_else(|| PackingError::Layout(format!("vertex {v} never placed"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn soddy() -> Nerve {
        Nerve::new(names(&["a", "b", "c", "x"]), vec![[0, 1, 3], [1, 2, 3], [2, 0, 3]]).unwrap()
    }

    /// Inner Soddy circle of three unit circles, from Descartes' theorem:
    /// `k4 = k1 + k2 + k3 + 2 √(k1 k2 + k2 k3 + k3 k1)`.
    fn descartes_inner(k: [f64; 3]) -> f64 {
        let k4 = k[0] + k[1] + k[2] + 2.0 * (k[0] * k[1] + k[1] * k[2] + k[2] * k[0]).sqrt();
        1.0 / k4
    }

    #[test]
    fn soddy_configuration() {
        let p = solve_packing(&soddy(), 1e-10).unwrap();
        let expected = descartes_inner([1.0, 1.0, 1.0]);
        assert!((expected - 1.0 / (3.0 + 2.0 * 3f64.sqrt())).abs() < 1e-15);
        assert!((p.radii["x"] - expected).abs() < 1e-12);
        assert!((p.radii["x"] - 0.1547005).abs() < 1e-7);
        assert!(p.max_angle_residual < 1e-10);
        assert!(p.max_tangency_residual < 1e-9);
    }

    #[test]
    fn single_triangle() {
        let n = Nerve::new(names(&["a", "b", "c"]), vec![[0, 1, 2]]).unwrap();
        let p = solve_packing(&n, 1e-10).unwrap();
        assert_eq!(p.max_angle_residual, 0.0);
        assert!(p.max_tangency_residual < 1e-15);
        assert_eq!(p.sweeps, 0);
        let (a, b, c) = (p.centers["a"], p.centers["b"], p.centers["c"]);
        for (u, v) in [(a, b), (b, c), (c, a)] {
            assert!(((u.x - v.x).hypot(u.y - v.y) - 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn tetrahedron_drops_a_face() {
        let n = Nerve::new(names(&["p", "q", "r", "s"]), vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap();
        let p = solve_packing(&n, 1e-10).unwrap();
        assert_eq!(
            p.removed_triangle,
            Some(["p".to_string(), "q".to_string(), "r".to_string()])
        );
        assert!((p.radii["s"] - descartes_inner([1.0; 3])).abs() < 1e-12);
    }

    #[test]
    fn uneven_boundary_matches_descartes() {
        // fixed boundary radii other than 1 through a scaled copy
        let opts = PackingOptions {
            boundary_radius: 2.5,
            ..PackingOptions::default()
        };
        let p = solve_packing_with(&soddy(), &opts).unwrap();
        assert!((p.radii["x"] - 2.5 * descartes_inner([1.0; 3])).abs() < 1e-11);
    }

    #[test]
    fn hexagonal_flower() {
        // six unit petals around a centre: the centre must be a unit circle too
        let mut tris = Vec::new();
        for i in 0..6 {
            tris.push([0, 1 + i, 1 + (i + 1) % 6]);
        }
        let n = Nerve::new(names(&["c", "p1", "p2", "p3", "p4", "p5", "p6"]), tris).unwrap();
        let p = solve_packing(&n, 1e-10).unwrap();
        assert!((p.radii["c"] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn angle_sum_decreases_in_own_radius() {
        let mut prev = f64::INFINITY;
        for i in 1..200 {
            let r = i as f64 * 0.05;
            let a = angle_at(r, 0.7, 1.3) + angle_at(r, 1.3, 0.2);
            assert!(a < prev);
            prev = a;
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let (r, a, b) = (0.4, 1.7, 0.9);
        let g = angle_gradient(r, a, b);
        let h = 1e-6;
        let fd = |f: &dyn Fn(f64) -> f64| (f(h) - f(-h)) / (2.0 * h);
        let num = [
            fd(&|e| angle_at(r * f64::exp(e), a, b)),
            fd(&|e| angle_at(r, a * f64::exp(e), b)),
            fd(&|e| angle_at(r, a, b * f64::exp(e))),
        ];
        for k in 0..3 {
            assert!((g[k] - num[k]).abs() < 1e-8, "{k}: {} vs {}", g[k], num[k]);
        }
    }

    #[test]
    fn rejects_bad_options() {
        assert_eq!(solve_packing(&soddy(), 0.0), Err(PackingError::BadTolerance(0.0)));
        assert_eq!(solve_packing(&soddy(), 1e-3), Err(PackingError::BadTolerance(1e-3)));
        let opts = PackingOptions {
            boundary_radius: -1.0,
            ..PackingOptions::default()
        };
        assert!(solve_packing_with(&soddy(), &opts).is_err());
    }

    #[test]
    fn sweep_cap_reports_history() {
        let mut tris = Vec::new();
        for i in 0..6 {
            tris.push([0, 1 + i, 1 + (i + 1) % 6]);
        }
        let n = Nerve::new(names(&["c", "p1", "p2", "p3", "p4", "p5", "p6"]), tris).unwrap();
        let opts = PackingOptions {
            max_sweeps: 0,
            ..PackingOptions::default()
        };
        // the starting radii already solve it
        assert!(solve_packing_with(&n, &opts).is_ok());
        let opts = PackingOptions {
            max_sweeps: 1,
            ..PackingOptions::default()
        };
        let split = Nerve::new(
            names(&["a", "b", "c", "x", "y"]),
            vec![[1, 2, 3], [2, 0, 3], [0, 1, 4], [1, 3, 4], [3, 0, 4]],
        )
        .unwrap();
        match solve_packing_with(&split, &opts) {
            Err(PackingError::NonConvergence { sweeps, history, .. }) => {
                assert_eq!(sweeps, 1);
                assert!(!history.is_empty());
            }
            other => panic!("{other:?}"),
        }
    }
}
