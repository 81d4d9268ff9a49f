//! Structured reports: a flat, ordered tree of dotted keys and a
//! human-readable rendering.
//!
//! Keys (indices are 1-based, `<...>` marks a value):
//!
//! ```text
//! report.format                       falkit-report-v1
//! validation.valid                    true | false
//! validation.violation_count
//! validation.violations.<i>.code / .message
//! diagram.surface_genus / .manifold / .chi / .chi_verified
//! diagram.crossing_circles / .strands / .embedding / .cellular
//! components.count / .knot_count / .sum_n
//! components.<i>.label / .kind / .half_twist (circles) / .n (knots)
//! cusps.count / .total_rectangles / .area_lower_bound
//! cusps.<i>.component / .rectangles / .meridian / .longitude / .total_shear / .reversed_columns
//! volume.v_oct / .v_tet / .lower_bound / .upper_bound / .upper_bound_reason
//! volume.dehn_m / .dehn_filled_lower / .assumptions / .consistent
//! slopes.count, slopes.<i>.n / .k / .half_twist / .length_lower_bound
//! packing.status                      ok | not_applicable | error
//! packing.reason / .vertices / .edges / .triangles / .sweeps
//! packing.max_angle_residual / .max_tangency_residual
//! <section>.error                     set when a section failed
//! ```
//!
//! An invalid diagram yields only `report.format` and `validation.*`.
//! Floats are written with 12 significant digits.

use std::fmt::Write as _;

use crate::cusp::{cusp_tilings, slope_bound_for_crossings, word_string};
use crate::diagram::{count_crossing_circles, resolve_components, validate, ComponentKind, FalDiagram};
use crate::embedding::{genus_of_embedding, is_cellular};
use crate::packing::{nerve_from_diagram, solve_packing, Packing, PackingError, DEFAULT_TOLERANCE};
use crate::volume::{v_oct, v_tet, volume_report, Assumption};

pub const FORMAT_TAG: &str = "falkit-report-v1";

/// `x` with 12 significant digits, `%g` style: fixed notation for decimal
/// exponents in `[-5, 12)`, scientific otherwise, trailing zeros removed.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}"))
    } else {
        format!("{}e{}{:02}", trim_zeros(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    pub entries: Vec<(String, String)>,
}

impl Report {
    fn put(&mut self, key: impl Into<String>, value: impl ToString) {
        self.entries.push((key.into(), value.to_string()));
    }

    fn put_f(&mut self, key: impl Into<String>, value: f64) {
        self.put(key, format_float(value));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Keys with the given prefix, in order.
    pub fn section<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = (&'a str, &'a str)> + 'a {
        self.entries
            .iter()
            .filter(move |(k, _)| k.starts_with(prefix))
            .map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn is_valid(&self) -> bool {
        self.get("validation.valid") == Some("true")
    }

    /// One `key=value` line per entry.
    pub fn render_machine(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            let _ = writeln!(out, "{k}={v}");
        }
        out
    }

    /// Parses the output of [`Report::render_machine`].
    pub fn parse_machine(text: &str) -> Report {
        Report {
            entries: text
                .lines()
                .filter_map(|l| l.split_once('='))
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
        }
    }

    pub fn render_human(&self) -> String {
        let g = |k: &str| self.get(k).unwrap_or("-");
        let mut out = String::new();
        if !self.is_valid() {
            let _ = writeln!(out, "invalid diagram ({} violations)", g("validation.violation_count"));
            for (k, v) in self.section("validation.violations.") {
                if k.ends_with(".message") {
                    let _ = writeln!(out, "  - {v}");
                }
            }
            return out;
        }
        let _ = writeln!(
            out,
            "diagram: genus {} surface, manifold {} (chi = {}{}), {} crossing circles, {} strands",
            g("diagram.surface_genus"),
            g("diagram.manifold"),
            g("diagram.chi"),
            if g("diagram.chi_verified") == "false" { ", unverified" } else { "" },
            g("diagram.crossing_circles"),
            g("diagram.strands"),
        );
        let _ = writeln!(out, "embedding: {}, cellular: {}", g("diagram.embedding"), g("diagram.cellular"));
        let _ = writeln!(out, "\ncomponents: {} ({} surface knots)", g("components.count"), g("components.knot_count"));
        self.human_list(&mut out, "components.", |r, p| {
            let n = r.get(&format!("{p}.n")).map(|n| format!(", n = {n}")).unwrap_or_default();
            let tw = r
                .get(&format!("{p}.half_twist"))
                .map(|t| format!(", half twist {t}"))
                .unwrap_or_default();
            format!("{} ({}{n}{tw})", r.get(&format!("{p}.label")).unwrap_or("?"), r.get(&format!("{p}.kind")).unwrap_or("?"))
        });
        let _ = writeln!(
            out,
            "\ncusps: {} tilings, {} rectangles in total",
            g("cusps.count"),
            g("cusps.total_rectangles")
        );
        self.human_list(&mut out, "cusps.", |r, p| {
            format!(
                "{}: {} rectangles, meridian [{}], longitude [{}]",
                r.get(&format!("{p}.component")).unwrap_or("?"),
                r.get(&format!("{p}.rectangles")).unwrap_or("?"),
                r.get(&format!("{p}.meridian")).unwrap_or(""),
                r.get(&format!("{p}.longitude")).unwrap_or(""),
            )
        });
        let _ = writeln!(out, "\nvolume (v_oct = {}, v_tet = {})", g("volume.v_oct"), g("volume.v_tet"));
        let _ = writeln!(out, "  lower bound: {}", g("volume.lower_bound"));
        match self.get("volume.upper_bound_reason") {
            Some(reason) => {
                let _ = writeln!(out, "  upper bound: n/a ({reason})");
            }
            None => {
                let _ = writeln!(out, "  upper bound: {}", g("volume.upper_bound"));
            }
        }
        if let Some(m) = self.get("volume.dehn_m") {
            let _ = writeln!(out, "  after >= {m} crossings per twist region: {}", g("volume.dehn_filled_lower"));
        }
        let _ = writeln!(out, "  assumptions: {}", g("volume.assumptions"));
        if g("volume.consistent") == "false" {
            let _ = writeln!(out, "  WARNING: lower bound exceeds upper bound; check chi");
        }
        if self.get("slopes.count").is_some_and(|c| c != "0") {
            let _ = writeln!(out, "\nslope lengths (n crossings: 1/k, bound)");
            self.human_list(&mut out, "slopes.", |r, p| {
                format!(
                    "n = {}: k = {}{}, length >= {}",
                    r.get(&format!("{p}.n")).unwrap_or("?"),
                    r.get(&format!("{p}.k")).unwrap_or("?"),
                    if r.get(&format!("{p}.half_twist")) == Some("true") { " with half twist" } else { "" },
                    r.get(&format!("{p}.length_lower_bound")).unwrap_or("?"),
                )
            });
        }
        let _ = write!(out, "\npacking: {}", g("packing.status"));
        match self.get("packing.status") {
            Some("ok") => {
                let _ = writeln!(
                    out,
                    " ({} circles, {} tangencies, angle residual {}, tangency residual {})",
                    g("packing.vertices"),
                    g("packing.edges"),
                    g("packing.max_angle_residual"),
                    g("packing.max_tangency_residual")
                );
            }
            _ => {
                let reason = self.get("packing.reason").or(self.get("packing.error")).unwrap_or("");
                let _ = writeln!(out, " ({reason})");
            }
        }
        for (k, v) in &self.entries {
            if k.ends_with(".error") && !k.starts_with("packing") {
                let _ = writeln!(out, "error in {}: {v}", k.trim_end_matches(".error"));
            }
        }
        out
    }

    fn human_list(&self, out: &mut String, prefix: &str, line: impl Fn(&Report, &str) -> String) {
        let mut i = 1;
        loop {
            let p = format!("{prefix}{i}");
            if !self.entries.iter().any(|(k, _)| k.starts_with(&format!("{p}."))) {
                break;
            }
            let _ = writeln!(out, "  {}", line(self, &p));
            i += 1;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportOptions {
    pub dehn_m: Option<u64>,
    /// Slope table rows `n = 1..=slopes`.
    pub slopes: u64,
    pub packing_tolerance: f64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            dehn_m: None,
            slopes: 10,
            packing_tolerance: DEFAULT_TOLERANCE,
        }
    }
}

/// Outcome of the packing section, kept so callers can map failures to exit codes.
#[derive(Debug, Clone, PartialEq)]
pub enum PackingOutcome {
    Solved(Box<Packing>),
    NotApplicable(String),
    Failed(PackingError),
    NerveFailed(String),
}

pub struct FullReport {
    pub report: Report,
    pub packing: Option<PackingOutcome>,
}

pub fn report(diagram: &FalDiagram, options: &ReportOptions) -> Report {
    build_report(diagram, options).report
}

pub fn build_report(diagram: &FalDiagram, options: &ReportOptions) -> FullReport {
    let mut r = Report::default();
    r.put("report.format", FORMAT_TAG);
    let validation = validate(diagram);
    r.put("validation.valid", validation.is_valid());
    r.put("validation.violation_count", validation.violations.len());
    for (i, v) in validation.violations.iter().enumerate() {
        r.put(format!("validation.violations.{}.code", i + 1), v.code.as_str());
        r.put(format!("validation.violations.{}.message", i + 1), &v.message);
    }
    if !validation.is_valid() {
        return FullReport {
            report: r,
            packing: None,
        };
    }

    let c = count_crossing_circles(diagram);
    r.put("diagram.surface_genus", diagram.surface_genus);
    r.put("diagram.manifold", &diagram.manifold);
    r.put("diagram.chi", diagram.manifold.euler_characteristic());
    r.put("diagram.chi_verified", diagram.manifold.chi_verified());
    r.put("diagram.crossing_circles", c);
    r.put("diagram.strands", diagram.strands.len());
    match &diagram.embedding {
        None => {
            r.put("diagram.embedding", "none");
            r.put("diagram.cellular", "unknown");
        }
        Some(fd) => {
            match genus_of_embedding(fd) {
                Ok(g) => r.put("diagram.embedding", format!("genus {g}")),
                Err(e) => r.put("diagram.embedding", format!("error: {e}")),
            }
            match is_cellular(diagram) {
                Ok(b) => r.put("diagram.cellular", b),
                Err(e) => r.put("diagram.cellular", format!("error: {e}")),
            }
        }
    }

    match resolve_components(diagram) {
        Err(e) => r.put("components.error", e),
        Ok(resolved) => {
            r.put("components.count", resolved.components.len());
            r.put("components.knot_count", resolved.knot_count());
            let sum: usize = resolved.surface_knots().filter_map(|k| k.passage_count()).sum();
            r.put("components.sum_n", sum);
            for (i, comp) in resolved.components.iter().enumerate() {
                let p = format!("components.{}", i + 1);
                r.put(format!("{p}.label"), &comp.label);
                match &comp.kind {
                    ComponentKind::CrossingCircle { half_twist, .. } => {
                        r.put(format!("{p}.kind"), "crossing_circle");
                        r.put(format!("{p}.half_twist"), half_twist.symbol());
                    }
                    ComponentKind::SurfaceKnot { blocks, .. } => {
                        r.put(format!("{p}.kind"), "surface_knot");
                        r.put(format!("{p}.n"), blocks.len());
                    }
                }
            }
            match cusp_tilings(&resolved) {
                Err(e) => r.put("cusps.error", e),
                Ok(tilings) => {
                    r.put("cusps.count", tilings.len());
                    let total: usize = tilings.iter().map(|t| t.rectangle_count()).sum();
                    r.put("cusps.total_rectangles", total);
                    r.put_f("cusps.area_lower_bound", total as f64);
                    for (i, t) in tilings.iter().enumerate() {
                        let p = format!("cusps.{}", i + 1);
                        r.put(format!("{p}.component"), &t.component);
                        r.put(format!("{p}.rectangles"), t.rectangle_count());
                        r.put(format!("{p}.meridian"), word_string(&t.meridian_word));
                        r.put(format!("{p}.longitude"), word_string(&t.longitude_word));
                        r.put(format!("{p}.total_shear"), t.total_shear());
                        let rev: Vec<String> = t.reversed_columns.iter().map(|c| (c + 1).to_string()).collect();
                        r.put(format!("{p}.reversed_columns"), rev.join(","));
                    }
                }
            }
        }
    }

    r.put_f("volume.v_oct", v_oct());
    r.put_f("volume.v_tet", v_tet());
    match volume_report(diagram, options.dehn_m) {
        Err(e) => r.put("volume.error", e),
        Ok(v) => {
            r.put_f("volume.lower_bound", v.lower_bound);
            match v.upper_bound {
                Some(u) => r.put_f("volume.upper_bound", u),
                None => {
                    r.put("volume.upper_bound", "none");
                    let reason = match crate::volume::upper_bound_virtual(diagram) {
                        Err(e) => e.to_string(),
                        Ok(_) => "unavailable".to_string(),
                    };
                    r.put("volume.upper_bound_reason", reason);
                }
            }
            if let (Some(m), Some(d)) = (options.dehn_m, v.dehn_filled_lower) {
                r.put("volume.dehn_m", m);
                r.put_f("volume.dehn_filled_lower", d);
            }
            let flags: Vec<&str> = v.assumptions.iter().map(|a: &Assumption| a.as_str()).collect();
            r.put("volume.assumptions", flags.join(","));
            r.put("volume.consistent", v.is_consistent());
        }
    }

    r.put("slopes.count", options.slopes);
    for n in 1..=options.slopes {
        let p = format!("slopes.{n}");
        match slope_bound_for_crossings(n) {
            Ok(b) => {
                r.put(format!("{p}.n"), b.n);
                r.put(format!("{p}.k"), b.k);
                r.put(format!("{p}.half_twist"), b.needs_half_twist);
                r.put_f(format!("{p}.length_lower_bound"), b.length_lower_bound);
            }
            Err(e) => r.put(format!("{p}.error"), e),
        }
    }

    let outcome = packing_outcome(diagram, options.packing_tolerance);
    match &outcome {
        PackingOutcome::Solved(p) => {
            r.put("packing.status", "ok");
            r.put("packing.vertices", p.radii.len());
            r.put("packing.edges", p.edges.len());
            r.put("packing.triangles", 2 * c);
            r.put("packing.sweeps", p.sweeps);
            r.put_f("packing.max_angle_residual", p.max_angle_residual);
            r.put_f("packing.max_tangency_residual", p.max_tangency_residual);
        }
        PackingOutcome::NotApplicable(reason) => {
            r.put("packing.status", "not_applicable");
            r.put("packing.reason", reason);
        }
        PackingOutcome::Failed(e) => {
            r.put("packing.status", "error");
            r.put("packing.error", e);
        }
        PackingOutcome::NerveFailed(e) => {
            r.put("packing.status", "error");
            r.put("packing.error", e);
        }
    }

    FullReport {
        report: r,
        packing: Some(outcome),
    }
}

fn packing_outcome(diagram: &FalDiagram, tol: f64) -> PackingOutcome {
    if diagram.surface_genus != 0 {
        return PackingOutcome::NotApplicable(format!("surface genus {} is not 0", diagram.surface_genus));
    }
    if diagram.embedding.is_none() {
        return PackingOutcome::NotApplicable("no embedding data".into());
    }
    match is_cellular(diagram) {
        Ok(true) => {}
        Ok(false) => return PackingOutcome::NotApplicable("diagram is not cellular".into()),
        Err(e) => return PackingOutcome::NotApplicable(e.to_string()),
    }
    match nerve_from_diagram(diagram) {
        Err(e) => PackingOutcome::NerveFailed(e.to_string()),
        Ok(nerve) => match solve_packing(&nerve, tol) {
            Ok(p) => PackingOutcome::Solved(Box::new(p)),
            Err(e) => PackingOutcome::Failed(e),
        },
    }
}
