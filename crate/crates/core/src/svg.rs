//! Deterministic SVG for cusp tilings and circle packings.
//!
//! Output depends only on the input values; numbers are printed with a fixed
//! number of decimals so equal inputs give byte-identical documents.

use std::fmt::Write as _;

use crate::cusp::{word_string, CuspTiling, Letter};
use crate::packing::Packing;

const UNIT: f64 = 60.0;
const MARGIN: f64 = 20.0;

fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn open(out: &mut String, width: f64, height: f64) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = num(width),
        h = num(height)
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// The tiling at unit white lengths: one `rect.tile` per rectangle, black
/// sides drawn as thick vertical lines, white sides as thin horizontal ones.
/// Each column is shifted up by the shears accumulated to its left.
pub fn render_tiling(tiling: &CuspTiling) -> String {
    let cols = tiling.columns();
    let mut offsets = Vec::with_capacity(cols);
    let mut acc = 0i64;
    for &s in &tiling.shears {
        offsets.push(acc);
        acc += i64::from(s);
    }
    let lo = offsets.iter().copied().min().unwrap_or(0).min(0);
    let hi = offsets.iter().copied().max().unwrap_or(0).max(0);
    let rows = 2.0;
    let width = cols as f64 * UNIT + 2.0 * MARGIN;
    let height = (rows + (hi - lo) as f64) * UNIT + 2.0 * MARGIN + 30.0;
    let mut out = String::new();
    open(&mut out, width, height);
    let _ = writeln!(out, "<title>cusp of {}</title>", escape(&tiling.component));
    let base = MARGIN + (rows + hi as f64) * UNIT;
    for r in &tiling.rectangles {
        let x = MARGIN + r.column as f64 * UNIT;
        let y = base - (r.row as f64 + 1.0 + offsets[r.column] as f64) * UNIT;
        let _ = writeln!(
            out,
            r#"<rect class="tile" id="r{}" x="{}" y="{}" width="{}" height="{}" fill="none"/>"#,
            r.id,
            num(x),
            num(y),
            num(UNIT),
            num(UNIT)
        );
        let _ = writeln!(
            out,
            r##"<line class="black-side" x1="{x}" y1="{y0}" x2="{x}" y2="{y1}" stroke="#000" stroke-width="3"/>"##,
            x = num(x),
            y0 = num(y),
            y1 = num(y + UNIT)
        );
        let _ = writeln!(
            out,
            r##"<line class="white-side" x1="{x0}" y1="{y}" x2="{x1}" y2="{y}" stroke="#999" stroke-width="1"/>"##,
            x0 = num(x),
            x1 = num(x + UNIT),
            y = num(y)
        );
    }
    for (c, letter) in tiling.horizontal_word().iter().enumerate() {
        if let Letter::Diagonal(_, s) = letter {
            let x = MARGIN + c as f64 * UNIT;
            let y = base - offsets[c] as f64 * UNIT;
            let _ = writeln!(
                out,
                r##"<line class="diagonal" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#c00" stroke-dasharray="4 3"/>"##,
                num(x),
                num(y),
                num(x + UNIT),
                num(y - f64::from(*s) * UNIT)
            );
        }
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="monospace" font-size="12">meridian [{}] longitude [{}]</text>"#,
        num(MARGIN),
        num(height - 10.0),
        escape(&word_string(&tiling.meridian_word)),
        escape(&word_string(&tiling.longitude_word))
    );
    out.push_str("</svg>\n");
    out
}

/// Circles as `circle.disk`, tangency points as small `circle.tangency`.
pub fn render_packing(packing: &Packing) -> String {
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for (name, c) in &packing.centers {
        let r = packing.radii[name];
        x0 = x0.min(c.x - r);
        y0 = y0.min(c.y - r);
        x1 = x1.max(c.x + r);
        y1 = y1.max(c.y + r);
    }
    if !x0.is_finite() {
        (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
    }
    let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let scale = 400.0 / span;
    let size = 400.0 + 2.0 * MARGIN;
    // flip y so the packing reads counter-clockwise on screen
    let px = |x: f64| MARGIN + (x - x0) * scale;
    let py = |y: f64| MARGIN + (y1 - y) * scale;
    let mut out = String::new();
    open(&mut out, size, size);
    let _ = writeln!(out, "<title>circle packing</title>");
    for (name, c) in &packing.centers {
        let boundary = packing.boundary.contains(name);
        let _ = writeln!(
            out,
            r##"<circle class="disk" data-vertex="{}" cx="{}" cy="{}" r="{}" fill="{}" stroke="#246"/>"##,
            escape(name),
            num(px(c.x)),
            num(py(c.y)),
            num(packing.radii[name] * scale),
            if boundary { "#eef" } else { "none" }
        );
    }
    for (a, b) in &packing.edges {
        if let Some(t) = packing.tangency_point(a, b) {
            let _ = writeln!(
                out,
                r##"<circle class="tangency" data-edge="{}-{}" cx="{}" cy="{}" r="2" fill="#c00"/>"##,
                escape(a),
                escape(b),
                num(px(t.x)),
                num(py(t.y))
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
