//! The `falkit diagram v1` text format.
//!
//! ```text
//! falkit diagram v1
//! surface genus 0
//! manifold ball                # | handlebody <g> | thickened_surface | custom chi <x> <label>
//! circle C1 half_twist none    # + | - | none
//! circle C2 half_twist +
//! strand K : C1.A+ C2.A+ C1.B- C2.B-
//! vertexset C1.A.in C1.A.out ...
//! edge K.p0 C1.A.in C1.A.out
//! face : K.p0^ C1.tA_
//! ```
//!
//! One statement per line, `#` starts a comment, identifiers match
//! `[A-Za-z0-9_.]+`. Statements after the header may come in any order.
//! `vertexset`, `edge` and `face` lines together form the optional embedding;
//! a face side is an edge id followed by `^` (with the edge) or `_` (against it).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::diagram::{
    CrossingCircle, Direction, FalDiagram, HalfTwist, ManifoldSpec, Passage, Slot, Strand,
};
use crate::embedding::{Dart, Edge, EdgeSide, FaceData};

pub const HEADER: &str = "falkit diagram v1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let code = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in code.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token {
                    text: &code[s..i],
                    column: code[..s].chars().count() + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &code[s..],
            column: code[..s].chars().count() + 1,
        });
    }
    out
}

fn is_ident(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
    end_column: usize,
}

impl<'a> Line<'a> {
    fn err_at(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.number,
            column,
            message: message.into(),
        }
    }

    fn err(&self, i: usize, message: impl Into<String>) -> ParseError {
        let column = self.tokens.get(i).map_or(self.end_column, |t| t.column);
        self.err_at(column, message)
    }

    fn get(&self, i: usize, what: &str) -> Result<Token<'a>, ParseError> {
        self.tokens
            .get(i)
            .copied()
            .ok_or_else(|| self.err(i, format!("expected {what}")))
    }

    fn keyword(&self, i: usize, word: &str) -> Result<(), ParseError> {
        let t = self.get(i, &format!("`{word}`"))?;
        if t.text == word {
            Ok(())
        } else {
            Err(self.err(i, format!("expected `{word}`, found `{}`", t.text)))
        }
    }

    fn ident(&self, i: usize, what: &str) -> Result<&'a str, ParseError> {
        let t = self.get(i, what)?;
        if is_ident(t.text) {
            Ok(t.text)
        } else {
            Err(self.err(i, format!("invalid {what} `{}`", t.text)))
        }
    }

    fn int<T: std::str::FromStr>(&self, i: usize, what: &str) -> Result<T, ParseError> {
        let t = self.get(i, what)?;
        t.text
            .parse()
            .map_err(|_| self.err(i, format!("expected {what}, found `{}`", t.text)))
    }

    fn end(&self, i: usize) -> Result<(), ParseError> {
        match self.tokens.get(i) {
            None => Ok(()),
            Some(t) => Err(self.err(i, format!("unexpected `{}`", t.text))),
        }
    }
}

enum PendingManifold {
    Ball,
    Handlebody(u32),
    Thickened,
    Custom(i64, String),
}

fn parse_passage(line: &Line<'_>, i: usize) -> Result<(Passage, usize), ParseError> {
    let t = line.get(i, "passage")?;
    let bad = || line.err(i, format!("invalid passage `{}`, expected <circle>.<A|B><+|->", t.text));
    let text = t.text;
    if text.len() < 4 || !text.is_ascii() {
        return Err(bad());
    }
    let (head, tail) = text.split_at(text.len() - 3);
    let mut chars = tail.chars();
    let (dot, slot, sign) = (chars.next(), chars.next(), chars.next());
    if dot != Some('.') || !is_ident(head) {
        return Err(bad());
    }
    let slot = match slot {
        Some('A') => Slot::A,
        Some('B') => Slot::B,
        _ => return Err(bad()),
    };
    let direction = match sign {
        Some('+') => Direction::Plus,
        Some('-') => Direction::Minus,
        _ => return Err(bad()),
    };
    Ok((Passage::new(head, slot, direction), t.column))
}

fn parse_dart(line: &Line<'_>, i: usize) -> Result<Dart, ParseError> {
    let t = line.get(i, "face side")?;
    let text = t.text;
    let side = match text.chars().last() {
        Some('^') => EdgeSide::Forward,
        Some('_') => EdgeSide::Backward,
        _ => return Err(line.err(i, format!("face side `{text}` must end in ^ or _"))),
    };
    let edge = &text[..text.len() - 1];
    if !is_ident(edge) {
        return Err(line.err(i, format!("invalid edge id in `{text}`")));
    }
    Ok(Dart {
        edge: edge.to_string(),
        side,
    })
}

/// Parses a diagram file. Validity of the diagram itself is a separate step.
pub fn parse(text: &str) -> Result<FalDiagram, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, raw)| Line {
        number: i + 1,
        tokens: tokenize(raw),
        end_column: raw.split('#').next().unwrap_or("").trim_end().chars().count() + 1,
    });

    let header = loop {
        match lines.next() {
            None => {
                return Err(ParseError {
                    line: 1,
                    column: 1,
                    message: format!("missing header `{HEADER}`"),
                })
            }
            Some(l) if l.tokens.is_empty() => continue,
            Some(l) => break l,
        }
    };
    let words: Vec<&str> = header.tokens.iter().map(|t| t.text).collect();
    if words != ["falkit", "diagram", "v1"] {
        return Err(header.err(0, format!("expected header `{HEADER}`")));
    }

    let mut genus: Option<u32> = None;
    let mut manifold: Option<PendingManifold> = None;
    let mut circles: Vec<CrossingCircle> = Vec::new();
    let mut strands: Vec<(Strand, Vec<(usize, usize)>)> = Vec::new();
    let mut ids: BTreeSet<String> = BTreeSet::new();
    let mut vertices: Vec<(String, usize, usize)> = Vec::new();
    let mut edges: Vec<(Edge, usize, [usize; 2])> = Vec::new();
    let mut faces: Vec<(Vec<Dart>, usize, Vec<usize>)> = Vec::new();

    for line in lines {
        let Some(first) = line.tokens.first() else {
            continue;
        };
        match first.text {
            "surface" => {
                if genus.is_some() {
                    return Err(line.err(0, "surface declared twice"));
                }
                line.keyword(1, "genus")?;
                genus = Some(line.int(2, "genus")?);
                line.end(3)?;
            }
            "manifold" => {
                if manifold.is_some() {
                    return Err(line.err(0, "manifold declared twice"));
                }
                let kind = line.get(1, "manifold kind")?;
                manifold = Some(match kind.text {
                    "ball" => {
                        line.end(2)?;
                        PendingManifold::Ball
                    }
                    "handlebody" => {
                        let g = line.int(2, "handlebody genus")?;
                        line.end(3)?;
                        PendingManifold::Handlebody(g)
                    }
                    "thickened_surface" => {
                        line.end(2)?;
                        PendingManifold::Thickened
                    }
                    "custom" => {
                        line.keyword(2, "chi")?;
                        let chi = line.int(3, "Euler characteristic")?;
                        let label = line.ident(4, "label")?;
                        line.end(5)?;
                        PendingManifold::Custom(chi, label.to_string())
                    }
                    other => return Err(line.err(1, format!("unknown manifold `{other}`"))),
                });
            }
            "circle" => {
                let id = line.ident(1, "circle id")?;
                if !ids.insert(id.to_string()) {
                    return Err(line.err(1, format!("duplicate id `{id}`")));
                }
                line.keyword(2, "half_twist")?;
                let t = line.get(3, "half twist (+, - or none)")?;
                let half_twist = match t.text {
                    "+" => HalfTwist::Positive,
                    "-" => HalfTwist::Negative,
                    "none" => HalfTwist::None,
                    other => {
                        return Err(line.err(3, format!("invalid half twist `{other}`, expected +, - or none")))
                    }
                };
                line.end(4)?;
                circles.push(CrossingCircle::new(id, half_twist));
            }
            "strand" => {
                let id = line.ident(1, "strand id")?;
                if !ids.insert(id.to_string()) {
                    return Err(line.err(1, format!("duplicate id `{id}`")));
                }
                line.keyword(2, ":")?;
                let mut passages = Vec::new();
                let mut cols = Vec::new();
                for i in 3..line.tokens.len() {
                    let (p, col) = parse_passage(&line, i)?;
                    passages.push(p);
                    cols.push((line.number, col));
                }
                strands.push((Strand::new(id, passages), cols));
            }
            "vertexset" => {
                for i in 1..line.tokens.len() {
                    let v = line.ident(i, "vertex id")?;
                    if vertices.iter().any(|(x, _, _)| x == v) {
                        return Err(line.err(i, format!("duplicate vertex `{v}`")));
                    }
                    vertices.push((v.to_string(), line.number, line.tokens[i].column));
                }
            }
            "edge" => {
                let id = line.ident(1, "edge id")?;
                if edges.iter().any(|(e, _, _)| e.id == id) {
                    return Err(line.err(1, format!("duplicate edge `{id}`")));
                }
                let tail = line.ident(2, "tail vertex")?;
                let head = line.ident(3, "head vertex")?;
                line.end(4)?;
                edges.push((
                    Edge {
                        id: id.to_string(),
                        tail: tail.to_string(),
                        head: head.to_string(),
                    },
                    line.number,
                    [line.tokens[2].column, line.tokens[3].column],
                ));
            }
            "face" => {
                line.keyword(1, ":")?;
                let mut walk = Vec::new();
                let mut cols = Vec::new();
                for i in 2..line.tokens.len() {
                    walk.push(parse_dart(&line, i)?);
                    cols.push(line.tokens[i].column);
                }
                if walk.is_empty() {
                    return Err(line.err(2, "face has no sides"));
                }
                faces.push((walk, line.number, cols));
            }
            other => return Err(line.err(0, format!("unknown statement `{other}`"))),
        }
    }

    let end = text.lines().count().max(1);
    let missing = |what: &str| ParseError {
        line: end,
        column: 1,
        message: format!("missing `{what}` statement"),
    };
    let surface_genus = genus.ok_or_else(|| missing("surface genus"))?;
    let manifold = match manifold.ok_or_else(|| missing("manifold"))? {
        PendingManifold::Ball => ManifoldSpec::Ball,
        PendingManifold::Handlebody(genus) => ManifoldSpec::Handlebody { genus },
        PendingManifold::Thickened => ManifoldSpec::ThickenedSurface {
            genus: surface_genus,
        },
        PendingManifold::Custom(chi, label) => ManifoldSpec::Custom { chi, label },
    };

    let circle_ids: BTreeSet<&str> = circles.iter().map(|c| c.id.as_str()).collect();
    for (s, cols) in &strands {
        for (p, &(line, column)) in s.passages.iter().zip(cols) {
            if !circle_ids.contains(p.circle.as_str()) {
                return Err(ParseError {
                    line,
                    column,
                    message: format!("unknown circle `{}`", p.circle),
                });
            }
        }
    }

    let embedding = if vertices.is_empty() && edges.is_empty() && faces.is_empty() {
        None
    } else {
        let vset: BTreeSet<&str> = vertices.iter().map(|(v, _, _)| v.as_str()).collect();
        for (e, line, cols) in &edges {
            for (v, &column) in [&e.tail, &e.head].into_iter().zip(cols) {
                if !vset.contains(v.as_str()) {
                    return Err(ParseError {
                        line: *line,
                        column,
                        message: format!("unknown vertex `{v}`"),
                    });
                }
            }
        }
        let eset: BTreeMap<&str, ()> = edges.iter().map(|(e, _, _)| (e.id.as_str(), ())).collect();
        for (walk, line, cols) in &faces {
            for (d, &column) in walk.iter().zip(cols) {
                if !eset.contains_key(d.edge.as_str()) {
                    return Err(ParseError {
                        line: *line,
                        column,
                        message: format!("unknown edge `{}`", d.edge),
                    });
                }
            }
        }
        Some(FaceData {
            vertices: vertices.into_iter().map(|(v, _, _)| v).collect(),
            edges: edges.into_iter().map(|(e, _, _)| e).collect(),
            faces: faces.into_iter().map(|(w, _, _)| w).collect(),
        })
    };

    Ok(FalDiagram {
        surface_genus,
        manifold,
        strands: strands.into_iter().map(|(s, _)| s).collect(),
        circles,
        embedding,
    })
}

/// Writes `diagram` in the text format; [`parse`] reads it back unchanged
/// whenever the ids are valid tokens and a thickened-surface manifold has
/// the declared surface genus.
pub fn serialize(diagram: &FalDiagram) -> String {
    let mut out = String::new();
    let _ = write_diagram(&mut out, diagram);
    out
}

fn write_diagram(out: &mut String, d: &FalDiagram) -> fmt::Result {
    writeln!(out, "{HEADER}")?;
    writeln!(out, "surface genus {}", d.surface_genus)?;
    match &d.manifold {
        ManifoldSpec::Ball => writeln!(out, "manifold ball")?,
        ManifoldSpec::Handlebody { genus } => writeln!(out, "manifold handlebody {genus}")?,
        ManifoldSpec::ThickenedSurface { .. } => writeln!(out, "manifold thickened_surface")?,
        ManifoldSpec::Custom { chi, label } => writeln!(out, "manifold custom chi {chi} {label}")?,
    }
    for c in &d.circles {
        writeln!(out, "circle {} half_twist {}", c.id, c.half_twist.symbol())?;
    }
    for s in &d.strands {
        write!(out, "strand {} :", s.id)?;
        for p in &s.passages {
            write!(out, " {p}")?;
        }
        writeln!(out)?;
    }
    if let Some(fd) = &d.embedding {
        if !fd.vertices.is_empty() {
            writeln!(out, "vertexset {}", fd.vertices.join(" "))?;
        }
        for e in &fd.edges {
            writeln!(out, "edge {} {} {}", e.id, e.tail, e.head)?;
        }
        for f in &fd.faces {
            write!(out, "face :")?;
            for dart in f {
                write!(out, " {dart}")?;
            }
            writeln!(out)?;
        }
    }
    Ok(())
}
