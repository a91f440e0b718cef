//! The `.rot` rotation-system text format.
//!
//! ```text
//! # comment
//! 3 3
//! a: b c
//! b: c a
//! c: a b
//! faces
//! outer: 0
//! ```
//!
//! The header gives vertex and edge counts, each vertex line lists its
//! neighbours clockwise, and the optional trailer designates the outer face.

use std::collections::HashSet;
use std::fmt::{self, Write as _};

use crate::plane_graph::{FaceId, GraphError, PlaneGraph};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("ParseError at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RotError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

struct Token<'a> {
    column: usize,
    text: &'a str,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

impl Line<'_> {
    fn error(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.number,
            column,
            message: message.into(),
        }
    }
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("");
            let mut tokens = Vec::new();
            let mut start = None;
            for (pos, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(pos),
                    (true, Some(s)) => {
                        tokens.push(Token {
                            column: s + 1,
                            text: &content[s..pos],
                        });
                        start = None;
                    }
                    _ => {}
                }
            }
            (!tokens.is_empty()).then_some(Line { number: i + 1, tokens })
        })
        .collect()
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-' | '\''))
}

fn number<T: std::str::FromStr>(line: &Line<'_>, tok: &Token<'_>, what: &str) -> Result<T, ParseError> {
    tok.text
        .parse()
        .map_err(|_| line.error(tok.column, format!("expected {what}, found `{}`", tok.text)))
}

/// Parses and validates a `.rot` document.
pub fn parse_rot(text: &str) -> Result<PlaneGraph, RotError> {
    let lines = tokenize(text);
    let mut it = lines.iter();
    let eof = ParseError {
        line: text.lines().count() + 1,
        column: 1,
        message: String::new(),
    };

    let header = it.next().ok_or_else(|| ParseError {
        message: "missing `n m` header".into(),
        ..eof.clone()
    })?;
    if header.tokens.len() != 2 {
        return Err(header.error(1, "header must be `n m`").into());
    }
    let n: usize = number(header, &header.tokens[0], "vertex count")?;
    let m: usize = number(header, &header.tokens[1], "edge count")?;

    let mut entries: Vec<(String, Vec<String>)> = Vec::with_capacity(n);
    let mut seen_names = HashSet::with_capacity(n);
    for _ in 0..n {
        let line = it.next().ok_or_else(|| ParseError {
            message: format!("expected {n} vertex lines, found {}", entries.len()),
            ..eof.clone()
        })?;
        let head = &line.tokens[0];
        let Some(name) = head.text.strip_suffix(':') else {
            return Err(line.error(head.column, format!("expected `name:`, found `{}`", head.text)).into());
        };
        if !valid_name(name) {
            return Err(line.error(head.column, format!("invalid vertex name `{name}`")).into());
        }
        if !seen_names.insert(name) {
            return Err(line.error(head.column, format!("vertex `{name}` defined twice")).into());
        }
        let mut nbrs = Vec::with_capacity(line.tokens.len() - 1);
        let mut seen = HashSet::new();
        for tok in &line.tokens[1..] {
            if !valid_name(tok.text) {
                return Err(line.error(tok.column, format!("invalid vertex name `{}`", tok.text)).into());
            }
            if !seen.insert(tok.text) {
                return Err(line.error(tok.column, format!("duplicate neighbour `{}`", tok.text)).into());
            }
            nbrs.push(tok.text.to_string());
        }
        entries.push((name.to_string(), nbrs));
    }

    let darts: usize = entries.iter().map(|(_, nb)| nb.len()).sum();
    if darts != 2 * m {
        return Err(header
            .error(header.tokens[1].column, format!("header says {m} edges, rotation lists {} darts", darts))
            .into());
    }

    let mut outer = None;
    if let Some(line) = it.next() {
        if line.tokens.len() != 1 || line.tokens[0].text != "faces" {
            return Err(line.error(line.tokens[0].column, "expected `faces` or end of input").into());
        }
        if let Some(line) = it.next() {
            match line.tokens.as_slice() {
                [key, id] if key.text == "outer:" => outer = Some((line, id, number::<u32>(line, id, "face id")?)),
                _ => return Err(line.error(line.tokens[0].column, "expected `outer: <face id>`").into()),
            }
        }
        if let Some(line) = it.next() {
            return Err(line.error(line.tokens[0].column, "unexpected content after trailer").into());
        }
    }

    let g = PlaneGraph::from_named(entries)?;
    match outer {
        None => Ok(g),
        Some((line, tok, id)) => g
            .with_outer_face(FaceId(id))
            .map_err(|_| line.error(tok.column, format!("face {id} does not exist")).into()),
    }
}

/// Writes `g` in `.rot` form; face boundaries are listed as comments.
pub fn serialize_rot(g: &PlaneGraph) -> String {
    let mut out = String::new();
    write_rot(&mut out, g).expect("writing to a String cannot fail");
    out
}

fn write_rot(out: &mut String, g: &PlaneGraph) -> fmt::Result {
    writeln!(out, "{} {}", g.vertex_count(), g.edge_count())?;
    for v in 0..g.vertex_count() {
        write!(out, "{}:", g.name(v))?;
        for &w in g.rotation(v) {
            write!(out, " {}", g.name(w))?;
        }
        writeln!(out)?;
    }
    if let Some(f) = g.outer_face() {
        writeln!(out, "faces")?;
        for face in g.faces().iter() {
            let walk: Vec<&str> = face.boundary().iter().map(|&(v, _)| g.name(v)).collect();
            writeln!(out, "# {}: {}", face.id(), walk.join(" "))?;
        }
        writeln!(out, "outer: {}", f)?;
    }
    Ok(())
}
