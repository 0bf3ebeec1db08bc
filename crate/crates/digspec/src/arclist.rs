//! Arc-list text format.
//!
//! UTF-8 text. Lines starting with `#` are comments and blank lines are
//! ignored. The first significant line is the order n; every following
//! significant line is `u v` (0-based, single space). Writes emit arcs in
//! canonical sorted order with a trailing newline.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::digraph::{Digraph, DigraphError};

#[derive(Debug, Error)]
pub enum ArcListError {
    #[error("line {0}: {1}")]
    Parse(usize, String),
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        source: DigraphError,
    },
    #[error("missing order line")]
    MissingOrder,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub fn parse(text: &str) -> Result<Digraph, ArcListError> {
    let mut n: Option<usize> = None;
    let mut arcs: Vec<(usize, usize, usize)> = Vec::new(); // (u, v, line)
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if n.is_none() {
            n = Some(line.parse().map_err(|_| {
                ArcListError::Parse(lineno, format!("expected order, got {line:?}"))
            })?);
            continue;
        }
        let mut parts = line.split_whitespace();
        let (u, v) = match (parts.next(), parts.next(), parts.next()) {
            (Some(u), Some(v), None) => (u, v),
            _ => {
                return Err(ArcListError::Parse(
                    lineno,
                    format!("expected `u v`, got {line:?}"),
                ))
            }
        };
        let parse_vertex = |s: &str| {
            s.parse::<usize>().map_err(|_| {
                ArcListError::Parse(lineno, format!("bad vertex {s:?}"))
            })
        };
        arcs.push((parse_vertex(u)?, parse_vertex(v)?, lineno));
    }
    let n = n.ok_or(ArcListError::MissingOrder)?;
    // Validate arc by arc so errors carry the offending line number.
    let mut seen: Vec<(usize, usize)> = Vec::with_capacity(arcs.len());
    for (u, v, line) in arcs {
        seen.push((u, v));
        if let Err(source) = Digraph::new(n, &seen) {
            return Err(ArcListError::Invalid { line, source });
        }
    }
    Digraph::new(n, &seen).map_err(|source| ArcListError::Invalid { line: 0, source })
}

pub fn read_file(path: &Path) -> Result<Digraph, ArcListError> {
    parse(&fs::read_to_string(path)?)
}

pub fn to_string(d: &Digraph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", d.n());
    for &(u, v) in d.arcs() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn write_file(d: &Digraph, path: &Path) -> Result<(), ArcListError> {
    fs::write(path, to_string(d))?;
    Ok(())
}
