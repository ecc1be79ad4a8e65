//! Line-oriented graph text format and DOT emission.
//!
//! ```text
//! # comment
//! node W
//! X -> Y
//! Y -- Z
//! ```
//!
//! Vertices mentioned by edges are declared implicitly. A second edge line
//! for an already connected pair is an error, whatever its kind.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{is_valid_name, Dag, Edge, GraphError, Pdag};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// Strips a trailing `#` comment and surrounding whitespace.
pub(crate) fn content(line: &str) -> &str {
    match line.find('#') {
        Some(i) => line[..i].trim(),
        None => line.trim(),
    }
}

pub(crate) fn check_name(line: usize, name: &str) -> Result<(), ParseError> {
    if is_valid_name(name) {
        Ok(())
    } else {
        Err(ParseError::new(
            line,
            format!("invalid vertex name {name:?}"),
        ))
    }
}

enum Line<'a> {
    Node(&'a str),
    Directed(&'a str, &'a str),
    Undirected(&'a str, &'a str),
}

pub fn parse_graph(text: &str) -> Result<Pdag, ParseError> {
    let mut parsed = Vec::new();
    let mut names = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let body = content(raw);
        if body.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let item = match tokens.as_slice() {
            ["node", v] => Line::Node(v),
            [a, "->", b] => Line::Directed(a, b),
            [a, "--", b] => Line::Undirected(a, b),
            _ => return Err(ParseError::new(lineno, format!("cannot parse {body:?}"))),
        };
        match item {
            Line::Node(v) => {
                check_name(lineno, v)?;
                names.push(v.to_string());
            }
            Line::Directed(a, b) | Line::Undirected(a, b) => {
                check_name(lineno, a)?;
                check_name(lineno, b)?;
                names.push(a.to_string());
                names.push(b.to_string());
            }
        }
        parsed.push((lineno, item));
    }
    names.sort();
    names.dedup();
    let mut g = Pdag::new(names).map_err(|e| ParseError::new(0, e.to_string()))?;
    for (lineno, item) in parsed {
        let edge = match item {
            Line::Node(_) => continue,
            Line::Directed(a, b) => Edge::Directed(index(&g, a), index(&g, b)),
            Line::Undirected(a, b) => Edge::Undirected(index(&g, a), index(&g, b)),
        };
        g.add_edge(edge)
            .map_err(|e| ParseError::new(lineno, e.to_string()))?;
    }
    Ok(g)
}

fn index(g: &Pdag, name: &str) -> usize {
    g.index_of(name).expect("declared above")
}

/// Serializes `g`: `node` lines for isolated vertices, then every edge,
/// sorted lexicographically by its printed endpoint names.
pub fn write_graph(g: &Pdag) -> String {
    let mut out = String::new();
    for v in 0..g.n() {
        if g.adjacent_of(v).is_empty() {
            let _ = writeln!(out, "node {}", g.name(v));
        }
    }
    let mut lines: Vec<(&str, &str, &str)> = g
        .directed_edges()
        .into_iter()
        .map(|(t, h)| (g.name(t), g.name(h), "->"))
        .chain(
            g.undirected_edges()
                .into_iter()
                .map(|(a, b)| (g.name(a), g.name(b), "--")),
        )
        .collect();
    lines.sort();
    for (a, b, op) in lines {
        let _ = writeln!(out, "{a} {op} {b}");
    }
    out
}

/// Graphviz rendering; undirected edges carry `dir=none`.
pub fn write_dot(g: &Pdag) -> String {
    let mut out = String::from("digraph {\n");
    for name in g.names() {
        let _ = writeln!(out, "  \"{name}\";");
    }
    let mut lines: Vec<(&str, &str, bool)> = g
        .directed_edges()
        .into_iter()
        .map(|(t, h)| (g.name(t), g.name(h), true))
        .chain(
            g.undirected_edges()
                .into_iter()
                .map(|(a, b)| (g.name(a), g.name(b), false)),
        )
        .collect();
    lines.sort();
    for (a, b, directed) in lines {
        if directed {
            let _ = writeln!(out, "  \"{a}\" -> \"{b}\";");
        } else {
            let _ = writeln!(out, "  \"{a}\" -> \"{b}\" [dir=none];");
        }
    }
    out.push_str("}\n");
    out
}

impl FromStr for Pdag {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_graph(s)
    }
}

impl fmt::Display for Pdag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_graph(self))
    }
}

impl FromStr for Dag {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let g = parse_graph(s)?;
        Dag::try_from(g).map_err(|e: GraphError| ParseError::new(0, e.to_string()))
    }
}

impl fmt::Display for Dag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_graph(self))
    }
}
