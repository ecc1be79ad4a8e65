//! Required and forbidden edges, and their incorporation into a completed
//! pattern.
//!
//! File format, one constraint per line, `#` comments:
//!
//! ```text
//! require A -> B
//! forbid C -> D
//! ```

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::graph::{GraphError, Pdag};
use crate::rules::{close_in_place, OrientationRule};
use crate::text::{check_name, content, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnowledgeError {
    #[error("{0} -> {1} is both required and forbidden")]
    RequiredAndForbidden(String, String),
    #[error("{0} -> {1} and {1} -> {0} are both required")]
    RequiredBothWays(String, String),
    #[error("self-loop {0} -> {0} in background knowledge")]
    SelfLoop(String),
}

/// Background knowledge: forbidden and required directed edges, by name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BackgroundKnowledge {
    forbidden: BTreeSet<(String, String)>,
    required: BTreeSet<(String, String)>,
}

impl BackgroundKnowledge {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges<S: AsRef<str>>(
        required: &[(S, S)],
        forbidden: &[(S, S)],
    ) -> Result<Self, KnowledgeError> {
        let mut k = Self::new();
        for (a, b) in required {
            k.require(a.as_ref(), b.as_ref())?;
        }
        for (a, b) in forbidden {
            k.forbid(a.as_ref(), b.as_ref())?;
        }
        Ok(k)
    }

    pub fn require(&mut self, tail: &str, head: &str) -> Result<(), KnowledgeError> {
        let edge = (tail.to_string(), head.to_string());
        if tail == head {
            return Err(KnowledgeError::SelfLoop(edge.0));
        }
        if self.forbidden.contains(&edge) {
            return Err(KnowledgeError::RequiredAndForbidden(edge.0, edge.1));
        }
        if self.required.contains(&(edge.1.clone(), edge.0.clone())) {
            let (a, b) = if edge.0 < edge.1 {
                (edge.0, edge.1)
            } else {
                (edge.1, edge.0)
            };
            return Err(KnowledgeError::RequiredBothWays(a, b));
        }
        self.required.insert(edge);
        Ok(())
    }

    pub fn forbid(&mut self, tail: &str, head: &str) -> Result<(), KnowledgeError> {
        let edge = (tail.to_string(), head.to_string());
        if tail == head {
            return Err(KnowledgeError::SelfLoop(edge.0));
        }
        if self.required.contains(&edge) {
            return Err(KnowledgeError::RequiredAndForbidden(edge.0, edge.1));
        }
        self.forbidden.insert(edge);
        Ok(())
    }

    pub fn required(&self) -> impl Iterator<Item = (&str, &str)> {
        self.required.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    pub fn forbidden(&self) -> impl Iterator<Item = (&str, &str)> {
        self.forbidden.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    pub fn is_empty(&self) -> bool {
        self.required.is_empty() && self.forbidden.is_empty()
    }

    pub fn vertices(&self) -> BTreeSet<String> {
        self.required
            .iter()
            .chain(&self.forbidden)
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect()
    }

    fn indexed(&self, g: &Pdag) -> Result<IndexedKnowledge, GraphError> {
        let map = |set: &BTreeSet<(String, String)>| -> Result<Vec<(usize, usize)>, GraphError> {
            let mut out = set
                .iter()
                .map(|(a, b)| Ok((g.vertex(a)?, g.vertex(b)?)))
                .collect::<Result<Vec<_>, GraphError>>()?;
            out.sort();
            Ok(out)
        };
        Ok(IndexedKnowledge {
            required: map(&self.required)?,
            forbidden: map(&self.forbidden)?,
        })
    }
}

impl fmt::Display for BackgroundKnowledge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in &self.required {
            writeln!(f, "require {a} -> {b}")?;
        }
        for (a, b) in &self.forbidden {
            writeln!(f, "forbid {a} -> {b}")?;
        }
        Ok(())
    }
}

pub fn parse_knowledge(text: &str) -> Result<BackgroundKnowledge, ParseError> {
    let mut k = BackgroundKnowledge::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let body = content(raw);
        if body.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let result = match tokens.as_slice() {
            ["require", a, "->", b] => {
                check_name(lineno, a)?;
                check_name(lineno, b)?;
                k.require(a, b)
            }
            ["forbid", a, "->", b] => {
                check_name(lineno, a)?;
                check_name(lineno, b)?;
                k.forbid(a, b)
            }
            _ => {
                return Err(ParseError::new(
                    lineno,
                    format!("expected `require A -> B` or `forbid A -> B`, got {body:?}"),
                ))
            }
        };
        result.map_err(|e| ParseError::new(lineno, e.to_string()))?;
    }
    Ok(k)
}

pub fn write_knowledge(k: &BackgroundKnowledge) -> String {
    let mut out = String::new();
    let _ = write!(out, "{k}");
    out
}

struct IndexedKnowledge {
    required: Vec<(usize, usize)>,
    forbidden: Vec<(usize, usize)>,
}

/// How forbidden edges act on still-undirected pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ForbiddenSemantics {
    /// A forbidden `a → b` on an undirected pair orients it `b → a`, so the
    /// result is maximal with respect to the whole knowledge base.
    #[default]
    Orient,
    /// Forbidden edges are only checked, never used to orient.
    CheckOnly,
}

/// The constraint a failed incorporation ran into.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `tail → head` is forbidden but present.
    ForbiddenPresent { tail: String, head: String },
    /// `tail → head` is required but the edge points the other way.
    RequiredReversed { tail: String, head: String },
    /// `tail → head` is required but the pair is not adjacent.
    RequiredNotAdjacent { tail: String, head: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ForbiddenPresent { tail, head } => {
                write!(f, "forbidden edge {tail} -> {head} is oriented")
            }
            Violation::RequiredReversed { tail, head } => {
                write!(
                    f,
                    "required edge {tail} -> {head} is oriented {head} -> {tail}"
                )
            }
            Violation::RequiredNotAdjacent { tail, head } => {
                write!(
                    f,
                    "required edge {tail} -> {head} joins non-adjacent vertices"
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BackgroundError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    /// The knowledge is inconsistent with the graph. `round` counts the
    /// constraints applied before the check that failed.
    #[error("background knowledge inconsistent after {round} orientation(s): {violation}")]
    Inconsistent { violation: Violation, round: usize },
}

fn check(g: &Pdag, k: &IndexedKnowledge) -> Option<Violation> {
    let names = |t: usize, h: usize| (g.name(t).to_string(), g.name(h).to_string());
    for &(t, h) in &k.forbidden {
        if g.has_directed(t, h) {
            let (tail, head) = names(t, h);
            return Some(Violation::ForbiddenPresent { tail, head });
        }
    }
    for &(t, h) in &k.required {
        if g.has_directed(h, t) {
            let (tail, head) = names(t, h);
            return Some(Violation::RequiredReversed { tail, head });
        }
        if !g.is_adjacent(t, h) {
            let (tail, head) = names(t, h);
            return Some(Violation::RequiredNotAdjacent { tail, head });
        }
    }
    None
}

/// Orients the required edges one at a time (lexicographic order), closing
/// under all four rules after each, and checks every constraint before each
/// step and after the last closure.
///
/// `g` must be a completed pattern. On success the result is maximally
/// oriented with respect to `k`.
pub fn incorporate_background(
    g: &Pdag,
    k: &BackgroundKnowledge,
    semantics: ForbiddenSemantics,
) -> Result<Pdag, BackgroundError> {
    let ik = k.indexed(g)?;
    let mut out = g.clone();
    let mut round = 0;
    loop {
        if let Some(violation) = check(&out, &ik) {
            return Err(BackgroundError::Inconsistent { violation, round });
        }
        let next = ik
            .required
            .iter()
            .copied()
            .find(|&(t, h)| out.has_undirected(t, h))
            .or_else(|| match semantics {
                ForbiddenSemantics::Orient => ik
                    .forbidden
                    .iter()
                    .find(|&&(t, h)| out.has_undirected(t, h))
                    .map(|&(t, h)| (h, t)),
                ForbiddenSemantics::CheckOnly => None,
            });
        let Some((t, h)) = next else {
            return Ok(out);
        };
        out.orient_unchecked(t, h);
        close_in_place(&mut out, &OrientationRule::ALL, |_| {});
        round += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(text: &str) -> Pdag {
        text.parse().unwrap()
    }

    fn k(text: &str) -> BackgroundKnowledge {
        parse_knowledge(text).unwrap()
    }

    #[test]
    fn parse_and_write() {
        let kb = k("# bk\nrequire A -> B\nforbid C -> D\n");
        assert_eq!(write_knowledge(&kb), "require A -> B\nforbid C -> D\n");
        assert!(parse_knowledge("require A B").is_err());
        assert_eq!(
            parse_knowledge("require A -> B\nforbid A -> B")
                .unwrap_err()
                .line,
            2
        );
        assert_eq!(
            parse_knowledge("require A -> B\nrequire B -> A")
                .unwrap_err()
                .line,
            2
        );
        assert!(parse_knowledge("require A -> A").is_err());
    }

    #[test]
    fn required_edge_without_propagation() {
        let out = incorporate_background(
            &g("X -- Y\nY -- Z"),
            &k("require Y -> Z"),
            ForbiddenSemantics::Orient,
        )
        .unwrap();
        assert_eq!(out, g("X -- Y\nY -> Z"));
    }

    #[test]
    fn required_edges_that_force_a_collider_fail() {
        let err = incorporate_background(
            &g("X -- Y\nY -- Z"),
            &k("require X -> Y\nrequire Z -> Y"),
            ForbiddenSemantics::Orient,
        )
        .unwrap_err();
        assert_eq!(
            err,
            BackgroundError::Inconsistent {
                violation: Violation::RequiredReversed {
                    tail: "Z".into(),
                    head: "Y".into()
                },
                round: 1
            }
        );
    }

    #[test]
    fn forbidden_edge_already_present_fails_immediately() {
        let err = incorporate_background(
            &g("X -> Y\nZ -> Y"),
            &k("forbid X -> Y"),
            ForbiddenSemantics::Orient,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            BackgroundError::Inconsistent {
                violation: Violation::ForbiddenPresent { .. },
                round: 0
            }
        ));
    }

    #[test]
    fn required_non_adjacent_fails() {
        let err = incorporate_background(
            &g("X -- Y\nY -- Z"),
            &k("require X -> Z"),
            ForbiddenSemantics::Orient,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            BackgroundError::Inconsistent {
                violation: Violation::RequiredNotAdjacent { .. },
                ..
            }
        ));
    }

    #[test]
    fn forbidden_semantics() {
        let chain = g("X -- Y\nY -- Z");
        let kb = k("forbid Y -> X");
        let oriented = incorporate_background(&chain, &kb, ForbiddenSemantics::Orient).unwrap();
        assert_eq!(oriented, g("X -> Y\nY -> Z"));
        let literal = incorporate_background(&chain, &kb, ForbiddenSemantics::CheckOnly).unwrap();
        assert_eq!(literal, chain);
    }

    #[test]
    fn unknown_vertex() {
        let err = incorporate_background(
            &g("X -- Y"),
            &k("require X -> Q"),
            ForbiddenSemantics::Orient,
        )
        .unwrap_err();
        assert_eq!(
            err,
            BackgroundError::Graph(GraphError::UnknownVertex("Q".into()))
        );
    }
}
