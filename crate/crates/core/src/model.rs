//! Dependency models: lists of conditional-independence statements.
//!
//! The text format has one statement per line, `ASET BSET | SSET`, where each
//! set is a comma-separated list of vertex names. The conditioning set may be
//! empty, and the `|` may then be dropped:
//!
//! ```text
//! X Z | Y
//! A,B C |
//! ```

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use thiserror::Error;

use crate::dsep::separated;
use crate::graph::{is_valid_name, Dag, Pdag};
use crate::set::NodeSet;
use crate::text::{check_name, content, ParseError};

/// Default vertex cap for enumerating set-valued statements.
pub const DEFAULT_FULL_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("sets not disjoint")]
    NotDisjoint,
    #[error("independence statement needs nonempty sets on both sides")]
    EmptySet,
    #[error("invalid vertex name {0:?}")]
    InvalidName(String),
    #[error("statement references unknown vertex {0}")]
    UnknownVertex(String),
    #[error("{n} vertices exceed the cap of {cap} for set-valued enumeration")]
    CapExceeded { n: usize, cap: usize },
}

/// `a ⟂ b | s` over vertex names, kept in canonical form: the
/// lexicographically smaller of the two sides is `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CiStatement {
    a: BTreeSet<String>,
    b: BTreeSet<String>,
    s: BTreeSet<String>,
}

impl CiStatement {
    pub fn new<I, J, K, S>(a: I, b: J, s: K) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = S>,
        J: IntoIterator<Item = S>,
        K: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let a = name_set(a)?;
        let b = name_set(b)?;
        let s = name_set(s)?;
        if a.is_empty() || b.is_empty() {
            return Err(ModelError::EmptySet);
        }
        if !a.is_disjoint(&b) || !a.is_disjoint(&s) || !b.is_disjoint(&s) {
            return Err(ModelError::NotDisjoint);
        }
        Ok(if a <= b {
            CiStatement { a, b, s }
        } else {
            CiStatement { a: b, b: a, s }
        })
    }

    pub(crate) fn from_sets(g: &Pdag, a: NodeSet, b: NodeSet, s: NodeSet) -> Self {
        let names =
            |x: NodeSet| -> BTreeSet<String> { x.iter().map(|v| g.name(v).to_string()).collect() };
        let (a, b) = if a.first() <= b.first() {
            (a, b)
        } else {
            (b, a)
        };
        CiStatement {
            a: names(a),
            b: names(b),
            s: names(s),
        }
    }

    pub fn a(&self) -> &BTreeSet<String> {
        &self.a
    }

    pub fn b(&self) -> &BTreeSet<String> {
        &self.b
    }

    pub fn s(&self) -> &BTreeSet<String> {
        &self.s
    }

    pub fn is_pairwise(&self) -> bool {
        self.a.len() == 1 && self.b.len() == 1
    }

    pub fn vertices(&self) -> impl Iterator<Item = &str> {
        self.a
            .iter()
            .chain(&self.b)
            .chain(&self.s)
            .map(String::as_str)
    }
}

impl fmt::Display for CiStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join =
            |s: &BTreeSet<String>| s.iter().map(String::as_str).collect::<Vec<_>>().join(",");
        write!(f, "{} {} |", join(&self.a), join(&self.b))?;
        if !self.s.is_empty() {
            write!(f, " {}", join(&self.s))?;
        }
        Ok(())
    }
}

fn name_set<I, S>(names: I) -> Result<BTreeSet<String>, ModelError>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let mut out = BTreeSet::new();
    for name in names {
        let name = name.into();
        if !is_valid_name(&name) {
            return Err(ModelError::InvalidName(name));
        }
        if !out.insert(name) {
            return Err(ModelError::NotDisjoint);
        }
    }
    Ok(out)
}

/// Which statements a model is taken to speak about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    /// Only single-vertex sides; a set-valued fact holds when all of its
    /// single-vertex components do.
    Pairwise,
    /// Arbitrary disjoint sides.
    Full,
}

/// How [`DependencyModel::from_dag`] enumerates entailed statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Generation {
    #[default]
    Pairwise,
    /// All disjoint nonempty sides, limited to graphs of at most `cap`
    /// vertices.
    Full { cap: usize },
}

/// An ordered, duplicate-free list of independence statements.
#[derive(Debug, Clone, Default)]
pub struct DependencyModel {
    statements: Vec<CiStatement>,
    index: HashSet<CiStatement>,
}

impl PartialEq for DependencyModel {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index
    }
}

impl Eq for DependencyModel {}

impl DependencyModel {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends `stmt` unless it is already present. Returns whether it was new.
    pub fn insert(&mut self, stmt: CiStatement) -> bool {
        if self.index.contains(&stmt) {
            return false;
        }
        self.index.insert(stmt.clone());
        self.statements.push(stmt);
        true
    }

    pub fn remove(&mut self, stmt: &CiStatement) -> bool {
        if self.index.remove(stmt) {
            self.statements.retain(|s| s != stmt);
            true
        } else {
            false
        }
    }

    /// Membership; symmetric in the two sides.
    pub fn holds(&self, stmt: &CiStatement) -> bool {
        self.index.contains(stmt)
    }

    pub fn statements(&self) -> &[CiStatement] {
        &self.statements
    }

    pub fn len(&self) -> usize {
        self.statements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.statements.is_empty()
    }

    pub fn scope(&self) -> Scope {
        if self.statements.iter().all(CiStatement::is_pairwise) {
            Scope::Pairwise
        } else {
            Scope::Full
        }
    }

    /// Every vertex name mentioned by some statement.
    pub fn vertices(&self) -> BTreeSet<String> {
        self.statements
            .iter()
            .flat_map(|s| s.vertices().map(str::to_string))
            .collect()
    }

    /// Binds the model to the vertex numbering of `g`.
    pub fn index_over(&self, g: &Pdag) -> Result<IndexedModel, ModelError> {
        let mut facts = HashSet::with_capacity(self.statements.len());
        let lookup = |names: &BTreeSet<String>| -> Result<NodeSet, ModelError> {
            names
                .iter()
                .map(|n| {
                    g.index_of(n)
                        .ok_or_else(|| ModelError::UnknownVertex(n.clone()))
                })
                .collect()
        };
        for stmt in &self.statements {
            let key = IndexedModel::key(lookup(&stmt.a)?, lookup(&stmt.b)?, lookup(&stmt.s)?);
            facts.insert(key);
        }
        Ok(IndexedModel { facts })
    }

    /// The statements entailed by `g`, decided by d-separation.
    pub fn from_dag(g: &Dag, mode: Generation) -> Result<Self, ModelError> {
        let mut m = DependencyModel::new();
        let n = g.n();
        let all = g.all_vertices();
        match mode {
            Generation::Pairwise => {
                for x in 0..n {
                    for y in x + 1..n {
                        let rest = all.without(x).without(y);
                        for s in rest.subsets_by_size() {
                            let (a, b) = (NodeSet::singleton(x), NodeSet::singleton(y));
                            if separated(g, a, b, s) {
                                m.insert(CiStatement::from_sets(g, a, b, s));
                            }
                        }
                    }
                }
            }
            Generation::Full { cap } => {
                if n > cap {
                    return Err(ModelError::CapExceeded { n, cap });
                }
                for a in all.subsets_by_size().into_iter().filter(|a| !a.is_empty()) {
                    let lowest = a.first().expect("nonempty");
                    let others = all.difference(a);
                    for b in others.subsets_by_size() {
                        // canonical: the side holding the smaller vertex comes first
                        if b.is_empty() || b.first() < Some(lowest) {
                            continue;
                        }
                        for s in others.difference(b).subsets_by_size() {
                            if separated(g, a, b, s) {
                                m.insert(CiStatement::from_sets(g, a, b, s));
                            }
                        }
                    }
                }
            }
        }
        Ok(m)
    }
}

impl fmt::Display for DependencyModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for stmt in &self.statements {
            writeln!(f, "{stmt}")?;
        }
        Ok(())
    }
}

pub fn parse_ci(text: &str) -> Result<DependencyModel, ParseError> {
    let mut m = DependencyModel::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let body = content(raw);
        if body.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let (a, b, s) = match tokens.as_slice() {
            [a, b] | [a, b, "|"] => (*a, *b, ""),
            [a, b, "|", s] => (*a, *b, *s),
            _ => {
                return Err(ParseError::new(
                    lineno,
                    format!("expected `ASET BSET | SSET`, got {body:?}"),
                ))
            }
        };
        let set = |token: &str| -> Result<Vec<String>, ParseError> {
            if token.is_empty() {
                return Ok(Vec::new());
            }
            token
                .split(',')
                .map(|name| check_name(lineno, name).map(|_| name.to_string()))
                .collect()
        };
        let stmt = CiStatement::new(set(a)?, set(b)?, set(s)?)
            .map_err(|e| ParseError::new(lineno, e.to_string()))?;
        m.insert(stmt);
    }
    Ok(m)
}

pub fn write_ci(m: &DependencyModel) -> String {
    let mut out = String::new();
    for stmt in m.statements() {
        let _ = writeln!(out, "{stmt}");
    }
    out
}

impl FromStr for DependencyModel {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_ci(s)
    }
}

/// A model bound to a graph's vertex numbering for fast membership checks.
#[derive(Debug, Clone)]
pub struct IndexedModel {
    facts: HashSet<(NodeSet, NodeSet, NodeSet)>,
}

impl IndexedModel {
    fn key(a: NodeSet, b: NodeSet, s: NodeSet) -> (NodeSet, NodeSet, NodeSet) {
        if a.first() <= b.first() {
            (a, b, s)
        } else {
            (b, a, s)
        }
    }

    pub fn holds(&self, a: NodeSet, b: NodeSet, s: NodeSet) -> bool {
        self.facts.contains(&Self::key(a, b, s))
    }

    pub fn holds_pair(&self, x: usize, y: usize, s: NodeSet) -> bool {
        self.holds(NodeSet::singleton(x), NodeSet::singleton(y), s)
    }

    pub fn facts(&self) -> impl Iterator<Item = (NodeSet, NodeSet, NodeSet)> + '_ {
        self.facts.iter().copied()
    }
}

/// Separating sets found for non-adjacent pairs, keyed by `(a, b)` with
/// `a < b`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SepsetMap {
    entries: BTreeMap<(usize, usize), NodeSet>,
}

impl SepsetMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, a: usize, b: usize, sep: NodeSet) {
        debug_assert!(!sep.contains(a) && !sep.contains(b));
        self.entries.insert((a.min(b), a.max(b)), sep);
    }

    pub fn get(&self, a: usize, b: usize) -> Option<NodeSet> {
        self.entries.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), NodeSet)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    /// One `A B | S` line per entry, using the names of `g`.
    pub fn describe(&self, g: &Pdag) -> String {
        let mut out = String::new();
        for ((a, b), sep) in self.iter() {
            let _ = write!(out, "{} {} |", g.name(a), g.name(b));
            if !sep.is_empty() {
                let _ = write!(out, " {}", g.set_names(sep).join(","));
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn stmt(a: &[&str], b: &[&str], s: &[&str]) -> CiStatement {
        CiStatement::new(a.iter().copied(), b.iter().copied(), s.iter().copied()).unwrap()
    }

    #[test]
    fn membership_is_symmetric() {
        let m: DependencyModel = "X Z | Y".parse().unwrap();
        assert!(m.holds(&stmt(&["X"], &["Z"], &["Y"])));
        assert!(m.holds(&stmt(&["Z"], &["X"], &["Y"])));
        assert!(!m.holds(&stmt(&["X"], &["Z"], &[])));
    }

    #[test]
    fn parse_line_forms() {
        let m = parse_ci("# comment\nX Z | Y\n\nA,B C |\nP Q\n").unwrap();
        assert_eq!(m.len(), 3);
        assert!(m.holds(&stmt(&["A", "B"], &["C"], &[])));
        assert!(m.holds(&stmt(&["P"], &["Q"], &[])));
        assert_eq!(m.scope(), Scope::Full);
    }

    #[test]
    fn parse_rejects_overlap() {
        let err = parse_ci("X Z | Y\nX X | Y").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("sets not disjoint"));
        assert!(parse_ci("X Z | X").is_err());
        assert!(parse_ci("X Z Y").is_err());
        assert!(parse_ci("X Z | Y W").is_err());
        assert!(parse_ci("X, | Y").is_err());
    }

    #[test]
    fn duplicates_collapse() {
        let m = parse_ci("X Z | Y\nZ X | Y").unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(write_ci(&m), "X Z | Y\n");
    }

    #[test]
    fn from_dag_pairwise_examples() {
        let chain: Dag = "X -> Y\nY -> Z".parse().unwrap();
        let m = DependencyModel::from_dag(&chain, Generation::Pairwise).unwrap();
        assert_eq!(m, parse_ci("X Z | Y").unwrap());

        let collider: Dag = "X -> Y\nZ -> Y".parse().unwrap();
        let m = DependencyModel::from_dag(&collider, Generation::Pairwise).unwrap();
        assert_eq!(m, parse_ci("X Z |").unwrap());

        let edge: Dag = "X -> Y".parse().unwrap();
        assert!(DependencyModel::from_dag(&edge, Generation::Pairwise)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn from_dag_full_includes_sets_and_respects_cap() {
        let g: Dag = "A -> C\nB -> C\nnode D".parse().unwrap();
        let m = DependencyModel::from_dag(&g, Generation::Full { cap: 8 }).unwrap();
        assert!(m.holds(&stmt(&["A", "B", "C"], &["D"], &[])));
        assert!(m.holds(&stmt(&["A"], &["B", "D"], &[])));
        assert!(!m.holds(&stmt(&["A"], &["B"], &["C"])));
        assert_eq!(
            DependencyModel::from_dag(&g, Generation::Full { cap: 3 }),
            Err(ModelError::CapExceeded { n: 4, cap: 3 })
        );
    }

    #[test]
    fn index_over_reports_unknown_vertices() {
        let m = parse_ci("X Q | Y").unwrap();
        let g: Pdag = "X -- Y".parse().unwrap();
        assert_eq!(
            m.index_over(&g).unwrap_err(),
            ModelError::UnknownVertex("Q".into())
        );
    }

    fn arb_model() -> impl Strategy<Value = DependencyModel> {
        let names = ["A", "B", "C", "D", "E"];
        proptest::collection::vec(proptest::collection::vec(0u8..4, 5), 0..12).prop_map(
            move |rows| {
                let mut m = DependencyModel::new();
                for row in rows {
                    let pick = |k: u8| -> Vec<&str> {
                        row.iter()
                            .zip(names)
                            .filter(|(r, _)| **r == k)
                            .map(|(_, n)| n)
                            .collect()
                    };
                    if let Ok(s) = CiStatement::new(pick(1), pick(2), pick(3)) {
                        m.insert(s);
                    }
                }
                m
            },
        )
    }

    proptest! {
        #[test]
        fn ci_round_trip(m in arb_model()) {
            let text = write_ci(&m);
            let back = parse_ci(&text).unwrap();
            prop_assert_eq!(write_ci(&back), text);
            prop_assert_eq!(back, m);
        }
    }
}
