//! Checking that a DAG explains a dependency model exactly.

use std::fmt;

use thiserror::Error;

use crate::dsep::separated;
use crate::graph::{Dag, Pdag};
use crate::model::{CiStatement, DependencyModel, IndexedModel, ModelError, Scope};
use crate::set::NodeSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{n} vertices exceed the cap of {cap} for the exhaustive check")]
    CapExceeded { n: usize, cap: usize },
}

/// Why a candidate graph is not an explanation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyFailure {
    /// Undirected edges remain.
    NotDirected,
    Cyclic,
    /// A listed statement the graph does not entail.
    NotEntailed(CiStatement),
    /// A local Markov statement of the graph missing from the model.
    LocalMarkovMissing {
        vertex: String,
        statement: CiStatement,
    },
    /// The graph entails a statement the model does not list.
    Unlisted(CiStatement),
}

impl fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyFailure::NotDirected => write!(f, "not fully directed"),
            VerifyFailure::Cyclic => write!(f, "cyclic"),
            VerifyFailure::NotEntailed(s) => write!(f, "statement not entailed: {s}"),
            VerifyFailure::LocalMarkovMissing { vertex, statement } => {
                write!(
                    f,
                    "local Markov statement for {vertex} not in model: {statement}"
                )
            }
            VerifyFailure::Unlisted(s) => write!(f, "entailed statement not in model: {s}"),
        }
    }
}

/// Outcome of [`verify_explanation`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub failure: Option<VerifyFailure>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    fn fail(failure: VerifyFailure) -> Self {
        Verification {
            failure: Some(failure),
        }
    }

    fn pass() -> Self {
        Verification { failure: None }
    }
}

/// Three checks, stopping at the first failure:
///
/// 1. `g` is a DAG;
/// 2. every statement of `m` is entailed by `g`;
/// 3. for a topological order, each vertex is independent of its
///    non-parent predecessors given its parents, according to `m`.
///
/// Check 3 is skipped for vertices whose non-parent predecessor set is
/// empty. For pairwise models it asks for one statement per predecessor.
pub fn verify_explanation(g: &Pdag, m: &DependencyModel) -> Result<Verification, VerifyError> {
    let index = m.index_over(g)?;
    if g.has_undirected_edges() {
        return Ok(Verification::fail(VerifyFailure::NotDirected));
    }
    let Ok(dag) = Dag::try_from(g.clone()) else {
        return Ok(Verification::fail(VerifyFailure::Cyclic));
    };
    for stmt in m.statements() {
        let set = |names: &std::collections::BTreeSet<String>| -> NodeSet {
            names
                .iter()
                .map(|n| g.index_of(n).expect("indexed above"))
                .collect()
        };
        if !separated(&dag, set(stmt.a()), set(stmt.b()), set(stmt.s())) {
            return Ok(Verification::fail(VerifyFailure::NotEntailed(stmt.clone())));
        }
    }
    let scope = m.scope();
    let mut before = NodeSet::EMPTY;
    for v in dag.order() {
        let pa = dag.parents_of(v);
        let rest = before.difference(pa);
        before.insert(v);
        if rest.is_empty() {
            continue;
        }
        let missing = match scope {
            Scope::Full => (!index.holds(NodeSet::singleton(v), rest, pa)).then_some(rest),
            Scope::Pairwise => rest
                .iter()
                .find(|&x| !index.holds_pair(v, x, pa))
                .map(NodeSet::singleton),
        };
        if let Some(other) = missing {
            return Ok(Verification::fail(VerifyFailure::LocalMarkovMissing {
                vertex: g.name(v).to_string(),
                statement: CiStatement::from_sets(g, NodeSet::singleton(v), other, pa),
            }));
        }
    }
    Ok(Verification::pass())
}

fn first_mismatch(
    g: &Dag,
    index: &IndexedModel,
    a: NodeSet,
    b: NodeSet,
    s: NodeSet,
) -> Option<VerifyFailure> {
    let listed = index.holds(a, b, s);
    let entailed = separated(g, a, b, s);
    match (listed, entailed) {
        (true, false) => Some(VerifyFailure::NotEntailed(CiStatement::from_sets(
            g, a, b, s,
        ))),
        (false, true) => Some(VerifyFailure::Unlisted(CiStatement::from_sets(g, a, b, s))),
        _ => None,
    }
}

/// Compares `m` with the entailments of `g` over every single-vertex pair
/// and conditioning set.
pub fn pairwise_mismatch(
    g: &Dag,
    m: &DependencyModel,
) -> Result<Option<VerifyFailure>, VerifyError> {
    let index = m.index_over(g)?;
    let all = g.all_vertices();
    for x in 0..g.n() {
        for y in x + 1..g.n() {
            for s in all.without(x).without(y).subsets_by_size() {
                let (a, b) = (NodeSet::singleton(x), NodeSet::singleton(y));
                if let Some(f) = first_mismatch(g, &index, a, b, s) {
                    return Ok(Some(f));
                }
            }
        }
    }
    Ok(None)
}

/// Compares `m` with the entailments of `g` over every triple of disjoint
/// vertex sets with nonempty sides.
pub fn full_mismatch(
    g: &Dag,
    m: &DependencyModel,
    cap: usize,
) -> Result<Option<VerifyFailure>, VerifyError> {
    let n = g.n();
    if n > cap {
        return Err(VerifyError::CapExceeded { n, cap });
    }
    let index = m.index_over(g)?;
    let all = g.all_vertices();
    for a in all.subsets_by_size().into_iter().filter(|a| !a.is_empty()) {
        let lowest = a.first();
        let others = all.difference(a);
        for b in others.subsets_by_size() {
            if b.is_empty() || b.first() < lowest {
                continue;
            }
            for s in others.difference(b).subsets_by_size() {
                if let Some(f) = first_mismatch(g, &index, a, b, s) {
                    return Ok(Some(f));
                }
            }
        }
    }
    Ok(None)
}

/// True iff `m` lists exactly the statements `g` entails, over all disjoint
/// vertex sets.
pub fn full_equivalence_check(
    g: &Dag,
    m: &DependencyModel,
    cap: usize,
) -> Result<bool, VerifyError> {
    Ok(full_mismatch(g, m, cap)?.is_none())
}

/// Single-vertex analogue of [`full_equivalence_check`].
pub fn pairwise_equivalence_check(g: &Dag, m: &DependencyModel) -> Result<bool, VerifyError> {
    Ok(pairwise_mismatch(g, m)?.is_none())
}

/// Exhaustive comparison in the model's own scope.
pub fn exhaustive_mismatch(
    g: &Dag,
    m: &DependencyModel,
    cap: usize,
) -> Result<Option<VerifyFailure>, VerifyError> {
    match m.scope() {
        Scope::Pairwise => pairwise_mismatch(g, m),
        Scope::Full => full_mismatch(g, m, cap),
    }
}
