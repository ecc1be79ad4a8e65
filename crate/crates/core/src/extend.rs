//! Backtrack-free consistent DAG extension of a maximally oriented graph.

use thiserror::Error;

use crate::graph::{Dag, GraphError, Pdag};
use crate::rules::{close_in_place, OrientationRule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    /// The input was not maximally oriented: a directed cycle appeared after
    /// `step` orientation choices.
    #[error("input is not maximally oriented: directed cycle after {step} choice(s)")]
    NotMaximal { step: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Repeatedly orients the smallest undirected edge `a -- b` (`a < b`) as
/// `a → b` and closes under all four rules.
///
/// For a maximally oriented input every choice is extendable, so the loop
/// never backtracks and the result is a consistent DAG extension.
pub fn extend_to_dag(g: &Pdag) -> Result<Dag, ExtensionError> {
    let mut out = g.clone();
    let mut step = 0;
    if out.has_directed_cycle() {
        return Err(ExtensionError::NotMaximal { step });
    }
    while let Some(&(a, b)) = out.undirected_edges().first() {
        out.orient_unchecked(a, b);
        close_in_place(&mut out, &OrientationRule::ALL, |_| {});
        step += 1;
        if out.has_directed_cycle() {
            return Err(ExtensionError::NotMaximal { step });
        }
    }
    Ok(Dag::try_from(out)?)
}
