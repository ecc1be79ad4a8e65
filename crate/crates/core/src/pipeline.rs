//! End-to-end solvers: does a model have a complete causal explanation
//! (optionally respecting background knowledge), and which orientations do
//! all such explanations share?

use std::fmt;

use thiserror::Error;

use crate::background::{
    incorporate_background, BackgroundError, BackgroundKnowledge, ForbiddenSemantics,
};
use crate::discovery::{phase1, DiscoveryError, SearchMode};
use crate::extend::{extend_to_dag, ExtensionError};
use crate::graph::{Dag, GraphError, Pdag};
use crate::model::{DependencyModel, ModelError, DEFAULT_FULL_CAP};
use crate::rules::max_orient;
use crate::verify::{exhaustive_mismatch, verify_explanation, VerifyError};

/// Pipeline stage at which a model was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Phase {
    /// Skeleton and colliders.
    Pattern,
    /// Completion and background knowledge.
    Orientation,
    /// DAG extension.
    Extension,
    /// Verification against the model.
    Verification,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Pattern => "pattern",
            Phase::Orientation => "orientation",
            Phase::Extension => "extension",
            Phase::Verification => "verification",
        })
    }
}

/// How thoroughly the final candidate is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    /// Listed statements plus local Markov statements only. Exact when the
    /// model is closed under the graphoid axioms.
    Local,
    /// Local checks, then a statement-by-statement comparison in the model's
    /// scope when the graph has at most `cap` vertices.
    Auto { cap: usize },
    /// Local checks and the comparison, failing if over `cap`.
    Exhaustive { cap: usize },
}

impl Default for Check {
    fn default() -> Self {
        Check::Auto {
            cap: DEFAULT_FULL_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Options {
    pub search: SearchMode,
    pub forbidden: ForbiddenSemantics,
    pub check: Check,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExplainError {
    /// Malformed input: unknown vertices, bad names, caps exceeded.
    #[error("{0}")]
    Input(String),
    #[error("no explanation ({phase}): {reason}")]
    NoExplanation { phase: Phase, reason: String },
}

impl ExplainError {
    fn rejected(phase: Phase, reason: impl fmt::Display) -> Self {
        ExplainError::NoExplanation {
            phase,
            reason: reason.to_string(),
        }
    }

    pub fn phase(&self) -> Option<Phase> {
        match self {
            ExplainError::NoExplanation { phase, .. } => Some(*phase),
            ExplainError::Input(_) => None,
        }
    }
}

impl From<GraphError> for ExplainError {
    fn from(e: GraphError) -> Self {
        ExplainError::Input(e.to_string())
    }
}

impl From<ModelError> for ExplainError {
    fn from(e: ModelError) -> Self {
        ExplainError::Input(e.to_string())
    }
}

fn run_phase1<S: AsRef<str>>(
    m: &DependencyModel,
    vertices: &[S],
    opts: &Options,
) -> Result<Pdag, ExplainError> {
    phase1(m, vertices, opts.search).map_err(|e| match e {
        DiscoveryError::ConflictingColliders { .. } => ExplainError::rejected(Phase::Pattern, e),
        other => ExplainError::Input(other.to_string()),
    })
}

fn orient(pattern: &Pdag, k: &BackgroundKnowledge, opts: &Options) -> Result<Pdag, ExplainError> {
    let completed = max_orient(pattern);
    if k.is_empty() {
        return Ok(completed);
    }
    incorporate_background(&completed, k, opts.forbidden).map_err(|e| match e {
        BackgroundError::Graph(g) => ExplainError::from(g),
        inconsistent => ExplainError::rejected(Phase::Orientation, inconsistent),
    })
}

fn extend(g: &Pdag) -> Result<Dag, ExplainError> {
    extend_to_dag(g).map_err(|e| match e {
        ExtensionError::Graph(g) => ExplainError::rejected(Phase::Extension, g),
        not_maximal => ExplainError::rejected(Phase::Extension, not_maximal),
    })
}

fn verify(g: &Dag, m: &DependencyModel, check: Check) -> Result<(), ExplainError> {
    let input = |e: VerifyError| ExplainError::Input(e.to_string());
    let local = verify_explanation(g, m).map_err(input)?;
    if let Some(f) = local.failure {
        return Err(ExplainError::rejected(Phase::Verification, f));
    }
    let cap = match check {
        Check::Local => return Ok(()),
        Check::Auto { cap } if g.n() > cap => return Ok(()),
        Check::Auto { cap } | Check::Exhaustive { cap } => cap,
    };
    match exhaustive_mismatch(g, m, cap).map_err(input)? {
        Some(f) => Err(ExplainError::rejected(Phase::Verification, f)),
        None => Ok(()),
    }
}

/// A DAG whose entailed statements are exactly `m` and which satisfies
/// `k`, if one exists.
pub fn explain<S: AsRef<str>>(
    m: &DependencyModel,
    vertices: &[S],
    k: &BackgroundKnowledge,
    opts: &Options,
) -> Result<Dag, ExplainError> {
    let pattern = run_phase1(m, vertices, opts)?;
    let oriented = orient(&pattern, k, opts)?;
    let dag = extend(&oriented)?;
    verify(&dag, m, opts.check)?;
    Ok(dag)
}

/// The orientations shared by every explanation of `m` consistent with `k`,
/// as a partially directed graph. Existence is certified by verifying one
/// extension.
pub fn common_orientations<S: AsRef<str>>(
    m: &DependencyModel,
    vertices: &[S],
    k: &BackgroundKnowledge,
    opts: &Options,
) -> Result<Pdag, ExplainError> {
    let pattern = run_phase1(m, vertices, opts)?;
    let oriented = orient(&pattern, k, opts)?;
    let dag = extend(&oriented)?;
    verify(&dag, m, opts.check)?;
    Ok(oriented)
}
