//! Complete causal explanations for conditional-independence models.
//!
//! Given a list of independence statements, decide whether some DAG
//! entails exactly those statements and, if so, which edge orientations
//! every such DAG shares. Required and forbidden edges can narrow the
//! answer.
//!
//! ```
//! use causal_explain::{explain, parse_ci, BackgroundKnowledge, Options};
//!
//! let m = parse_ci("X Z |").unwrap();
//! let g = explain(&m, &["X", "Y", "Z"], &BackgroundKnowledge::new(), &Options::default()).unwrap();
//! assert_eq!(g.to_string(), "X -> Y\nZ -> Y\n");
//! ```

pub mod background;
pub mod chordal;
pub mod discovery;
pub mod dsep;
pub mod extend;
pub mod graph;
pub mod model;
pub mod pipeline;
pub mod rules;
pub mod set;
pub mod text;
pub mod verify;

pub use background::{
    incorporate_background, parse_knowledge, write_knowledge, BackgroundError, BackgroundKnowledge,
    ForbiddenSemantics, KnowledgeError, Violation,
};
pub use chordal::{
    build_join_tree, consistent_ordering, count_extensions, induced_vertex_order, is_chordal,
    maximal_cliques, orient_by_order, witness_extensions, ChordalError, CliqueRelations, JoinTree,
    TreeOrder, UndirectedView, VertexOrder,
};
pub use discovery::{build_skeleton, orient_colliders, phase1, DiscoveryError, SearchMode};
pub use dsep::{d_separated, d_separated_names};
pub use extend::{extend_to_dag, ExtensionError};
pub use graph::{is_consistent_dag_extension, markov_equivalent, Dag, Edge, GraphError, Pdag};
pub use model::{
    parse_ci, write_ci, CiStatement, DependencyModel, Generation, ModelError, Scope, SepsetMap,
};
pub use pipeline::{common_orientations, explain, Check, ExplainError, Options, Phase};
pub use rules::{apply_rule, close_under, max_orient, OrientationRule, RuleFiring};
pub use set::NodeSet;
pub use text::{parse_graph, write_dot, write_graph, ParseError};
pub use verify::{verify_explanation, Verification, VerifyError, VerifyFailure};
