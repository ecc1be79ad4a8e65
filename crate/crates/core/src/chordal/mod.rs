//! Chordal graphs, join trees and the vertex orders they induce.
//!
//! The undirected part of a completed pattern is chordal. Rooting a join
//! tree of its cliques yields a partial order on the vertices whose linear
//! extensions orient the undirected edges without new colliders. This is
//! what [`witness_extensions`] uses to produce two extensions that disagree
//! on a chosen edge, and what [`count_extensions`] checks against.

mod count;
mod order;
mod tree;
mod witness;

use thiserror::Error;

use crate::graph::{GraphError, Pdag};
use crate::set::NodeSet;

pub use count::{count_extensions, DEFAULT_COUNT_CAP};
pub use order::{consistent_ordering, induced_vertex_order, orient_by_order, VertexOrder};
pub use tree::{build_join_tree, CliqueRelations, JoinTree, TreeOrder};
pub use witness::witness_extensions;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChordalError {
    #[error("graph is not chordal")]
    NotChordal,
    #[error("graph has directed edges")]
    HasDirectedEdges,
    #[error("invalid tree order: {0}")]
    InvalidTreeOrder(String),
    #[error("vertex order has a cycle")]
    CyclicOrder,
    #[error("vertex order is not total")]
    NotTotal,
    #[error("input is not maximally oriented: {0}")]
    NotMaximal(String),
    #[error("{edges} undirected edges in one component exceed the cap of {cap}")]
    CapExceeded { edges: usize, cap: usize },
    #[error("no witness extension orients {0} -> {1}")]
    NoWitness(String, String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// An undirected graph: a [`Pdag`] without directed edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedView {
    g: Pdag,
}

impl UndirectedView {
    /// Fails if `g` has directed edges.
    pub fn new(g: &Pdag) -> Result<Self, ChordalError> {
        if !g.directed_edges().is_empty() {
            return Err(ChordalError::HasDirectedEdges);
        }
        Ok(UndirectedView { g: g.clone() })
    }

    /// The undirected edges of `g`, over all of its vertices.
    pub fn of(g: &Pdag) -> Self {
        let mut h = g.empty_like();
        for (a, b) in g.undirected_edges() {
            h.add_undirected(a, b).expect("fresh edge");
        }
        UndirectedView { g: h }
    }

    pub fn graph(&self) -> &Pdag {
        &self.g
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    pub fn neighbors(&self, v: usize) -> NodeSet {
        self.g.undirected_of(v)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.g.undirected_edges()
    }

    pub fn is_clique(&self, set: NodeSet) -> bool {
        set.iter()
            .all(|v| set.without(v).is_subset(self.neighbors(v)))
    }

    /// Connected components, ordered by smallest member.
    pub fn components(&self) -> Vec<NodeSet> {
        let mut seen = NodeSet::EMPTY;
        let mut out = Vec::new();
        for v in 0..self.n() {
            if seen.contains(v) {
                continue;
            }
            let mut comp = NodeSet::singleton(v);
            let mut stack = vec![v];
            while let Some(u) = stack.pop() {
                for w in self.neighbors(u).difference(comp) {
                    comp.insert(w);
                    stack.push(w);
                }
            }
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }
}

/// Maximum cardinality search, smallest index on ties. Returns the visit
/// order.
fn max_cardinality_search(h: &UndirectedView) -> Vec<usize> {
    let n = h.n();
    let mut weight = vec![0usize; n];
    let mut visited = NodeSet::EMPTY;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !visited.contains(v))
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("unvisited vertex");
        visited.insert(v);
        order.push(v);
        for w in h.neighbors(v).difference(visited) {
            weight[w] += 1;
        }
    }
    order
}

/// A perfect elimination ordering, or `None` if `h` is not chordal.
pub fn perfect_elimination_ordering(h: &UndirectedView) -> Option<Vec<usize>> {
    let mut peo = max_cardinality_search(h);
    peo.reverse();
    let mut pos = vec![0; h.n()];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    for &v in &peo {
        let later: NodeSet = h.neighbors(v).iter().filter(|&w| pos[w] > pos[v]).collect();
        if let Some(u) = later.iter().min_by_key(|&w| pos[w]) {
            if !later.without(u).is_subset(h.neighbors(u)) {
                return None;
            }
        }
    }
    Some(peo)
}

pub fn is_chordal(h: &UndirectedView) -> bool {
    perfect_elimination_ordering(h).is_some()
}

/// The maximal cliques of a chordal graph, sorted by their member lists.
/// Isolated vertices form singleton cliques.
pub fn maximal_cliques(h: &UndirectedView) -> Result<Vec<NodeSet>, ChordalError> {
    let peo = perfect_elimination_ordering(h).ok_or(ChordalError::NotChordal)?;
    let mut eliminated = NodeSet::EMPTY;
    let mut candidates = Vec::with_capacity(peo.len());
    for &v in &peo {
        candidates.push(h.neighbors(v).difference(eliminated).with(v));
        eliminated.insert(v);
    }
    let mut cliques: Vec<NodeSet> = candidates
        .iter()
        .copied()
        .filter(|&c| !candidates.iter().any(|&d| d != c && c.is_subset(d)))
        .collect();
    cliques.sort_by_key(|c| c.iter().collect::<Vec<_>>());
    cliques.dedup();
    Ok(cliques)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(super) fn view(text: &str) -> UndirectedView {
        UndirectedView::new(&text.parse().unwrap()).unwrap()
    }

    fn named(h: &UndirectedView, sets: &[NodeSet]) -> Vec<Vec<String>> {
        sets.iter()
            .map(|s| {
                h.graph()
                    .set_names(*s)
                    .into_iter()
                    .map(String::from)
                    .collect()
            })
            .collect()
    }

    #[test]
    fn chordality() {
        assert!(is_chordal(&view("A -- B\nB -- C")));
        assert!(is_chordal(&view("A -- B\nB -- C\nA -- C")));
        assert!(!is_chordal(&view("A -- B\nB -- C\nC -- D\nD -- A")));
        assert!(is_chordal(&view("A -- B\nB -- C\nC -- D\nD -- A\nA -- C")));
        assert!(is_chordal(&view("node A\nnode B")));
    }

    #[test]
    fn directed_edges_are_refused() {
        let g: Pdag = "A -> B".parse().unwrap();
        assert_eq!(UndirectedView::new(&g), Err(ChordalError::HasDirectedEdges));
        assert!(UndirectedView::of(&g).edges().is_empty());
    }

    #[test]
    fn cliques_of_small_graphs() {
        let path = view("A -- B\nB -- C");
        assert_eq!(
            named(&path, &maximal_cliques(&path).unwrap()),
            [vec!["A", "B"], vec!["B", "C"]]
        );
        let diamond = view("A -- B\nB -- C\nC -- D\nD -- A\nA -- C");
        assert_eq!(
            named(&diamond, &maximal_cliques(&diamond).unwrap()),
            [vec!["A", "B", "C"], vec!["A", "C", "D"]]
        );
        let cycle = view("A -- B\nB -- C\nC -- D\nD -- A");
        assert_eq!(maximal_cliques(&cycle), Err(ChordalError::NotChordal));
        let pendant = view("A -- B\nB -- C\nA -- C\nD -- A");
        assert_eq!(
            named(&pendant, &maximal_cliques(&pendant).unwrap()),
            [vec!["A", "B", "C"], vec!["A", "D"]]
        );
        let loose = view("node A\nB -- C");
        assert_eq!(
            named(&loose, &maximal_cliques(&loose).unwrap()),
            [vec!["A"], vec!["B", "C"]]
        );
    }

    #[test]
    fn components_by_smallest_member() {
        let h = view("A -- C\nB -- D\nnode E");
        let comps = h.components();
        assert_eq!(
            named(&h, &comps),
            [vec!["A", "C"], vec!["B", "D"], vec!["E"]]
        );
    }
}
