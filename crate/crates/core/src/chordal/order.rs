//! Vertex orders induced by rooted join trees.

use crate::graph::{Dag, Pdag};
use crate::set::NodeSet;

use super::tree::{build_join_tree, transitive_closure, JoinTree, TreeOrder};
use super::{ChordalError, UndirectedView};

/// A strict partial order on vertex indices, stored transitively closed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrder {
    succ: Vec<NodeSet>,
}

impl VertexOrder {
    /// Closes `pairs` (`a` before `b`) transitively. Fails on a cycle.
    pub fn from_pairs(
        n: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, ChordalError> {
        let mut succ = vec![NodeSet::EMPTY; n];
        for (a, b) in pairs {
            succ[a].insert(b);
        }
        let succ = transitive_closure(succ);
        if (0..n).any(|v| succ[v].contains(v)) {
            return Err(ChordalError::CyclicOrder);
        }
        Ok(VertexOrder { succ })
    }

    /// The total order listing `seq` first to last.
    pub fn total(seq: &[usize]) -> Self {
        let mut succ = vec![NodeSet::EMPTY; seq.len()];
        let mut later = NodeSet::EMPTY;
        for &v in seq.iter().rev() {
            succ[v] = later;
            later.insert(v);
        }
        VertexOrder { succ }
    }

    pub fn n(&self) -> usize {
        self.succ.len()
    }

    pub fn precedes(&self, a: usize, b: usize) -> bool {
        self.succ[a].contains(b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.precedes(a, b) || self.precedes(b, a)
    }

    pub fn is_total(&self) -> bool {
        let n = self.n();
        (0..n).all(|a| (a + 1..n).all(|b| self.comparable(a, b)))
    }

    /// All ordered pairs, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|a| self.succ[a].iter().map(move |b| (a, b)))
            .collect()
    }

    /// A linear extension, smallest available vertex first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.n();
        let mut placed = NodeSet::EMPTY;
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let v = (0..n)
                .find(|&v| {
                    !placed.contains(v)
                        && (0..n).all(|u| placed.contains(u) || !self.precedes(u, v))
                })
                .expect("acyclic order");
            placed.insert(v);
            out.push(v);
        }
        out
    }

    /// No directed edge `a → b` of `g` has `b` before `a`.
    pub fn is_compatible_with(&self, g: &Pdag) -> bool {
        g.directed_edges()
            .into_iter()
            .all(|(a, b)| !self.precedes(b, a))
    }
}

/// The vertex order of a rooted join tree: along every tree edge from
/// parent `C_i` to child `C_j`, each vertex of `C_i ∩ C_j` precedes each
/// vertex of `C_j ∖ C_i`; then transitive closure.
///
/// Vertices of a root clique are minimal, so any two of them stay
/// incomparable.
pub fn induced_vertex_order(
    t: &JoinTree,
    pi: &TreeOrder,
    n: usize,
) -> Result<VertexOrder, ChordalError> {
    if !pi.fits(t) {
        return Err(ChordalError::InvalidTreeOrder(
            "order was not built over this tree".into(),
        ));
    }
    let mut pairs = Vec::new();
    for j in 0..t.len() {
        if let Some(i) = pi.parent(j) {
            let lam = t.label(i, j);
            for b in lam {
                for c in t.clique(j).difference(lam) {
                    pairs.push((b, c));
                }
            }
        }
    }
    VertexOrder::from_pairs(n, pairs)
}

/// A total order whose orientation of `h` is acyclic and collider-free, or
/// `None` if `h` is not chordal.
pub fn consistent_ordering(h: &UndirectedView) -> Option<VertexOrder> {
    let t = build_join_tree(h).ok()?;
    let pi = TreeOrder::rooted(&t, &[]).expect("default roots");
    let partial = induced_vertex_order(&t, &pi, h.n()).expect("tree orders are acyclic");
    Some(VertexOrder::total(&partial.linear_extension()))
}

/// Directs every edge of `h` from the earlier to the later vertex.
pub fn orient_by_order(h: &UndirectedView, order: &VertexOrder) -> Result<Dag, ChordalError> {
    if order.n() != h.n() || !order.is_total() {
        return Err(ChordalError::NotTotal);
    }
    let mut out = h.graph().empty_like();
    for (a, b) in h.edges() {
        let (t, hd) = if order.precedes(a, b) { (a, b) } else { (b, a) };
        out.add_directed(t, hd)?;
    }
    Ok(Dag::try_from(out)?)
}
