//! Join trees over maximal cliques, their rooted orders, and the clique
//! relations read off an oriented graph.

use crate::graph::Pdag;
use crate::set::NodeSet;

use super::{maximal_cliques, ChordalError, UndirectedView};

/// A maximum-weight spanning forest of the clique intersection graph.
/// Each edge is labelled by the intersection of its end cliques.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinTree {
    cliques: Vec<NodeSet>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<NodeSet>,
}

/// Kruskal over positive-weight clique pairs, heavier first, then by index.
pub fn build_join_tree(h: &UndirectedView) -> Result<JoinTree, ChordalError> {
    let cliques = maximal_cliques(h)?;
    let k = cliques.len();
    let mut candidates = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let w = cliques[i].intersection(cliques[j]).len();
            if w > 0 {
                candidates.push((w, i, j));
            }
        }
    }
    candidates.sort_by_key(|&(w, i, j)| (std::cmp::Reverse(w), i, j));

    let mut root: Vec<usize> = (0..k).collect();
    fn find(root: &mut [usize], mut x: usize) -> usize {
        while root[x] != x {
            root[x] = root[root[x]];
            x = root[x];
        }
        x
    }
    let mut edges = Vec::new();
    let mut adjacency = vec![NodeSet::EMPTY; k];
    for (_, i, j) in candidates {
        let (ri, rj) = (find(&mut root, i), find(&mut root, j));
        if ri != rj {
            root[ri] = rj;
            edges.push((i, j));
            adjacency[i].insert(j);
            adjacency[j].insert(i);
        }
    }
    edges.sort_unstable();
    Ok(JoinTree {
        cliques,
        edges,
        adjacency,
    })
}

impl JoinTree {
    pub fn cliques(&self) -> &[NodeSet] {
        &self.cliques
    }

    pub fn clique(&self, i: usize) -> NodeSet {
        self.cliques[i]
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    /// Tree edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, i: usize) -> NodeSet {
        self.adjacency[i]
    }

    pub fn is_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].contains(j)
    }

    /// The separator `C_i ∩ C_j`.
    pub fn label(&self, i: usize, j: usize) -> NodeSet {
        self.cliques[i].intersection(self.cliques[j])
    }

    /// Clique sets of the connected components of the forest, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<NodeSet> {
        let mut seen = NodeSet::EMPTY;
        let mut out = Vec::new();
        for i in 0..self.len() {
            if !seen.contains(i) {
                let comp = self.reach(i);
                seen = seen.union(comp);
                out.push(comp);
            }
        }
        out
    }

    fn reach(&self, from: usize) -> NodeSet {
        let mut comp = NodeSet::singleton(from);
        let mut stack = vec![from];
        while let Some(u) = stack.pop() {
            for w in self.adjacency[u].difference(comp) {
                comp.insert(w);
                stack.push(w);
            }
        }
        comp
    }

    /// Cliques containing any one vertex form a connected subtree.
    pub fn has_running_intersection(&self) -> bool {
        let vertices = self.cliques.iter().fold(NodeSet::EMPTY, |a, &c| a.union(c));
        vertices.iter().all(|v| {
            let holding: NodeSet = (0..self.len())
                .filter(|&i| self.cliques[i].contains(v))
                .collect();
            let links = self
                .edges
                .iter()
                .filter(|&&(i, j)| holding.contains(i) && holding.contains(j))
                .count();
            links + 1 == holding.len()
        })
    }

    /// Orientation-derived relations between cliques of `g`'s undirected
    /// part.
    ///
    /// `γ(i, j)` holds when `Λ = C_i ∩ C_j` is nonempty, every edge from `Λ`
    /// into `C_j ∖ Λ` is directed away from `Λ` in `g`, and the same is not
    /// true towards `C_i ∖ Λ`. `ε` is the transitive closure of `γ`.
    pub fn clique_relations(&self, g: &Pdag) -> CliqueRelations {
        let k = self.len();
        let out_of = |lam: NodeSet, rest: NodeSet| {
            lam.iter()
                .all(|x| rest.iter().all(|y| g.has_directed(x, y)))
        };
        let mut gamma = Vec::new();
        let mut succ = vec![NodeSet::EMPTY; k];
        for (i, row) in succ.iter_mut().enumerate() {
            for j in 0..k {
                let lam = self.label(i, j);
                if i == j || lam.is_empty() {
                    continue;
                }
                let into_j = out_of(lam, self.cliques[j].difference(lam));
                let into_i = out_of(lam, self.cliques[i].difference(lam));
                if into_j && !into_i {
                    gamma.push((i, j));
                    row.insert(j);
                }
            }
        }
        CliqueRelations {
            gamma,
            epsilon: transitive_closure(succ),
        }
    }
}

pub(crate) fn transitive_closure(mut succ: Vec<NodeSet>) -> Vec<NodeSet> {
    let n = succ.len();
    for m in 0..n {
        for i in 0..n {
            if succ[i].contains(m) {
                succ[i] = succ[i].union(succ[m]);
            }
        }
    }
    succ
}

/// `γ` and its transitive closure `ε` over the cliques of a join tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueRelations {
    gamma: Vec<(usize, usize)>,
    epsilon: Vec<NodeSet>,
}

impl CliqueRelations {
    /// All `γ` pairs, sorted.
    pub fn gamma_pairs(&self) -> &[(usize, usize)] {
        &self.gamma
    }

    pub fn gamma(&self, i: usize, j: usize) -> bool {
        self.gamma.binary_search(&(i, j)).is_ok()
    }

    pub fn epsilon(&self, i: usize, j: usize) -> bool {
        self.epsilon[i].contains(j)
    }

    /// True when `ε` is irreflexive, hence a strict partial order.
    pub fn is_partial_order(&self) -> bool {
        (0..self.epsilon.len()).all(|i| !self.epsilon[i].contains(i))
    }

    /// Cliques of `among` with no `ε`-predecessor in `among`.
    pub fn minimal(&self, among: NodeSet) -> NodeSet {
        among
            .iter()
            .filter(|&j| among.iter().all(|i| i == j || !self.epsilon(i, j)))
            .collect()
    }
}

/// A join tree rooted once per component: `i` precedes `j` when `i` is a
/// proper ancestor of `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeOrder {
    parent: Vec<Option<usize>>,
    roots: Vec<usize>,
    ancestors: Vec<NodeSet>,
}

impl TreeOrder {
    /// Roots each component at the listed clique it contains, or at its
    /// smallest clique if none is listed.
    pub fn rooted(t: &JoinTree, roots: &[usize]) -> Result<Self, ChordalError> {
        let k = t.len();
        if let Some(&r) = roots.iter().find(|&&r| r >= k) {
            return Err(ChordalError::InvalidTreeOrder(format!("no clique {r}")));
        }
        let mut chosen = Vec::new();
        for comp in t.components() {
            let listed: Vec<usize> = roots
                .iter()
                .copied()
                .filter(|&r| comp.contains(r))
                .collect();
            match listed.as_slice() {
                [] => chosen.push(comp.first().expect("nonempty component")),
                [r] => chosen.push(*r),
                [a, b, ..] => {
                    return Err(ChordalError::InvalidTreeOrder(format!(
                        "cliques {a} and {b} are both roots of one component"
                    )))
                }
            }
        }
        chosen.sort_unstable();
        let mut parent = vec![None; k];
        let mut ancestors = vec![NodeSet::EMPTY; k];
        for &r in &chosen {
            let mut stack = vec![r];
            let mut seen = NodeSet::singleton(r);
            while let Some(u) = stack.pop() {
                for w in t.neighbors(u).difference(seen) {
                    seen.insert(w);
                    parent[w] = Some(u);
                    ancestors[w] = ancestors[u].with(u);
                    stack.push(w);
                }
            }
        }
        Ok(TreeOrder {
            parent,
            roots: chosen,
            ancestors,
        })
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        self.parent[i]
    }

    pub fn is_root(&self, i: usize) -> bool {
        self.parent[i].is_none()
    }

    pub fn precedes(&self, i: usize, j: usize) -> bool {
        self.ancestors[j].contains(i)
    }

    /// Every `ε` pair is also ordered by the tree.
    pub fn extends(&self, rel: &CliqueRelations) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| !rel.epsilon(i, j) || self.precedes(i, j)))
    }

    /// True when this order was built over `t`'s edges.
    pub fn fits(&self, t: &JoinTree) -> bool {
        self.len() == t.len()
            && (0..self.len()).all(|i| self.parent[i].is_none_or(|p| t.is_edge(p, i)))
            && self.roots.len() == t.components().len()
    }
}
