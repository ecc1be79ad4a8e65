//! Partially directed graphs and the structural predicates built on them.

use std::fmt;
use std::ops::Deref;

use thiserror::Error;

use crate::set::{NodeSet, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex not in graph: {0}")]
    UnknownVertex(String),
    #[error("invalid vertex name {0:?}")]
    InvalidName(String),
    #[error("vertex {0} declared twice")]
    DuplicateVertex(String),
    #[error("too many vertices: {0} (limit {MAX_VERTICES})")]
    TooManyVertices(usize),
    #[error("self-loop on {0}")]
    SelfLoop(String),
    #[error("duplicate or conflicting edge between {0} and {1}")]
    DuplicateEdge(String, String),
    #[error("no undirected edge between {0} and {1}")]
    NotUndirected(String, String),
    #[error("graph has undirected edges")]
    HasUndirectedEdges,
    #[error("graph has a directed cycle")]
    Cyclic,
    #[error("graphs are over different vertex sets")]
    VertexMismatch,
    #[error("sets not disjoint")]
    NotDisjoint,
}

/// Checks the vertex-name token rules shared by every file format.
pub fn is_valid_name(name: &str) -> bool {
    !name.is_empty()
        && !name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, ';' | '|' | ',' | '#' | '-' | '>'))
}

/// One edge of a [`Pdag`], in vertex indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Edge {
    Directed(usize, usize),
    /// Stored with the smaller index first.
    Undirected(usize, usize),
}

/// A graph with directed and undirected edges and at most one edge per
/// vertex pair.
///
/// Vertices are kept sorted by name and addressed by index; every iteration
/// in this crate runs in ascending index order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Pdag {
    names: Vec<String>,
    parents: Vec<NodeSet>,
    children: Vec<NodeSet>,
    undirected: Vec<NodeSet>,
}

impl Pdag {
    /// Creates an edgeless graph over the given vertex names.
    pub fn new<I, S>(names: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = names.into_iter().map(Into::into).collect();
        if let Some(bad) = names.iter().find(|n| !is_valid_name(n)) {
            return Err(GraphError::InvalidName(bad.clone()));
        }
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateVertex(w[0].clone()));
        }
        if names.len() > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(names.len()));
        }
        let n = names.len();
        Ok(Pdag {
            names,
            parents: vec![NodeSet::EMPTY; n],
            children: vec![NodeSet::EMPTY; n],
            undirected: vec![NodeSet::EMPTY; n],
        })
    }

    /// Same vertices, no edges.
    pub fn empty_like(&self) -> Self {
        let n = self.n();
        Pdag {
            names: self.names.clone(),
            parents: vec![NodeSet::EMPTY; n],
            children: vec![NodeSet::EMPTY; n],
            undirected: vec![NodeSet::EMPTY; n],
        }
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    /// Like [`Pdag::index_of`] but reports unknown names as an error.
    pub fn vertex(&self, name: &str) -> Result<usize, GraphError> {
        self.index_of(name)
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    pub fn vertex_set(&self, names: &[&str]) -> Result<NodeSet, GraphError> {
        names.iter().map(|n| self.vertex(n)).collect()
    }

    pub fn all_vertices(&self) -> NodeSet {
        NodeSet::full(self.n())
    }

    pub fn set_names(&self, set: NodeSet) -> Vec<&str> {
        set.iter().map(|v| self.name(v)).collect()
    }

    pub fn same_vertices(&self, other: &Pdag) -> bool {
        self.names == other.names
    }

    fn check_new_edge(&self, a: usize, b: usize) -> Result<(), GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(self.names[a].clone()));
        }
        if self.is_adjacent(a, b) {
            return Err(GraphError::DuplicateEdge(
                self.names[a].clone(),
                self.names[b].clone(),
            ));
        }
        Ok(())
    }

    pub fn add_directed(&mut self, tail: usize, head: usize) -> Result<(), GraphError> {
        self.check_new_edge(tail, head)?;
        self.children[tail].insert(head);
        self.parents[head].insert(tail);
        Ok(())
    }

    pub fn add_undirected(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        self.check_new_edge(a, b)?;
        self.undirected[a].insert(b);
        self.undirected[b].insert(a);
        Ok(())
    }

    pub fn add_edge(&mut self, edge: Edge) -> Result<(), GraphError> {
        match edge {
            Edge::Directed(t, h) => self.add_directed(t, h),
            Edge::Undirected(a, b) => self.add_undirected(a, b),
        }
    }

    /// Turns the undirected edge `tail -- head` into `tail → head`.
    pub fn orient(&mut self, tail: usize, head: usize) -> Result<(), GraphError> {
        if !self.has_undirected(tail, head) {
            return Err(GraphError::NotUndirected(
                self.names[tail].clone(),
                self.names[head].clone(),
            ));
        }
        self.undirected[tail].remove(head);
        self.undirected[head].remove(tail);
        self.children[tail].insert(head);
        self.parents[head].insert(tail);
        Ok(())
    }

    pub(crate) fn orient_unchecked(&mut self, tail: usize, head: usize) {
        debug_assert!(self.has_undirected(tail, head));
        self.undirected[tail].remove(head);
        self.undirected[head].remove(tail);
        self.children[tail].insert(head);
        self.parents[head].insert(tail);
    }

    /// Removes whatever edge joins `a` and `b`.
    pub fn remove_edge(&mut self, a: usize, b: usize) {
        self.undirected[a].remove(b);
        self.undirected[b].remove(a);
        self.children[a].remove(b);
        self.children[b].remove(a);
        self.parents[a].remove(b);
        self.parents[b].remove(a);
    }

    pub fn parents_of(&self, v: usize) -> NodeSet {
        self.parents[v]
    }

    pub fn children_of(&self, v: usize) -> NodeSet {
        self.children[v]
    }

    pub fn undirected_of(&self, v: usize) -> NodeSet {
        self.undirected[v]
    }

    pub fn adjacent_of(&self, v: usize) -> NodeSet {
        self.parents[v]
            .union(self.children[v])
            .union(self.undirected[v])
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacent_of(a).contains(b)
    }

    pub fn has_directed(&self, tail: usize, head: usize) -> bool {
        self.children[tail].contains(head)
    }

    pub fn has_undirected(&self, a: usize, b: usize) -> bool {
        self.undirected[a].contains(b)
    }

    /// Parents of the named vertex; undirected neighbours are excluded.
    pub fn parents(&self, v: &str) -> Result<Vec<&str>, GraphError> {
        let v = self.vertex(v)?;
        Ok(self.set_names(self.parents[v]))
    }

    /// Every vertex sharing an edge of any kind with the named vertex.
    pub fn adjacents(&self, v: &str) -> Result<Vec<&str>, GraphError> {
        let v = self.vertex(v)?;
        Ok(self.set_names(self.adjacent_of(v)))
    }

    /// Directed edges as `(tail, head)`, sorted.
    pub fn directed_edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|t| self.children[t].iter().map(move |h| (t, h)))
            .collect()
    }

    /// Undirected edges as `(a, b)` with `a < b`, sorted.
    pub fn undirected_edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|a| {
                self.undirected[a]
                    .iter()
                    .filter(move |&b| b > a)
                    .map(move |b| (a, b))
            })
            .collect()
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut edges: Vec<Edge> = self
            .directed_edges()
            .into_iter()
            .map(|(t, h)| Edge::Directed(t, h))
            .chain(
                self.undirected_edges()
                    .into_iter()
                    .map(|(a, b)| Edge::Undirected(a, b)),
            )
            .collect();
        edges.sort();
        edges
    }

    pub fn edge_count(&self) -> usize {
        self.directed_edges().len() + self.undirected_edges().len()
    }

    pub fn has_undirected_edges(&self) -> bool {
        self.undirected.iter().any(|s| !s.is_empty())
    }

    /// The same graph with every edge undirected.
    pub fn skeleton(&self) -> Pdag {
        let mut out = self.empty_like();
        for v in 0..self.n() {
            out.undirected[v] = self.adjacent_of(v);
        }
        out
    }

    pub fn same_adjacencies(&self, other: &Pdag) -> bool {
        self.same_vertices(other)
            && (0..self.n()).all(|v| self.adjacent_of(v) == other.adjacent_of(v))
    }

    /// Unshielded colliders `a → b ← c` as `(a, b, c)` with `a < c`.
    pub fn unshielded_colliders(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for b in 0..self.n() {
            let pa = self.parents[b];
            for a in pa {
                for c in pa.iter().filter(|&c| c > a) {
                    if !self.is_adjacent(a, c) {
                        out.push((a, b, c));
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// The pattern: identical adjacencies, with exactly the edges that take
    /// part in an unshielded collider kept directed.
    pub fn pattern(&self) -> Pdag {
        let mut out = self.skeleton();
        for (a, b, c) in self.unshielded_colliders() {
            for t in [a, c] {
                if out.has_undirected(t, b) {
                    out.orient_unchecked(t, b);
                }
            }
        }
        out
    }

    /// Vertices reachable from `from` along directed edges (forwards) and
    /// undirected edges.
    fn semi_directed_reach(&self, from: NodeSet) -> NodeSet {
        let mut seen = NodeSet::EMPTY;
        let mut stack: Vec<usize> = from.iter().collect();
        while let Some(v) = stack.pop() {
            for w in self.children[v].union(self.undirected[v]) {
                if !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// True when some cycle follows edges forwards or undirected and
    /// traverses at least one directed edge. On fully directed graphs this
    /// is the ordinary directed-cycle test; its negation is the chain-graph
    /// test.
    pub fn has_partially_directed_cycle(&self) -> bool {
        self.directed_edges()
            .into_iter()
            .any(|(t, h)| self.semi_directed_reach(NodeSet::singleton(h)).contains(t))
    }

    pub fn is_chain_graph(&self) -> bool {
        !self.has_partially_directed_cycle()
    }

    /// Topological order of the directed part (undirected edges ignored),
    /// picking the smallest available vertex first. `None` if the directed
    /// part has a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.n();
        let mut indegree: Vec<usize> = self.parents.iter().map(|p| p.len()).collect();
        let mut ready: NodeSet = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.first() {
            ready.remove(v);
            order.push(v);
            for c in self.children[v] {
                indegree[c] -= 1;
                if indegree[c] == 0 {
                    ready.insert(c);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    pub fn has_directed_cycle(&self) -> bool {
        self.topological_order().is_none()
    }

    /// `v` and every vertex with a directed path into `v`'s set.
    pub fn ancestors(&self, set: NodeSet) -> NodeSet {
        let mut seen = set;
        let mut stack: Vec<usize> = set.iter().collect();
        while let Some(v) = stack.pop() {
            for p in self.parents[v] {
                if !seen.contains(p) {
                    seen.insert(p);
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Proper descendants along directed edges.
    pub fn descendants(&self, v: usize) -> NodeSet {
        let mut seen = NodeSet::EMPTY;
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for c in self.children[u] {
                if !seen.contains(c) {
                    seen.insert(c);
                    stack.push(c);
                }
            }
        }
        seen
    }
}

impl fmt::Debug for Pdag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pdag {{ ")?;
        let mut first = true;
        for v in 0..self.n() {
            if self.adjacent_of(v).is_empty() {
                if !first {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.names[v])?;
                first = false;
            }
        }
        for e in self.edges() {
            if !first {
                write!(f, ", ")?;
            }
            match e {
                Edge::Directed(t, h) => write!(f, "{}->{}", self.names[t], self.names[h])?,
                Edge::Undirected(a, b) => write!(f, "{}--{}", self.names[a], self.names[b])?,
            }
            first = false;
        }
        write!(f, " }}")
    }
}

/// A directed acyclic graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dag(Pdag);

impl Dag {
    pub fn as_pdag(&self) -> &Pdag {
        &self.0
    }

    pub fn into_pdag(self) -> Pdag {
        self.0
    }

    /// Topological order, smallest available vertex first.
    pub fn order(&self) -> Vec<usize> {
        self.0
            .topological_order()
            .expect("a Dag has no directed cycle")
    }
}

impl TryFrom<Pdag> for Dag {
    type Error = GraphError;

    fn try_from(g: Pdag) -> Result<Self, GraphError> {
        if g.has_undirected_edges() {
            return Err(GraphError::HasUndirectedEdges);
        }
        if g.has_directed_cycle() {
            return Err(GraphError::Cyclic);
        }
        Ok(Dag(g))
    }
}

impl Deref for Dag {
    type Target = Pdag;

    fn deref(&self) -> &Pdag {
        &self.0
    }
}

impl fmt::Debug for Dag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dag(")?;
        fmt::Debug::fmt(&self.0, f)?;
        write!(f, ")")
    }
}

/// Two DAGs are Markov equivalent iff their patterns coincide.
pub fn markov_equivalent(g1: &Dag, g2: &Dag) -> Result<bool, GraphError> {
    if !g1.same_vertices(g2) {
        return Err(GraphError::VertexMismatch);
    }
    Ok(g1.pattern() == g2.pattern())
}

/// Whether `g` has the adjacencies of `h`, keeps every orientation of `h`,
/// and shares its pattern.
pub fn is_consistent_dag_extension(g: &Dag, h: &Pdag) -> Result<bool, GraphError> {
    if !g.same_vertices(h) {
        return Err(GraphError::VertexMismatch);
    }
    if !g.same_adjacencies(h) {
        return Ok(false);
    }
    if h.directed_edges()
        .into_iter()
        .any(|(t, hd)| !g.has_directed(t, hd))
    {
        return Ok(false);
    }
    Ok(g.pattern() == h.pattern())
}
