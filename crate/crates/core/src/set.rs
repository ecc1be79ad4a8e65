//! Compact vertex sets.
//!
//! Vertices are addressed by their position in the graph's sorted name list,
//! so ascending index order is the same as lexicographic name order.

use std::fmt;

use itertools::Itertools;

/// Maximum number of vertices a graph may hold.
pub const MAX_VERTICES: usize = 64;

/// A set of vertex indices backed by a single machine word.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeSet(u64);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    pub fn from_bits(bits: u64) -> Self {
        NodeSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < MAX_VERTICES);
        NodeSet(1 << v)
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            NodeSet(u64::MAX)
        } else {
            NodeSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 & (1 << v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < MAX_VERTICES);
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        if v < MAX_VERTICES {
            self.0 &= !(1 << v);
        }
    }

    pub fn with(mut self, v: usize) -> Self {
        self.insert(v);
        self
    }

    pub fn without(mut self, v: usize) -> Self {
        self.remove(v);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 & other.0)
    }

    pub fn difference(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: NodeSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> NodeSetIter {
        NodeSetIter(self.0)
    }

    /// Every subset of `self`, in no particular order.
    pub fn subsets(self) -> impl Iterator<Item = NodeSet> {
        let universe = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let current = next?;
            next = if current == universe {
                None
            } else {
                Some((current.wrapping_sub(universe)) & universe)
            };
            Some(NodeSet(current))
        })
    }

    /// Every subset of `self`, by increasing size and then lexicographically
    /// by sorted members.
    pub fn subsets_by_size(self) -> Vec<NodeSet> {
        let members: Vec<usize> = self.iter().collect();
        let mut out = Vec::with_capacity(1 << members.len().min(20));
        for k in 0..=members.len() {
            out.extend(
                members
                    .iter()
                    .copied()
                    .combinations(k)
                    .map(NodeSet::from_iter),
            );
        }
        out
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = NodeSet::EMPTY;
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl IntoIterator for NodeSet {
    type Item = usize;
    type IntoIter = NodeSetIter;

    fn into_iter(self) -> NodeSetIter {
        self.iter()
    }
}

/// Ascending iterator over a [`NodeSet`].
#[derive(Clone)]
pub struct NodeSetIter(u64);

impl Iterator for NodeSetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for NodeSetIter {}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
