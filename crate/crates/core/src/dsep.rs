//! d-separation by moralization of the ancestral subgraph.

use crate::graph::{Dag, GraphError};
use crate::set::NodeSet;

/// Whether `g` entails `a ⟂ b | s`.
///
/// Restricts `g` to the ancestors of `a ∪ b ∪ s`, marries co-parents, drops
/// directions, deletes `s`, and asks whether any vertex of `b` is still
/// reachable from `a`. Empty `a` or `b` is trivially separated.
pub fn d_separated(g: &Dag, a: NodeSet, b: NodeSet, s: NodeSet) -> Result<bool, GraphError> {
    if !a.is_disjoint(b) || !a.is_disjoint(s) || !b.is_disjoint(s) {
        return Err(GraphError::NotDisjoint);
    }
    let all = g.all_vertices();
    for set in [a, b, s] {
        if let Some(v) = set.difference(all).first() {
            return Err(GraphError::UnknownVertex(format!("#{v}")));
        }
    }
    Ok(separated(g, a, b, s))
}

/// Name-based form of [`d_separated`].
pub fn d_separated_names(g: &Dag, a: &[&str], b: &[&str], s: &[&str]) -> Result<bool, GraphError> {
    d_separated(g, g.vertex_set(a)?, g.vertex_set(b)?, g.vertex_set(s)?)
}

pub(crate) fn separated(g: &Dag, a: NodeSet, b: NodeSet, s: NodeSet) -> bool {
    if a.is_empty() || b.is_empty() {
        return true;
    }
    let keep = g.ancestors(a.union(b).union(s));
    let mut moral = vec![NodeSet::EMPTY; g.n()];
    for v in keep {
        let pa = g.parents_of(v);
        moral[v] = moral[v].union(g.adjacent_of(v).intersection(keep));
        for p in pa {
            moral[p] = moral[p].union(pa.without(p));
        }
    }
    let open = keep.difference(s);
    let mut seen = a;
    let mut stack: Vec<usize> = a.iter().collect();
    while let Some(v) = stack.pop() {
        for w in moral[v].intersection(open) {
            if b.contains(w) {
                return false;
            }
            if !seen.contains(w) {
                seen.insert(w);
                stack.push(w);
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dag(text: &str) -> Dag {
        text.parse().unwrap()
    }

    #[test]
    fn chain() {
        let g = dag("X -> Y\nY -> Z");
        assert!(d_separated_names(&g, &["X"], &["Z"], &["Y"]).unwrap());
        assert!(!d_separated_names(&g, &["X"], &["Z"], &[]).unwrap());
    }

    #[test]
    fn collider() {
        let g = dag("X -> Y\nZ -> Y");
        assert!(d_separated_names(&g, &["X"], &["Z"], &[]).unwrap());
        assert!(!d_separated_names(&g, &["X"], &["Z"], &["Y"]).unwrap());
    }

    #[test]
    fn descendant_of_collider_opens_path() {
        let g = dag("X -> Y\nZ -> Y\nY -> W");
        assert!(!d_separated_names(&g, &["X"], &["Z"], &["W"]).unwrap());
    }

    #[test]
    fn set_valued_queries() {
        let g = dag("A -> C\nB -> C\nC -> D\nnode E");
        assert!(d_separated_names(&g, &["A", "B"], &["D"], &["C"]).unwrap());
        assert!(d_separated_names(&g, &["A", "B", "C", "D"], &["E"], &[]).unwrap());
        assert!(!d_separated_names(&g, &["A"], &["B", "D"], &["C"]).unwrap());
    }

    #[test]
    fn errors() {
        let g = dag("X -> Y");
        assert_eq!(
            d_separated_names(&g, &["X"], &["X"], &[]),
            Err(GraphError::NotDisjoint)
        );
        assert!(matches!(
            d_separated_names(&g, &["X"], &["Q"], &[]),
            Err(GraphError::UnknownVertex(_))
        ));
    }
}
