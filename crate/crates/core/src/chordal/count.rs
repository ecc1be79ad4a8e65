//! Counting consistent DAG extensions.

use crate::graph::Pdag;
use crate::rules::{find_match, OrientationRule};
use crate::set::NodeSet;

use super::{ChordalError, UndirectedView};

/// Default limit on undirected edges enumerated together.
pub const DEFAULT_COUNT_CAP: usize = 12;

/// Orientations of `group` (undirected edges of `g`) that stay acyclic and
/// add no unshielded collider. Other undirected edges are left alone.
fn count_group(g: &Pdag, group: &[(usize, usize)]) -> u128 {
    let mut total = 0;
    for mask in 0u32..(1 << group.len()) {
        let mut h = g.clone();
        let mut fresh = vec![NodeSet::EMPTY; g.n()];
        for (i, &(a, b)) in group.iter().enumerate() {
            let (t, hd) = if mask & (1 << i) == 0 { (a, b) } else { (b, a) };
            h.orient_unchecked(t, hd);
            fresh[hd].insert(t);
        }
        if h.has_directed_cycle() {
            continue;
        }
        let collider = (0..g.n()).any(|v| {
            let pa = h.parents_of(v);
            fresh[v]
                .iter()
                .any(|p| pa.without(p).iter().any(|q| !h.is_adjacent(p, q)))
        });
        if !collider {
            total += 1;
        }
    }
    total
}

/// Number of consistent DAG extensions of `g`.
///
/// For chain graphs closed under the first two rules the count factors over
/// the undirected components; otherwise all undirected edges are
/// enumerated jointly. Fails when a group has more than `cap` edges.
pub fn count_extensions(g: &Pdag, cap: usize) -> Result<u128, ChordalError> {
    if g.has_directed_cycle() {
        return Ok(0);
    }
    let edges = g.undirected_edges();
    let factorable = g.is_chain_graph()
        && find_match(g, OrientationRule::R1).is_none()
        && find_match(g, OrientationRule::R2).is_none();
    let groups: Vec<Vec<(usize, usize)>> = if factorable {
        UndirectedView::of(g)
            .components()
            .into_iter()
            .map(|c| {
                edges
                    .iter()
                    .copied()
                    .filter(|&(a, _)| c.contains(a))
                    .collect()
            })
            .filter(|grp: &Vec<_>| !grp.is_empty())
            .collect()
    } else {
        vec![edges]
    };
    let mut product = 1u128;
    for grp in groups {
        if grp.len() > cap {
            return Err(ChordalError::CapExceeded {
                edges: grp.len(),
                cap,
            });
        }
        product *= count_group(g, &grp);
    }
    Ok(product)
}
