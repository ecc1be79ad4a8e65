//! Skeleton and collider recovery from a dependency model.

use thiserror::Error;

use crate::graph::{GraphError, Pdag};
use crate::model::{DependencyModel, IndexedModel, ModelError, SepsetMap};
use crate::set::NodeSet;

/// Which conditioning sets the skeleton search considers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchMode {
    /// Every subset of the remaining vertices.
    #[default]
    Exhaustive,
    /// PC-style: subsets of the current neighbourhoods of the two endpoints,
    /// growing the subset size level by level.
    Neighborhood,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiscoveryError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("no separating set recorded for {0} and {1}")]
    MissingSepset(String, String),
    #[error("model has no pattern: {tail} -> {head} and {head} -> {tail} both demanded")]
    ConflictingColliders { tail: String, head: String },
}

/// Builds the adjacency skeleton over `vertices`: two vertices stay adjacent
/// iff no listed statement separates them. The first separating set found
/// (by size, then lexicographically) is recorded.
pub fn build_skeleton<S: AsRef<str>>(
    m: &DependencyModel,
    vertices: &[S],
    mode: SearchMode,
) -> Result<(Pdag, SepsetMap), DiscoveryError> {
    let mut g = Pdag::new(vertices.iter().map(|v| v.as_ref().to_string()))?;
    let index = m.index_over(&g)?;
    let n = g.n();
    for a in 0..n {
        for b in a + 1..n {
            g.add_undirected(a, b)?;
        }
    }
    let mut seps = SepsetMap::new();
    match mode {
        SearchMode::Exhaustive => {
            let all = g.all_vertices();
            for a in 0..n {
                for b in a + 1..n {
                    let rest = all.without(a).without(b);
                    if let Some(sep) = rest
                        .subsets_by_size()
                        .into_iter()
                        .find(|&s| index.holds_pair(a, b, s))
                    {
                        g.remove_edge(a, b);
                        seps.insert(a, b, sep);
                    }
                }
            }
        }
        SearchMode::Neighborhood => neighborhood_search(&mut g, &index, &mut seps),
    }
    Ok((g, seps))
}

fn neighborhood_search(g: &mut Pdag, index: &IndexedModel, seps: &mut SepsetMap) {
    let n = g.n();
    let mut level = 0;
    loop {
        let mut any_large_enough = false;
        for a in 0..n {
            for b in a + 1..n {
                if !g.is_adjacent(a, b) {
                    continue;
                }
                let pools = [g.adjacent_of(a).without(b), g.adjacent_of(b).without(a)];
                if pools.iter().all(|p| p.len() < level) {
                    continue;
                }
                any_large_enough = true;
                let found = pools.iter().find_map(|pool| {
                    pool.subsets_by_size()
                        .into_iter()
                        .filter(|s| s.len() == level)
                        .find(|&s| index.holds_pair(a, b, s))
                });
                if let Some(sep) = found {
                    g.remove_edge(a, b);
                    seps.insert(a, b, sep);
                }
            }
        }
        if !any_large_enough {
            break;
        }
        level += 1;
    }
}

/// Orients `a → b ← c` for every unshielded triple whose middle vertex is
/// missing from the separating set of its endpoints.
pub fn orient_colliders(skeleton: &Pdag, seps: &SepsetMap) -> Result<Pdag, DiscoveryError> {
    let n = skeleton.n();
    // demanded[t] holds the heads t must point into
    let mut demanded = vec![NodeSet::EMPTY; n];
    for b in 0..n {
        let nbrs = skeleton.adjacent_of(b);
        for a in nbrs {
            for c in nbrs.iter().filter(|&c| c > a) {
                if skeleton.is_adjacent(a, c) {
                    continue;
                }
                let sep = seps.get(a, c).ok_or_else(|| {
                    DiscoveryError::MissingSepset(
                        skeleton.name(a).to_string(),
                        skeleton.name(c).to_string(),
                    )
                })?;
                if !sep.contains(b) {
                    demanded[a].insert(b);
                    demanded[c].insert(b);
                }
            }
        }
    }
    let mut out = skeleton.clone();
    for t in 0..n {
        for h in demanded[t] {
            if demanded[h].contains(t) {
                let (x, y) = (t.min(h), t.max(h));
                return Err(DiscoveryError::ConflictingColliders {
                    tail: skeleton.name(x).to_string(),
                    head: skeleton.name(y).to_string(),
                });
            }
            if out.has_undirected(t, h) {
                out.orient_unchecked(t, h);
            }
        }
    }
    Ok(out)
}

/// Skeleton plus colliders: the candidate pattern for `m`.
pub fn phase1<S: AsRef<str>>(
    m: &DependencyModel,
    vertices: &[S],
    mode: SearchMode,
) -> Result<Pdag, DiscoveryError> {
    let (skeleton, seps) = build_skeleton(m, vertices, mode)?;
    orient_colliders(&skeleton, &seps)
}
