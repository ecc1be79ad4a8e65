//! Two extensions of a maximally oriented graph that disagree on one edge.

use crate::graph::{is_consistent_dag_extension, Dag, Pdag};
use crate::rules::{find_match, max_orient, OrientationRule};
use crate::set::NodeSet;

use super::order::{induced_vertex_order, VertexOrder};
use super::tree::{build_join_tree, CliqueRelations, JoinTree, TreeOrder};
use super::{is_chordal, ChordalError, UndirectedView};

fn check_maximal(g: &Pdag) -> Result<Pdag, ChordalError> {
    if g.has_directed_cycle() {
        return Err(ChordalError::NotMaximal("directed cycle".into()));
    }
    if let Some(f) = OrientationRule::ALL.iter().find_map(|&r| find_match(g, r)) {
        return Err(ChordalError::NotMaximal(f.describe(g)));
    }
    let base = max_orient(&g.pattern());
    if let Some((t, h)) = base
        .directed_edges()
        .into_iter()
        .find(|&(t, h)| !g.has_directed(t, h))
    {
        return Err(ChordalError::NotMaximal(format!(
            "{} -> {} is forced by the pattern",
            g.name(t),
            g.name(h)
        )));
    }
    if !is_chordal(&UndirectedView::of(&base)) {
        return Err(ChordalError::NotMaximal(
            "undirected part is not chordal".into(),
        ));
    }
    Ok(base)
}

/// Roots worth trying for one component: cliques holding both `a` and `b`
/// first, then `ε`-minimal cliques whose tree order extends `ε`, then the
/// rest.
fn root_candidates(
    t: &JoinTree,
    rel: &CliqueRelations,
    comp: NodeSet,
    both: NodeSet,
) -> Vec<usize> {
    let minimal = rel.minimal(comp);
    let extends = |r: usize| {
        TreeOrder::rooted(t, &[r])
            .map(|pi| pi.extends(rel))
            .unwrap_or(false)
    };
    let rank = |r: usize| {
        let holds = both.is_subset(t.clique(r)) && !both.is_empty();
        (!holds, !minimal.contains(r), !extends(r), r)
    };
    let mut out: Vec<usize> = comp.iter().collect();
    out.sort_by_key(|&r| rank(r));
    out
}

fn attempt(g: &Pdag, t: &JoinTree, roots: &[usize], first: usize, second: usize) -> Option<Dag> {
    let pi = TreeOrder::rooted(t, roots).ok()?;
    let induced = induced_vertex_order(t, &pi, g.n()).ok()?;
    let pairs = induced
        .pairs()
        .into_iter()
        .chain(g.directed_edges())
        .chain([(first, second)]);
    let order = VertexOrder::from_pairs(g.n(), pairs).ok()?;
    let seq = order.linear_extension();
    let alpha = VertexOrder::total(&seq);
    let mut out = g.clone();
    for (x, y) in g.undirected_edges() {
        if alpha.precedes(x, y) {
            out.orient_unchecked(x, y);
        } else {
            out.orient_unchecked(y, x);
        }
    }
    let dag = Dag::try_from(out).ok()?;
    is_consistent_dag_extension(&dag, g)
        .unwrap_or(false)
        .then_some(dag)
}

fn extension_with(
    g: &Pdag,
    t: &JoinTree,
    rel: &CliqueRelations,
    first: usize,
    second: usize,
) -> Option<Dag> {
    let both = NodeSet::singleton(first).with(second);
    let comps = t.components();
    let mut fixed = Vec::new();
    let mut target = None;
    for comp in comps {
        let holds_edge = comp.iter().any(|c| both.is_subset(t.clique(c)));
        let cands = root_candidates(t, rel, comp, if holds_edge { both } else { NodeSet::EMPTY });
        if holds_edge {
            target = Some(cands);
        } else {
            fixed.push(cands[0]);
        }
    }
    for r in target? {
        let mut roots = fixed.clone();
        roots.push(r);
        if let Some(d) = attempt(g, t, &roots, first, second) {
            return Some(d);
        }
    }
    None
}

/// For an undirected edge `a -- b` of a maximally oriented graph `g`, two
/// consistent DAG extensions of `g`: one with `a → b`, one with `b → a`.
///
/// `g` must be closed under the four orientation rules, keep every
/// orientation forced by its own pattern, and have a chordal undirected
/// part once those forced orientations are applied.
pub fn witness_extensions(g: &Pdag, a: &str, b: &str) -> Result<(Dag, Dag), ChordalError> {
    let (x, y) = (g.vertex(a)?, g.vertex(b)?);
    if !g.has_undirected(x, y) {
        return Err(crate::graph::GraphError::NotUndirected(a.into(), b.into()).into());
    }
    let base = check_maximal(g)?;
    let t = build_join_tree(&UndirectedView::of(&base))?;
    let rel = t.clique_relations(g);
    let forward = extension_with(g, &t, &rel, x, y)
        .ok_or_else(|| ChordalError::NoWitness(a.into(), b.into()))?;
    let backward = extension_with(g, &t, &rel, y, x)
        .ok_or_else(|| ChordalError::NoWitness(b.into(), a.into()))?;
    Ok((forward, backward))
}
