use std::collections::BTreeSet;

use causal_explain::rules::all_matches;
use causal_explain::{
    close_under, explain, extend_to_dag, incorporate_background, is_chordal,
    is_consistent_dag_extension, markov_equivalent, max_orient, DependencyModel,
    ForbiddenSemantics, Generation, Options, OrientationRule, Pdag, UndirectedView,
};
use causal_explain_testkit::{self as kit, RawDag};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn edge_set(edges: Vec<(usize, usize)>) -> BTreeSet<(usize, usize)> {
    edges.into_iter().collect()
}

/// One representative per class on `n` vertices, with the whole class.
fn classes(n: usize) -> Vec<(RawDag, Vec<RawDag>)> {
    kit::group_by_class(&kit::all_dags(n))
        .into_values()
        .map(|members| (members[0].clone(), members))
        .collect()
}

#[test]
fn completion_is_sound_and_complete() {
    for n in 1..=5 {
        for (rep, class) in classes(n) {
            let completed = max_orient(&rep.to_pdag().pattern());
            let truth = kit::intersection_pdag(&class).unwrap();
            assert_eq!(completed, truth, "{rep:?}");
            // every undirected edge goes both ways in some member
            for (a, b) in completed.undirected_edges() {
                assert!(class.iter().any(|d| d.has(a, b)));
                assert!(class.iter().any(|d| d.has(b, a)));
            }
        }
    }
}

#[test]
fn completion_is_sound_on_random_larger_dags() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..300 {
        let raw = kit::random_dag(&mut rng, 5 + i % 2, 0.5);
        let class = kit::equivalence_class(&raw);
        let completed = max_orient(&raw.to_pdag().pattern());
        assert_eq!(completed, kit::intersection_pdag(&class).unwrap());
    }
}

/// Applies random matches of `rules` until none is left.
fn random_closure(g: &Pdag, rules: &[OrientationRule], rng: &mut ChaCha8Rng) -> Pdag {
    let mut out = g.clone();
    loop {
        let matches: Vec<_> = rules.iter().flat_map(|&r| all_matches(&out, r)).collect();
        let Some(f) = matches.choose(rng) else {
            return out;
        };
        out.orient(f.tail, f.head).unwrap();
    }
}

#[test]
fn closure_is_confluent() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut nontrivial = 0;
    for i in 0..600 {
        let raw = {
            let p = rng.gen_range(0.3..0.8);
            kit::random_dag(&mut rng, 4 + i % 4, p)
        };
        let pattern = raw.to_pdag().pattern();
        let expected = max_orient(&pattern);
        nontrivial += usize::from(expected != pattern);
        for _ in 0..3 {
            assert_eq!(
                random_closure(&pattern, &OrientationRule::PATTERN, &mut rng),
                expected
            );
        }
        // with background orientations the four-rule closure is also unique
        let class = kit::equivalence_class(&raw);
        let member = class.choose(&mut rng).unwrap();
        let mut seeded = expected.clone();
        if let Some(&(a, b)) = seeded.undirected_edges().choose(&mut rng) {
            let (t, h) = if member.has(a, b) { (a, b) } else { (b, a) };
            seeded.orient(t, h).unwrap();
        }
        let det = close_under(&seeded, &OrientationRule::ALL);
        for _ in 0..3 {
            assert_eq!(
                random_closure(&seeded, &OrientationRule::ALL, &mut rng),
                det
            );
        }
    }
    assert!(nontrivial > 100);
}

#[test]
fn completed_patterns_are_chain_graphs_with_chordal_components() {
    for n in 1..=5 {
        for (rep, _) in classes(n) {
            let g = max_orient(&rep.to_pdag().pattern());
            for (a, b) in g.directed_edges() {
                for c in g.undirected_of(b) {
                    assert!(g.has_directed(a, c), "{g:?}");
                }
            }
            assert!(g.is_chain_graph());
            assert!(is_chordal(&UndirectedView::of(&g)));
        }
    }
}

#[test]
fn background_knowledge_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut consistent, mut inconsistent) = (0, 0);
    for i in 0..800 {
        let n = 3 + i % 3;
        let raw = {
            let p = rng.gen_range(0.3..0.9);
            kit::random_dag(&mut rng, n, p)
        };
        let class = kit::equivalence_class(&raw);
        let k = if i % 2 == 0 {
            kit::knowledge_from_class(&mut rng, &class, 3, 3)
        } else {
            kit::random_knowledge(&mut rng, n, 3, 3)
        };
        let admitted: Vec<RawDag> = class.iter().filter(|d| k.admits(d)).cloned().collect();
        let completed = max_orient(&raw.to_pdag().pattern());
        let got = incorporate_background(&completed, &k.to_library(), ForbiddenSemantics::Orient);
        match kit::intersection_pdag(&admitted) {
            Some(truth) => {
                let got = got.unwrap_or_else(|e| panic!("{raw:?} {k:?}: {e}"));
                assert_eq!(got, truth, "{raw:?} {k:?}");
                for (a, b) in got.undirected_edges() {
                    assert!(admitted.iter().any(|d| d.has(a, b)));
                    assert!(admitted.iter().any(|d| d.has(b, a)));
                }
                let d = extend_to_dag(&got).unwrap();
                assert!(k.admits(&RawDag::from_pdag(&d)));
                consistent += 1;
            }
            None => {
                assert!(got.is_err(), "{raw:?} {k:?}");
                inconsistent += 1;
            }
        }
    }
    assert!(
        consistent >= 300 && inconsistent >= 100,
        "{consistent} {inconsistent}"
    );
}

#[test]
fn check_only_semantics_keeps_forbidden_undirected_edges() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let raw = kit::random_dag(&mut rng, 5, 0.5);
        let class = kit::equivalence_class(&raw);
        let mut k = kit::knowledge_from_class(&mut rng, &class, 0, 3);
        k.required.clear();
        let completed = max_orient(&raw.to_pdag().pattern());
        let got =
            incorporate_background(&completed, &k.to_library(), ForbiddenSemantics::CheckOnly)
                .unwrap();
        assert_eq!(got, completed);
    }
}

#[test]
fn extension_never_backtracks() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in 1..=5 {
        for (rep, class) in classes(n) {
            let completed = max_orient(&rep.to_pdag().pattern());
            let d = extend_to_dag(&completed).unwrap();
            assert!(is_consistent_dag_extension(&d, &completed).unwrap());
            let k = kit::knowledge_from_class(&mut rng, &class, 3, 3);
            let g = incorporate_background(&completed, &k.to_library(), ForbiddenSemantics::Orient)
                .unwrap();
            let d = extend_to_dag(&g).unwrap();
            assert!(is_consistent_dag_extension(&d, &g).unwrap());
        }
    }
}

#[test]
fn end_to_end_recovers_every_small_dag() {
    for n in 1..=5 {
        let names = kit::names(n);
        for raw in kit::all_dags(n) {
            let g = raw.to_dag();
            let m = DependencyModel::from_dag(&g, Generation::Pairwise).unwrap();
            let got = explain(&m, &names, &Default::default(), &Options::default()).unwrap();
            assert!(markov_equivalent(&got, &g).unwrap(), "{raw:?}");
        }
    }
}

#[test]
fn end_to_end_recovers_random_dags() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..600 {
        let n = 6 + i % 2;
        let raw = {
            let p = rng.gen_range(0.2..0.7);
            kit::random_dag(&mut rng, n, p)
        };
        let g = raw.to_dag();
        let m = DependencyModel::from_dag(&g, Generation::Pairwise).unwrap();
        let got = explain(&m, &kit::names(n), &Default::default(), &Options::default()).unwrap();
        assert!(markov_equivalent(&got, &g).unwrap(), "{raw:?}");
        let class = kit::equivalence_class(&raw);
        let k = kit::knowledge_from_class(&mut rng, &class, 3, 3);
        let got = explain(&m, &kit::names(n), &k.to_library(), &Options::default()).unwrap();
        assert!(markov_equivalent(&got, &g).unwrap());
        assert!(k.admits(&RawDag::from_pdag(&got)));
        assert_eq!(edge_set(got.directed_edges()).len(), raw.edges.len());
    }
}
