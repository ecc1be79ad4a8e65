use std::collections::BTreeMap;

use causal_explain::{
    d_separated, parse_ci, write_ci, CiStatement, Dag, DependencyModel, Generation, NodeSet,
};
use causal_explain_testkit::{self as kit, RawDag};

fn stmt(g: &Dag, x: usize, y: usize, s: NodeSet) -> CiStatement {
    CiStatement::new([g.name(x)], [g.name(y)], g.set_names(s)).unwrap()
}

#[test]
fn pairwise_model_lists_exactly_the_singleton_separations() {
    for n in 1..=5 {
        for raw in kit::all_dags(n) {
            let g = raw.to_dag();
            let m = DependencyModel::from_dag(&g, Generation::Pairwise).unwrap();
            let all = g.all_vertices();
            let mut listed = 0;
            for x in 0..n {
                for y in x + 1..n {
                    for s in all.without(x).without(y).subsets() {
                        let sep = d_separated(&g, NodeSet::singleton(x), NodeSet::singleton(y), s)
                            .unwrap();
                        assert_eq!(m.holds(&stmt(&g, x, y, s)), sep);
                        listed += usize::from(sep);
                    }
                }
            }
            assert_eq!(m.len(), listed);
        }
    }
}

#[test]
fn pairwise_model_matches_the_path_oracle() {
    for raw in kit::all_dags(4) {
        let m = DependencyModel::from_dag(&raw.to_dag(), Generation::Pairwise).unwrap();
        let expected = kit::pairwise_independencies(&raw);
        assert_eq!(m.len(), expected.len());
        let g = raw.to_dag();
        for (x, y, s) in expected {
            assert!(m.holds(&stmt(&g, x, y, s.into_iter().collect())));
        }
    }
}

#[test]
fn equivalent_dags_generate_identical_models() {
    let dags = kit::all_dags(4);
    let mut by_class: BTreeMap<kit::ClassKey, String> = BTreeMap::new();
    for raw in &dags {
        let text =
            write_ci(&DependencyModel::from_dag(&raw.to_dag(), Generation::Pairwise).unwrap());
        match by_class.get(&kit::class_key(raw)) {
            Some(seen) => assert_eq!(seen, &text),
            None => {
                by_class.insert(kit::class_key(raw), text);
            }
        }
    }
    // distinct classes give distinct models
    let distinct: std::collections::BTreeSet<&String> = by_class.values().collect();
    assert_eq!(distinct.len(), by_class.len());
    assert_eq!(by_class.len(), 185);
}

#[test]
fn full_models_contain_the_pairwise_ones() {
    for raw in kit::all_dags(3) {
        let g = raw.to_dag();
        let pairwise = DependencyModel::from_dag(&g, Generation::Pairwise).unwrap();
        let full = DependencyModel::from_dag(&g, Generation::Full { cap: 8 }).unwrap();
        assert!(pairwise.statements().iter().all(|s| full.holds(s)));
        for s in full.statements() {
            let set = |names: &std::collections::BTreeSet<String>| -> NodeSet {
                names.iter().map(|v| g.index_of(v).unwrap()).collect()
            };
            assert!(d_separated(&g, set(s.a()), set(s.b()), set(s.s())).unwrap());
        }
    }
}

#[test]
fn ci_text_round_trips() {
    let raw = RawDag::new(5, [(0, 1), (1, 2), (3, 2), (2, 4)]);
    let m = DependencyModel::from_dag(&raw.to_dag(), Generation::Full { cap: 8 }).unwrap();
    assert_eq!(parse_ci(&write_ci(&m)).unwrap(), m);
}
