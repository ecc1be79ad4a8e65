//! Golden cases shared by the CLI tests and the acceptance suite.
//!
//! Each case runs the binary inside `tests/fixtures` and compares exit
//! status, stdout and stderr byte for byte with `tests/fixtures/expected`.

#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub status: i32,
}

const fn case(name: &'static str, args: &'static [&'static str], status: i32) -> Case {
    Case { name, args, status }
}

pub const CASES: &[Case] = &[
    // the three worked examples
    case(
        "explain_chain",
        &["explain", "--ci", "chain.ci", "--vars", "X,Y,Z"],
        0,
    ),
    case(
        "orient_collider",
        &["orient", "--ci", "collider.ci", "--vars", "X,Y,Z"],
        0,
    ),
    case(
        "verify_cyclic",
        &["verify", "--graph", "cyc.graph", "--ci", "any.ci"],
        1,
    ),
    // skeleton and pattern
    case("skeleton_chain", &["skeleton", "--ci", "chain.ci"], 0),
    case("skeleton_diamond", &["skeleton", "--ci", "diamond.ci"], 0),
    case(
        "skeleton_isolated",
        &["skeleton", "--ci", "collider.ci", "--vars", "W,X,Y,Z"],
        0,
    ),
    case(
        "skeleton_dot",
        &["skeleton", "--ci", "chain.ci", "--format", "dot"],
        0,
    ),
    case("pattern_y", &["pattern", "--ci", "y.ci"], 0),
    case(
        "pattern_neighborhood",
        &["pattern", "--ci", "y.ci", "--search", "neighborhood"],
        0,
    ),
    case(
        "pattern_conflict",
        &["pattern", "--ci", "no_pattern.ci", "--vars", "A,B,C,D"],
        1,
    ),
    // common orientations
    case("orient_chain", &["orient", "--ci", "chain.ci"], 0),
    case("orient_y", &["orient", "--ci", "y.ci"], 0),
    case(
        "orient_required",
        &["orient", "--ci", "chain.ci", "--bk", "chain.bk"],
        0,
    ),
    case(
        "orient_forbidden",
        &["orient", "--ci", "chain.ci", "--bk", "forbid.bk"],
        0,
    ),
    case(
        "orient_forbidden_literal",
        &[
            "orient",
            "--ci",
            "chain.ci",
            "--bk",
            "forbid.bk",
            "--paper-literal",
        ],
        0,
    ),
    case(
        "orient_inconsistent",
        &[
            "orient",
            "--ci",
            "collider.ci",
            "--bk",
            "collider_reversed.bk",
        ],
        1,
    ),
    // extension and verification
    case(
        "extend_chain",
        &["extend", "--graph", "chain_undirected.graph"],
        0,
    ),
    case(
        "extend_triangle",
        &["extend", "--graph", "triangle.graph"],
        0,
    ),
    case(
        "verify_pass",
        &["verify", "--graph", "diamond.graph", "--ci", "diamond.ci"],
        0,
    ),
    case(
        "verify_unentailed",
        &["verify", "--graph", "chain.graph", "--ci", "collider.ci"],
        1,
    ),
    case(
        "verify_local_missing",
        &["verify", "--graph", "chain.graph", "--ci", "empty.ci"],
        1,
    ),
    case(
        "verify_hole_local",
        &[
            "verify",
            "--graph",
            "path4.graph",
            "--ci",
            "path4_hole.ci",
            "--check",
            "local",
        ],
        0,
    ),
    case(
        "verify_hole",
        &["verify", "--graph", "path4.graph", "--ci", "path4_hole.ci"],
        1,
    ),
    case(
        "verify_undirected",
        &[
            "verify",
            "--graph",
            "chain_undirected.graph",
            "--ci",
            "chain.ci",
        ],
        1,
    ),
    // full pipeline
    case("explain_diamond", &["explain", "--ci", "diamond.ci"], 0),
    case(
        "explain_diamond_dot",
        &["explain", "--ci", "diamond.ci", "--format", "dot"],
        0,
    ),
    case(
        "explain_y",
        &["explain", "--ci", "y.ci", "--search", "neighborhood"],
        0,
    ),
    case(
        "explain_required",
        &["explain", "--ci", "chain.ci", "--bk", "chain.bk"],
        0,
    ),
    case(
        "explain_contradictory",
        &["explain", "--ci", "contradictory.ci"],
        1,
    ),
    case("explain_hole", &["explain", "--ci", "path4_hole.ci"], 1),
    case(
        "explain_no_pattern",
        &["explain", "--ci", "no_pattern.ci", "--vars", "A,B,C,D"],
        1,
    ),
    case(
        "explain_inconsistent",
        &[
            "explain",
            "--ci",
            "collider.ci",
            "--bk",
            "collider_reversed.bk",
        ],
        1,
    ),
    // counting and witnesses
    case(
        "count_chain",
        &["count", "--graph", "chain_undirected.graph"],
        0,
    ),
    case("count_triangle", &["count", "--graph", "triangle.graph"], 0),
    case("count_collider", &["count", "--graph", "collider.graph"], 0),
    case(
        "count_cap",
        &["count", "--graph", "triangle.graph", "--cap", "2"],
        2,
    ),
    case(
        "witness_chain",
        &["witness", "--graph", "chain_undirected.graph", "X", "Y"],
        0,
    ),
    case(
        "witness_triangle",
        &["witness", "--graph", "triangle.graph", "A", "B"],
        0,
    ),
    case(
        "witness_not_maximal",
        &["witness", "--graph", "not_maximal.graph", "Y", "Z"],
        2,
    ),
    // queries
    case(
        "dsep_blocked",
        &["dsep", "--graph", "chain.graph", "X", "Z", "|", "Y"],
        0,
    ),
    case(
        "dsep_open",
        &["dsep", "--graph", "chain.graph", "X", "Z"],
        1,
    ),
    case(
        "dsep_collider",
        &["dsep", "--graph", "y.graph", "X", "Z", "|", "W"],
        1,
    ),
    case(
        "dsep_sets",
        &["dsep", "--graph", "diamond.graph", "A", "D", "|", "B,C"],
        0,
    ),
    case(
        "equiv_same_class",
        &["equiv", "chain.graph", "chain_reversed.graph"],
        0,
    ),
    case(
        "equiv_different",
        &["equiv", "chain.graph", "collider.graph"],
        1,
    ),
    case(
        "fromdag_diamond",
        &["fromdag", "--graph", "diamond.graph"],
        0,
    ),
    case(
        "fromdag_full",
        &["fromdag", "--graph", "chain.graph", "--full"],
        0,
    ),
    // input errors
    case("error_parse", &["explain", "--ci", "garbage.ci"], 2),
    case("error_overlap", &["explain", "--ci", "overlap.ci"], 2),
    case(
        "error_duplicate_edge",
        &["extend", "--graph", "duplicate.graph"],
        2,
    ),
    case(
        "error_unknown_vertex",
        &["explain", "--ci", "chain.ci", "--vars", "X,Y"],
        2,
    ),
    case("error_missing_file", &["explain", "--ci", "missing.ci"], 2),
    case(
        "error_cyclic_dag",
        &["equiv", "cyc.graph", "chain.graph"],
        2,
    ),
];

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_causal-explain"))
        .args(args)
        .current_dir(fixtures())
        .output()
        .expect("binary runs")
}

/// Compares one case with its golden files, describing any difference.
pub fn check(case: &Case) -> Result<(), String> {
    let out = run(case.args);
    let status = out.status.code().unwrap_or(-1);
    if status != case.status {
        return Err(format!(
            "{}: exit {status}, expected {}\nstderr: {}",
            case.name,
            case.status,
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    let expected = fixtures().join("expected");
    for (stream, got) in [("out", &out.stdout), ("err", &out.stderr)] {
        let path = expected.join(format!("{}.{stream}", case.name));
        let want = fs::read(&path).unwrap_or_default();
        if &want != got {
            return Err(format!(
                "{}: std{stream} differs\n--- expected\n{}--- got\n{}",
                case.name,
                String::from_utf8_lossy(&want),
                String::from_utf8_lossy(got)
            ));
        }
    }
    if run(case.args).stdout != out.stdout {
        return Err(format!("{}: output not deterministic", case.name));
    }
    Ok(())
}

/// Fixture DAGs for the round trip.
pub const DAGS: &[&str] = &[
    "chain.graph",
    "chain_reversed.graph",
    "collider.graph",
    "diamond.graph",
    "y.graph",
    "path4.graph",
];

/// `fromdag g`, then `explain` on the result, then `equiv` against `g`.
pub fn round_trip(dag: &str, scratch: &Path) -> Result<(), String> {
    let ci = run(&["fromdag", "--graph", dag]);
    if !ci.status.success() {
        return Err(format!("{dag}: fromdag failed"));
    }
    let g = fs::read_to_string(fixtures().join(dag)).unwrap();
    let vars: Vec<String> = causal_explain::parse_graph(&g).unwrap().names().to_vec();
    let ci_path = scratch.join(format!("{dag}.ci"));
    fs::write(&ci_path, &ci.stdout).unwrap();
    let explained = run(&[
        "explain",
        "--ci",
        ci_path.to_str().unwrap(),
        "--vars",
        &vars.join(","),
    ]);
    if !explained.status.success() {
        return Err(format!(
            "{dag}: explain failed: {}",
            String::from_utf8_lossy(&explained.stderr)
        ));
    }
    let out_path = scratch.join(format!("{dag}.explained"));
    fs::write(&out_path, &explained.stdout).unwrap();
    let eq = run(&["equiv", dag, out_path.to_str().unwrap()]);
    if eq.status.code() != Some(0) {
        return Err(format!("{dag}: explained graph is not equivalent"));
    }
    Ok(())
}
