mod common;

#[test]
fn golden_cases() {
    let failures: Vec<String> = common::CASES
        .iter()
        .filter_map(|c| common::check(c).err())
        .collect();
    assert!(failures.is_empty(), "{}", failures.join("\n\n"));
}

#[test]
fn fixture_dags_survive_the_round_trip() {
    let scratch = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("golden_round_trip");
    std::fs::create_dir_all(&scratch).unwrap();
    for dag in common::DAGS {
        common::round_trip(dag, &scratch).unwrap();
    }
}
