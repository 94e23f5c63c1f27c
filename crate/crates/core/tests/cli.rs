use std::fs;

use graphprod::cli::{self, census_rows, parse_census_rows, EXIT_CONFIG, EXIT_FAILED, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION};
use graphprod::report::Record;
use proptest::prelude::*;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("graphprod").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write_config(dir: &tempfile::TempDir, body: &str) -> String {
    let path = dir.path().join("config.json");
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn normalize_reduced_word_in_infinite_dihedral() {
    let (code, out, _) = run(&["normalize", "--context", "d-infinity", "--word", "v0:1 v1:1 v0:1 v1:1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "v0:1 v1:1 v0:1 v1:1\nnl=4\n");
}

#[test]
fn retraction_of_parity_maps() {
    let (code, out, _) = run(&[
        "verify", "retraction", "--family", "c2-to-z", "--cofamily", "z-to-c2", "--samples", "500", "--seed", "7",
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("PASS"));
    assert!(out.contains("Φ is a retract of Ψ"));
}

#[test]
fn complex_census_of_one_edge_on_three_vertices() {
    let (code, out, _) = run(&["complex", "--context", "c2-c2-c2-edge01", "--census"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "V=8 E=12 T=0 Sq=2");
}

#[test]
fn small_commands() {
    let (_, out, _) = run(&["mul", "--context", "c2-c2-edge", "--left", "v1:1", "--right", "v0:1"]);
    assert_eq!(out, "v0:1 v1:1\nnl=2\n");
    let (_, out, _) = run(&["inv", "--context", "z-free2", "--word", "v0:3 v1:-2"]);
    assert_eq!(out, "v1:2 v0:-3\nnl=2\n");
    let (_, out, _) = run(&["kernel-test", "--context", "d-infinity", "--word", "v0:1 v1:1 v0:1 v1:1"]);
    assert!(out.starts_with("in kernel"));
    let (_, out, _) = run(&[
        "kernel-test", "--context", "d-infinity", "--word", "v0:1 v1:1 v0:1 v1:1", "--extension", "free2-complete",
    ]);
    assert!(out.starts_with("in kernel"));
    let (_, out, _) = run(&["kernel-test", "--context", "d-infinity", "--word", "v0:1"]);
    assert!(out.starts_with("not in kernel"));
}

#[test]
fn induce_reports_dropped_syllables() {
    let (code, out, _) = run(&["induce", "--family", "z-to-c2", "--word", "v0:2 v1:1 v0:-2 v1:-1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("dropped syllables"), "{out}");
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run(&["normalize", "--context", "d-infinity"]).0, EXIT_USAGE);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("Exit codes"));
}

#[test]
fn unknown_names_and_bad_words() {
    let (code, _, err) = run(&["normalize", "--context", "nowhere", "--word", "e"]);
    assert_eq!(code, EXIT_CONFIG);
    assert!(err.contains("nowhere"));
    let (code, _, _) = run(&["normalize", "--context", "d-infinity", "--word", "v0:0"]);
    assert_eq!(code, EXIT_VALIDATION);
    let (code, _, _) = run(&["normalize", "--context", "d-infinity", "--word", "v7:1"]);
    assert_ne!(code, EXIT_OK);
}

#[test]
fn minimal_config_loads() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(
        &dir,
        r#"{"graphs": {"pt": {"vertices": 1, "edges": []}},
            "groups": {"c2": {"cyclic": 2}},
            "contexts": {"one": {"graph": "pt", "groups": ["c2"]}}}"#,
    );
    let (code, out, err) = run(&["--config", &path, "normalize", "--context", "one", "--word", "v0:1 v0:1"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(out, "e\nnl=0\n");
}

#[test]
fn undefined_group_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(
        &dir,
        r#"{"graphs": {"pt": {"vertices": 1, "edges": []}},
            "contexts": {"one": {"graph": "pt", "groups": ["c9"]}}}"#,
    );
    let (code, _, err) = run(&["--config", &path, "normalize", "--context", "one", "--word", "e"]);
    assert_eq!(code, EXIT_CONFIG);
    assert!(err.contains("c9"), "{err}");
    assert!(err.contains("contexts.one"), "{err}");
}

#[test]
fn non_associative_table_cites_triple() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(
        &dir,
        r#"{"groups": {"latin": {"table": [[0, 1, 2], [1, 0, 0], [2, 2, 1]]}}}"#,
    );
    let (code, _, err) = run(&["--config", &path, "normalize", "--context", "x", "--word", "e"]);
    assert_ne!(code, EXIT_OK);
    assert!(err.contains("latin"), "{err}");

    let path = write_config(
        &dir,
        r#"{"groups": {"latin": {"table": [[0, 1, 2], [1, 0, 2], [2, 2, 0]]}}}"#,
    );
    let (code, _, err) = run(&["--config", &path, "normalize", "--context", "x", "--word", "e"]);
    assert_eq!(code, EXIT_CONFIG);
    assert!(err.contains("not associative"), "{err}");
    assert!(err.contains(")*"), "{err}");
}

#[test]
fn malformed_json_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(&dir, "{ not json");
    assert_eq!(run(&["--config", &path, "normalize", "--context", "x", "--word", "e"]).0, EXIT_CONFIG);
    let missing = dir.path().join("absent.json");
    let missing = missing.to_str().unwrap();
    assert_eq!(run(&["--config", missing, "normalize", "--context", "x", "--word", "e"]).0, EXIT_CONFIG);
}

#[test]
fn failing_suite_exits_one() {
    let (code, out, _) = run(&[
        "verify", "retraction", "--family", "c4-to-v4", "--cofamily", "c4-to-v4", "--samples", "10",
    ]);
    assert_ne!(code, EXIT_OK, "{out}");
    let (code, out, _) = run(&["verify", "homomorphism", "--family", "c2-to-z", "--samples", "200"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let (code, _, _) = run(&["verify", "census", "--context", "c4-free2", "--other", "c3-free2", "--radius", "4"]);
    assert_eq!(code, EXIT_FAILED);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["--format", "records", "verify", "isometry", "--family", "c2-to-z", "--samples", "200", "--seed", "3"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a, b);
    let args = ["verify", "oracle-agreement", "--family", "c4-to-c2", "--samples", "50", "--seed", "11"];
    assert_eq!(run(&args), run(&args));
}

#[test]
fn records_round_trip() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["normalize", "--context", "z-free2", "--word", "v0:-3 v1:2 v0:3"],
        vec!["project", "--context", "mixed-path3", "--word", "v0:1 v1:2 v2:3"],
        vec!["induce", "--family", "c2-to-z", "--word", "v0:1 v1:1 v0:1 v1:1"],
        vec!["verify", "welldefined", "--family", "c2-to-z", "--samples", "50"],
        vec!["complex", "--context", "c2-path3"],
    ];
    for args in cases {
        let mut full = vec!["--format", "records"];
        full.extend(args.iter().copied());
        let (code, out, err) = run(&full);
        assert_eq!(code, EXIT_OK, "{args:?}: {err}");
        for line in out.lines() {
            let rec: Record = line.parse().unwrap();
            assert_eq!(rec.to_string(), line);
        }
    }
}

#[test]
fn growth_rows_round_trip() {
    let (code, out, _) = run(&["--format", "records", "growth", "--context", "d-infinity", "--radius", "5"]);
    assert_eq!(code, EXIT_OK);
    let counts = parse_census_rows(&out).unwrap();
    assert_eq!(counts, vec![1, 2, 2, 2, 2, 2]);
    let (_, out, _) = run(&["--format", "records", "growth", "--context", "d-infinity", "--radius", "4", "--kernel"]);
    assert_eq!(parse_census_rows(&out).unwrap(), vec![1, 0, 0, 0, 2]);
}

#[test]
fn export_writes_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("edges.txt");
    let (code, out, _) = run(&["complex", "--context", "c2-c2-c2-edge01", "--export", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("wrote 12 edges"));
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 12);
    for line in text.lines() {
        let parts: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(parts.len(), 3, "{line}");
        let u: usize = parts[0].parse().unwrap();
        let v: usize = parts[1].parse().unwrap();
        assert!(u < 8 && v < 8);
    }
}

proptest! {
    #[test]
    fn census_rows_parse_back(counts in proptest::collection::vec(0usize..10_000, 0..12)) {
        let text = census_rows(&counts).join("\n");
        prop_assert_eq!(parse_census_rows(&text).unwrap(), counts);
    }

    #[test]
    fn record_values_survive_quoting(v in "[ -~]{0,16}", w in "\\PC{0,8}") {
        let rec = Record::new().with("a", &v).with("b", &w);
        let back: Record = rec.to_string().parse().unwrap();
        prop_assert_eq!(back, rec);
    }
}
