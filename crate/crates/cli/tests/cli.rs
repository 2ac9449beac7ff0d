use std::path::PathBuf;
use std::process::{Command, Output};

use weightsys_core::{parse_poly, MPoly};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    run_with_threads(args, None)
}

fn run_with_threads(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_weightsys"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("WEIGHTSYS_THREADS", t),
        None => cmd.env_remove("WEIGHTSYS_THREADS"),
    };
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn lie_sl2_on_k4() {
    let k4 = fixture("K4.json");
    let o = run(&["lie", "--algebra", "sl2", "--input", &k4]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "c^4 - 6*c^3 + 13*c^2 - 7*c");
    assert_eq!(parse_poly(stdout(&o).trim()).unwrap(), parse_poly("c^4-6c^3+13c^2-7c").unwrap());

    let o = run(&["lie", "--algebra", "sl2", "--input", &k4, "--format", "json"]);
    let p: MPoly = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(p, parse_poly("c^4-6c^3+13c^2-7c").unwrap());
}

#[test]
fn dims_of_four_chord_diagrams() {
    let o = run(&["dims", "--family", "diagrams", "--chords", "4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "6");
    let o = run(&["dims", "--family", "graphs", "--chords", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 6);
}

#[test]
fn dims_export_writes_matrix_market() {
    let path = std::env::temp_dir().join(format!("weightsys-rel-{}.mtx", std::process::id()));
    let p = path.to_string_lossy().into_owned();
    let o = run(&["dims", "--chords", "3", "--rational", "--export", &p]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "3");
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("%%MatrixMarket matrix coordinate integer general\n"));
    let dims: Vec<usize> = text.lines().nth(1).unwrap().split(' ').map(|x| x.parse().unwrap()).collect();
    assert_eq!(dims[1], 5);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn verify_transition_exits_zero() {
    let o = run(&["verify-4t", "--system", "transition", "--max-chords", "4"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["nonzero"], 0);
    assert!(v["quadruples"].as_u64().unwrap() > 0);
}

#[test]
fn verify_graph_and_dm_systems() {
    for (system, flag) in [
        ("skew-char", "--max-vertices"),
        ("interlace", "--max-vertices"),
        ("stanley-dm", "--max-vertices"),
        ("gl", "--max-chords"),
    ] {
        let o = run(&["verify-4t", "--system", system, flag, "3"]);
        assert_eq!(code(&o), 0, "{system}");
    }
    let o = run(&["verify-4t", "--system", "sl2"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn failed_checks_exit_one() {
    let o = run(&["dm", "--op", "check", "--input", &fixture("not_dm.json")]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["delta_matroid"], false);
    let o = run(&["dm", "--op", "check", "--input", &fixture("dm_pair.json")]);
    assert_eq!(code(&o), 0);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["frobnicate"],
        vec!["lie", "--algebra", "e8", "--input", "x.json"],
        vec!["lie", "--algebra", "sl2", "--input", "/nonexistent/diagram.json"],
        vec!["series", "--which", "gm", "--order", "3"],
        vec!["acceptance", "--criterion", "11"],
    ] {
        let o = run(&args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = run(&["lie", "--algebra", "sl2", "--input", &fixture("malformed.json")]);
    assert_eq!(code(&o), 2);
    let o = run_with_threads(&["dims", "--chords", "2"], Some("zero"));
    assert_eq!(code(&o), 2);
}

#[test]
fn bound_violations_exit_three() {
    for args in [
        vec!["enumerate".to_string(), "--chords".into(), "8".into()],
        vec!["dims".into(), "--chords".into(), "8".into()],
        vec!["dims".into(), "--family".into(), "graphs".into(), "--chords".into(), "7".into()],
        vec!["dims".into(), "--chords".into(), "6".into(), "--rational".into()],
        vec!["lie".into(), "--algebra".into(), "gl".into(), "--input".into(), fixture("big.json")],
        vec!["series".into(), "--which".into(), "gm".into(), "--m".into(), "9".into(), "--order".into(), "2".into()],
        vec!["verify-4t".into(), "--system".into(), "chromatic".into(), "--max-vertices".into(), "9".into()],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = run(&args);
        assert_eq!(code(&o), 3, "{args:?}");
    }
}

#[test]
fn enumerate_streams_canonical_words() {
    for (n, count) in [(1, 1), (2, 2), (3, 5), (4, 18), (5, 105)] {
        let o = run(&["enumerate", "--chords", &n.to_string()]);
        assert_eq!(code(&o), 0);
        let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
        assert_eq!(lines.len(), count);
        let mut sorted = lines.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), count);
    }
    let o = run(&["enumerate", "--chords", "2", "--framed", "--format", "json"]);
    for l in stdout(&o).lines() {
        let v: serde_json::Value = serde_json::from_str(l).unwrap();
        assert_eq!(v["n"], 2);
        assert_eq!(v["framing"].as_array().unwrap().len(), 2);
    }
}

#[test]
fn output_is_independent_of_thread_count() {
    let k4 = fixture("K4.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["enumerate", "--chords", "6"],
        vec!["dims", "--chords", "5"],
        vec!["dims", "--family", "graphs", "--chords", "5"],
        vec!["verify-4t", "--system", "sl2", "--max-chords", "4"],
        vec!["invariant", "--name", "stanley", "--input", &k4],
        vec!["dm", "--op", "4t-verify", "--max-vertices", "4"],
    ];
    for args in cases {
        let one = run_with_threads(&args, Some("1"));
        let four = run_with_threads(&args, Some("4"));
        assert_eq!(code(&one), 0, "{args:?}");
        assert_eq!(one.stdout, four.stdout, "{args:?}");
        let mut flagged = args.clone();
        flagged.extend(["--threads", "3"]);
        assert_eq!(run(&flagged).stdout, one.stdout, "{args:?}");
    }
}

#[test]
fn invariants_on_graphs_and_diagrams() {
    let o = run(&["invariant", "--name", "chromatic", "--input", &fixture("P4.json"), "--format", "pretty"]);
    assert_eq!(stdout(&o).trim(), "c^4 - 3*c^3 + 3*c^2 - c");
    // a diagram input goes through its intersection graph
    let k4 = fixture("K4.json");
    let o = run(&["invariant", "--name", "chromatic", "--input", &k4, "--format", "pretty"]);
    assert_eq!(stdout(&o).trim(), "c^4 - 6*c^3 + 11*c^2 - 6*c");
    // transition of a diagram and of its intersection graph agree
    let a = run(&["invariant", "--name", "transition", "--input", &k4]);
    let g = run(&["dm", "--op", "transition", "--input", &k4]);
    assert_eq!(a.stdout, g.stdout);
    let o = run(&["invariant", "--name", "skew-char", "--input", &fixture("K2_framed.json"), "--format", "pretty"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn csv_uses_monomial_columns() {
    let o = run(&["series", "--which", "cf-sl2", "--order", "4", "--format", "csv"]);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "n,1,c,c^2,c^3,c^4");
    assert_eq!(rows[5], "4,0,-7,13,-6,1");
    let o = run(&["lie", "--algebra", "sl2", "--input", &fixture("K4.json"), "--format", "csv"]);
    assert_eq!(stdout(&o), "c,c^2,c^3,c^4\n-7,13,-6,1\n");
}

#[test]
fn c5n_forms_agree() {
    let a = run(&["series", "--which", "c5n", "--order", "5"]);
    let b = run(&["series", "--which", "c5n-closed", "--order", "5"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn dm_twist_keeps_labels() {
    let o = run(&["dm", "--op", "twist", "--input", &fixture("dm_pair.json"), "--subset", "a"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ground"], serde_json::json!(["a", "b"]));
    assert_eq!(v["feasible"], serde_json::json!([["a"], ["b"]]));
    let o = run(&["dm", "--op", "twist", "--input", &fixture("dm_pair.json"), "--subset", "z"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn kp_check_on_abel_averages() {
    let o = run(&["kp-check", "--invariant", "abel", "--max-n", "5"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["graph_matches_schur"], true);
    assert_eq!(v["schur_residual_zero"], true);
}

#[test]
fn acceptance_single_criterion() {
    let o = run(&["acceptance", "--criterion", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("criterion  1 "));
    assert!(stdout(&o).contains(" PASS "));
}
