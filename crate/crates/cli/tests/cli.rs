use std::process::{Command, Output};

fn capelli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_capelli"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = capelli(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

#[test]
fn schur_element_of_shape_21() {
    assert_eq!(
        stdout(&["qimm", "--shape", "2,1", "--n", "2", "--schur"]),
        "e[1,1]^2e[2,2] - e[1,1]e[1,2]e[2,1] + e[1,1]e[2,2]^2 - e[1,2]e[2,1]e[2,2] + e[1,1]^2 - e[1,1]e[2,2] + 2·e[1,2]e[2,1] - 2·e[1,1]"
    );
    assert_eq!(
        stdout(&["qimm", "--shape", "2,1", "--n", "2", "--schur", "--dyc"]),
        stdout(&["qimm", "--shape", "2,1", "--n", "2", "--schur"])
    );
}

#[test]
fn small_schur_elements() {
    assert_eq!(stdout(&["qimm", "--shape", "1,1,1", "--n", "2", "--schur"]), "0");
    assert_eq!(stdout(&["qimm", "--shape", "1", "--n", "2", "--schur"]), "e[1,1] + e[2,2]");
    assert_ne!(stdout(&["qimm", "--shape", "3", "--n", "2", "--schur"]), "0");
}

#[test]
fn column_examples() {
    assert_eq!(
        stdout(&["col", "--rows", "1,2,3", "--cols", "2,1,1", "--n", "3"]),
        "-e[1,2]e[2,1]e[3,1] + e[1,1]e[3,1]"
    );
    assert_eq!(stdout(&["col", "--rows", "1", "--cols", "2", "--n", "2"]), "e[1,2]");
    assert_eq!(stdout(&["col", "--rows", "1,2", "--cols", "2,1", "--n", "2"]), "-e[1,2]e[2,1] + e[1,1]");
    assert_eq!(
        stdout(&["col", "--rows", "1,2,3", "--cols", "2,1,1", "--n", "3", "--alt"]),
        "-e[1,2]e[2,1]e[3,1] + e[1,1]e[3,1]"
    );
}

#[test]
fn json_output_uses_reduced_fractions() {
    let json = stdout(&["qimm", "--shape", "2,1", "--n", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["n"], 2);
    for t in v["terms"].as_array().unwrap() {
        let (p, q) = t["coeff"].as_str().unwrap().split_once('/').unwrap();
        let (p, q): (i64, i64) = (p.parse().unwrap(), q.parse().unwrap());
        assert!(q > 0);
        let gcd = (1..=q).rev().find(|g| p % g == 0 && q % g == 0).unwrap();
        assert_eq!(gcd, 1);
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["expand-standard", "--schur", "2,1", "--n", "2", "--format", "json"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn verify_suites_pass() {
    for args in [
        vec!["verify", "presentations", "--max-h", "3", "--max-n", "2"],
        vec!["verify", "central", "--max-h", "3", "--max-n", "3"],
        vec!["verify", "oracle", "--max-h", "3", "--n", "2", "--d", "2"],
    ] {
        let report: serde_json::Value = serde_json::from_str(&stdout(&[&args[..], &["--format", "json"]].concat())).unwrap();
        assert_eq!(report["passed"], true);
        assert!(report["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    }
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["qimm", "--shape", "2,x", "--n", "2"],
        vec!["qimm", "--shape", "1,2", "--n", "2"],
        vec!["col", "--rows", "1,2", "--cols", "2", "--n", "2"],
        vec!["col", "--rows", "3", "--cols", "1", "--n", "2"],
        vec!["verify", "nonsense"],
        vec!["bogus"],
        vec!["straighten", "--left", "[[1],[1,2]]", "--right", "[[1],[1,2]]", "--n", "2", "--d", "2"],
        vec!["expand-standard", "--element", "e[1,2", "--n", "2"],
    ] {
        assert_eq!(capelli(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn straighten_standard_input_is_identity() {
    assert_eq!(
        stdout(&["straighten", "--left", "[[1,2],[1]]", "--right", "[[1,2],[2]]", "--n", "2", "--d", "2"]),
        "1 [[1,2],[1]] | [[1,2],[2]]"
    );
}

#[test]
fn straighten_preserves_content() {
    let json = stdout(&[
        "straighten", "--left", "[[2,1],[1]]", "--right", "[[1,2],[2]]", "--n", "2", "--d", "2", "--format", "json",
    ]);
    let terms: serde_json::Value = serde_json::from_str(&json).unwrap();
    for t in terms.as_array().unwrap() {
        let mut left: Vec<u64> = t["left"].as_array().unwrap().iter().flat_map(|r| r.as_array().unwrap().clone()).map(|x| x.as_u64().unwrap()).collect();
        left.sort();
        assert_eq!(left, vec![1, 1, 2]);
    }
}

#[test]
fn expand_standard_schur_21() {
    assert_eq!(
        stdout(&["expand-standard", "--schur", "2,1", "--n", "2"]),
        "-1/2 [[1,2],[1]] | [[1,2],[1]]\n-1 [[1,2],[2]] | [[1,2],[2]]"
    );
}

#[test]
fn timing_goes_to_stderr() {
    let out = capelli(&["cdet", "--n", "2", "--timing"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "e[1,1]e[2,2] - e[1,2]e[2,1] + e[1,1]");
    assert!(String::from_utf8_lossy(&out.stderr).contains("timing: compute"));
}
