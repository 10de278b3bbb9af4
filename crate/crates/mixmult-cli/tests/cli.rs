//! End-to-end tests of the `mixmult` binary: the JSON envelope, exit codes,
//! flag precedence, and byte-identical reruns.

use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_mixmult");

/// The regular plane `k[x,y]` with `J = I_1 = (x,y)`, a zero submodule, and
/// a default type of `[1,0]`.
const PLANE: &str = r#"{
  "schema_version": 1,
  "ring": {"variables": ["x", "y"]},
  "J": [[1,0],[0,1]],
  "ideals": [[[1,0],[0,1]]],
  "type": [1, 0],
  "seed": 7,
  "submodule": []
}"#;

/// `I_1 = (x)` acting on `M = R/(x)`: every table is identically zero.
const ANNIHILATED: &str = r#"{
  "schema_version": 1,
  "ring": {"variables": ["x", "y"]},
  "J": [[1,0],[0,1]],
  "ideals": [[[1,0]]],
  "module": {"num": "unit", "den": [[1,0]]}
}"#;

/// The coordinate cross `R/(xy)` with the axis `(x)/(xy)` as submodule.
const CROSS: &str = r#"{
  "schema_version": 1,
  "ring": {"variables": ["x", "y"]},
  "J": [[1,0],[0,1]],
  "ideals": [[[1,0],[0,1]]],
  "module": {"num": "unit", "den": [[1,1]]},
  "submodule": [[1,0]],
  "type": [0, 0]
}"#;

/// Two independent linear forms in `J` on the plane: a joint reduction of
/// shape `(2; 0)`.
const PLANE_CANDIDATE: &str = r#"{
  "schema_version": 1,
  "ring": {"variables": ["x", "y"]},
  "J": [[1,0],[0,1]],
  "ideals": [[[1,0],[0,1]]],
  "candidate": {
    "j": [
      [{"exps": [1,0]}, {"coeff": "2", "exps": [0,1]}],
      [{"exps": [1,0]}, {"coeff": "3", "exps": [0,1]}]
    ],
    "ideals": [[]]
  }
}"#;

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args).stdout(Stdio::piped()).stderr(Stdio::piped());
    if stdin.is_some() {
        cmd.stdin(Stdio::piped());
    }
    let mut child = cmd.spawn().expect("binary spawns");
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .expect("stdin piped")
            .write_all(text.as_bytes())
            .expect("stdin accepts input");
    }
    child.wait_with_output().expect("binary exits")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn mixedmult_on_the_plane_prints_one() {
    let out = run(&["mixedmult", "-i", "-"], Some(PLANE));
    assert_eq!(code_of(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["result"]["mixedmult"], 1);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "mixedmult");
    assert_eq!(v["field"], "F_32003");
    assert_eq!(v["seed"], 7);
    let hash = v["input_hash"].as_str().unwrap();
    assert!(hash.starts_with("sha256:") && hash.len() == 7 + 64);
    assert_eq!(v["window"]["lo"], serde_json::json!([2, 2]));
}

#[test]
fn undefined_mixed_multiplicity_exits_refused() {
    let out = run(&["mixedmult", "--type", "0,0", "-i", "-"], Some(PLANE));
    assert_eq!(code_of(&out), 1);
    let v = json_of(&out);
    assert_eq!(v["result"]["mixedmult"], "undefined");
    assert_eq!(v["result"]["witness"], serde_json::json!([0, 1]));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("undefined"), "stderr: {err}");
}

#[test]
fn hilbert_table_of_an_annihilated_module_is_zero() {
    let out = run(&["hilbert", "--fn", "P", "-i", "-"], Some(ANNIHILATED));
    assert_eq!(code_of(&out), 0);
    let v = json_of(&out);
    let rows = v["result"]["values"].as_array().unwrap();
    assert!(!rows.is_empty());
    for row in rows {
        for cell in row.as_array().unwrap() {
            assert_eq!(cell, 0);
        }
    }
}

#[test]
fn fit_reports_the_plane_coefficients() {
    let out = run(&["fit", "-i", "-"], Some(PLANE));
    assert_eq!(code_of(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["result"]["certificate"]["stable"], true);
    let coeffs = v["result"]["coefficients"].as_array().unwrap();
    let as_pairs: Vec<(Vec<i64>, &str)> = coeffs
        .iter()
        .map(|c| {
            (
                c["type"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect(),
                c["coeff"].as_str().unwrap(),
            )
        })
        .collect();
    assert_eq!(
        as_pairs,
        vec![
            (vec![0, 0], "-1"),
            (vec![0, 1], "1"),
            (vec![1, 0], "1"),
        ]
    );
}

#[test]
fn support_lists_the_maximal_types() {
    let out = run(&["support", "-i", "-"], Some(PLANE));
    assert_eq!(code_of(&out), 0);
    let v = json_of(&out);
    let support = v["result"]["support"].as_array().unwrap();
    let types: Vec<&Value> = support.iter().map(|s| &s["type"]).collect();
    assert_eq!(types.len(), 2);
    assert_eq!(*types[0], serde_json::json!([0, 1]));
    assert_eq!(*types[1], serde_json::json!([1, 0]));
}

#[test]
fn jointred_find_succeeds_where_the_multiplicity_is_positive() {
    let out = run(&["jointred", "find", "-i", "-"], Some(PLANE));
    assert_eq!(code_of(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["result"]["shape"]["j_count"], 2);
    assert_eq!(v["result"]["certificate"]["holds"], true);
    assert!(v["result"]["candidate"]["rendered"]["j"].as_array().unwrap().len() == 2);
}

#[test]
fn jointred_find_fails_for_a_shape_too_small() {
    // One element of J cannot reduce the plane: exit 1, candidate null.
    let out = run(&["jointred", "find", "--type", "0,0", "-i", "-"], Some(PLANE));
    assert_eq!(code_of(&out), 1);
    let v = json_of(&out);
    assert!(v["result"]["candidate"].is_null());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("no joint reduction found"), "stderr: {err}");
}

#[test]
fn jointred_test_certifies_an_explicit_candidate() {
    let out = run(&["jointred", "test", "-i", "-"], Some(PLANE_CANDIDATE));
    assert_eq!(code_of(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["result"]["certificate"]["holds"], true);
}

#[test]
fn chi_matches_the_multiplicity_and_validates_against_homology() {
    let out = run(&["chi", "--koszul-validate", "-i", "-"], Some(PLANE_CANDIDATE));
    assert_eq!(code_of(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["result"]["chi"], 1);
    let reports = v["result"]["report"]["koszul_reports"].as_array().unwrap();
    assert_eq!(reports.len(), 2);
    for r in reports {
        assert_eq!(r["euler"], 1);
        assert_eq!(r["stable"], true);
    }
}

#[test]
fn koszul_reports_homology_at_one_degree() {
    let out =
        run(&["koszul", "--deg", "5,5", "--trunc", "15", "-i", "-"], Some(PLANE_CANDIDATE));
    assert_eq!(code_of(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["result"]["euler"], 1);
    assert_eq!(v["result"]["stable"], true);
    assert_eq!(v["truncation"], 15);
}

#[test]
fn verify_main_passes_on_the_plane() {
    let out = run(&["verify", "main", "-i", "-"], Some(PLANE));
    assert_eq!(code_of(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["result"]["verdict"], "Pass");
}

#[test]
fn verify_main_without_hypotheses_exits_refused() {
    // At type [0,0] the multiplicity of the plane is undefined.
    let out = run(&["verify", "main", "--type", "0,0", "-i", "-"], Some(PLANE));
    assert_eq!(code_of(&out), 1);
    let v = json_of(&out);
    assert_eq!(v["result"]["verdict"], "HypothesisNotMet");
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("hypothesis not met"), "stderr: {err}");
}

#[test]
fn verify_addred_weights_the_axes_of_the_cross() {
    let out = run(&["verify", "addred", "-i", "-"], Some(CROSS));
    assert_eq!(code_of(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["result"]["verdict"], "Pass");
    let quantities = v["result"]["quantities"].as_array().unwrap();
    let lookup = |name: &str| -> String {
        quantities
            .iter()
            .find(|q| q[0] == name)
            .unwrap_or_else(|| panic!("no quantity {name:?} in {quantities:?}"))[1]
            .as_str()
            .unwrap()
            .to_string()
    };
    assert_eq!(lookup("e(M)"), "2");
    assert_eq!(lookup("pi-sum"), "2");
    assert_eq!(lookup("p = (x)"), "l(M_p) = 1, e(A/p) = 1");
    assert_eq!(lookup("p = (y)"), "l(M_p) = 1, e(A/p) = 1");
}

#[test]
fn verify_rank_scales_by_the_requested_rank() {
    let out = run(&["verify", "rank", "--rank", "3", "-i", "-"], Some(PLANE));
    assert_eq!(code_of(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["result"]["verdict"], "Pass");
    let quantities = v["result"]["quantities"].as_array().unwrap();
    assert!(quantities.iter().any(|q| q[0] == "e(R^3)" && q[1] == "3"), "{quantities:?}");
}

#[test]
fn verify_exact_splits_the_cross_over_its_axes() {
    let out = run(&["verify", "exact", "--seed", "9", "-i", "-"], Some(CROSS));
    assert_eq!(code_of(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["result"]["verdict"], "Pass");
    assert_eq!(v["seed"], 9);
}

#[test]
fn window_flag_overrides_the_input_file() {
    let out = run(&["hilbert", "--window", "3,3:5,5", "-i", "-"], Some(PLANE));
    assert_eq!(code_of(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["window"]["lo"], serde_json::json!([3, 3]));
    assert_eq!(v["window"]["hi"], serde_json::json!([5, 5]));
    let rows = v["result"]["values"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0].as_array().unwrap().len(), 3);
}

#[test]
fn inapplicable_flags_are_rejected() {
    let out = run(&["hilbert", "--trunc", "12", "-i", "-"], Some(PLANE));
    assert_eq!(code_of(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--trunc has no effect on 'hilbert'"), "stderr: {err}");
}

#[test]
fn schema_violations_exit_with_input_error() {
    let bad_version = PLANE.replace("\"schema_version\": 1", "\"schema_version\": 3");
    let out = run(&["hilbert", "-i", "-"], Some(&bad_version));
    assert_eq!(code_of(&out), 2);

    let bad_exps = PLANE.replace("[[1,0],[0,1]]", "[[1,0,0],[0,1]]");
    let out = run(&["hilbert", "-i", "-"], Some(&bad_exps));
    assert_eq!(code_of(&out), 2);
    let err: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    assert_eq!(err["error"]["class"], "input");

    let out = run(&["mixedmult", "-i", "-"], Some(ANNIHILATED));
    assert_eq!(code_of(&out), 2, "a missing type is an input error");
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        vec!["verify", "main", "-i", "-"],
        vec!["jointred", "find", "--seed", "41", "-i", "-"],
        vec!["fit", "-i", "-"],
    ] {
        let a = run(&args, Some(PLANE));
        let b = run(&args, Some(PLANE));
        assert_eq!(code_of(&a), code_of(&b));
        assert_eq!(a.stdout, b.stdout, "bytes differ for {args:?}");
    }
}

#[test]
fn corpus_run_passes_everywhere() {
    let out = run(&["corpus", "run", "--seed", "1"], None);
    assert_eq!(code_of(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["result"]["worst"], "pass");
    let outcomes = v["result"]["outcomes"].as_array().unwrap();
    assert!(outcomes.len() >= 10, "only {} corpus entries", outcomes.len());
    for o in outcomes {
        assert_eq!(o["verdict"], "Pass", "{} did not pass", o["name"]);
    }
    let out = run(&["corpus", "run", "-i", "-"], Some(PLANE));
    assert_eq!(code_of(&out), 2, "corpus run with an input file is an input error");
}

#[test]
fn rationals_field_flag_switches_the_arithmetic() {
    let out = run(&["verify", "main", "--field", "q", "-i", "-"], Some(PLANE));
    assert_eq!(code_of(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["field"], "Q");
    assert_eq!(v["result"]["verdict"], "Pass");
}
