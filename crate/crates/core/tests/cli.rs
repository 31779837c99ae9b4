//! The command-line front end driven in-process.

use setvalued::cli::run_with;
use setvalued::expansions::{Expansion, ExpansionJson};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("setvalued").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn worked_key_expansion() {
    let (code, out, _) = run(&["expand", "key", "--outer", "2,2,0", "--inner", "1,0,0", "--flag", "1,3,3", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "κ_(1,0,2) - t2*κ_(2,0,2) - t2*κ_(1,1,2) + t2^2*κ_(2,1,2)");
}

#[test]
fn empty_shape_is_one() {
    let (code, out, _) = run(&["expand", "key", "--outer", "0", "--inner", "0"]);
    assert_eq!((code, out.trim()), (0, "1"));
}

#[test]
fn basis_expansions() {
    let (code, out, _) = run(&["expand", "g", "--outer", "3,2,0", "--inner", "1,0,0", "--n", "3", "--source", "dual"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "g_(3,1,0) - g_(3,0,0) + g_(2,2,0) - g_(2,1,0) + t1*g_(3,0,0)");
    let (code, out, _) = run(&["expand", "g", "--outer", "2,2", "--inner", "1", "--n", "2", "--format", "latex"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "g_{(2,1)} - g_{(2,0)} - t_{2} g_{(2,2)} + t_{2} g_{(2,1)}");
    let (code, out, _) = run(&["expand", "schur", "--outer", "2,2", "--inner", "1", "--n", "2"]);
    assert_eq!((code, out.trim()), (0, "s_(2,1) - t2*s_(2,2)"));
    let (code, _, _) = run(&["expand", "G", "--outer", "2,2", "--inner", "1", "--n", "2", "--degree-cap", "6"]);
    assert_eq!(code, 0);
}

#[test]
fn json_output_round_trips() {
    let args = ["expand", "key", "--outer", "3,2", "--inner", "1", "--flag", "2,3", "--format", "json"];
    let (code, out, _) = run(&args);
    assert_eq!(code, 0);
    let parsed: ExpansionJson = serde_json::from_str(&out).unwrap();
    let again = serde_json::to_string_pretty(&Expansion::from_json(&parsed).to_json()).unwrap();
    assert_eq!(again.trim(), out.trim());
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["classify", "--outer", "3,2", "--inner", "1", "--n", "3"][..],
        &["crystal-graph", "--outer", "2,2", "--inner", "1", "--n", "3"][..],
        &["selftest", "--max-size", "4", "--n", "2", "--seed", "3"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.0, 0, "{args:?}: {}", a.2);
        assert_eq!(a.1, b.1, "{args:?}");
    }
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["expand", "key", "--outer", "2,x"][..],
        &["expand", "key", "--outer", "2,3"][..],
        &["expand", "key", "--outer", "2,2", "--flag", "3"][..],
        &["expand", "key", "--outer", "2,2", "--flag", "3,2"][..],
        &["expand", "G", "--outer", "2,2", "--degree-cap", "2"][..],
        &["expand", "schur", "--outer", "2,2", "--flag", "1,2", "--n", "2"][..],
        &["bogus"][..],
        &[][..],
    ] {
        let (code, _, err) = run(args);
        assert_eq!(code, 1, "{args:?}");
        assert!(!err.is_empty());
    }
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
}

#[test]
fn burge_and_uncrowd_subcommands() {
    let (code, out, _) = run(&["burge", "--matrix", "1,2,0;2,1,3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["top"], serde_json::json!([2, 2, 2, 2, 2, 2, 1, 1, 1]));
    assert_eq!(v["bottom"], serde_json::json!([1, 1, 2, 3, 3, 3, 1, 2, 2]));
    let (code, json_out, _) = run(&["burge", "--matrix", "[[1,2,0],[2,1,3]]"]);
    assert_eq!((code, json_out), (0, out));
    let (code, _, _) = run(&["burge", "--matrix", "[[1,2],[3]]"]);
    assert_eq!(code, 1);

    let t = r#"{"outer":[4,3,2],"inner":[2,1,0],"cells":[[1,3,[1]],[1,4,[1,2]],[2,2,[1,2]],[2,3,[2,3]],[3,1,[1]],[3,2,[3]]]}"#;
    let (code, out, err) = run(&["uncrowd", "--tableau", t, "--flag", "2,3,4"]);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["output_shape"]["outer"], serde_json::json!([4, 4, 3, 1]));
    assert_eq!(v["flag_trace"].as_array().unwrap().last().unwrap(), &serde_json::json!([2, 2, 3, 3]));

    let (code, _, _) = run(&["uncrowd", "--tableau", r#"{"outer":[2],"inner":[0],"cells":[[1,1,[2]],[1,2,[1]]]}"#]);
    assert_eq!(code, 1);
}
