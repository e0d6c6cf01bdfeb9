use std::process::{Command, Output};

fn qreal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qreal")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = qreal(&all);
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)))
}

#[test]
fn eval_examples() {
    for (expr, want) in
        [("110+1 * 10+1", "10000+01 (16.25)\n"), ("1+ /:7 101+", "0+00110011 (0.19921875)\n"), ("1+ - 1+", "0+ (0)\n")]
    {
        let o = qreal(&["eval", expr]);
        assert!(o.status.success());
        assert_eq!(stdout(&o), want);
    }
    let v = json(&["eval", "110+1 * 10+1"]);
    assert_eq!(v["result"]["text"], "10000+01");
    assert_eq!(v["result"]["value"], "16.25");
}

#[test]
fn parse_errors_show_a_caret() {
    let o = qreal(&["eval", "1+ * 12+"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr(&o), "error: non-binary digit '2'\n  1+ * 12+\n        ^\n");
    let o = qreal(&["eval", "1+ /:3 0+"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("division by a zero state"));
}

#[test]
fn usage_errors_exit_with_2() {
    assert_eq!(qreal(&["demo", "nope"]).status.code(), Some(2));
    assert_eq!(qreal(&["--horizon", "1,2", "eval", "1+"]).status.code(), Some(2));
    assert_eq!(qreal(&["invert", "101+"]).status.code(), Some(2));
    assert_eq!(qreal(&["seq-gen", "{\"kind\":\"nope\"}"]).status.code(), Some(2));
}

#[test]
fn invert_worked_example() {
    let o = qreal(&["invert", "--ell", "7", "101+"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0+00110011 (0.19921875)\nproduct 0.99609375\n");
    let v = json(&["invert", "--ell", "7", "101-"]);
    assert_eq!(v["inverse"]["text"], "0-00110011");
}

#[test]
fn seq_gen_text_csv_and_json() {
    let spec = r#"{"kind":"frozen_prefix","s":"0","tail":"bell"}"#;
    let o = qreal(&["seq-gen", spec, "--count", "2", "--csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,state,re,im,probability"));
    assert_eq!(lines.count(), 4);
    assert!(text.contains("1,0+1;0+1,"));

    let v = json(&["seq-gen", spec, "--count", "3"]);
    let elems = v["elements"].as_array().unwrap();
    assert_eq!(elems.len(), 3);
    let rec: qreal::json::SuperpositionRecord = serde_json::from_value(elems[2]["state"].clone()).unwrap();
    let psi = rec.to_superposition().unwrap();
    assert_eq!(psi.len(), 2);
    let back: qreal::sequence::SequenceSpec = serde_json::from_value(v["spec"].clone()).unwrap();
    assert_eq!(back, qreal::sequence::SequenceSpec::from_json(spec).unwrap());

    let o = qreal(&["seq-gen", "10-1", "--count", "1"]);
    assert_eq!(stdout(&o), "   1  1.000000 10-1\n");
}

#[test]
fn sequence_files_are_read() {
    let path = std::env::temp_dir().join(format!("qreal-cli-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"kind":"cycle","values":["0+","1+"]}"#).unwrap();
    let arg = format!("@{}", path.display());
    let o = qreal(&["cauchy-check", &arg]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("cauchy: refuted\n"));
}

#[test]
fn cauchy_check_reports() {
    let exam1 = r#"{"kind":"frozen_prefix","s":"0"}"#;
    let o = qreal(&["cauchy-check", exam1]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("witness h(ell): 1->1 2->2 3->3 4->4 5->5 6->6 7->7 8->8"));

    let rep: qreal::json::ProbeReport =
        serde_json::from_value(json(&["cauchy-check", "--horizon", "4,8,4", exam1])).expect("report schema");
    assert_eq!(rep.status, qreal::sequence::Status::Certified);
    assert_eq!(rep.witness.len(), 4);

    let alt = r#"{"kind":"cycle","values":["0+","1+"]}"#;
    let o = qreal(&["cauchy-check", "--horizon", "2,4,2", alt, "--csv"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.starts_with("ell,h,j,k,probability\n"));
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<qreal::sequence::ProbeRow> = r.deserialize().map(|r| r.unwrap()).collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().any(|r| r.probability == 0.0));
}

#[test]
fn compare_relations() {
    let o = qreal(&["compare", "1+", r#"{"kind":"frozen_prefix","s":"0(1)"}"#]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("relation: eq\n"));
    let v = json(&["compare", "0+1", "1+"]);
    assert_eq!(v["relation"], "lt");
    assert_eq!(v["lt"]["status"], "certified");
    let v = json(&["compare", "0+1;1+", "1+;0+", "--part", "both"]);
    assert_eq!(v["real"], "lt");
    assert_eq!(v["imaginary"], "gt");
}

#[test]
fn demos_pass() {
    for name in ["exam1", "bell", "gaussian", "entangled-real", "completeness", "x2-minus-1", "fuzz"] {
        let o = qreal(&["--horizon", "6,16,4", "--seed", "3", "demo", name]);
        assert!(o.status.success(), "{name}: {}", stdout(&o));
        assert!(stdout(&o).ends_with("all checks passed\n"));
    }
    let v = json(&["demo", "x2-minus-1"]);
    assert_eq!(v["name"], "x2-minus-1");
    assert_eq!(v["checks"][0]["detail"], "certified");
}

#[test]
fn demo_is_deterministic() {
    let a = stdout(&qreal(&["--seed", "11", "demo", "fuzz"]));
    let b = stdout(&qreal(&["--seed", "11", "demo", "fuzz"]));
    assert_eq!(a, b);
}
