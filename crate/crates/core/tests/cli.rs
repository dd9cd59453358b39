use std::process::{Command, Output};

fn trunca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trunca")).args(args).output().expect("spawn trunca")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn roots_lists_every_root() {
    let o = trunca(&["roots", "--type", "G2", "--format", "csv"]);
    assert!(o.status.success());
    // header plus 12 roots
    assert_eq!(stdout(&o).lines().count(), 13);
}

#[test]
fn weyl_json_has_group_order_rows() {
    let o = trunca(&["weyl", "--type", "B2", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().or_else(|| v.get("rows").and_then(|r| r.as_array())).expect("array of rows");
    assert_eq!(rows.len(), 8);
}

#[test]
fn gamma_of_full_group_is_one() {
    let o = trunca(&["gamma", "--type", "A2", "--P", "1,2", "--H", "1/3,-2", "--X", "5,1/2", "--format", "csv"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.lines().nth(1).unwrap().ends_with(",1"), "{out}");
}

#[test]
fn qpsum_brute_and_product_agree() {
    let o = trunca(&["qpsum", "--type", "B2", "--X", "3,-2", "--format", "json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("brute") && out.contains("product"), "{out}");
    assert!(!out.contains("false"), "{out}");
}

#[test]
fn slltrace_sweep_for_sl3_over_f2() {
    let o = trunca(&["slltrace", "--q", "2", "--l", "3", "--sweep", "--format", "csv"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 5, "{out}");
}

#[test]
fn filtercheck_sl2() {
    let o = trunca(&["filtercheck", "--q", "5", "--theta-lambda", "1", "--theta-mu", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn verify_small_run_passes() {
    let o = trunca(&["verify", "--suite", "inversion", "--type", "A2", "--vectors", "20", "--format", "csv"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("true"));
}

#[test]
fn bad_configuration_exits_two() {
    assert_eq!(trunca(&["roots", "--type", "Q7"]).status.code(), Some(2));
    assert_eq!(trunca(&["gamma", "--type", "A2", "--H", "1", "--X", "1,2"]).status.code(), Some(2));
}

#[test]
fn invalid_torus_exits_one() {
    assert_eq!(trunca(&["slltrace", "--q", "2", "--l", "2", "--sweep"]).status.code(), Some(1));
}
