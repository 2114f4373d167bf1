use std::process::{Command, Output};

fn friable(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_friable")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim_end().to_string()
}

#[test]
fn rho_prints_twelve_digits() {
    let o = friable(&["rho", "--u", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0.306852819440");
}

#[test]
fn psi_small_example() {
    let o = friable(&["psi", "--x", "10", "--y", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "7");
}

#[test]
fn psi_progression_classes_sum() {
    let total: u64 = (0..4)
        .map(|a| stdout(&friable(&["psi", "--x", "1000", "--y", "10", "--q", "4", "--a", &a.to_string()])).parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, stdout(&friable(&["psi", "--x", "1000", "--y", "10"])).parse().unwrap());
}

#[test]
fn argument_errors_exit_one() {
    assert_eq!(friable(&["rho"]).status.code(), Some(1));
    assert_eq!(friable(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(friable(&["rho", "--u", "2", "--bogus", "1"]).status.code(), Some(1));
    // domain error from the library
    assert_eq!(friable(&["rho-theta", "--u", "3", "--theta", "0.5"]).status.code(), Some(1));
    assert_eq!(friable(&["psi-poly", "--poly", "1,x", "--x", "10", "--y", "10"]).status.code(), Some(1));
    assert_eq!(friable(&["verify", "99"]).status.code(), Some(1));
}

#[test]
fn counters_and_evaluators() {
    assert_eq!(stdout(&friable(&["rho-theta", "--u", "1.6", "--theta", "0.625"])), "0.400000000000");
    assert_eq!(stdout(&friable(&["mu", "--u", "0.5", "--v", "0.1"])), "0.800000000000");
    assert_eq!(stdout(&friable(&["psi-poly", "--poly", "1,0,1", "--x", "10", "--y", "10"])), "4");
    let o = friable(&["psi-pairs", "--x", "100", "--a", "-1", "--u", "2", "--v", "2"]);
    assert!(o.status.success());
    let o = friable(&["saddle", "--x", "1e6", "--y", "100"]);
    assert!(stdout(&o).starts_with("0.6038"));
}

#[test]
fn verify_bound_exit_codes() {
    let ok = friable(&["verify", "bound", "--x", "1000", "--y", "100"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).starts_with("PASS plain"));
    let eh = friable(&["verify", "bound", "--x", "10000", "--a", "1", "--u", "2", "--v", "2", "--regime", "eh", "--theta", "0.99"]);
    assert_eq!(eh.status.code(), Some(0));
    assert!(stdout(&eh).contains("coefficient 0.3066"));
    let outside = friable(&["verify", "bound", "--x", "1000", "--y", "1000", "--poly", "1,0,1"]);
    assert_eq!(outside.status.code(), Some(1));
    let missing = friable(&["verify", "bound", "--x", "1000"]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn verify_single_criterion() {
    let o = friable(&["verify", "1", "--desk"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS [ 1]"));
}

#[test]
fn f_curves_table_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = friable(&["table", "f-curves", "--out", p.to_str().unwrap()]);
        assert!(o.status.success());
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("u,f_harper,f_pascadi,dickman_rho"));
    assert!(text.contains("\n1.60,0.200000000000,0.400000000000,"));
    assert!(text.contains("\n2.50,,"));
    assert!(!text.contains('\r'));
}
