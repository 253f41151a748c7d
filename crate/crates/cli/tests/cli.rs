use std::path::Path;
use std::process::{Command, Output};

fn qpd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpd")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn sweep_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let files: Vec<_> = (0..2)
        .map(|k| {
            let path = dir.path().join(format!("s{k}.csv"));
            let o = qpd(&["sweep", "--game", "pd2", "--space", "2p-diag", "--count", "5", "--seed", "3", "--out", path.to_str().unwrap()]);
            assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
            std::fs::read(&path).unwrap()
        })
        .collect();
    assert_eq!(files[0], files[1]);
    let text = String::from_utf8(files[0].clone()).unwrap();
    assert!(text.starts_with("gamma,entropy,regime,equilibrium,payoff_1,payoff_2,a,b\n"));
    assert!(text.contains("0.000000000000,0.000000000000,classical,DxD,1,1,,\n"));
}

#[test]
fn eval_prints_payoffs() {
    let o = qpd(&["eval", "--gamma", "1.5707963267948966", "--profile", "Q,Q"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("payoffs  3 3"), "{}", stdout(&o));
    let o = qpd(&["eval", "--game", "pd3", "--space", "2p-offdiag", "--gamma", "0.5", "--profile", "iSy,iSy,iSy"]);
    let want = 1.0 + 2.0 * 0.5f64.sin().powi(2);
    let line = stdout(&o).lines().find(|l| l.starts_with("payoffs")).unwrap().to_string();
    let first: f64 = line.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!((first - want).abs() < 1e-10);
}

#[test]
fn verify_and_search() {
    let o = qpd(&["verify-ne", "--gamma", "0.6", "--profile", "D,Q"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("equilibrium  yes"));
    let o = qpd(&["search-ne", "--game", "pd3", "--space", "su2", "--gamma", "1.5707963267948966"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for k in 1..=6 {
        assert!(out.contains(&format!("K{k}xK{k}xK{k}")), "{out}");
    }
    let o = qpd(&["search-ne", "--space", "su2", "--gamma", "0.7"]);
    assert!(stdout(&o).starts_with("no symmetric equilibrium found (64 starts, seed 0)"));
}

#[test]
fn thresholds_and_entropy() {
    let o = qpd(&["thresholds", "--profile", "D,D"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let star: f64 = out.split("gamma* = ").nth(1).unwrap()[..11].parse().unwrap();
    assert!((star - 0.2f64.sqrt().asin()).abs() < 1e-5, "{out}");
    let o = qpd(&["entropy", "--gamma", "1.5707963267948966"]);
    assert_eq!(stdout(&o).trim(), "0.69314718056");
}

#[test]
fn exit_codes() {
    assert_eq!(qpd(&[]).status.code(), Some(1));
    assert_eq!(qpd(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(qpd(&["eval", "--space", "hilbert", "--profile", "C,C"]).status.code(), Some(1));
    assert_eq!(qpd(&["entropy"]).status.code(), Some(1));
    assert_eq!(qpd(&["eval", "--profile", "C"]).status.code(), Some(1));
    assert_eq!(qpd(&["--help"]).status.code(), Some(0));
    assert_eq!(qpd(&["eval", "--gamma", "2", "--profile", "C,C"]).status.code(), Some(2));
    assert_eq!(qpd(&["eval", "--profile", "C,K9"]).status.code(), Some(2));
    assert_eq!(qpd(&["sweep", "--count", "1"]).status.code(), Some(2));
    assert_eq!(qpd(&["eval", "--game", "/nonexistent.json", "--profile", "C,C"]).status.code(), Some(2));
}

#[test]
fn game_file_errors_name_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    std::fs::write(&path, r#"{"players":2,"gamma":0.3,"payoffs":{"CC":[3,3],"CD":[0,5],"DC":[5,0]}}"#).unwrap();
    let o = qpd(&["eval", "--game", path.to_str().unwrap(), "--profile", "C,C"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`DD`"), "{}", stderr(&o));
}

#[test]
fn failed_sweep_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("none.csv");
    let o = qpd(&["sweep", "--from", "1.0", "--to", "0.5", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!Path::new(&path).exists());
}
