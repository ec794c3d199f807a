use std::path::Path;
use std::process::{Command, Output};

fn aecc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aecc")).args(args).output().expect("spawn aecc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn construct(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let p = path.to_str().unwrap().to_string();
    let mut all = vec!["construct"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["-o", &p]);
    let o = aecc(&all);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    p
}

#[test]
fn construct_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let a = construct(dir.path(), "a.txt", &["td", "--n", "25", "--rho", "5", "--D", "2"]);
    let stdout_copy = aecc(&["construct", "td", "--n", "25", "--rho", "5", "--D", "2"]);
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(stdout(&stdout_copy), text);
    assert!(text.starts_with("disjunct 15 25 2\n"));
    assert!(stderr(&stdout_copy).contains("# construct td n=25 rho=5 D=2"));

    let s1 = construct(dir.path(), "s1.txt", &["spherical", "--r", "16", "--d", "5", "--kappa", "6", "--seed", "1", "--n", "32"]);
    let s2 = construct(dir.path(), "s2.txt", &["spherical", "--r", "16", "--d", "5", "--kappa", "6", "--seed", "1", "--n", "32"]);
    assert_eq!(std::fs::read(&s1).unwrap(), std::fs::read(&s2).unwrap());
}

#[test]
fn verify_passes_then_fails_after_mutation() {
    let dir = tempfile::tempdir().unwrap();
    let p = construct(dir.path(), "td.txt", &["td", "--n", "25", "--rho", "5", "--D", "2"]);
    let ok = aecc(&["verify", &p, "--check", "disjunct,rows,bounds"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("disjunct D=2: PASS (exhaustive)"));
    assert!(stdout(&ok).starts_with("# verify "));

    // clear the first 1 of column 0
    let text = std::fs::read_to_string(&p).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let row = lines.iter().position(|l| l.starts_with('1')).unwrap();
    lines[row].replace_range(0..1, "0");
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, lines.join("\n") + "\n").unwrap();
    let o = aecc(&["verify", bad.to_str().unwrap(), "--check", "disjunct"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL (exhaustive) witness j=0 J={"), "{}", stdout(&o));
}

#[test]
fn infeasible_parameters_name_the_clause() {
    let o = aecc(&["construct", "td", "--n", "25", "--rho", "5", "--D", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("D+1 <= rho"), "{}", stderr(&o));
    let o = aecc(&["construct", "ks", "--q", "3", "--ell", "1", "--D", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = aecc(&["construct", "td", "--n", "25"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sampled_mode_is_labelled() {
    let dir = tempfile::tempdir().unwrap();
    let p = construct(dir.path(), "ks.txt", &["ks", "--q", "7", "--ell", "2", "--D", "3"]);
    let over = aecc(&["verify", &p, "--check", "disjunct"]);
    assert_eq!(over.status.code(), Some(2));
    assert!(stderr(&over).contains("--sampled"));
    let o = aecc(&["verify", &p, "--check", "disjunct", "--sampled", "2000", "--seed", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("sampled, not proven: 2000 samples, seed 4"));
}

#[test]
fn simulate_writes_a_reproducible_csv() {
    let dir = tempfile::tempdir().unwrap();
    let p = construct(dir.path(), "td.txt", &["td", "--n", "25", "--rho", "5", "--D", "2"]);
    let run = |threads: &str| {
        let o = aecc(&[
            "--threads", threads, "simulate", &p, "--decoder", "efficient", "--tau", "1", "--sigma", "1",
            "--trials", "2000", "--seed", "7", "--adversarial",
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        stdout(&o)
    };
    let one = run("1");
    assert_eq!(one, run("3"));
    let seq = aecc(&[
        "--sequential", "simulate", &p, "--decoder", "efficient", "--tau", "1", "--sigma", "1", "--trials", "2000",
        "--seed", "7", "--adversarial",
    ]);
    assert_eq!(stdout(&seq), one);
    assert!(one.contains("construction,n,r,lambda,tau,sigma,rho,trials,d1_viol,d2_viol,max_ops,seconds\n"));
    assert!(one.contains("seed=7"));
    let row = one.lines().last().unwrap();
    assert!(row.contains(",2000,0,0,"), "{row}");
}

#[test]
fn simulate_reports_contract_failures() {
    let dir = tempfile::tempdir().unwrap();
    let p = construct(dir.path(), "td.txt", &["td", "--n", "25", "--rho", "5", "--D", "2"]);
    let o = aecc(&[
        "simulate", &p, "--decoder", "efficient", "--tau", "1", "--sigma", "1", "--rho", "2.5", "--trials", "500",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("first at trial"));

    let s = construct(dir.path(), "s.txt", &["spherical", "--r", "8", "--d", "3", "--kappa", "4"]);
    let o = aecc(&["simulate", &s, "--decoder", "generic", "--tau", "1", "--sigma", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn baseline_and_spherical_checks() {
    let dir = tempfile::tempdir().unwrap();
    let b = construct(dir.path(), "b.txt", &["baseline2", "--n", "12", "--r", "4"]);
    let o = aecc(&["verify", &b, "--check", "rows"]);
    assert_eq!(o.status.code(), Some(0));
    let o = aecc(&[
        "simulate", &b, "--decoder", "generic", "--tau", "1", "--sigma", "0", "--rho", "6", "--trials", "500",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = aecc(&["verify", &b, "--check", "disjunct"]);
    assert_eq!(o.status.code(), Some(2));

    let s = construct(dir.path(), "s.txt", &["spherical", "--r", "16", "--d", "5", "--kappa", "6", "--seed", "1", "--n", "32"]);
    let o = aecc(&["verify", &s, "--check", "coherence,rows", "--max-coherence", "0.375"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = aecc(&["verify", &s, "--check", "coherence", "--max-coherence", "0.3"]);
    assert_eq!(o.status.code(), Some(1));
    let o = aecc(&["verify", &s, "--check", "rip", "--lambda", "2", "--trials", "3000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("check,n,r,lambda,trials,seed,violations,extreme_ratio"));
}

#[test]
fn bounds_and_report() {
    let o = aecc(&["bounds", "gamma", "--n", "32", "--r", "16", "--theta", "0.25", "--lambda", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("coherence_rip=22.627"));
    let o = aecc(&["bounds", "cor8", "--n", "512", "--lambda", "2"]);
    assert!(stdout(&o).contains("r=56 d=14"));
    let o = aecc(&["bounds", "disjunct", "--n", "25", "--rho", "5", "--D", "2"]);
    assert!(stdout(&o).contains("basic=15"));
    let o = aecc(&["report-table1", "--td", "25,5,3", "--ks", "4,1,4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("construction,n,r,lambda,ratio,note\n"));
    assert!(out.contains("td-prime-power,25,15,3,10.000000,"));
    let o = aecc(&["report-table1", "--td", "25,5"]);
    assert_eq!(o.status.code(), Some(2));
}
