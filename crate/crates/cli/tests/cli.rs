use std::process::{Command, Output};

fn jmtrace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jmtrace")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = jmtrace(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn element_expressions() {
    let out = stdout(&["element", "--type", "A", "--rank", "3", "T[1] * T[1]", "tau(T[])", "pair(T[1], inv(T[1]))"]);
    assert_eq!(out, "1 + (v - v^-1)*T[1]\n1\n1\n");
    let out = stdout(&["element", "--type", "B", "--rank", "2", "--", "-T[0]*T[0]"]);
    assert_eq!(out, "-1 + (-v + v^-1)*T[0]\n");
    let bad = jmtrace(&["element", "T[1] +"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("position"));
}

#[test]
fn invariant_values() {
    let out = stdout(&["invariant", "--strands", "2", "--normalization", "reduced", "1 1 1"]);
    assert_eq!(out.trim(), "-v^2*a - a^2 - v^-2*a");
    assert_eq!(stdout(&["invariant", "--strands", "1", "--normalization", "reduced", ""]).trim(), "1");
    assert_eq!(stdout(&["invariant", "--type", "B", "--strands", "1", "--normalization", "closed", "0"]).trim(), "y");
    let both = stdout(&["invariant", "--strands", "1", "e"]);
    assert_eq!(both, "closed: a + 1\nreduced: 1\n");
}

#[test]
fn invariant_batch_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("words.txt");
    std::fs::write(&path, "strands=3 type=A\n1 1 1 2\n# unknot\n-1 2\n").unwrap();
    let out = stdout(&["invariant", "--file", path.to_str().unwrap(), "--normalization", "reduced"]);
    assert_eq!(out, "1 1 1 2\t-v^2*a - a^2 - v^-2*a\n-1 2\t1\n");
    let recs = stdout(&["invariant", "--file", path.to_str().unwrap(), "--format", "records"]);
    let lines: Vec<serde_json::Value> = recs.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[1]["reduced"], "1");
    assert_eq!(lines[0]["strands"], 3);
}

#[test]
fn central_elements() {
    let out = stdout(&["central", "beta", "--type", "B", "--rank", "2"]);
    assert!(out.ends_with("central: true\n"), "{out}");
    assert_eq!(stdout(&["central", "S", "--type", "A", "--rank", "0"]), "1\ncentral: true\n");
    let zeta = stdout(&["central", "zeta", "--type", "B", "--rank", "1"]);
    assert!(zeta.starts_with("(1 + a^-1) + "), "{zeta}");
    assert_eq!(jmtrace(&["central", "beta", "--type", "A", "--rank", "2"]).status.code(), Some(2));
}

#[test]
fn cache_is_sound() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["central", "beta", "--type", "B", "--rank", "3", "--unequal", "--format", "records"];
    let plain = stdout(&args);
    let cold = stdout(&[&args[..], &["--cache-dir", d]].concat());
    assert!(dir.path().join("beta-B3-unequal.json").exists());
    let warm = stdout(&[&args[..], &["--cache-dir", d]].concat());
    assert_eq!(plain, cold);
    assert_eq!(cold, warm);
}

#[test]
fn verify_suites() {
    for args in [
        &["verify", "geometric-D", "--rank", "3"][..],
        &["verify", "markov-zeta", "--type", "D", "--rank", "4"],
        &["verify", "pairing", "--type", "B", "--rank", "3", "--trials", "5"],
        &["verify", "markov-beta", "--rank", "5", "--mode", "zip", "--trials", "2"],
    ] {
        let out = stdout(args);
        assert!(out.contains("all checks passed"), "{args:?}: {out}");
        assert!(!out.contains("FAIL"));
    }
}

#[test]
fn verify_records_are_deterministic() {
    let args = ["verify", "links", "--mode", "zip", "--trials", "12", "--seed", "7", "--format", "records"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    for line in a.lines() {
        let rec: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(rec["status"], "pass");
        assert_eq!(rec["mode"], "zip");
        assert!(rec["bound_log2"].as_f64().unwrap() < -30.0);
    }
}

#[test]
fn usage_errors_exit_nonzero() {
    assert_eq!(jmtrace(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(jmtrace(&["verify", "markov-zeta", "--type", "B", "--rank", "6"]).status.code(), Some(2));
    assert_eq!(jmtrace(&["verify", "property-B", "--mode", "zip"]).status.code(), Some(2));
    assert_eq!(jmtrace(&["invariant", "1 1"]).status.code(), Some(2));
    assert_eq!(jmtrace(&["invariant", "--strands", "2", "3"]).status.code(), Some(2));
    assert_ne!(jmtrace(&["verify", "pairing", "--trials", "0"]).status.code(), Some(0));
}
