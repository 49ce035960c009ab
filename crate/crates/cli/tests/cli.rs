use std::io::Write as _;
use std::process::{Command, Output, Stdio};

fn qlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlab")).args(args).env("QLAB_SEED", "7").output().unwrap()
}

fn qlab_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qlab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn catalog_pipes_into_check() {
    let q2 = qlab(&["catalog", "q2"]);
    assert!(q2.status.success());
    let o = qlab_stdin(&["check", "-"], &q2.stdout);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("hermitian spectrum: {bot, c}"), "{text}");
    assert!(text.contains("strong spectrum: {bot, al, ar, c}"), "{text}");
    assert!(text.ends_with("result: pass\n"));
}

#[test]
fn broken_associativity_is_an_error_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.qnt");
    std::fs::write(
        &path,
        "quantale bad\nelements: bot a b top\norder: bot<a bot<b a<top b<top\nmult: a: a bot a\nmult: b: top b top\nmult: top: top top top\n",
    )
    .unwrap();
    let o = qlab(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 4") && err.contains("associative at ("), "{err}");
}

#[test]
fn failed_property_exits_one() {
    let o = qlab(&["quantic-frame", "c3l"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not involutive"));
}

#[test]
fn six_strictly_quantized_classes() {
    let dir = tempfile::tempdir().unwrap();
    let o = qlab(&["enumerate-sq2", "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("6 isomorphism classes"));
    let written = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(written, 6);
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        let p = entry.unwrap().path();
        assert_eq!(qlab(&["check", p.to_str().unwrap()]).status.code(), Some(0), "{}", p.display());
    }
}

#[test]
fn left_prime_space_of_q2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q2.top");
    let o = qlab(&["topologize", "q2", "--space", "σL", "--report", "base,separation,sober", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("opens: 15"), "{text}");
    assert!(text.contains("base: 9 opens"), "{text}");
    assert!(text.contains("join-irreducible opens: 7"), "{text}");
    assert!(text.contains("T0: yes") && text.contains("Frechet: no") && text.contains("sober: yes"), "{text}");
    let golden = std::fs::read_to_string(out).unwrap();
    let mut lines = golden.lines();
    assert_eq!(lines.next(), Some("topology q2-σL"));
    assert_eq!(lines.next(), Some("ambient sq2-1"));
    assert_eq!(lines.next(), Some("points: bot al"));
    assert_eq!(lines.count(), 15);
}

#[test]
fn coequalizer_writes_a_readable_quotient() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("quot.qnt");
    let o = qlab(&["coequalizer", "q2", "--pair", "b=bot", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("least: yes"));
    assert_eq!(qlab(&["check", out.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn runs_are_deterministic() {
    let args = ["topologize", "diamond-q", "--space", "h", "--report", "separation,convergence,interior"];
    let a = qlab(&args);
    let b = qlab(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("(seed 7)"));
}

#[test]
fn json_output() {
    let o = qlab(&["--format", "json", "spectrum", "q2", "--strong"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["result"]["primes"], serde_json::json!(["bot", "al", "ar", "c"]));
    let e = qlab(&["--format", "json", "check", "missing-quantale"]);
    assert_eq!(e.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&e.stdout).unwrap();
    assert!(v["error"].as_str().unwrap().contains("missing-quantale"));
}

#[test]
fn element_cap_is_enforced() {
    let o = qlab(&["--max-elements", "8", "check", "diamond-q"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("max-elements"));
}
