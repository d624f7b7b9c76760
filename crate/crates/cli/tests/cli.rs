use std::path::Path;
use std::process::{Command, Output};

fn trijac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trijac"))
        .args(args)
        .env_remove("TRIJAC_CATALOGUE")
        .output()
        .expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn poly_examples() {
    let o = trijac(&["poly", "0", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1");
    let o = trijac(&["poly", "1", "1"]);
    assert_eq!(stdout(&o).trim(), "(b+1) - (b+1)*x - (b+c+2)*y");
    assert_eq!(trijac(&["poly", "1", "2"]).status.code(), Some(2));
    assert_eq!(trijac(&["poly", "-1", "0"]).status.code(), Some(2));
}

#[test]
fn gram_examples() {
    let o = trijac(&["gram", "0"]);
    assert_eq!(stdout(&o).trim(), r#"[["1"]]"#);
    let o = trijac(&["gram", "1"]);
    let m: Vec<Vec<String>> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(m.len(), 3);
    for (i, row) in m.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            assert_eq!(i == j, e != "0", "({i},{j}) = {e}");
        }
    }
    assert_eq!(m[0][0], "1");
    assert_eq!(trijac(&["gram", "-1"]).status.code(), Some(2));
}

fn report(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn sampled_run_passes_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("one.json");
    let two = dir.path().join("two.json");
    let base = ["verify", "--rep", "both", "--mode", "sampled", "--seed", "42"];
    let mut a = base.to_vec();
    a.extend(["--threads", "1", "--out", one.to_str().unwrap()]);
    let mut b = base.to_vec();
    b.extend(["--threads", "3", "--out", two.to_str().unwrap()]);
    assert_eq!(trijac(&a).status.code(), Some(0));
    assert_eq!(trijac(&b).status.code(), Some(0));
    assert_eq!(std::fs::read(&one).unwrap(), std::fs::read(&two).unwrap());

    let doc = report(&one);
    assert_eq!(doc["summary"]["failed"], 0);
    assert_eq!(doc["catalogue"], "bundled");
    assert_eq!(doc["catalogue_sha256"].as_str().unwrap().len(), 64);
    assert!(doc["version"].as_str().unwrap().starts_with(env!("CARGO_PKG_VERSION")));
    let first = &doc["reports"][0];
    for key in ["relation", "representation", "mode", "status", "witness", "elapsed_ms"] {
        assert!(first.get(key).is_some(), "{key}");
    }
    assert_eq!(first["mode"], "sampled-exact");
}

#[test]
fn one_variable_suite() {
    let o = trijac(&["verify", "--suite", "appendixA", "--nmax", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        trijac(&["verify", "--catalogue", "missing.txt"]).status.code(),
        Some(2)
    );
    assert_eq!(trijac(&["verify", "--mode", "fast"]).status.code(), Some(2));
    assert_eq!(trijac(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(trijac(&["verify", "--nmax", "-3"]).status.code(), Some(2));
    assert_eq!(trijac(&["verify", "--mode", "sampled", "--samples", "0"]).status.code(), Some(2));
}

#[test]
fn failing_relation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("bad.cat");
    std::fs::write(&cat, "XXL-bad [variable degree] : [N1,X1] = (-2)*X1*X1 + (3)*X1\n").unwrap();
    let out = dir.path().join("r.json");
    let o = trijac(&[
        "verify",
        "--suite",
        "relations",
        "--catalogue",
        cat.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let doc = report(&out);
    assert_eq!(doc["summary"]["failed"], 2);
    assert!(doc["reports"][0]["witness"].is_string());
}

#[test]
fn config_file_and_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("one.cat");
    std::fs::write(&cat, "Nx [variable degree] : [L,X1] = N1\n").unwrap();
    let cfg = dir.path().join("run.cfg");
    let out = dir.path().join("r.json");
    std::fs::write(
        &cfg,
        format!("suite = relations\nrep = variable\nout = {}\n", out.display()),
    )
    .unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_trijac"))
        .args(["verify", "--config", cfg.to_str().unwrap(), "--rep", "degree"])
        .env("TRIJAC_CATALOGUE", &cat)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let doc = report(&out);
    assert_eq!(doc["summary"]["total"], 1);
    assert_eq!(doc["reports"][0]["representation"], "degree");
    assert_eq!(doc["catalogue"], cat.display().to_string());
}

#[test]
fn malformed_catalogue_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("bad.cat");
    std::fs::write(&cat, "Nx [variable] : [L,[L,X1] = N1\n").unwrap();
    let o = trijac(&["verify", "--catalogue", cat.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("syntax error"));
}
