use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superjordan")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let o = run(&a);
    (o.status.code().unwrap(), serde_json::from_slice(&o.stdout).expect("valid JSON"))
}

#[test]
fn verify_dt_passes() {
    let o = run(&["verify", "--algebra", "dt(-1/2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("super Jordan identity: PASS"));
}

#[test]
fn verify_dns_fails_with_witness() {
    let o = run(&["verify", "--algebra", "dns(2)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("super Jordan identity: FAIL  witness (x, e1, {x,x})"), "{}", stdout(&o));
    let (code, v) = json(&["verify", "--algebra", "dns(2)"]);
    assert_eq!(code, 1);
    let check = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "super Jordan identity").unwrap();
    assert_eq!(check["status"], "FAIL");
    assert_eq!(check["witness"]["arguments"], serde_json::json!(["x", "e1", "{x,x}"]));
}

#[test]
fn metric_on_dt2() {
    let (code, v) = json(&["metric", "--algebra", "dt(2)", "--xi", "2e1+3e2", "--eta", "xb", "--etap", "yb"]);
    assert_eq!(code, 0);
    assert_eq!(v["values"]["g_xi"], "4/5");
    let (code, v) = json(&["metric", "--algebra", "dt(2)", "--xi", "3e1+5e2", "--eta", "e1b", "--etap", "e1b"]);
    assert_eq!(code, 0);
    assert_eq!(v["values"]["g_xi"], "1/3");
}

#[test]
fn irregular_xi_is_a_failed_check() {
    let (code, v) = json(&["metric", "--algebra", "dt(2)", "--xi", "e1-e2", "--eta", "xb", "--etap", "yb"]);
    assert_eq!(code, 1);
    assert_eq!(v["checks"][0]["status"], "FAIL");
    assert!(v["values"].get("g_xi").is_none());
}

#[test]
fn json_is_deterministic_and_sorted() {
    let args = ["verify", "--algebra", "spin(1|2)", "--seed", "11", "--json"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 11);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.windows(2).all(|w| w[0] <= w[1]));
    assert!(names.iter().all(|n| !n.is_empty()));
}

#[test]
fn input_errors_exit_2() {
    for args in [
        vec!["verify", "--algebra", "nonsense(3)"],
        vec!["verify", "--algebra", "josp(1|3)"],
        vec!["verify"],
        vec!["verify", "--algebra", "k3", "--file", "x.json"],
        vec!["verify", "--file", "/nonexistent/spec.json"],
        vec!["spectral", "--algebra", "dt(2)", "--point", "2q"],
        vec!["metric", "--algebra", "dt(2)", "--xi", "e1"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn non_idempotent_is_a_failed_check() {
    let o = run(&["peirce", "--algebra", "dt(2)", "--idempotent", "2e1"]);
    assert_eq!(o.status.code(), Some(1));
    let (code, v) = json(&["peirce", "--algebra", "dt(2)", "--idempotent", "e1"]);
    assert_eq!(code, 0);
    assert_eq!(v["values"]["P1/2"], serde_json::json!(["x", "y"]));
}

#[test]
fn classify_k3() {
    let (code, v) = json(&["classify", "--algebra", "k3"]);
    assert_eq!(code, 0);
    assert_eq!(v["values"]["euclidean"], true);
    assert_eq!(v["values"]["positive"], false);
    assert_eq!(v["values"]["semisimple"], false);
    assert_eq!(v["values"]["unital"], false);
}

#[test]
fn orbit_and_spectral_agree() {
    let (code, v) = json(&["orbit", "--algebra", "dt(2)", "--point", "e1-e2"]);
    assert_eq!(code, 0);
    assert_eq!(v["values"]["regular"], false);
    assert_eq!(v["values"]["ranks"]["m_J"], 2);
    let (code, v) = json(&["spectral", "--algebra", "spin(1|2)", "--point", "2e1-3e2"]);
    assert_eq!(code, 0);
    assert_eq!(v["values"]["signature"]["negative"], 1);
}

#[test]
fn file_input_round_trips() {
    let dir = std::env::temp_dir().join(format!("superjordan-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k3.json");
    let spec = superjordan::io::AlgebraSpec::from_algebra(&superjordan::catalog::make_k3().algebra, None);
    std::fs::write(&path, spec.to_json()).unwrap();
    let o = run(&["verify", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(run(&["verify", "--file", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn catalog_and_reproduction() {
    let (code, v) = json(&["catalog"]);
    assert_eq!(code, 0);
    assert!(v["values"]["grammar"].as_array().unwrap().iter().any(|g| g == "dt(t)"));
    let (code, v) = json(&["reproduce-paper"]);
    assert_eq!(code, 0);
    assert_eq!(v["values"]["summary"]["fail"], Value::Null);
    assert!(v["values"]["summary"]["pass"].as_u64().unwrap() > 50);
}
