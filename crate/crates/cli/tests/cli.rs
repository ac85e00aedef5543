use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn knotcert(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotcert"))
        .arg("--cache-file")
        .arg(cache)
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn strip_times(v: &mut Value) {
    for e in v["entries"].as_array_mut().unwrap() {
        e.as_object_mut().unwrap().remove("wall_ms");
    }
}

#[test]
fn topterm_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = knotcert(&dir.path().join("c"), &["--json", "verify", "topterm", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["entries"][0]["values"]["computed"]["exponent"], 18);
}

#[test]
fn invariants_of_trefoil() {
    let dir = tempfile::tempdir().unwrap();
    let out = knotcert(&dir.path().join("c"), &["--json", "invariants", "--braid", "1 1 1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["homfly"], "2*v^2 - v^4 + v^2*z^2");
    assert_eq!(v["determinant"], "3");
    let out = knotcert(&dir.path().join("c"), &["--json", "invariants", "--braid", "-1 2 -1 2"]);
    assert_eq!(json_of(&out)["determinant"], "5");
}

#[test]
fn lspace_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = knotcert(&dir.path().join("c"), &["--json", "verify", "lspace", "--k-max", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let entries = v["entries"].as_array().unwrap();
    let rows: Vec<_> = entries.iter().filter(|e| e["claim"].as_str().unwrap().contains("/k=")).collect();
    assert_eq!(rows.len(), 100);
    assert!(entries.iter().all(|e| e["status"] == "pass"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c");
    assert_eq!(knotcert(&c, &["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(knotcert(&c, &["invariants", "--braid", "1 q"]).status.code(), Some(2));
    assert_eq!(knotcert(&c, &["verify", "traintrack", "--n", "2"]).status.code(), Some(2));
    // a graph map with a back track in g(e_1) fails its claim
    let map = dir.path().join("bad.json");
    std::fs::write(
        &map,
        r#"{"vertices":[1,2],"edges":[{"id":1,"tail":1,"head":2},{"id":2,"tail":1,"head":2},{"id":3,"tail":1,"head":2}],
            "edge_image":{"1":[2,-2,1],"2":[2,-1,2],"3":[3]}}"#,
    )
    .unwrap();
    let out = knotcert(&c, &["--json", "verify", "traintrack", "--map", map.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["entries"][0]["values"]["backtrack"]["m"], 1);
    // skipped claims do not fail
    assert_eq!(knotcert(&c, &["verify", "genus", "--n", "3"]).status.code(), Some(0));
}

#[test]
fn builtin_graph_map_round_trips_through_the_certifier() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c");
    let out = knotcert(&c, &["graph-map", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let map = dir.path().join("k4.json");
    std::fs::write(&map, &out.stdout).unwrap();
    let out = knotcert(&c, &["--json", "verify", "traintrack", "--map", map.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["entries"][0]["values"]["real_edges"], 10);
}

#[test]
fn json_round_trips_and_warm_cache_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("cache.jsonl");
    let args = ["--json", "verify", "genus", "--n", "2"];
    let cold = knotcert(&c, &args);
    let text = String::from_utf8(cold.stdout.clone()).unwrap();
    let parsed: Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(serde_json::to_string(&parsed).unwrap(), text.trim());
    assert!(std::fs::metadata(&c).unwrap().len() > 0);
    let warm = knotcert(&c, &args);
    let (mut a, mut b) = (json_of(&cold), json_of(&warm));
    strip_times(&mut a);
    strip_times(&mut b);
    assert_eq!(a, b);
}

#[test]
fn thread_count_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let run = |t: &str, cache: &str| {
        let mut v = json_of(&knotcert(&dir.path().join(cache), &["--json", "--threads", t, "verify", "dehornoy"]));
        strip_times(&mut v);
        v["config"]["threads"] = Value::Null;
        v
    };
    assert_eq!(run("1", "a"), run("4", "b"));
}

#[test]
fn cache_commands() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("x.jsonl");
    let out = knotcert(&c, &["cache", "path"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), c.display().to_string());
    knotcert(&c, &["invariants", "--braid", "1 1 1 2 -1 2"]);
    let stats = json_of(&knotcert(&c, &["--json", "cache", "stats"]));
    assert_eq!(stats["records"], 1);
    let line = std::fs::read_to_string(&c).unwrap();
    let rec: Value = serde_json::from_str(line.lines().next().unwrap()).unwrap();
    assert_eq!(rec["algorithm"], "hecke-trace");
    assert_eq!(rec["strands"], 3);
    let cleared = json_of(&knotcert(&c, &["--json", "cache", "clear"]));
    assert_eq!(cleared["removed"], true);
    assert!(!c.exists());
}

#[test]
fn family_words() {
    let dir = tempfile::tempdir().unwrap();
    let out = knotcert(&dir.path().join("c"), &["family", "cable", "--n", "2"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "strands=4 2 1 3 2 2 1 3 2 2 1 3 2 1");
    let out = knotcert(&dir.path().join("c"), &["--json", "family", "kn", "--n", "1", "--emit", "invariants"]);
    let v = json_of(&out);
    assert_eq!(v["p0"], "3*v^4 - 2*v^6");
    assert_eq!(v["determinant"], "5");
}
