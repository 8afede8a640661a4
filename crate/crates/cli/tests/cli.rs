use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_assoc2"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn dims(v: &Value) -> Vec<u64> {
    v["dims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d.as_u64().unwrap())
        .collect()
}

#[test]
fn cohomology_of_standard_codifferentials() {
    let v = json(&[
        "cohomology",
        "--algebra",
        "d6",
        "--max-degree",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(dims(&v), [2, 2, 2, 2, 2]);
    assert_eq!(v["schema"], "assoc2/cohomology/v1");
    let v = json(&[
        "cohomology",
        "--algebra",
        "d1",
        "--max-degree",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(dims(&v), [2, 0, 0, 0, 0]);
    let v = json(&[
        "cohomology",
        "--d",
        "psi[22->2]",
        "--max-degree",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(dims(&v), [2, 1, 1]);
    assert_eq!(v["degrees"]["1"]["representatives"][0], "phi[1->1]");
}

#[test]
fn cohomology_text_lists_dimensions() {
    let o = run(&["cohomology", "--algebra", "d3", "--max-degree", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("dims: 0,0,0"));
}

#[test]
fn cohomology_errors() {
    assert_eq!(
        run(&["cohomology", "--d", "psi[11->"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["cohomology", "--d", "psi[1->1]"]).status.code(),
        Some(2)
    );
    let o = run(&["cohomology", "--d", "psi[11->1] + psi[22->1]"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a codifferential"));
}

#[test]
fn classify_tables() {
    let v = json(&["classify", "0,0,1,0,0,0,0,1", "--format", "json"]);
    assert_eq!(v["class"], "d3");
    assert_eq!(v["invariants"]["has_right_identity"], true);
    assert_eq!(
        json(&["classify", "[0,0,0,0,0,0,0,0]", "--format", "json"])["class"],
        "zero"
    );
    assert_eq!(
        json(&["classify", "1,0,0,0,0,0,0,1", "--format", "json"])["class"],
        "d1"
    );
    let v = json(&["classify", "[0,-1,1,0,1,0,0,1]", "--format", "json"]);
    assert_eq!(v["class"], "quadratic_field_extension");
    assert_eq!(v["closure_class"], "d1");
}

#[test]
fn classify_reports_the_failing_triple() {
    let o = run(&["classify", "1,1,0,0,0,0,0,1"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("(x*x)*theta != x*(x*theta)"));
    assert_eq!(run(&["classify", "1,2,3"]).status.code(), Some(2));
}

#[test]
fn deform_one_parameter_families() {
    for (name, base) in [("d2", "d2"), ("d5", "d5")] {
        let v = json(&["deform", "--builtin", name, "--format", "json"]);
        assert_eq!(v["obstruction"]["is_zero"], true);
        for o in v["graph"]["observations"].as_array().unwrap() {
            let expected = if o["point"]["t"] == 0 { base } else { "d1" };
            assert_eq!(o["closure_class"], expected, "{name} at {}", o["point"]);
        }
    }
}

#[test]
fn deform_printed_d6_family_is_rejected() {
    let o = run(&["deform", "--builtin", "d6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(5));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["obstruction"]["is_zero"], false);
}

#[test]
fn deform_completed_d6_family_jumps_to_d2_and_d5() {
    let v = json(&["deform", "--builtin", "d6-versal", "--format", "json"]);
    let edges: Vec<(String, String)> = v["graph"]["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            (
                e["source"].as_str().unwrap().into(),
                e["target"].as_str().unwrap().into(),
            )
        })
        .collect();
    for target in ["d2", "d5"] {
        assert!(edges.contains(&("d6".into(), target.into())), "{edges:?}");
    }
}

#[test]
fn deform_grid_options() {
    let o = run(&["deform", "--builtin", "d2", "--values", "-1,0,1/2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("(t=-1) -> d1") && text.contains("(t=1/2) -> d1"));
    let v = json(&[
        "deform",
        "--builtin",
        "d6-versal",
        "--point",
        "t1=2, t2=-1",
        "--format",
        "json",
    ]);
    assert_eq!(v["graph"]["observations"][0]["class"], "d5");
}

#[test]
fn deform_family_file() {
    let path = std::env::temp_dir().join(format!("assoc2-family-{}.json", std::process::id()));
    std::fs::write(
        &path,
        r#"{"base": "psi[22->2]", "directions": [{"parameter": "s", "direction": "psi[11->1]"}], "grid": {"s": [0, "2/3"]}}"#,
    )
    .unwrap();
    let v = json(&[
        "deform",
        "--family",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    std::fs::remove_file(&path).unwrap();
    let obs = v["graph"]["observations"].as_array().unwrap();
    assert_eq!(obs.len(), 2);
    assert_eq!(obs[1]["point"]["s"], "2/3");
    assert_eq!(obs[1]["class"], "d1");
    assert_eq!(
        run(&["deform", "--family", "/nonexistent.json"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn enumerate_is_deterministic() {
    let a = run(&["enumerate", "--p", "2"]);
    let b = run(&["enumerate", "--p", "2"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["associative_tables"], 28);
    assert_eq!(v["orbit_count"], 8);
    assert_eq!(run(&["enumerate", "--p", "7"]).status.code(), Some(2));
}

#[test]
fn verify_reports_each_criterion() {
    let o = run(&["verify", "--max-degree", "3", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let items = v["items"].as_array().unwrap();
    assert_eq!(items.len(), 11);
    let failing: Vec<u64> = items
        .iter()
        .filter(|i| i["passed"] == false)
        .map(|i| i["id"].as_u64().unwrap())
        .collect();
    // Only the printed d6 family fails, so the command exits 1.
    assert_eq!(failing, [7]);
    assert_eq!(o.status.code(), Some(1));
}
