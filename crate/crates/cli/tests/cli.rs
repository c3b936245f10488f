use std::process::{Command, Output};

use serde_json::Value;

fn problem(name: &str) -> String {
    format!("{}/../../problems/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn dfsets(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dfsets")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let o = dfsets(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn member_on_link_is_excluded_with_witness() {
    let f = problem("link_4_2_1.json");
    let o = dfsets(&["member", &f, "--nu", "1,1;1,0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("NOT in Ω"), "{text}");
    assert!(text.contains("Υ witness"), "{text}");

    let v = json(&["member", &f, "--nu", "1,1"]);
    assert_eq!(v["classes"], 1);
    assert_eq!(v["in_omega"], 0);
    assert_eq!(v["results"][0]["upsilon_witness"]["coset"]["eta"], serde_json::json!(["1/2", "0"]));
}

#[test]
fn gamma_count_on_fibred_surface_pair() {
    let v = json(&["gamma", "count", &problem("fibred_surface.json"), "--verify"]);
    assert_eq!(v["count"], 31);
}

#[test]
fn xi_prints_two_subgroups() {
    let f = problem("two_lines.json");
    let v = json(&["xi", &f, "--d", "2"]);
    let gens: Vec<&Value> = v["subgroups"].as_array().unwrap().iter().map(|s| &s["generators"]).collect();
    assert_eq!(gens, vec![&serde_json::json!([[0, 1]]), &serde_json::json!([[2, 0]])]);
    let text = stdout(&dfsets(&["xi", &f, "--d", "2"]));
    assert!(text.contains("⟨(0,1)⟩") && text.contains("⟨(2,0)⟩"), "{text}");
}

#[test]
fn json_round_trips_byte_identically() {
    for name in ["two_lines.json", "link_4_2_1.json", "strata.json", "toric_path.json", "trefoil.json", "brieskorn_2_4_8.json"] {
        let o = dfsets(&["run", &problem(name), "--json", "--verify"]);
        assert!(o.status.success(), "{name}");
        let out = stdout(&o);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(format!("{}\n", serde_json::to_string_pretty(&v).unwrap()), out, "{name}");
    }
}

#[test]
fn run_keeps_file_order() {
    let v = json(&["run", &problem("link_4_2_1.json")]);
    let kinds: Vec<&str> = v["results"].as_array().unwrap().iter().map(|r| r["query"].as_str().unwrap()).collect();
    assert_eq!(kinds, ["gamma-count", "fiber", "member", "describe", "diagnose"]);
}

#[test]
fn exit_codes() {
    let f = problem("toric_path.json");
    assert_eq!(dfsets(&["toric", &f]).status.code(), Some(0));
    assert_eq!(dfsets(&["toric", "/nonexistent.json"]).status.code(), Some(1));
    assert_eq!(dfsets(&["member", &f, "--nu", "1,x"]).status.code(), Some(1));
    assert_eq!(dfsets(&["member", &f, "--nu", "1,0"]).status.code(), Some(1));
    assert_eq!(dfsets(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(dfsets(&["--help"]).status.code(), Some(0));
    assert_eq!(dfsets(&["toric", &f, "--max-vertices", "2"]).status.code(), Some(2));

    let o = dfsets(&["sigma-probe", &problem("fibred_surface.json"), "--nu-bar", "1,1,0,0,0,0", "--max-enumeration", "3", "--json"]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["error"]["kind"], "bound");
}

#[test]
fn fox_on_trefoil() {
    let v = json(&["fox", &problem("trefoil.json"), "--verify"]);
    assert_eq!(v["minors_gcd"], "t1^2 - t1 + 1");
    assert_eq!(v["undecided_at_trivial_character"], true);
}

#[test]
fn brieskorn_invariants_reported() {
    let text = stdout(&dfsets(&["brieskorn", &problem("brieskorn_2_4_8.json")]));
    assert!(text.contains("Σ(2, 4, 8): genus 1, e = -1, |Tors H| = 4, α = 2"), "{text}");
}
