use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hhs-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn hhs(args: &[&str], env: Option<&str>) -> (i32, Value) {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hhs"));
    c.args(args).env_remove(hhs_cli::BUDGET_ENV);
    if let Some(e) = env {
        c.env(hhs_cli::BUDGET_ENV, e);
    }
    let out = c.output().unwrap();
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), report)
}

fn build(dir: &PathBuf, family: &str, extra: &[&str]) -> String {
    let path = dir.join(format!("{family}.json")).display().to_string();
    let mut args = vec!["zoo", "build", family, "--model", &path];
    args.extend_from_slice(extra);
    let (code, r) = hhs(&args, None);
    assert_eq!(code, 0, "{r}");
    path
}

#[test]
fn audit_of_a_fresh_zoo_model_passes() {
    let dir = scratch("audit");
    let tree = build(&dir, "tree_free_group", &["--n", "3"]);
    let (code, r) = hhs(&["audit", "--model", &tree], None);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "pass");
    assert_eq!(r["result"]["audited_e"], 1);
    assert_eq!(r["model"]["reference"], "zoo-reference: tree_free_group n=3 N=1");
}

#[test]
fn undersized_twist_names_the_failing_hypothesis() {
    let dir = scratch("certify");
    let m = build(&dir, "product_F2xDxD", &["--n", "4", "--N", "2", "--skip-audit"]);
    let (code, r) = hhs(&["certify", "--model", &m, "--word", "A B A"], None);
    assert_eq!(code, 1);
    assert_eq!(r["result"]["hypotheses"]["failures"], serde_json::json!(["scale"]));
    assert_eq!(r["notes"][0], "failing hypotheses: scale");
    assert_eq!(r["result"]["is_identity"], false);

    let (code, r) = hhs(&["certify", "--model", &m, "--word", "A B A", "--N", "200"], None);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["certificate"]["status"]["status"], "verified");
    assert_eq!(r["result"]["certificate"]["final_bound"], "200");

    let (code, r) = hhs(&["inject-verify", "--model", &m], None);
    assert_eq!(code, 1);
    assert_eq!(r["result"]["status"]["status"], "refused");
}

#[test]
fn axes_fail_with_a_realisation_witness() {
    let dir = scratch("axes");
    let g = build(&dir, "grid_Z2", &["--skip-audit"]);
    let (code, r) = hhs(&["hqc", "--model", &g, "--subset", "axes"], None);
    assert_eq!(code, 1);
    let family = r["result"]["realisation"]["witness_family"].as_array().unwrap();
    assert_eq!(family.len(), 10);
    for (i, w) in family.iter().enumerate() {
        let rad = i as i64 + 1;
        assert_eq!(w["radius"], rad);
        assert_eq!((w["defect"].as_i64(), w["distance"].as_i64()), (Some(0), Some(rad)));
        let xy: Vec<i64> = w["point"].as_str().unwrap().split(',').map(|t| t.parse().unwrap()).collect();
        assert_eq!((xy[0].abs(), xy[1].abs()), (rad, rad));
    }
    let (code, _) = hhs(&["fill-squares", "--model", &g, "--a", "x-axis", "--b", "y-axis"], None);
    assert_eq!(code, 1);
    let (code, r) = hhs(&["hqc", "--model", &g, "--subset", "orbit:s@10"], None);
    assert_eq!(code, 0);
    assert_eq!(r["subsets"][0]["members"], 21);
    let (code, r) = hhs(&["hqc", "--model", &g, "--subset", "vertices:0,0;0,1;1,1"], None);
    assert_eq!(code, 0);
    assert_eq!(r["subsets"][0]["members"], 3);
}

#[test]
fn budgets_come_from_the_environment_and_can_truncate() {
    let dir = scratch("budgets");
    let g = build(&dir, "grid_Z2", &["--n", "4", "--skip-audit"]);
    let args = ["hqc", "--model", &g, "--subset", "x-axis", "--paths", "--lambdas", "1"];
    let (code, r) = hhs(&args, Some("path_expansions=1,path_pairs=3"));
    assert_eq!(code, 2);
    assert_eq!(r["budgets"]["path_expansions"], 1);
    assert_eq!(r["budgets"]["path_pairs"], 3);
    let (_, r) = hhs(&[&args[..], &["--budget", "path_pairs=5"]].concat(), Some("path_pairs=3"));
    assert_eq!(r["budgets"]["path_pairs"], 5);
}

#[test]
fn malformed_input_exits_three() {
    let dir = scratch("malformed");
    let g = build(&dir, "grid_Z2", &["--n", "3", "--skip-audit"]);
    for args in [
        vec!["audit", "--model", "/nonexistent/model.json"],
        vec!["hqc", "--model", &g, "--subset", "nope"],
        vec!["hqc", "--model", &g, "--subset", "vertices:99,99"],
        vec!["no-drift", "--model", &g],
        vec!["hqc", "--model", &g, "--subset", "x-axis", "--budget", "qc_pairs=0"],
    ] {
        let (code, r) = hhs(&args, None);
        assert_eq!(code, 3, "{args:?}");
        assert_eq!(r["status"], "malformed");
        assert!(r["error"].is_string() && r["result"].is_null());
    }
    let (code, _) = hhs(&["frobnicate"], None);
    assert_eq!(code, 3);
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"format\": 1}").unwrap();
    assert_eq!(hhs(&["audit", "--model", bad.to_str().unwrap()], None).0, 3);
}

#[test]
fn reports_follow_the_schema_envelope() {
    let schema: Value = serde_json::from_str(include_str!("../schema/report.schema.json")).unwrap();
    let dir = scratch("schema");
    let g = build(&dir, "parallel_lines", &["--n", "4", "--skip-audit"]);
    let out = dir.join("report.json");
    let out = out.to_str().unwrap();
    let (code, stdout) = hhs(&["dichotomy", "--model", &g, "--subset", "y0", "--out", out, "--format", "compact"], None);
    assert_eq!((code, stdout), (1, Value::Null));
    let text = std::fs::read_to_string(out).unwrap();
    assert_eq!(text.lines().count(), 1);
    let r: Value = serde_json::from_str(&text).unwrap();
    let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
    let mut required: Vec<&str> = schema["required"].as_array().unwrap().iter().map(|k| k.as_str().unwrap()).collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    required.sort_unstable();
    assert_eq!(sorted, required);
    assert_eq!(r["format"], schema["properties"]["format"]["const"]);
    assert_eq!(r["version"], schema["properties"]["version"]["const"]);
    assert!(schema["properties"]["command"]["enum"].as_array().unwrap().contains(&r["command"]));
    assert!(schema["properties"]["status"]["enum"].as_array().unwrap().contains(&r["status"]));
}
