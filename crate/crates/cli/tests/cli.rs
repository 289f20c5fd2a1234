use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn scenario(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name)
}

fn grlc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grlc")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report on stdout")
}

fn without_meta(mut v: Value) -> String {
    v.as_object_mut().unwrap().remove("meta");
    serde_json::to_string(&v).unwrap()
}

#[test]
fn lc_top_on_fine_plane() {
    let path = scenario("plane_fine.scn");
    let out = grlc(&["lc", path.to_str().unwrap(), "--i", "2", "--gwindow", "(-3,-3):(1,1)", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "ROUTES_AGREE");
    let dims = v["result"]["cech"]["table"]["dims"].as_object().unwrap();
    assert_eq!(dims.len(), 25);
    for a in -3..=1 {
        for b in -3..=1 {
            let expected = u64::from(a <= -1 && b <= -1);
            assert_eq!(dims[&format!("({a},{b})")], expected, "({a},{b})");
        }
    }
}

#[test]
fn finite_kernel_commutes() {
    let path = scenario("finite_kernel.scn");
    for i in ["0", "1", "2"] {
        let out = grlc(&["check-commute", path.to_str().unwrap(), "--i", i]);
        assert_eq!(out.status.code(), Some(0), "i = {i}");
        assert!(String::from_utf8_lossy(&out.stdout).starts_with("# check-commute\tCOMMUTES_ON_WINDOW"));
    }
}

#[test]
fn counterexample_support_five() {
    let out = grlc(&["counterexample", "--k", "5", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "CERTIFIED");
    assert_eq!(v["result"]["component_count"], 5);
    assert_eq!(v["result"]["support"].as_array().unwrap().len(), 5);
    assert!(!v["result"]["not_claimed"].as_array().unwrap().is_empty());
}

#[test]
fn reports_are_deterministic() {
    let path = scenario("torsion_quotient.scn");
    let runs: Vec<String> = (0..2)
        .map(|_| without_meta(json(&grlc(&["check-prop70", path.to_str().unwrap(), "--json"]))))
        .collect();
    assert_eq!(runs[0], runs[1]);
    let a = grlc(&["counterexample", "--k", "3", "--seed", "7", "--json"]);
    let b = grlc(&["counterexample", "--k", "3", "--seed", "7", "--json"]);
    assert_eq!(without_meta(json(&a)), without_meta(json(&b)));
}

#[test]
fn out_dir_gets_both_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = scenario("laurent.scn");
    let out = grlc(&["cech", path.to_str().unwrap(), "--i", "1", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report["command"], "cech");
    assert_eq!(report["parameters"]["i"], 1);
    assert!(report["meta"]["timestamp"].is_u64());
    let tsv = std::fs::read_to_string(dir.path().join("report.tsv")).unwrap();
    assert!(tsv.lines().any(|l| l == "(-1)\t1"));
    assert!(tsv.lines().any(|l| l == "(0)\t0"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.scn");
    std::fs::write(&bad, "ring { vars = [x]; degrees = [(1)]; certificate = (0) }").unwrap();
    let out = grlc(&["hilbert", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1:"));

    let plane = scenario("plane_fine.scn");
    let refused = grlc(&["check-commute", plane.to_str().unwrap(), "--i", "2"]);
    assert_eq!(refused.status.code(), Some(4));

    // the top local cohomology of the fine plane needs more than two stages
    let unstable = grlc(&["cech", plane.to_str().unwrap(), "--i", "2", "--ncap", "2"]);
    assert_eq!(unstable.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&unstable.stdout).contains("UNSTABILIZED"));

    let no_ideal = grlc(&["ext", scenario("laurent.scn").to_str().unwrap(), "--ideal", "q"]);
    assert_eq!(no_ideal.status.code(), Some(1));
}

#[test]
fn overrides_replace_scenario_fields() {
    let path = scenario("plane_fine.scn");
    let out = grlc(&[
        "coarsen",
        path.to_str().unwrap(),
        "--psi",
        "[[1, 1]]",
        "--gwindow",
        "(0,0):(3,3)",
        "--hwindow",
        "(0):(3)",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let dims = v["result"]["coarse_module"]["dims"].as_object().unwrap();
    for h in 0..=3u64 {
        assert_eq!(dims[&format!("({h})")], h + 1);
    }
}

#[test]
fn exit_status_mapping() {
    use grlc_cli::Status;
    let codes: Vec<i32> = [Status::Ok, Status::Fails, Status::Unstabilized, Status::Refused]
        .into_iter()
        .map(Status::exit_code)
        .collect();
    assert_eq!(codes, vec![0, 2, 3, 4]);
}
