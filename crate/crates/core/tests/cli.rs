use std::path::PathBuf;
use std::process::{Command, Output};

use partcover::io::{serialize_instance, Instance};
use partcover::model::fixtures;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("partcover-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_instance(name: &str, instance: &Instance) -> PathBuf {
    let path = scratch(name);
    std::fs::write(&path, serialize_instance(instance)).unwrap();
    path
}

fn partcover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_partcover")).args(args).output().unwrap()
}

fn json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).unwrap()
}

#[test]
fn six_vertex_edge_cover_costs_five() {
    let path = write_instance("six.json", &Instance::Pec(fixtures::six_vertex_pec([1, 1, 1])));
    let out = partcover(&["solve", "pec", path.to_str().unwrap(), "--compare-oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["solution"]["cost"], "5");
    assert_eq!(report["certificates"]["oracle_cost"], "5");
    assert_eq!(report["certificates"]["ratio"], 1.0);
    assert_eq!(report["status"], "solved");
}

#[test]
fn epsilon_at_or_above_half_is_an_error() {
    let path = write_instance("tri-eps.json", &Instance::Pvc(fixtures::triangle(3)));
    for eps in ["0.6", "0.5", "0", "x"] {
        let out = partcover(&["solve", "pvc-bi", path.to_str().unwrap(), "--epsilon", eps]);
        assert_eq!(out.status.code(), Some(1), "epsilon {eps}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    let ok = partcover(&["solve", "pvc-bi", path.to_str().unwrap(), "--epsilon", "0.25"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["solution"]["cost"], "3");
}

#[test]
fn generator_is_byte_identical() {
    let args = ["gen", "pvc", "--n", "5", "--omega", "2", "--seed", "7"];
    let a = partcover(&args);
    let b = partcover(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, partcover(&["gen", "pvc", "--n", "5", "--omega", "2", "--seed", "8"]).stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(matches!(partcover::io::parse_instance(&text).unwrap(), Instance::Pvc(_)));
}

#[test]
fn every_solver_output_verifies() {
    let pvc = write_instance("two-group.json", &Instance::Pvc(fixtures::two_group_path()));
    let pec = write_instance("six-verify.json", &Instance::Pec(fixtures::six_vertex_pec([1, 1, 1])));
    let runs: [(&PathBuf, Vec<&str>); 4] = [
        (&pvc, vec!["solve", "pvc2"]),
        (&pvc, vec!["solve", "pvc-bi", "--epsilon", "1/4"]),
        (&pvc, vec!["oracle"]),
        (&pec, vec!["solve", "pec"]),
    ];
    for (i, (instance, args)) in runs.iter().enumerate() {
        let mut full = args.clone();
        full.insert(2.min(full.len()), instance.to_str().unwrap());
        let out = partcover(&full);
        assert_eq!(out.status.code(), Some(0), "{full:?}");
        let report_path = scratch(&format!("report-{i}.json"));
        std::fs::write(&report_path, &out.stdout).unwrap();
        let verified = partcover(&["verify", instance.to_str().unwrap(), report_path.to_str().unwrap()]);
        let v = json(&verified);
        assert_eq!(v["matches_report"], true, "{full:?}");
        assert_eq!(v["feasible"], json(&out)["certificates"]["feasible"]);
        assert_eq!(v["cost"], json(&out)["solution"]["cost"]);
    }
}

#[test]
fn verify_plain_selection_and_tampered_report() {
    let path = write_instance("p3.json", &Instance::Pvc(fixtures::path3(2)));
    let good = scratch("sel-good.json");
    std::fs::write(&good, r#"{"selected":[1]}"#).unwrap();
    let out = partcover(&["verify", path.to_str().unwrap(), good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["cost"], "1");
    assert!(json(&out).get("matches_report").is_none());

    let short = scratch("sel-short.json");
    std::fs::write(&short, r#"{"selected":[0]}"#).unwrap();
    assert_eq!(partcover(&["verify", path.to_str().unwrap(), short.to_str().unwrap()]).status.code(), Some(2));

    let out = partcover(&["solve", "pvc2", path.to_str().unwrap()]);
    let mut report = json(&out);
    report["solution"]["cost"] = "0".into();
    let tampered = scratch("tampered.json");
    std::fs::write(&tampered, report.to_string()).unwrap();
    let out = partcover(&["verify", path.to_str().unwrap(), tampered.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["matches_report"], false);
}

#[test]
fn exit_codes() {
    let infeasible = write_instance("p3-inf.json", &Instance::Pvc(fixtures::path3(3)));
    for args in [vec!["solve", "pvc2"], vec!["solve", "pvc-bi", "--epsilon", "0.25"], vec!["oracle"]] {
        let mut full = args.clone();
        full.insert(2.min(full.len()), infeasible.to_str().unwrap());
        let out = partcover(&full);
        assert_eq!(out.status.code(), Some(2), "{full:?}");
        assert_eq!(json(&out)["status"], "infeasible");
    }
    let pec_red_only = write_instance("six-red.json", &Instance::Pec(fixtures::six_vertex_pec([0, 0, 1])));
    assert_eq!(partcover(&["solve", "pec", pec_red_only.to_str().unwrap()]).status.code(), Some(0));

    let missing = scratch("does-not-exist.json");
    assert_eq!(partcover(&["solve", "pec", missing.to_str().unwrap()]).status.code(), Some(1));
    let garbage = scratch("garbage.json");
    std::fs::write(&garbage, "{not json").unwrap();
    assert_eq!(partcover(&["oracle", garbage.to_str().unwrap()]).status.code(), Some(1));
    let pvc = write_instance("wrong-kind.json", &Instance::Pvc(fixtures::triangle(3)));
    assert_eq!(partcover(&["solve", "pec", pvc.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(partcover(&["solve", "pvc2", pvc.to_str().unwrap(), "--jobs", "0"]).status.code(), Some(1));
    assert_eq!(partcover(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(partcover(&[]).status.code(), Some(1));
    assert_eq!(partcover(&["--help"]).status.code(), Some(0));
    assert_eq!(partcover(&["--version"]).status.code(), Some(0));
}

#[test]
fn knapsack_reduction_and_decisions() {
    let gen = partcover(&["gen", "knapsack", "--items", "5", "--seed", "3"]);
    assert_eq!(gen.status.code(), Some(0));
    let knapsack = scratch("knap.json");
    std::fs::write(&knapsack, &gen.stdout).unwrap();
    let reduced = partcover(&["reduce", "knapsack", knapsack.to_str().unwrap()]);
    assert_eq!(reduced.status.code(), Some(0));
    let wppec = scratch("wppec.json");
    std::fs::write(&wppec, &reduced.stdout).unwrap();
    assert_eq!(json(&reduced)["kind"], "wppec");

    let a = partcover(&["oracle", knapsack.to_str().unwrap()]);
    let b = partcover(&["oracle", wppec.to_str().unwrap()]);
    assert_eq!(a.status.code(), b.status.code());
    let status = json(&a)["status"].clone();
    assert!(status == "yes" || status == "no");
    assert_eq!(status, json(&b)["status"]);
    assert_eq!(a.status.code(), Some(if status == "yes" { 0 } else { 2 }));
}

#[test]
fn dump_lp_and_timing() {
    let path = write_instance("tri-dump.json", &Instance::Pvc(fixtures::triangle(3)));
    let out = partcover(&["solve", "pvc2", path.to_str().unwrap(), "--dump-lp", "--timing"]);
    assert_eq!(out.status.code(), Some(0));
    let stderr = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(stderr.contains("restricted LP"));
    assert!(json(&out)["duration_ms"].is_number());
    let plain = partcover(&["solve", "pvc2", path.to_str().unwrap()]);
    assert!(json(&plain).get("duration_ms").is_none());
    assert!(plain.stderr.is_empty());
}
