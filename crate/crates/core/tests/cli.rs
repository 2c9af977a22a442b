use std::path::Path;
use std::process::{Command, Output};

fn qprobe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qprobe"))
        .args(args)
        .env_clear()
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn encode_four_city_tour_has_sixteen_spins() {
    let dir = tempfile::tempdir().unwrap();
    let tsp = write(dir.path(), "four.tsp", "4\n0 0\n0 3\n4 3\n4 0\n");
    let v = stdout_json(&qprobe(&["encode", "--type", "tsp", "--in", &tsp]));
    assert_eq!(v["n"], 16);
    let spec = stdout_json(&qprobe(&["landscape", "--type", "tsp", "--in", &tsp]));
    assert_eq!(spec["degree"], 208);
    assert_eq!(spec["grid_points"], 4165);
}

#[test]
fn grid_opt_on_a_single_coupling() {
    let dir = tempfile::tempdir().unwrap();
    let ising = write(
        dir.path(),
        "j1.json",
        r#"{"n":2,"offset":0.0,"fields":[],"couplings":[[0,1,1.0]]}"#,
    );
    let v = stdout_json(&qprobe(&[
        "grid-opt",
        "--type",
        "ising",
        "--in",
        &ising,
        "--maximize",
    ]));
    assert_eq!(v["value"], 1.0);
    assert_eq!(v["beta"], std::f64::consts::FRAC_PI_4);
    assert_eq!(v["seconds"], 0.0);
    // the same edge as a graph: energy is minus the cut
    let edge = write(dir.path(), "edge.txt", "2 1\n0 1\n");
    let v = stdout_json(&qprobe(&["grid-opt", "--type", "maxcut", "--in", &edge]));
    assert_eq!(v["value"], -1.0);
}

#[test]
fn probe_halts_on_compound_error() {
    let out = qprobe(&[
        "probe",
        "--problem",
        "maxcut-path",
        "--eps",
        "0.01",
        "--nmin",
        "4",
        "--nstep",
        "2",
        "--gap-threshold",
        "1.0",
        "--shots",
        "500",
        "--runs",
        "2",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["halt"]["reason"], "halt_compound");
    assert_eq!(v["halt"]["n"], 52);
    assert_eq!(v["config"]["seed"], 42);
}

#[test]
fn environment_overrides_flags() {
    let out = Command::new(env!("CARGO_BIN_EXE_qprobe"))
        .args(["probe", "--nmax", "6", "--shots", "100", "--runs", "2"])
        .env_clear()
        .env("QPROBE_SEED", "9")
        .env("QPROBE_EPS", "0")
        .env("QPROBE_GAP_THRESHOLD", "10")
        .env("QPROBE_FORMAT", "csv")
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("N,qubits,N2Q,C,E_ideal,E_meas,ci_half,rel_gap,verdict"));
    assert_eq!(text.lines().count(), 1 + 2);
}

#[test]
fn simulate_then_score_agree() {
    let dir = tempfile::tempdir().unwrap();
    let tsp = write(dir.path(), "three.tsp", "3\n0 2 5\n2 0 4\n5 4 0\n");
    let samples = dir.path().join("samples.json");
    let summary = dir.path().join("summary.json");
    let out = qprobe(&[
        "simulate",
        "--type",
        "tsp",
        "--in",
        &tsp,
        "--beta",
        "0.4",
        "--gamma",
        "0.02",
        "--eps",
        "0.01",
        "--shots",
        "800",
        "--out",
        samples.to_str().unwrap(),
        "--summary",
        summary.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let scored = qprobe(&[
        "score",
        "--type",
        "tsp",
        "--in",
        &tsp,
        "--samples",
        samples.to_str().unwrap(),
        "--beta",
        "0.4",
        "--gamma",
        "0.02",
    ]);
    assert!(scored.status.success());
    let from_sim: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&summary).unwrap()).unwrap();
    assert_eq!(
        from_sim,
        serde_json::from_slice::<serde_json::Value>(&scored.stdout).unwrap()
    );
    assert_eq!(from_sim["best_known"], 11.0);
    // same seed, same samples
    let again = dir.path().join("again.json");
    qprobe(&[
        "simulate",
        "--type",
        "tsp",
        "--in",
        &tsp,
        "--beta",
        "0.4",
        "--gamma",
        "0.02",
        "--eps",
        "0.01",
        "--shots",
        "800",
        "--out",
        again.to_str().unwrap(),
    ]);
    assert_eq!(
        std::fs::read(&samples).unwrap(),
        std::fs::read(&again).unwrap()
    );
}

#[test]
fn catalogue_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst");
    std::fs::create_dir(&inst).unwrap();
    write(&inst, "ring5.txt", "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
    write(&inst, "bad.txt", "3 2\n0 1\n");
    let out = qprobe(&[
        "catalogue",
        "--dir",
        inst.to_str().unwrap(),
        "--type",
        "maxcut",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v[0]["name"], "bad.txt");
    assert!(v[0]["error"].is_string());
    assert_eq!(v[1]["modes"], 15);
    assert_eq!(v[1]["grid_points"], 305);
    let twice = qprobe(&[
        "catalogue",
        "--dir",
        inst.to_str().unwrap(),
        "--type",
        "maxcut",
    ]);
    assert_eq!(out.stdout, twice.stdout);

    let empty = dir.path().join("empty");
    std::fs::create_dir(&empty).unwrap();
    let v = stdout_json(&qprobe(&[
        "catalogue",
        "--dir",
        empty.to_str().unwrap(),
        "--type",
        "tsp",
    ]));
    assert_eq!(v, serde_json::json!([]));

    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for (path, eps) in [(&a, "0"), (&b, "0.005")] {
        let out = qprobe(&[
            "probe",
            "--problem",
            "maxcut-gnp:0.8",
            "--nmin",
            "3",
            "--nstep",
            "1",
            "--nmax",
            "6",
            "--eps",
            eps,
            "--reference",
            "oracle",
            "--gap-threshold",
            "10",
            "--shots",
            "300",
            "--runs",
            "2",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let inputs = format!("{},{}", a.display(), b.display());
    let svg = qprobe(&["report", "--in", &inputs, "--format", "svg"]);
    assert!(svg.status.success());
    let svg = String::from_utf8(svg.stdout).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 2);
    let csv = qprobe(&["report", "--in", a.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(
        String::from_utf8(csv.stdout).unwrap().lines().count(),
        1 + 4
    );
}

#[test]
fn compare_rows_follow_the_table_layout() {
    let v = stdout_json(&qprobe(&["compare", "--sizes", "16:63,2:0"]));
    assert_eq!(v[0]["degree"], 142);
    assert_eq!(v[0]["grid_points"], 2845);
    assert_eq!(v[1]["grid_value"], v[1]["shgo_value"]);
}

#[test]
fn exit_codes() {
    assert_eq!(qprobe(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(qprobe(&["probe", "--bogus-flag"]).status.code(), Some(1));
    assert_eq!(qprobe(&["probe", "--runs", "0"]).status.code(), Some(1));
    assert_eq!(
        qprobe(&["encode", "--type", "maxcut", "--in", "/nonexistent.txt"])
            .status
            .code(),
        Some(2)
    );
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "2 1\n0 0\n");
    let out = qprobe(&["encode", "--type", "maxcut", "--in", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.txt"));
    let edge = write(dir.path(), "edge.txt", "2 1\n0 1\n");
    let capped = qprobe(&[
        "simulate", "--type", "maxcut", "--in", &edge, "--beta", "0.1", "--gamma", "0.1", "--cap",
        "1",
    ]);
    assert_eq!(capped.status.code(), Some(3));
    assert_eq!(qprobe(&["--help"]).status.code(), Some(0));
}

#[test]
fn threads_flag_is_accepted() {
    let v = stdout_json(&qprobe(&["--threads", "2", "compare", "--sizes", "6"]));
    assert_eq!(v.as_array().unwrap().len(), 1);
}
