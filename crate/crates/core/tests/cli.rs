use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_holocurve"))
}

#[test]
fn bundled_line_scenario_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin().args(["--config", "cartan_p1_n1", "--out"]).arg(dir.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let txt = std::fs::read_to_string(dir.path().join("report.txt")).unwrap();
    assert!(txt.contains("[PASS] fmt") && txt.contains("[PASS] smt"), "{txt}");
    let csv = std::fs::read_to_string(dir.path().join("profile.csv")).unwrap();
    let header = csv.lines().next().unwrap();
    assert!(header.starts_with("r,T,m_H0,N[1]_H0"), "{header}");
    assert_eq!(csv.lines().count(), 14);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(json["passed"], true);
}

#[test]
fn too_few_hyperplanes_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(
        &cfg,
        r#"{"name": "bad", "p": 1, "n": 2, "components": ["1", "z", "z^2"],
            "hyperplanes": [[1, 0, 0], [0, 1, 0], [0, 0, 1]], "checks": [{"check": "smt"}]}"#,
    )
    .unwrap();
    let out = bin().arg("--config").arg(&cfg).arg("--out").arg(dir.path().join("o")).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("q >= n + 2"));
}

#[test]
fn grid_max_extends_the_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["--config", "cartan_p1_n1", "--grid-max", "1e6", "--quad-nodes", "256", "--threads", "2", "--json", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let radii = json["radii"].as_array().unwrap();
    assert_eq!(radii.len(), 21);
    assert!((radii.last().unwrap().as_f64().unwrap() - 1e6).abs() < 1e-3);
    assert_eq!(json["quadrature_nodes"], 256);
}

#[test]
fn listing_and_flags() {
    let out = bin().arg("--list").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let names = String::from_utf8_lossy(&out.stdout).lines().filter(|l| !l.starts_with(' ')).count();
    assert!(names >= 8);

    let out = bin().args(["--list", "--json"]).output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.as_array().unwrap().len() >= 8);

    assert_eq!(bin().arg("--frobnicate").output().unwrap().status.code(), Some(2));
    assert_eq!(bin().output().unwrap().status.code(), Some(2));
    assert_eq!(bin().args(["--config", "no_such_scenario"]).output().unwrap().status.code(), Some(2));
}

#[test]
fn failing_check_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("tight.json");
    // a zero-width band can never be met
    std::fs::write(
        &cfg,
        r#"{"name": "tight", "p": 1, "n": 1, "components": ["1", "z"],
            "hyperplanes": [[1, 0], [0, 1], [1, 1]], "checks": [{"check": "fmt", "band": 0}]}"#,
    )
    .unwrap();
    let out = bin().arg("--config").arg(&cfg).arg("--out").arg(dir.path().join("o")).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn report_is_thread_independent() {
    let dir = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    for threads in ["1", "3"] {
        let o = dir.path().join(threads);
        let out = bin().args(["--config", "slicing_p2_n2", "--seed", "5", "--threads", threads, "--out"]).arg(&o).output().unwrap();
        assert_eq!(out.status.code(), Some(0));
        reports.push(std::fs::read(o.join("report.json")).unwrap());
    }
    assert_eq!(reports[0], reports[1]);
}
