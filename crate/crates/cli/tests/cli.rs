use std::process::{Command, Output};

use toroflux::{permeance, FluxTubeKind, TorusGeometry};

fn toroflux(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toroflux"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn permeance_matches_library() {
    let out = toroflux(&[
        "permeance",
        "--kind",
        "outer-half",
        "--R",
        "1",
        "--ri",
        "0.5",
        "--ro",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let printed: f64 = stdout(&out).trim().parse().unwrap();
    let expected = permeance(FluxTubeKind::OuterHalf, &TorusGeometry::new(1.0, 0.5, 1.0))
        .unwrap()
        .henry();
    assert!((printed - expected).abs() / expected < 1e-11);
    // 12 significant digits
    assert_eq!(stdout(&out).trim().split('e').next().unwrap().len(), 13);
}

#[test]
fn missing_tube_prints_zero_with_warning() {
    let out = toroflux(&[
        "permeance",
        "--kind",
        "inner-half",
        "--R",
        "1",
        "--ri",
        "0.5",
        "--ro",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "0");
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn exit_codes() {
    let missing_flag = toroflux(&["permeance", "--kind", "outer-half", "--R", "1", "--ri", "0.5"]);
    assert_eq!(missing_flag.status.code(), Some(2));
    let bad_kind = toroflux(&[
        "permeance",
        "--kind",
        "sideways",
        "--R",
        "1",
        "--ri",
        "0.5",
        "--ro",
        "1",
    ]);
    assert_eq!(bad_kind.status.code(), Some(2));
    let sub_lower = toroflux(&[
        "permeance",
        "--kind",
        "lower-half",
        "--R",
        "1",
        "--ri",
        "1",
        "--ro",
        "2",
    ]);
    assert_eq!(sub_lower.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&sub_lower.stderr).contains("domain"));
    let bad_mode = toroflux(&["sweep-force", "--kind", "outer-half", "--ri", "0.001"]);
    assert_eq!(bad_mode.status.code(), Some(2));
}

#[test]
fn permeance_family_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("family.csv");
    let out = toroflux(&[
        "sweep-permeance",
        "--kind",
        "inner-half",
        "--R",
        "1",
        "--ro",
        "0.1,0.2,0.4,0.8",
        "--range",
        "log:0.01:0.8:25",
        "--normalized",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "held_m,swept_m,Gm_H,Gm_legacy_H,rel_dev,exists,held_over_R,swept_over_R,Gm_norm,Gm_legacy_norm"
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 100);
    for row in &rows {
        let (ro, ri): (f64, f64) = (row[0].parse().unwrap(), row[1].parse().unwrap());
        assert!(row[2].parse::<f64>().unwrap().is_finite());
        assert_eq!(row[5], if ri < ro { "1" } else { "0" });
    }
}

#[test]
fn outer_family_with_large_radii() {
    let out = toroflux(&[
        "sweep-permeance",
        "--kind",
        "outer-half",
        "--R",
        "1",
        "--ro",
        "1.6,3.2",
        "--range",
        "log:0.01:1:2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 1 + 4);
    assert!(stdout(&out).lines().skip(1).all(|l| l.ends_with(",1")));
}

#[test]
fn force_sweep_default_is_deterministic() {
    let a = toroflux(&["sweep-force"]);
    let b = toroflux(&["sweep-force"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "g_m,Gm_new_H,F_new_N,Gm_legacy_H,F_legacy_N,rel_dev_percent"
    );
    let dev: Vec<f64> = lines.map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(dev.len(), 203);
    assert!(dev[0] < dev[dev.len() - 1]);
}

#[test]
fn zero_theta_zero_force() {
    let out = toroflux(&[
        "sweep-force",
        "--theta",
        "0",
        "--range",
        "lin:0.002:0.022:10",
        "--no-branch-points",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 11);
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[2].parse::<f64>().unwrap(), 0.0);
        assert_eq!(cols[4].parse::<f64>().unwrap(), 0.0);
        assert_eq!(cols[5], "");
    }
}

#[test]
fn unwritable_output_fails() {
    let out = toroflux(&["sweep-force", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn check_passes_and_detects_perturbation() {
    let ok = toroflux(&["check", "--preset", "quick"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    let bad = toroflux(&["check", "--perturb", "1e-6"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL"));
    assert!(stdout(&bad).contains(" at R="));
}

#[test]
fn check_full_covers_everything() {
    let out = toroflux(&["check", "--preset", "full"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    for kind in FluxTubeKind::ALL {
        assert!(text.contains(&format!("permeance {kind} ")));
    }
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS gradient")).count(), 10);
}
