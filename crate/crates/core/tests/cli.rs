use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn pdem(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdem"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

/// Data rows of a CSV written by the CLI, skipping comment lines and the header.
fn rows(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let data = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    (header, data)
}

fn trapezoid(xs: &[f64], ys: &[f64]) -> f64 {
    xs.windows(2).zip(ys.windows(2)).map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1])).sum()
}

#[test]
fn eigen_files_are_normalized_and_peak_at_the_centre() {
    let dir = tempfile::tempdir().unwrap();
    let o = pdem(&["eigen", "--n", "0,1"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let (h0, r0) = rows(&dir.path().join("eigen_n0.csv"));
    let (_, r1) = rows(&dir.path().join("eigen_n1.csv"));
    assert_eq!(h0, ["x", "psi", "density"]);
    let xs: Vec<f64> = r0.iter().map(|r| r[0]).collect();
    for r in [&r0, &r1] {
        let rho: Vec<f64> = r.iter().map(|r| r[2]).collect();
        assert!((trapezoid(&xs, &rho) - 1.0).abs() < 1e-5);
    }
    assert_ne!(r0, r1);
    let peak = r0.iter().max_by(|a, b| a[2].partial_cmp(&b[2]).unwrap()).unwrap()[0];
    assert!((peak - 8.0).abs() <= xs[1] - xs[0]);
}

#[test]
fn output_is_deterministic_and_echoes_config() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = ["cs", "--alpha", "0.5,1+0.5i", "--t", "0,3"];
    assert_eq!(pdem(&args, a.path()).status.code(), Some(0));
    assert_eq!(pdem(&args, b.path()).status.code(), Some(0));
    for f in ["cs_density.csv", "cs_coefficients.csv"] {
        let (ta, tb) = (fs::read_to_string(a.path().join(f)).unwrap(), fs::read_to_string(b.path().join(f)).unwrap());
        // Only the echoed output directory differs.
        let strip = |t: &str, d: &Path| t.replace(&d.display().to_string(), "OUT");
        assert_eq!(strip(&ta, a.path()), strip(&tb, b.path()));
        assert!(ta.starts_with("# config: {"));
        assert!(ta.contains("\"lambda\":2.0"));
        assert!(!ta.contains('\r'));
    }
}

#[test]
fn observables_rows_satisfy_the_uncertainty_relations() {
    let dir = tempfile::tempdir().unwrap();
    let o = pdem(&["observables", "--alpha", "0,0.5,1+1i,-2+0.3i,3i"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let (h, r) = rows(&dir.path().join("observables.csv"));
    let col = |name: &str| h.iter().position(|c| c == name).unwrap();
    assert_eq!(r[0][col("varH")], 0.0);
    assert!((r[0][col("meanH")] - 0.125).abs() < 1e-15);
    for row in &r {
        assert!(row[col("product")] >= row[col("bound")] - 1e-9);
        assert!(row[col("sum_identity_residual")].abs() < 1e-9);
    }
}

#[test]
fn json_format() {
    let dir = tempfile::tempdir().unwrap();
    let o = pdem(&["observables", "--format", "json", "--alpha", "1"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("observables.json")).unwrap()).unwrap();
    assert!(v["config"].is_object());
    assert!((v["rows"][0]["meanH"].as_f64().unwrap() - (1.0 + 4.0 * 2f64.tanh()) / 8.0).abs() < 1e-14);
}

#[test]
fn figures_are_nonnegative_and_unit_mass() {
    let dir = tempfile::tempdir().unwrap();
    let o = pdem(&["figures"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("plot_figures.py").exists());
    for f in ["fig1.csv", "fig2.csv"] {
        let (h, r) = rows(&dir.path().join(f));
        assert_eq!(h, ["alpha_re", "alpha_im", "t", "x", "density"]);
        let mut slices: Vec<(f64, f64, Vec<f64>, Vec<f64>)> = Vec::new();
        for row in &r {
            assert!(row[4] >= 0.0);
            match slices.last_mut() {
                Some(s) if s.0 == row[0] && s.1 == row[2] => {
                    s.2.push(row[3]);
                    s.3.push(row[4]);
                }
                _ => slices.push((row[0], row[2], vec![row[3]], vec![row[4]])),
            }
        }
        for (a, t, xs, rho) in &slices {
            assert!((trapezoid(xs, rho) - 1.0).abs() < 1e-4, "{f} α = {a}, t = {t}");
        }
    }
}

#[test]
fn verify_passes_and_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = pdem(&["verify"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("verify_report.json")).unwrap()).unwrap();
    assert_eq!(v["pass"], true);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() >= 20);
    for c in checks {
        for key in ["check_id", "check_name", "description"] {
            assert!(c[key].is_string(), "{key}");
        }
        for key in ["metric", "threshold"] {
            assert!(c[key].is_number(), "{key}");
        }
        assert!(c["grid_sizes"].is_array() && c["residuals"].is_array());
        assert!(c["convergence_order"].is_number() || c["convergence_order"].is_null());
        assert_eq!(c["pass"], true);
    }
}

#[test]
fn corrupted_spectrum_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let o = pdem(&["verify", "--inject-fault", "spectrum"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("verify_report.json")).unwrap()).unwrap();
    assert_eq!(v["pass"], false);
    let failed: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["check_id"].as_str().unwrap())
        .collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|id| id.starts_with("eigen_residual")));
}

#[test]
fn bad_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(pdem(&["cs", "--alpha", "1+2j"], dir.path()).status.code(), Some(2));
    assert_eq!(pdem(&["eigen", "--profile", "wobbly:1"], dir.path()).status.code(), Some(2));
    assert_eq!(pdem(&["launch"], dir.path()).status.code(), Some(2));
    assert_eq!(pdem(&["eigen", "--config", "/nonexistent/c.json"], dir.path()).status.code(), Some(2));
    let cfg = dir.path().join("bad.json");
    fs::write(&cfg, r#"{"lamda": 2}"#).unwrap();
    assert_eq!(pdem(&["eigen", "--config", cfg.to_str().unwrap()], dir.path()).status.code(), Some(2));
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    fs::write(
        &cfg,
        r#"{"units": "explicit", "params": {"hbar": 1.0, "m0": 0.5, "omega0": 2.0}, "lambda": 1.0,
            "grid": {"xmin": -10, "xmax": 14, "n": 401}, "n": [3]}"#,
    )
    .unwrap();
    let o = pdem(&["eigen", "--config", cfg.to_str().unwrap(), "--lambda", "2"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(dir.path().join("eigen_n3.csv")).unwrap();
    assert!(text.contains("\"omega0\":2.0"));
    assert!(text.contains("\"lambda\":2.0"));
    assert!(text.contains("energy = 3.2500000000000000e0"));
    let (_, r) = rows(&dir.path().join("eigen_n3.csv"));
    assert_eq!(r.len(), 401);
}

#[test]
fn help_exits_cleanly() {
    let o = Command::new(env!("CARGO_BIN_EXE_pdem")).arg("--help").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8_lossy(&o.stdout);
    for cmd in ["eigen", "cs", "observables", "figures", "verify"] {
        assert!(text.contains(cmd));
    }
}
