use std::process::{Command, Output};

fn phasecov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phasecov"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn scalars_reference_point() {
    let o = phasecov(&["scalars", "--phi", "1.5708", "--kappa", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let b: f64 = row[header.iter().position(|&h| h == "b").unwrap()].parse().unwrap();
    assert!((b - 0.626070).abs() < 1e-6);
}

#[test]
fn noiseless_point_has_trivial_scalars() {
    let o = phasecov(&["scalars", "--phi", "0", "--kappa", "5", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["b"], 0.0);
    assert_eq!(v[0]["c_re"], 1.0);
    assert_eq!(v[0]["c_im"], 0.0);
}

#[test]
fn invalid_kappa_exits_with_validation_code() {
    let o = phasecov(&["scalars", "--phi", "0.3", "--kappa", "-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("kappa"));
}

#[test]
fn malformed_range_exits_with_validation_code() {
    let o = phasecov(&["single-map", "--phi-range", "0.1:0.2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unwritable_output_exits_with_io_code() {
    let o = phasecov(&[
        "single-map", "--phi-range", "0.1:0.2:2", "--kappa-range", "1:2:2", "--out", "/nonexistent/dir/x.csv",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn ghz_curves_header_and_rows() {
    let o = phasecov(&["ghz-curves", "--phi", "0.15", "--kappa", "3", "--n-max", "50"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(!text.contains('\r'));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "N,delta_ind,delta_sim,delta_sql,R");
    assert_eq!(lines.len(), 51);
    assert!(lines[50].starts_with("50,"));
}

#[test]
fn msat_full_parallel_row_is_one() {
    let o = phasecov(&["msat", "--phi", "0.27", "--kappa", "4.6", "--n-total", "24"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "M,delta,ratio_to_full");
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("24,") && last.ends_with(",1.00000000000e0"), "{last}");
}

#[test]
fn config_file_is_read_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.json");
    let out = dir.path().join("map.csv");
    std::fs::write(
        &cfg,
        format!(
            r#"{{"phi_range": "0.1:0.3:2", "kappa_range": "1:2:2", "format": "json", "out": {:?}}}"#,
            out.to_str().unwrap()
        ),
    )
    .unwrap();
    let o = phasecov(&["two-map", "--config", cfg.to_str().unwrap(), "--format", "csv"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "phi,kappa,alpha_phi,alpha_kappa,alpha_sim,R2");
    assert_eq!(lines.len(), 5);
}

#[test]
fn nopt_map_json_records() {
    let o = phasecov(&[
        "nopt-map", "--phi-range", "0.1:0.3:2", "--kappa-range", "1:5:2", "--format", "json", "--threads", "2",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    let keys: Vec<&String> = rows[0].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["phi", "kappa", "n_opt", "delta_min", "winner", "case_label"]);
    assert_eq!(rows[0]["case_label"], "A");
}
