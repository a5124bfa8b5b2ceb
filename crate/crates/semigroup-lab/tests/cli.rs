//! End-to-end CLI tests: exit codes, output shapes, and byte-identical
//! reports under a fixed seed.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semigroup-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn list_models_prints_the_catalog() {
    let out = run(&["list-models"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 6);
    let slit_row = text.lines().find(|l| l.starts_with("slit ")).expect("slit row");
    for token in ["disk", "finite", "theta=pi", "orbit"] {
        assert!(slit_row.contains(token), "slit row missing '{token}': {slit_row}");
    }
    let dyadic = text.lines().find(|l| l.starts_with("dyadic-comb")).expect("dyadic row");
    assert!(dyadic.contains("theta=0") && dyadic.contains("geometry-only"), "{dyadic}");
}

#[test]
fn orbit_csv_has_prepended_baseline_and_h_columns() {
    let out = run(&[
        "orbit", "--model", "halfplane", "--z", "0,0", "--t0", "1", "--t1", "1e6", "--count",
        "200", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t,re,im,disk_re,disk_im,eucl_to_dw,hyp_from_start,horodisk_param,h_re,h_im"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 201, "t = 0 is prepended to the 200-point grid");
    assert!(rows[0].starts_with("0.0000000000000000e0,"));
}

#[test]
fn slit_orbit_h_column_tracks_t() {
    let out = run(&[
        "orbit", "--model", "slit", "--z", "0,0", "--t0", "1", "--t1", "1e4", "--count", "50",
    ]);
    assert_eq!(out.status.code(), Some(0));
    for line in stdout(&out).lines().skip(1) {
        let cols: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        let (t, h_re, h_im) = (cols[0], cols[8], cols[9]);
        assert!((h_re - t).abs() <= 1e-10 * (1.0 + t), "h_re {h_re} vs t {t}");
        assert!(h_im.abs() <= 1e-10 * (1.0 + t), "h_im {h_im} at t {t}");
    }
}

#[test]
fn orbit_json_format_carries_samples() {
    let out = run(&[
        "orbit", "--model", "sector", "--t0", "1", "--t1", "100", "--count", "10", "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("{\"model\":\"sector\""));
    assert!(text.contains("\"samples\":["));
    assert!(text.contains("\"horodisk_param\""));
}

#[test]
fn orbit_rejects_geometry_only_models() {
    let out = run(&["orbit", "--model", "slit-mid", "--z", "0,0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["orbit", "--model", "nonsense", "--z", "0,0"]);
    assert_eq!(out.status.code(), Some(2));
    // out-of-domain starting point is a usage error as well
    let out = run(&["orbit", "--model", "halfplane", "--z", "2,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_geometry_passes() {
    let out = run(&["verify", "--suite", "geometry"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("PASS"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_harmonic_fails_at_100_paths() {
    // binomial stderr at 100 paths cannot reach the rate-bracket margins
    let out = run(&["verify", "--suite", "harmonic", "--paths", "100"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_reports_are_byte_identical_for_fixed_seed() {
    let dir = std::env::temp_dir();
    let p1 = dir.join("semigroup-lab-report-1.json");
    let p2 = dir.join("semigroup-lab-report-2.json");
    for p in [&p1, &p2] {
        let out = run(&[
            "verify",
            "--suite",
            "harmonic",
            "--paths",
            "2000",
            "--seed",
            "7",
            "--json",
            p.to_str().unwrap(),
        ]);
        // low path count may fail verdicts (exit 1); determinism is what
        // this test pins down
        assert!(matches!(out.status.code(), Some(0) | Some(1)));
    }
    let a = std::fs::read(&p1).unwrap();
    let b = std::fs::read(&p2).unwrap();
    assert_eq!(a, b, "identical flags + seed must give byte-identical reports");
    let _ = std::fs::remove_file(&p1);
    let _ = std::fs::remove_file(&p2);
}

#[test]
fn rates_reports_brackets_for_the_sector_model() {
    let out = run(&["rates", "--model", "sector", "--t1", "1e6", "--count", "201"]);
    assert_eq!(out.status.code(), Some(0), "verdicts must be within brackets");
    let text = stdout(&out);
    assert!(text.contains("\"kind\":\"euclid-exponent\""));
    assert!(text.contains("\"kind\":\"hyp-log-slope\""));
    assert!(text.contains("\"verdict\":\"within\""));
}

#[test]
fn harmonic_strip_command_reports_exact_and_wos() {
    let out = run(&[
        "harmonic", "strip", "--z", "0,1", "--bottom", "0", "--height", "2", "--paths", "2000",
        "--seed", "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"exact\""));
    assert!(text.contains("\"method\":\"wos\""));
}

#[test]
fn harmonic_dyadic_comb_overflows_past_n4() {
    let out = run(&["harmonic", "dyadic-comb", "--n", "5", "--paths", "1000"]);
    assert_eq!(out.status.code(), Some(3));
}
