use std::path::PathBuf;
use std::process::{Command, Output};

fn gradqem(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gradqem")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// `(source, mode, omega)` triples from CSV output.
fn parse(csv: &str) -> Vec<(String, usize, f64)> {
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "case_id,problem,bc,basis,N,g_effective,mode_index,omega_bar,source");
    lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            assert_eq!(f.len(), 9, "{l}");
            (f[8].to_string(), f[6].parse().unwrap(), f[7].parse().unwrap())
        })
        .collect()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn simply_supported_beam_classical() {
    let o = gradqem(&["beam", "--bc", "ss", "--basis", "lagrange", "--n", "13", "--g", "1e-5", "--modes", "3"]);
    assert!(o.status.success());
    let rows = parse(&stdout(&o));
    for ((_, _, w), want) in rows.iter().zip([9.870, 39.478, 88.826]) {
        assert!((w / want - 1.0).abs() < 5e-4, "{w}");
    }
}

#[test]
fn plate_with_oracle() {
    let o = gradqem(&["plate", "--bc", "ssss", "--basis", "ll", "--n", "11", "--g", "0.05", "--modes", "1", "--with-oracle"]);
    assert!(o.status.success());
    let rows = parse(&stdout(&o));
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0].0, "qem");
    assert!((rows[0].2 - 20.21).abs() < 0.01);
    assert_eq!(rows[1].0, "oracle");
    assert!((rows[1].2 - 20.220).abs() < 1e-3);
}

#[test]
fn clamped_beam_at_zero_g() {
    let o = gradqem(&["beam", "--bc", "clamped", "--basis", "hermite", "--n", "13", "--g", "0", "--modes", "1"]);
    let rows = parse(&stdout(&o));
    assert!((rows[0].2 / 22.373 - 1.0).abs() < 1e-3);
}

#[test]
fn output_is_deterministic() {
    let args = ["plate", "--bc", "ssff", "--basis", "lh", "--n", "8", "--g", "0.1"];
    let a = gradqem(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_gradqem")).args(args).env("GRADQEM_THREADS", "1").output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn g_scale_multiplies_g() {
    let a = stdout(&gradqem(&["beam", "--g", "0.5", "--g-scale", "0.1", "--modes", "2"]));
    let b = stdout(&gradqem(&["beam", "--g", "0.05", "--modes", "2"]));
    let wa: Vec<f64> = parse(&a).iter().map(|r| r.2).collect();
    let wb: Vec<f64> = parse(&b).iter().map(|r| r.2).collect();
    assert_eq!(wa, wb);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(gradqem(&["plate", "--bc", "cantilever"]).status.code(), Some(1));
    assert_eq!(gradqem(&["beam", "--n", "4"]).status.code(), Some(1));
    assert_eq!(gradqem(&["beam", "--frobnicate"]).status.code(), Some(1));
    assert_eq!(gradqem(&["oracle", "--problem", "plate", "--bc", "ffff"]).status.code(), Some(1));
    assert_eq!(gradqem(&["reproduce", "--table", "9"]).status.code(), Some(1));
    assert_eq!(gradqem(&["--help"]).status.code(), Some(0));
}

#[test]
fn strict_reproduction_exits_three() {
    // LL at eleven nodes is too coarse for the finite-g columns
    let o = gradqem(&["reproduce", "--table", "6", "--strict"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("deviation"));
    let o = gradqem(&["reproduce", "--table", "1", "--n", "15", "--strict"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn reproduce_prints_both_beam_readings() {
    let o = gradqem(&["reproduce", "--table", "2"]);
    let text = stdout(&o);
    assert!(text.contains("(g=label, N = 13)"));
    assert!(text.contains("(g=label/10, N = 13)"));
    let o = gradqem(&["reproduce", "--table", "2", "--format", "csv"]);
    let csv = stdout(&o);
    // fundamental free-free frequency per column under the checked reading
    for (g, want) in [("0.00000100000000", 22.373), ("0.00500000000", 22.377), ("0.0100000000", 22.387), ("0.0500000000", 22.692)] {
        let line = csv
            .lines()
            .find(|l| l.contains(",hermite,") && l.contains(&format!(",{g},1,")) && l.ends_with(",qem"))
            .unwrap_or_else(|| panic!("no row for g={g}"));
        let w: f64 = line.split(',').nth(7).unwrap().parse().unwrap();
        assert!((w / want - 1.0).abs() < 5e-3, "{g}: {w}");
    }
}

#[test]
fn free_plate_classical_column_reproduces() {
    let o = gradqem(&["reproduce", "--table", "7"]);
    assert!(o.status.success());
    assert!(!String::from_utf8_lossy(&o.stderr).contains("g label 0.00001 "));
}

#[test]
fn convergence_rows() {
    let o = gradqem(&["converge", "--bc", "ss", "--g", "0.05", "--n-min", "7", "--n-max", "10", "--modes", "3", "--with-oracle"]);
    let rows = parse(&stdout(&o));
    assert_eq!(rows.len(), 4 * 3 + 3);
    let exact = rows[12].2;
    let errs: Vec<f64> = rows[..12].iter().filter(|r| r.1 == 1).map(|r| (r.2 - exact).abs()).collect();
    assert!(errs[3] < errs[0]);
}

#[test]
fn config_file_and_out_path() {
    let cfg = scratch("cfg.json");
    let out = scratch("out.csv");
    std::fs::write(&cfg, r#"{"bc": "cantilever", "basis": "lagrange", "n": 11, "g": 0.9, "modes": 2}"#).unwrap();
    let o = gradqem(&["beam", "--config", cfg.to_str().unwrap(), "--g", "0", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let csv = std::fs::read_to_string(&out).unwrap();
    let rows = parse(&csv);
    assert_eq!(rows.len(), 2);
    assert!(csv.contains("beam-cantilever-lagrange-n11-g0,"));
    assert!((rows[0].2 / 3.516 - 1.0).abs() < 1e-3);

    std::fs::write(&cfg, r#"{"bogus": 1}"#).unwrap();
    assert_eq!(gradqem(&["beam", "--config", cfg.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn numerical_failures_map_to_two() {
    let e = gradqem_cli::CliError::from(gradqem::Error::NoConvergence);
    assert_eq!(e.exit_code(), 2);
    let e = gradqem_cli::CliError::from(gradqem::Error::InvalidInput("x".into()));
    assert_eq!(e.exit_code(), 1);
}
