use std::process::{Command, Output};

fn liouville(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liouville")).args(args).output().expect("binary runs")
}

fn stdout_lines(o: &Output) -> Vec<String> {
    String::from_utf8(o.stdout.clone()).unwrap().lines().map(String::from).collect()
}

#[test]
fn coeffs_two_letters_degree_two() {
    let o = liouville(&["coeffs", "--letters", "2", "--max-degree", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout_lines(&o),
        [
            "word,closed_form,oracle,match",
            "A,1,1,true",
            "B,1,1,true",
            "AB,1/2,1/2,true",
            "BA,-1/2,-1/2,true",
        ]
    );
}

#[test]
fn coeffs_two_letters_degree_four_has_eight_rows() {
    let o = liouville(&["coeffs", "--letters", "2", "--max-degree", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = stdout_lines(&o);
    assert_eq!(lines.len(), 9);
    assert!(lines[1..].iter().all(|l| l.ends_with(",true")));
}

#[test]
fn coeffs_three_letters_endpoint_row() {
    let o = liouville(&["coeffs", "--letters", "3", "--max-degree", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout_lines(&o).contains(&"X1X2X3,1/3,1/3,true".to_string()));
}

#[test]
fn verify_default_sweep_passes() {
    let o = liouville(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let lines = stdout_lines(&o);
    assert!(lines.contains(&"F_divergence_signaled,2.0,exact,pass".to_string()));
    assert!(lines.contains(&"ML_antisymmetric,1.0,exact,pass".to_string()));
    assert!(lines.iter().any(|l| l.starts_with("log_vs_generator,1.0,")));
}

#[test]
fn verify_second_order() {
    let o = liouville(&["verify", "--scheme", "second", "--x-range", "0.1:2.5:0.2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn simulate_period_six_exact() {
    let o = liouville(&["simulate", "--x", "1", "--steps", "6", "--exact"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = stdout_lines(&o);
    assert_eq!(lines[0], "step,p,q,shadow_energy,p2_plus_q2");
    let last: Vec<&str> = lines[6 + 1].split(',').collect();
    assert_eq!(last[0], "6");
    assert_eq!(last[1], "1.0000000000000000e0");
    assert_eq!(last[2], "0.0000000000000000e0");
}

#[test]
fn simulate_hyperbolic_keeps_shadow_energy() {
    let o = liouville(&["simulate", "--x", "3", "--steps", "50", "--exact"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = stdout_lines(&o);
    let rows: Vec<Vec<&str>> = lines[1..].iter().map(|l| l.split(',').collect()).collect();
    assert!(rows.iter().all(|r| r[3] == rows[0][3]));
    let norm = |r: &Vec<&str>| r[4].parse::<f64>().unwrap();
    assert!(norm(&rows[50]) > 1e40 * norm(&rows[0]));
}

#[test]
fn simulate_zero_step_is_stationary() {
    let o = liouville(&["simulate", "--x", "0", "--steps", "5", "--p0", "0.3", "--q0", "-1/2"]);
    let lines = stdout_lines(&o);
    let body: Vec<&str> = lines[1..].iter().map(|l| l.split_once(',').unwrap().1).collect();
    assert!(body.iter().all(|b| *b == body[0]));
}

#[test]
fn exact_overflow_truncates_with_warning() {
    let o = liouville(&["simulate", "--x", "3", "--steps", "3000", "--exact"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = stdout_lines(&o);
    assert!(lines.last().unwrap().starts_with("warning,"));
    assert!(lines.len() < 3002);
}

#[test]
fn sweep_boundary_rows() {
    let o = liouville(&["sweep", "--x-range", "1:3:1"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = stdout_lines(&o);
    assert_eq!(lines[0], "x,trace,stability,spectral_radius,shadow_det,F,theta");
    assert!(lines[1].starts_with("1.0,1.0,Elliptic,1.0,0.1875,"));
    assert!(lines[2].starts_with("2.0,-2.0,Parabolic,1.0,0.0,DIVERGENT,"));
    assert!(lines[3].starts_with("3.0,-7.0,Hyperbolic,"));
}

#[test]
fn default_sweep_has_31_rows() {
    let o = liouville(&["sweep"]);
    assert_eq!(stdout_lines(&o).len(), 32);
}

#[test]
fn shadow_exact_residuals_are_zero() {
    let o = liouville(&["shadow", "--x", "5/2", "--steps", "30", "--exact"]);
    assert_eq!(o.status.code(), Some(0));
    let zero = "0.0000000000000000e0";
    for l in &stdout_lines(&o)[1..] {
        let c: Vec<&str> = l.split(',').collect();
        assert_eq!((c[3], c[6]), (zero, zero), "{l}");
    }
}

#[test]
fn output_is_deterministic_and_file_output_matches() {
    let a = liouville(&["sweep", "--scheme", "second"]);
    let b = liouville(&["sweep", "--scheme", "second"]);
    assert_eq!(a.stdout, b.stdout);
    let dir = std::env::temp_dir().join(format!("liouville-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sweep.csv");
    let c = liouville(&["sweep", "--scheme", "second", "--out", path.to_str().unwrap()]);
    assert_eq!(c.status.code(), Some(0));
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["sweep", "--x-range", "3:0:0.1"][..],
        &["sweep", "--x-range", "0:1:0"],
        &["coeffs", "--letters", "4"],
        &["coeffs", "--letters", "2", "--max-degree", "1"],
        &["simulate", "--steps", "0"],
        &["simulate", "--x-range", "0:1:0.5"],
        &["sweep", "--tol", "0"],
        &["verify", "--x", "abc"],
        &["frobnicate"],
    ] {
        let o = liouville(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}
