use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_wyko");

fn wyko(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .output()
        .expect("failed to run wyko")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn field(line: &str, k: usize) -> f64 {
    line.split(',').nth(k).unwrap().parse().unwrap()
}

#[test]
fn theta1d_row_at_chi() {
    let out = wyko(&["sweep", "--mode", "theta1d", "--grid", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "theta,tau4,tau48,bell,tau_from_violation,consistent"
    );
    assert_eq!(lines.len(), 6);
    let chi = lines[3];
    assert!(chi.starts_with("0.785398163397,"));
    assert_eq!(field(chi, 2), 1.0);
    assert_eq!(field(chi, 3), 4.0);
    assert!(lines[1..].iter().all(|l| l.ends_with(",1")));
}

#[test]
fn family2d_corner_row() {
    let out = wyko(&["sweep", "--mode", "family2d", "--grid", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "theta1,theta2,tau4,tau48,bell,consistent");
    assert_eq!(lines.len(), 10);
    let corner = lines[3];
    assert!(corner.starts_with("0.000000000000,1.570796326795,"));
    assert_eq!(field(corner, 2), 1.0);
    assert!(lines[1..].iter().all(|l| l.ends_with(",1")));
}

#[test]
fn csv_output_is_byte_stable_and_file_matches_stdout() {
    let dir = tempdir();
    let path = dir.join("theta.csv");
    let a = wyko(&["sweep", "--mode", "family2d", "--grid", "21"]);
    let b = wyko(&["sweep", "--mode", "family2d", "--grid", "21", "--out", "-"]);
    let c = wyko(&[
        "sweep",
        "--mode",
        "family2d",
        "--grid",
        "21",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(c.status.success());
    assert!(c.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
    assert!(a.stdout.ends_with(b"\n"));
    assert!(!a.stdout.contains(&b'\r'));
    std::fs::remove_dir_all(dir).unwrap();
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("wyko-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn exit_codes() {
    assert_eq!(wyko(&["verify"]).status.code(), Some(0));
    assert_eq!(
        wyko(&["state", "--theta1", "6.283185307", "--theta2", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        wyko(&["state", "--theta1", "-0.5", "--theta2", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(wyko(&["sweep", "--grid", "1"]).status.code(), Some(2));
    assert_eq!(wyko(&["sweep", "--mode", "bogus"]).status.code(), Some(2));
    assert_eq!(wyko(&["optimize", "--theta", "2"]).status.code(), Some(2));
    assert_eq!(wyko(&["frobnicate"]).status.code(), Some(2));
    let bad = wyko(&[
        "sweep",
        "--grid",
        "3",
        "--out",
        "/nonexistent-dir/x/out.csv",
    ]);
    assert_eq!(bad.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("error"));
}

#[test]
fn verify_report_lines() {
    let out = wyko(&["verify"]);
    let text = stdout(&out);
    let relation = text
        .lines()
        .find(|l| l.contains("tau48 from violation"))
        .expect("relation check line");
    assert!(relation.starts_with("PASS"));
    let err: f64 = relation
        .split("max_err=")
        .nth(1)
        .unwrap()
        .split_whitespace()
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!(err < 1e-10);
    let chi = text
        .lines()
        .find(|l| l.contains("<chi|B|chi> = 4"))
        .unwrap();
    let err: f64 = chi
        .split("max_err=")
        .nth(1)
        .unwrap()
        .split_whitespace()
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!(chi.starts_with("PASS") && err <= 1e-12);
    assert!(!text.contains("FAIL"));
}

#[test]
fn degrees_flag_converts_at_the_boundary() {
    let deg = wyko(&["state", "--theta1", "45", "--theta2", "45", "--degrees"]);
    let rad = wyko(&[
        "state",
        "--theta1",
        "0.7853981633974483",
        "--theta2",
        "0.7853981633974483",
    ]);
    assert!(deg.status.success());
    assert_eq!(deg.stdout, rad.stdout);
    // Without the flag, 45 is radians and out of range.
    assert_eq!(
        wyko(&["state", "--theta1", "45", "--theta2", "45"])
            .status
            .code(),
        Some(2)
    );
    let opt = wyko(&[
        "optimize",
        "--theta",
        "22.5",
        "--degrees",
        "--restarts",
        "4",
    ]);
    assert!(opt.status.success());
}

#[test]
fn state_report_shows_numeric_and_closed_side_by_side() {
    let out = wyko(&["state", "--theta1", "0.3", "--theta2", "1.1"]);
    let text = stdout(&out);
    for q in ["tau4", "tau48", "<B>"] {
        let line = text.lines().find(|l| l.starts_with(q)).unwrap();
        let v: Vec<f64> = line
            .split_whitespace()
            .skip(1)
            .map(|x| x.parse().unwrap())
            .collect();
        assert_eq!(v.len(), 2);
        assert!((v[0] - v[1]).abs() < 1e-10, "{line}");
    }
}

#[test]
fn optimize_report_for_chi() {
    let out = wyko(&[
        "optimize",
        "--theta",
        "0.7853981633974483",
        "--restarts",
        "20",
        "--seed",
        "7",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let best: f64 = text
        .lines()
        .find(|l| l.starts_with("best <B>"))
        .and_then(|l| l.split('=').nth(1))
        .and_then(|v| v.split_whitespace().next())
        .unwrap()
        .parse()
        .unwrap();
    assert!(best >= 4.0 - 1e-6);
    assert_eq!(
        text.lines()
            .filter(|l| l.trim_start().starts_with(['A', 'B', 'C', 'D']))
            .count(),
        8
    );
}
