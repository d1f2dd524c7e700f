// Copyright 2026 the Arcopt Authors
// SPDX-License-Identifier: Apache-2.0

use std::process::{Command, Output};

use arcopt::SolveReport;

fn arcopt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arcopt"))
        .args(args)
        .env_remove("ARC_OPT_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn polylines(svg: &str) -> Vec<Vec<(f64, f64)>> {
    svg.lines()
        .filter_map(|l| l.strip_prefix("<polyline points=\""))
        .map(|l| {
            let pts = &l[..l.find('"').unwrap()];
            pts.split(' ')
                .map(|p| {
                    let (x, y) = p.split_once(',').unwrap();
                    (x.parse().unwrap(), y.parse().unwrap())
                })
                .collect()
        })
        .collect()
}

fn turning_points(ys: &[f64]) -> usize {
    let steps: Vec<f64> = ys.windows(2).map(|w| w[1] - w[0]).filter(|d| *d != 0.0).collect();
    steps.windows(2).filter(|w| w[0].signum() != w[1].signum()).count()
}

#[test]
fn solve_reports_table_values() {
    let rep = SolveReport::from_json(&stdout(&arcopt(&["solve", "--angle", "pi/2", "--scheme", "g1"]))).unwrap();
    assert!((rep.d_star - 1.272063).abs() < 1e-5);
    assert_eq!(rep.c, 0.0);
    assert_eq!(rep.branch, "interior_balanced");
    assert!(rep.radial.is_none());
    let rep = SolveReport::from_json(&stdout(&arcopt(&["solve", "--angle", "pi/8", "--scheme", "g2"]))).unwrap();
    assert!((rep.d_star - 0.516294).abs() < 1e-5);
}

#[test]
fn solve_json_round_trips() {
    let text = stdout(&arcopt(&["solve", "--angle", "30deg", "--scheme", "g1", "--radial"]));
    let rep = SolveReport::from_json(&text).unwrap();
    assert_eq!(rep.to_json() + "\n", text);
    let radial = rep.radial.unwrap();
    assert!((radial.d_r - 0.714440).abs() < 1e-4);
}

#[test]
fn solve_text_output() {
    let text = stdout(&arcopt(&["solve", "--angle", "pi/3", "--scheme", "g0", "--text"]));
    assert!(text.contains("branch      equioscillating"));
    assert!(text.contains("extrema"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| arcopt(args).status.code();
    assert_eq!(code(&["solve", "--angle", "0", "--scheme", "g1"]), Some(1));
    assert_eq!(code(&["solve", "--angle", "2", "--scheme", "g1"]), Some(1));
    assert_eq!(code(&["solve", "--angle", "pi/x", "--scheme", "g1"]), Some(1));
    assert_eq!(code(&["solve", "--angle", "pi/3", "--scheme", "g7"]), Some(1));
    assert_eq!(code(&["solve", "--angle", "pi/3"]), Some(1));
    assert_eq!(code(&["solve", "--angle", "pi/3", "--scheme", "g1", "--bracket", "0.1,0.2"]), Some(2));
    assert_eq!(code(&["solve", "--angle", "pi/3", "--scheme", "g2", "--bracket", "0.9,1.0"]), Some(2));
    assert_eq!(code(&["solve", "--angle", "pi/3", "--scheme", "g1", "--bracket", "0.2,0.1"]), Some(1));
    assert_eq!(code(&["--help"]), Some(0));
}

#[test]
fn tolerance_flag_wins_over_environment() {
    let run = |env: &str, args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_arcopt"))
            .args(args)
            .env("ARC_OPT_TOL", env)
            .output()
            .unwrap()
            .status
            .code()
    };
    let solve = ["solve", "--angle", "pi/4", "--scheme", "g1"];
    assert_eq!(run("0", &solve), Some(1));
    assert_eq!(run("fast", &solve), Some(1));
    assert_eq!(run("1e-8", &solve), Some(0));
    // Valid but below what double precision can resolve.
    assert_eq!(run("1e-20", &solve), Some(2));
    let mut with_flag = solve.to_vec();
    with_flag.extend(["--tol", "1e-10"]);
    assert_eq!(run("0", &with_flag), Some(0));
}

#[test]
fn table_is_deterministic_and_ordered() {
    let a = stdout(&arcopt(&["table", "--scheme", "g2"]));
    let b = stdout(&arcopt(&["table", "--scheme", "g2"]));
    assert_eq!(a, b);
    let lines: Vec<&str> = a.lines().collect();
    assert_eq!(lines[0], "phi,c,d_star,curvature_error,radial_error,d_r,curvature_error_at_dr,radial_error_at_dr");
    assert_eq!(lines.len(), 7);
    assert!(lines[1].starts_with("1.5707963267949,0,1.511152,7.4347e-3,"));
    assert!(lines[6].contains(",0.507161,"));
    let single = stdout(&arcopt(&["table", "--scheme", "g2", "--angles", "pi/2"]));
    assert_eq!(single.lines().nth(1), Some(lines[1]));
}

#[test]
fn table_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g1.csv");
    let out = arcopt(&["table", "--scheme", "g1", "--angles", "pi/6,pi/12", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("wrote 2 rows"));
    let text = std::fs::read_to_string(&path).unwrap();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(&row[2..4], ["0.714105", "2.3312e-3"]);
    let quiet = arcopt(&["--quiet", "table", "--scheme", "g1", "--angles", "pi/6", "-o", path.to_str().unwrap()]);
    assert!(quiet.stderr.is_empty());
    let missing = dir.path().join("no/such/dir.csv");
    let out = arcopt(&["table", "--scheme", "g1", "--angles", "pi/6", "-o", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn plot_optimal_cubic_half_circle() {
    let svg = stdout(&arcopt(&["plot", "--angle", "pi/2", "--scheme", "g1"]));
    assert!(svg.starts_with("<svg xmlns="));
    assert!(!svg.contains("<script"));
    let lines = polylines(&svg);
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0].len(), 1024);
    let ys: Vec<f64> = lines[0].iter().map(|p| p.1).collect();
    assert_eq!(turning_points(&ys), 3);
    // SVG y grows downwards; the endpoints carry the largest error.
    let top = ys.iter().cloned().fold(f64::INFINITY, f64::min);
    assert!((ys[0] - top).abs() < 0.5 && (ys[1023] - top).abs() < 0.5);
    assert!(svg.contains("d*, interior_balanced"));
}

fn zero_line(svg: &str) -> f64 {
    svg.lines()
        .find(|l| l.contains("stroke:#888888"))
        .and_then(|l| l.split("y1=\"").nth(1))
        .map(|s| s[..s.find('"').unwrap()].parse::<f64>().unwrap())
        .expect("zero line")
}

#[test]
fn plot_radial_follows_profile() {
    let svg = stdout(&arcopt(&["plot", "--angle", "pi/3", "--scheme", "g2", "--kind", "radial"]));
    let ys: Vec<f64> = polylines(&svg)[0].iter().map(|p| p.1).collect();
    let d_star = SolveReport::from_json(&stdout(&arcopt(&["solve", "--angle", "pi/3", "--scheme", "g2"])))
        .unwrap()
        .d_star;
    let arc = arcopt::ArcSpec::from_phi(std::f64::consts::FRAC_PI_3).unwrap();
    let poly = arcopt::ControlPolygon::build(&arc, arcopt::Scheme::G2Quartic, d_star).unwrap();
    let interior = arcopt::radial_error(&poly).samples.len() - 2;
    assert_eq!(turning_points(&ys), interior);
    // At the radial optimum the deviation alternates in sign.
    let svg = stdout(&arcopt(&["plot", "--angle", "pi/3", "--scheme", "g2", "--kind", "radial", "--d", "0.631836"]));
    let zero = zero_line(&svg);
    let ys: Vec<f64> = polylines(&svg)[0].iter().map(|p| p.1).collect();
    assert!(ys.iter().any(|y| *y < zero - 1.0) && ys.iter().any(|y| *y > zero + 1.0));
}

#[test]
fn plot_overlays() {
    let svg = stdout(&arcopt(&["plot", "--angle", "pi/4", "--scheme", "g0", "--d", "1.2", "--d", "1.3"]));
    assert_eq!(polylines(&svg).len(), 2);
    assert!(svg.contains("d = 1.200000") && svg.contains("d = 1.300000"));
    let five = ["plot", "--angle", "pi/4", "--scheme", "g0", "--d", "1", "--d", "1.1", "--d", "1.2", "--d", "1.3", "--d", "1.4"];
    assert_eq!(arcopt(&five).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.svg");
    let out = arcopt(&["plot", "--angle", "pi/4", "--scheme", "g1", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(std::fs::read_to_string(path).unwrap().ends_with("</svg>\n"));
}

#[test]
fn compare_outputs() {
    let text = stdout(&arcopt(&["compare", "--angle", "pi/6", "--scheme", "g1"]));
    assert!(text.contains("curvature") && text.contains("0.714105") && text.contains("0.714440"));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&arcopt(&["--json", "compare", "--angle", "pi/6", "--scheme", "g1"]))).unwrap();
    assert_eq!(json["scheme"], "g1");
    assert!(json["d_r"].as_f64().unwrap() > json["d_star"].as_f64().unwrap());
}

#[test]
fn certify_documents() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p.to_str().unwrap().to_string()
    };
    let one = write("one.json", r#"{"degrees":[2],"basis":"standard","coeffs":[1,0,0]}"#);
    assert!(stdout(&arcopt(&["certify", &one])).starts_with("certified"));
    let square = write("sq.json", r#"{"degrees":[2],"basis":"standard","coeffs":[1,-4,4]}"#);
    let text = stdout(&arcopt(&["certify", &square]));
    assert!(text.contains("inconclusive") && text.contains("-2"), "{text}");
    let json: serde_json::Value = serde_json::from_str(&stdout(&arcopt(&["--json", "certify", &square, "--float"]))).unwrap();
    assert_eq!(json["result"], "inconclusive");
    assert_eq!(json["index"], serde_json::json!([1]));
    let bad = write("bad.json", r#"{"degrees":[2],"coeffs":[1]}"#);
    assert_eq!(arcopt(&["certify", &bad]).status.code(), Some(1));
    assert_eq!(arcopt(&["certify", "/nonexistent/file.json"]).status.code(), Some(1));
}

#[test]
fn certify_h2_instance() {
    assert!(stdout(&arcopt(&["certify", "--builtin", "h2"])).starts_with("certified"));
    let doc = stdout(&arcopt(&["certify", "--builtin", "h2", "--dump"]));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h2.json");
    std::fs::write(&path, doc).unwrap();
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&arcopt(&["--json", "certify", path.to_str().unwrap()]))).unwrap();
    assert_eq!(json["result"], "certified");
    assert_eq!(json["degrees"], serde_json::json!([11, 2]));
}
