use std::path::Path;
use std::process::{Command, Output};

use okapprox::approximants::optimal_approximant;
use okapprox::oracles::blaschke_product;
use okapprox::series::max_distance_mod_unimodular;
use okapprox::{Complex64, TaylorSeries64, WeightSequence64};
use serde_json::Value;

fn okapprox(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_okapprox"))
        .args(args)
        .env_remove("OKAPPROX_TRUNCATION")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = okapprox(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn num(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

fn complex_vec(v: &Value) -> Vec<Complex64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|p| Complex64::new(num(&p[0]), num(&p[1])))
        .collect()
}

#[test]
fn approx_product_half() {
    let v = json(&["approx", "--space", "hardy", "--f", "product:0.5", "--degree", "2"]);
    let want = [3.0 / 8.0, 1.0 / 4.0, 1.0 / 8.0];
    let got = complex_vec(&v["coeffs"]);
    assert_eq!(got.len(), 3);
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).norm() < 1e-10, "{g} vs {w}");
    }
    assert_eq!(v["degree"], 2);
    assert!(v["residual"].is_number() && v["condition"].is_number());
}

#[test]
fn approx_constant_one() {
    let v = json(&["approx", "--space", "hardy", "--f", "const:1", "--degree", "0"]);
    assert_eq!(complex_vec(&v["coeffs"]), vec![Complex64::new(1.0, 0.0)]);
    assert_eq!(num(&v["residual"]), 0.0);
}

#[test]
fn approx_dirichlet_matches_library_bit_for_bit() {
    let v = json(&["approx", "--space", "dirichlet", "--f", "one-minus-z", "--degree", "5"]);
    let f = TaylorSeries64::polynomial(vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]);
    let lib = optimal_approximant(&f, 5, &WeightSequence64::dirichlet()).unwrap();
    assert_eq!(num(&v["residual"]).to_bits(), lib.residual_norm.to_bits());
    assert_eq!(complex_vec(&v["coeffs"]), lib.coeffs);
}

#[test]
fn dist_bergman_singleton() {
    let v = json(&["dist", "--space", "bergman", "--points", "0.5"]);
    for route in ["gram", "value", "approximant"] {
        assert!((num(&v[route]) - 0.5625).abs() < 1e-12, "{route}: {}", v[route]);
    }
    assert!(num(&v["max_discrepancy"]) < 1e-12);
}

#[test]
fn inner_check_blaschke_factor() {
    let v = json(&["inner-check", "--space", "hardy", "--f", "blaschke:0.5"]);
    assert_eq!(v["verdict"], true);
    let v = json(&["inner-check", "--space", "hardy", "--f", "one-minus-z"]);
    assert_eq!(v["verdict"], false);
}

#[test]
fn ss_pair_is_blaschke_product() {
    let v = json(&["ss", "--space", "hardy", "--points", "0.5,-0.5"]);
    let g = TaylorSeries64::from_coeffs(complex_vec(&v["g_z"]["coeffs"]));
    let zeros = [Complex64::new(0.5, 0.0), Complex64::new(-0.5, 0.0)];
    let b = blaschke_product(&zeros, g.degree()).unwrap();
    assert!(max_distance_mod_unimodular(&g, &b) < 1e-8);
    assert_eq!(v["cofactors"].as_array().unwrap().len(), 3);
    for route in ["gram", "value", "approximant"] {
        assert!((num(&v["distances"][route]) - 0.9375).abs() < 1e-8);
    }
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        &["ss", "--space", "dalpha=0.5", "--points", "0.3+0.4i,-0.5"][..],
        &["approx", "--space", "bergman", "--f", "bergman-point:0.5", "--degree", "3"],
    ] {
        let a = okapprox(args);
        let b = okapprox(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

fn write(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_str().unwrap().to_string();
    let mut full = args.to_vec();
    full.extend(["--out", &path]);
    let out = okapprox(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn emitted_json_reads_back() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();

    // ss output as a function source and as a point set
    let ss = write(d, "ss.json", &["ss", "--points", "0.3+0.4i,-0.5+0.2i"]);
    let v = json(&["inner-check", "--f", &ss]);
    assert_eq!(v["verdict"], true);
    let dist = json(&["dist", "--points", &ss]);
    assert!((num(&dist["gram"]) - num(&dist["closed_form"])).abs() < 1e-12);

    // approximant output as a function source
    let p = write(d, "p.json", &["approx", "--f", "one-minus-z", "--degree", "3"]);
    let v = json(&["approx", "--f", &p, "--degree", "0"]);
    assert_eq!(v["degree"], 0);

    // kernel series and Gram output
    let k = write(d, "k.json", &["kernel", "--at", "0.5i", "--truncation", "60"]);
    let v = json(&["inner-check", "--f", &k]);
    assert!((num(&v["norm_defect"]) - ((4.0f64 / 3.0).sqrt() - 1.0)).abs() < 1e-12);
    let gram = write(d, "gram.json", &["kernel", "--points", "0.5,0.5i"]);
    let v = json(&["kernel", "--points", &gram]);
    assert_eq!(v["entries"].as_array().unwrap().len(), 2);

    // dist output as a point set
    let dd = write(d, "dist.json", &["dist", "--space", "bergman", "--points", "0.5,-0.25"]);
    let v = json(&["ss", "--space", "bergman", "--points", &dd]);
    assert_eq!(v["points"].as_array().unwrap().len(), 2);
}

#[test]
fn custom_space_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    let weights: Vec<f64> = (0..200).map(|k| 1.0 / (k + 1) as f64).collect();
    std::fs::write(&path, serde_json::to_string(&weights).unwrap()).unwrap();
    let space = format!("custom={}", path.display());
    let custom = json(&["dist", "--space", &space, "--points", "0.3"]);
    let bergman = json(&["dist", "--space", "bergman", "--points", "0.3"]);
    assert!((num(&custom["gram"]) - num(&bergman["gram"])).abs() < 1e-12);
}

#[test]
fn csv_outputs() {
    let out = okapprox(&["sweep", "singleton", "--spaces", "hardy,bergman", "--radii", "0.1:0.9:5", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "space,radius,gram,value,approximant,closed_form");
    assert_eq!(lines.len(), 11);
    for line in &lines[1..] {
        let cells: Vec<&str> = line.split(',').collect();
        let r: f64 = cells[1].parse().unwrap();
        let gram: f64 = cells[2].parse().unwrap();
        let closed: f64 = cells[5].parse().unwrap();
        let want = if cells[0] == "hardy" { 1.0 - r * r } else { (1.0 - r * r).powi(2) };
        assert!((gram - want).abs() < 1e-12 && (closed - want).abs() < 1e-12);
    }

    let out = okapprox(&["sweep", "residuals", "--f", "one-minus-z", "--max-degree", "4", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let residual_sq: Vec<f64> = text.lines().skip(1).map(|l| l.split(',').nth(3).unwrap().parse().unwrap()).collect();
    assert_eq!(residual_sq.len(), 5);
    assert!((residual_sq[1] - 1.0 / 3.0).abs() < 1e-12);
    assert!(residual_sq.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn exit_codes() {
    assert_eq!(okapprox(&["dist", "--points", "1.5"]).status.code(), Some(2));
    assert_eq!(okapprox(&["approx", "--f", "nonsense", "--degree", "1"]).status.code(), Some(2));
    assert_eq!(okapprox(&["approx", "--f", "const:1"]).status.code(), Some(2));
    assert_eq!(okapprox(&["dist", "--space", "sobolev", "--points", "0.5"]).status.code(), Some(2));
    assert_eq!(okapprox(&["dist", "--points", "0.9,0.9+1e-9i"]).status.code(), Some(3));
}

#[test]
fn truncation_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_okapprox"))
        .args(["kernel", "--at", "0.5"])
        .env("OKAPPROX_TRUNCATION", "7")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["degree"], 7);
}
