use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::tempdir;

use spectral_preservers::json;
use spectral_preservers::superop::{canonical_map, partial_transpose_map, CanonicalForm, Flag, PreserverMap, Sign};
use spectral_preservers::tensor::DimProfile;

fn spres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spres"))
        .args(args)
        .output()
        .expect("spres should run")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout should be one JSON document")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_map(path: &Path, phi: &PreserverMap) {
    fs::write(path, json::to_json_string(&json::map_to_value(phi))).unwrap();
}

#[test]
fn gen_unitary_is_byte_identical_across_runs() {
    let dir = tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let out = spres(&["gen", "unitary", "--n", "4", "--seed", "1", "--out", path_str(p)]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let u = json::matrix_from_value(&json::parse(&fs::read_to_string(&a).unwrap(), "").unwrap(), "").unwrap();
    assert!(u.unitarity_deviation() < 1e-12);
    // no stray temp files left behind
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn gen_canonical_reproducible_and_seed_sensitive() {
    let run = |seed: &str| spres(&["gen", "canonical", "--dims", "2,3", "--seed", seed]).stdout;
    assert_eq!(run("7"), run("7"));
    assert_ne!(run("7"), run("8"));
    let form =
        json::canonical_from_value(&json::parse(std::str::from_utf8(&run("7")).unwrap(), "").unwrap(), "").unwrap();
    assert_eq!(form.profile().dims(), &[2, 3]);
}

#[test]
fn gen_certificate_contains_c0() {
    let out = spres(&["gen", "certificate", "--dims", "2,2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let c = json::matrix_from_value(&v["certificates"][0], "certificates[0]").unwrap();
    for i in 0..4 {
        for j in 0..4 {
            let corner = (i == 0 || i == 3) && (j == 0 || j == 3);
            assert_eq!(c[(i, j)].re, if corner { 1.0 } else { 0.0 });
            assert_eq!(c[(i, j)].im, 0.0);
        }
    }
}

#[test]
fn check_canonical_file_passes_spectrum_mode() {
    let dir = tempdir().unwrap();
    let f = dir.path().join("form.json");
    let out = spres(&[
        "gen",
        "canonical",
        "--dims",
        "2,2",
        "--flags",
        "t,id",
        "--seed",
        "3",
        "--out",
        path_str(&f),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = spres(&[
        "check",
        path_str(&f),
        "--dims",
        "2,2",
        "--mode",
        "spectrum",
        "--samples",
        "50",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "pass");
    assert!(v["first_counterexample"].is_null());
}

#[test]
fn check_global_on_partial_transpose_cites_c0() {
    let dir = tempdir().unwrap();
    let f = dir.path().join("pt.json");
    let p = DimProfile::new(vec![2, 2]).unwrap();
    write_map(&f, &partial_transpose_map(&p, 1).unwrap());
    let out = spres(&[
        "check",
        path_str(&f),
        "--dims",
        "2,2",
        "--mode",
        "global",
        "--samples",
        "20",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "fail");
    let ce = &v["first_counterexample"];
    assert!(ce["source"].as_str().unwrap().starts_with("certificate 1"));
    let c = json::matrix_from_value(&ce["factors"][0], "").unwrap();
    assert_eq!(c[(0, 3)].re, 1.0);
    assert_eq!(c[(1, 1)].re, 0.0);
    let out_spec: Vec<f64> = ce["output_spectrum"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    for (got, want) in out_spec.iter().zip([1.0, 1.0, 1.0, -1.0]) {
        assert!((got - want).abs() < 1e-12);
    }
}

#[test]
fn check_rejects_mismatched_dims_and_bad_json() {
    let dir = tempdir().unwrap();
    let f = dir.path().join("id.json");
    write_map(&f, &PreserverMap::identity(4));
    let out = spres(&["check", path_str(&f), "--dims", "2,3"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["error"]["kind"], "usage");

    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"N": 2, "basis": "herm-v1", "matrix": [[1,0,0,0],[0,1,0,0],[0,0,"x",0],[0,0,0,1]]}"#,
    )
    .unwrap();
    let out = spres(&["check", path_str(&bad), "--dims", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let v = stdout_json(&out);
    assert_eq!(v["error"]["kind"], "format");
    assert_eq!(v["error"]["field"], "matrix[2][2]");
    assert!(String::from_utf8_lossy(&out.stderr).contains("matrix[2][2]"));

    fs::write(&bad, "{not json").unwrap();
    assert_eq!(spres(&["check", path_str(&bad), "--dims", "2"]).status.code(), Some(2));
}

#[test]
fn decompose_round_trips_generated_form() {
    let dir = tempdir().unwrap();
    let f = dir.path().join("form.json");
    spres(&[
        "gen",
        "canonical",
        "--dims",
        "2,2,2",
        "--flags",
        "t,id,t",
        "--sign",
        "-1",
        "--seed",
        "12",
        "--out",
        path_str(&f),
    ]);
    let out = spres(&["decompose", path_str(&f), "--dims", "2,2,2", "--mode", "radius"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["outcome"], "success");
    assert_eq!(v["form"]["flags"], serde_json::json!(["t", "id", "t"]));
    assert_eq!(v["form"]["sign"], -1);
    assert!(v["residual"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn decompose_rejects_perturbed_map() {
    let dir = tempdir().unwrap();
    let f = dir.path().join("perturbed.json");
    let p = DimProfile::new(vec![2, 2]).unwrap();
    let form = CanonicalForm::random(&p, Sign::Plus, vec![Flag::Identity; 2], 4).unwrap();
    let phi = canonical_map(&form).unwrap();
    let noise: Vec<f64> = (0..256).map(|i| if i % 17 == 5 { 1e-3 } else { 0.0 }).collect();
    write_map(&f, &phi.add(&PreserverMap::from_matrix(4, noise).unwrap()).unwrap());
    let out = spres(&["decompose", path_str(&f), "--dims", "2,2"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["outcome"], "failure");
    assert!(v["best_residual"].as_f64().unwrap() >= 1e-4);
}

#[test]
fn decompose_rejects_too_many_factors() {
    let dir = tempdir().unwrap();
    let f = dir.path().join("id.json");
    write_map(&f, &PreserverMap::identity(8));
    let out = spres(&["decompose", path_str(&f), "--dims", "2,2,2", "--max-parties", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn norm_and_schmidt() {
    let dir = tempdir().unwrap();
    let w = dir.path().join("bell.json");
    let h = std::f64::consts::FRAC_1_SQRT_2;
    fs::write(
        &w,
        format!(r#"{{"len": 4, "data": [[{h}, 0], [0, 0], [0, 0], [{h}, 0]]}}"#),
    )
    .unwrap();
    let out = spres(&["norm", path_str(&w), "--m", "2", "--n", "2", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!((stdout_json(&out)["value"].as_f64().unwrap() - h).abs() < 1e-9);
    assert_eq!(
        spres(&["norm", path_str(&w), "--m", "2", "--n", "2", "--k", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        spres(&["norm", path_str(&w), "--m", "2", "--n", "2", "--k", "0"])
            .status
            .code(),
        Some(2)
    );

    let prod = dir.path().join("prod.json");
    fs::write(&prod, r#"{"len": 4, "data": [[0.6, 0], [0.8, 0], [0, 0], [0, 0]]}"#).unwrap();
    let out = spres(&["schmidt", path_str(&prod), "--m", "2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["rank"], 1);
}
