use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn dgfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dgfree"))
        .args(args)
        .env_remove("DGFREE_MAX_DEGREE")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad JSON ({e}): {}\n{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn crisscross_presets_and_files() {
    let out = dgfree(&["check-crisscross", "a1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["crisscross"], true);

    let dir = tempfile::tempdir().unwrap();
    let zero = write(
        dir.path(),
        "zero.json",
        r#"{"field": {"kind": "rational"}, "generators": 2, "matrices": [[[0,0],[0,0]], [[0,0],[0,0]]]}"#,
    );
    assert_eq!(dgfree(&["check-crisscross", &zero]).status.code(), Some(0));

    // dx1 = x1 x2 is not square-zero
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"field": {"kind": "rational"}, "generators": 2, "matrices": [[[0,1],[0,0]], [[0,0],[0,0]]]}"#,
    );
    let out = dgfree(&["check-crisscross", &bad]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["crisscross"], false);
    assert_eq!(v["d_squared_zero"], false);
    assert!(v["witness"]["i"].is_number());

    let broken = write(dir.path(), "broken.json", "{ not json");
    assert_eq!(
        dgfree(&["check-crisscross", &broken]).status.code(),
        Some(2)
    );
    assert_eq!(
        dgfree(&["check-crisscross", "/nonexistent/file.json"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn prime_field_algebra_file() {
    let dir = tempfile::tempdir().unwrap();
    let a1 = write(
        dir.path(),
        "a1p.json",
        r#"{"field": {"kind": "prime", "p": 7}, "generators": 3,
            "matrices": [[[0,0,0],[0,0,0],[0,0,1]], [[0,0,0],[0,1,0],[0,0,0]], [[0,0,0],[0,0,0],[0,0,0]]]}"#,
    );
    let out = dgfree(&["cohomology", &a1, "--max-degree", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["field"], "F_7");
    for d in v["degrees"].as_array().unwrap() {
        assert_eq!(d["dim"], 1);
    }
    let two = write(
        dir.path(),
        "f2.json",
        r#"{"field": {"kind": "prime", "p": 2}, "generators": 1, "matrices": [[[0]]]}"#,
    );
    assert_eq!(dgfree(&["check-crisscross", &two]).status.code(), Some(2));
}

#[test]
fn cohomology_reports() {
    let out = dgfree(&["cohomology", "a1", "--max-degree", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let degrees = v["degrees"].as_array().unwrap();
    assert_eq!(degrees.len(), 7);
    assert!(degrees.iter().all(|d| d["dim"] == 1));
    assert_eq!(degrees[2]["basis"][0], "x1*x3 + x3*x1");

    let out = dgfree(&[
        "cohomology",
        "a2",
        "--max-degree",
        "5",
        "--verify-presentation",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["presentation"]["all_pass"], true);

    let out = dgfree(&["cohomology", "a1", "--max-degree", "12"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("12"));

    let out = Command::new(env!("CARGO_BIN_EXE_dgfree"))
        .args(["cohomology", "a1", "--max-degree", "11"])
        .env("DGFREE_MAX_DEGREE", "11")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn wrong_presentation_fails() {
    let dir = tempfile::tempdir().unwrap();
    // claims the degree-one generator is zero
    let pres = write(
        dir.path(),
        "pres.json",
        r#"{"generators": [{"name": "u", "representative": "x3"}], "relations": [["u"]]}"#,
    );
    let out = dgfree(&[
        "cohomology",
        "a1",
        "--max-degree",
        "3",
        "--verify-presentation",
        &pres,
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["presentation"]["all_pass"], false);
}

#[test]
fn resolutions() {
    for (alg, module) in [("a1", "f1"), ("a2", "f2")] {
        let out = dgfree(&["resolution", alg, "--module", module]);
        assert_eq!(out.status.code(), Some(0), "{alg}/{module}");
        let v = json(&out);
        assert_eq!(v["koszul"]["status"], "issued");
        assert_eq!(v["homology_dims"], serde_json::json!([1, 0, 0, 0, 0, 0, 0]));
    }
    assert_eq!(
        dgfree(&["resolution", "a2", "--module", "f1"])
            .status
            .code(),
        Some(2)
    );

    let dir = tempfile::tempdir().unwrap();
    // f1 with D31 = x2 instead of x1
    let corrupted = write(
        dir.path(),
        "f1bad.json",
        r#"{"algebra": "a1", "rank": 3, "labels": ["1", "e_x3", "e_z"],
            "connection": [["0","0","0"], ["x3","0","0"], ["x2","x3","0"]]}"#,
    );
    let out = dgfree(&["resolution", "a1", "--module", &corrupted]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["maurer_cartan"]["holds"], false);
    assert_eq!(v["koszul"]["status"], "refused");
}

#[test]
fn ext_and_aut() {
    let out = dgfree(&["ext", "a1", "--module", "f1", "--aut", "--prime", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["ext_dim"], 3);
    assert_eq!(v["recognized"], "k[X]/(X^3)");
    assert_eq!(v["frobenius"]["symmetric"], true);
    assert_eq!(v["aut"]["brute_force"]["count"], 20);
    assert_eq!(v["aut"]["brute_force"]["matches_family"], true);

    let out = dgfree(&["ext", "a2", "--module", "f2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["ext_dim"], 4);
    assert_eq!(v["recognized"], "k[X]/(X^4)");
    assert!(v.get("aut").is_none());

    assert_eq!(
        dgfree(&["ext", "a1", "--module", "f1", "--aut", "--prime", "4"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn dpic_compare() {
    let out = dgfree(&["dpic-compare", "--prime", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "DPic(A1) != DPic(A2)");
    assert_eq!(
        (v["census"]["g1"].as_u64(), v["census"]["g2"].as_u64()),
        (Some(2), Some(4))
    );
    assert!(v["symbolic_checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["pass"] == true));

    let out = dgfree(&["dpic-compare", "--prime", "7"]);
    assert_eq!(json(&out)["verdict"], "DPic(A1) != DPic(A2)");

    let out = dgfree(&["dpic-compare", "--left", "g1", "--right", "g1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "indistinguishable by this invariant");

    assert_eq!(
        dgfree(&["dpic-compare", "--prime", "4"]).status.code(),
        Some(2)
    );
}

#[test]
fn output_file_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = dgfree(&[
            "ext",
            "a2",
            "--module",
            "f2",
            "--seed",
            "3",
            "--output",
            p.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let first = dgfree(&["dpic-compare", "--seed", "9"]).stdout;
    assert_eq!(first, dgfree(&["dpic-compare", "--seed", "9"]).stdout);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(dgfree(&[]).status.code(), Some(2));
    assert_eq!(dgfree(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(dgfree(&["resolution", "a1"]).status.code(), Some(2));
}
