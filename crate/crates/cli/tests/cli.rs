use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn ising(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ising"))
        .args(args)
        .env("ISING_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

const GOLDEN: &[(&str, &[&str])] = &[
    ("orders_n2", &["orders", "--n", "2"]),
    ("orders_series", &["orders", "--n", "6", "--series"]),
    ("eval_word_cz", &["eval-word", "--n", "2", "--parity", "+", "--word", "1 3 -5"]),
    ("eval_word_cz_text", &["eval-word", "--n", "2", "--word", "1 3 -5", "--format", "text"]),
    ("gen_matrix_r2_pretty", &["gen-matrix", "--n", "1", "--j", "2", "--pretty"]),
    ("reach_swap12", &["reach", "--n", "3", "--target", "swap:1,2"]),
    ("reach_census", &["reach", "--n", "3", "--census"]),
    ("synth_cz", &["synth", "--n", "2", "--target", "cz:1,2"]),
    ("synth_swap", &["synth", "--n", "2", "--target", "swap:1,2"]),
    ("synth_swap13", &["synth", "--n", "3", "--target", "swap:1,3"]),
    ("synth_t", &["synth", "--n", "1", "--target", "t:1"]),
    ("clifford_check_word", &["clifford-check", "--n", "2", "--word", "1 2 -3"]),
    ("symplectic_n2", &["symplectic", "--n", "2", "--tilde"]),
    ("enumerate_b6", &["enumerate", "--n", "2"]),
    ("enumerate_b6_projective", &["enumerate", "--n", "2", "--parity", "-", "--mode", "projective"]),
    ("enumerate_monodromy_n3", &["enumerate", "--n", "3", "--group", "monodromy"]),
    ("monodromy_n2", &["monodromy-check", "--n", "2"]),
    ("faithfulness_n3", &["faithfulness", "--n", "3"]),
    ("fusion_8", &["fusion", "--num-sigma", "8", "--paths"]),
    ("verify_n1", &["verify-relations", "--n", "1"]),
];

#[test]
fn golden_outputs_are_stable() {
    let bless = std::env::var("ISING_BLESS").is_ok_and(|v| v == "1");
    for (name, args) in GOLDEN {
        let path = golden_dir().join(format!("{name}.out"));
        let first = ising(args, "1");
        assert!(first.status.success(), "{name}: {}", String::from_utf8_lossy(&first.stderr));
        if bless {
            fs::write(&path, &first.stdout).unwrap();
            continue;
        }
        let want = fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(first.stdout, want, "{name} differs from golden output");
        for threads in ["1", "4"] {
            assert_eq!(ising(args, threads).stdout, want, "{name} with {threads} threads");
        }
    }
}

#[test]
fn relations_verify_through_three_qubits() {
    for n in ["1", "2", "3"] {
        let out = ising(&["verify-relations", "--n", n], "2");
        assert_eq!(out.status.code(), Some(0), "n={n}");
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["passed"], true);
        assert_eq!(v["reports"].as_array().unwrap().len(), 2);
    }
}

#[test]
fn documented_examples() {
    let v: serde_json::Value = serde_json::from_slice(&ising(&["orders", "--n", "2"], "1").stdout).unwrap();
    assert_eq!(v["projective_clifford"], 11520);
    assert_eq!(v["braid_image"], 46080);
    let v: serde_json::Value =
        serde_json::from_slice(&ising(&["reach", "--n", "3", "--target", "swap:1,2"], "1").stdout).unwrap();
    assert_eq!(v["verdict"], "obstruction");
    let v: serde_json::Value =
        serde_json::from_slice(&ising(&["eval-word", "--n", "2", "--parity", "+", "--word", "1 3 -5"], "1").stdout)
            .unwrap();
    let diag: Vec<i64> = (0..4).map(|i| v["matrix"]["entries"][i][i][0].as_i64().unwrap()).collect();
    assert_eq!(diag, [1, 1, 1, -1]);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["frobnicate"] as &[&str],
        &["orders"],
        &["synth", "--n", "2", "--target", "nope:1"],
        &["eval-word", "--n", "2", "--word", "1 x"],
        &["gen-matrix", "--n", "1", "--j", "9"],
        &["enumerate", "--n", "3"],
        &["clifford-check", "--n", "1"],
    ] {
        let out = ising(args, "1");
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn matrix_file_targets() {
    let path = std::env::temp_dir().join(format!("ising-target-{}.json", std::process::id()));
    let swap = r#"{"dim":4,"entries":[
        [[1,0,0,0,0],[0,0,0,0,0],[0,0,0,0,0],[0,0,0,0,0]],
        [[0,0,0,0,0],[0,0,0,0,0],[1,0,0,0,0],[0,0,0,0,0]],
        [[0,0,0,0,0],[1,0,0,0,0],[0,0,0,0,0],[0,0,0,0,0]],
        [[0,0,0,0,0],[0,0,0,0,0],[0,0,0,0,0],[1,0,0,0,0]]]}"#;
    fs::write(&path, swap).unwrap();
    let p = path.to_str().unwrap();
    let by_file = ising(&["synth", "--n", "2", "--target", p], "1");
    let by_name = ising(&["synth", "--n", "2", "--target", "swap:1,2"], "1");
    fs::remove_file(&path).unwrap();
    let a: serde_json::Value = serde_json::from_slice(&by_file.stdout).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&by_name.stdout).unwrap();
    assert_eq!(a["word"], b["word"]);
    assert_eq!(a["verdict"], "realizable");
}
