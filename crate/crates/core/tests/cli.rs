use std::process::Command;

use gradus::cli::{exit_code, run_with_args};
use gradus::error::Error;
use serde_json::Value;

const FERMAT: &str = "x0^3 + x1^3 + x2^3 + x3^3 + x4^3";

fn run(args: &[&str]) -> (i32, Vec<u8>, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("gradus").chain(args.iter().copied());
    let code = run_with_args(argv, &mut out, &mut err);
    (code, out, String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--output", "json"];
    full.extend_from_slice(args);
    let (code, out, err) = run(&full);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_slice(&out).unwrap()
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_gradus");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code().unwrap();
    assert_eq!(status(&["--help"]), 0);
    assert_eq!(status(&["special-q"]), 0);
    assert_eq!(status(&["smooth", "-f", "x0^3 +* x1"]), 1);
    assert_eq!(status(&["no-such-command"]), 1);
    assert_eq!(status(&["smooth", "-f", "x0^3 + x1^2"]), 2);
    let out = Command::new(bin).args(["--output", "json", "smooth", "-f", FERMAT]).output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["certification_degree"], 6);
}

#[test]
fn error_classes_map_to_exit_codes() {
    assert_eq!(run(&["--field", "fp:10", "smooth", "-f", "x0"]).0, 1);
    assert_eq!(run(&["smooth", "-f", "x9^3"]).0, 1);
    assert_eq!(run(&["node-check", "-f", "special:3", "--point", "1,0"]).0, 1);
    assert_eq!(run(&["smooth", "-f", "@/nonexistent/file"]).0, 1);
    let (code, _, err) = run(&["lemma-defect", "-f", "special:3", "--points", "1,0,0,0,0", "--k", "4"]);
    assert_eq!(code, 2, "{err}");
    assert_eq!(exit_code(&Error::Invariant("broken".into())), 3);
    assert_eq!(exit_code(&Error::Precondition("no".into())), 2);
}

#[test]
fn fermat_cubic_is_smooth_in_degree_six() {
    let v = json(&["smooth", "-f", FERMAT]);
    assert_eq!(v["results"]["verdict"], "Smooth");
    assert_eq!(v["certificates"]["smoothness"]["degree"], 6);
    let dims = json(&["milnor-dims", "-f", FERMAT, "--kmax", "7"]);
    assert_eq!(dims["results"]["matches_smooth_reference"], true);
}

#[test]
fn generic_pair_has_zero_colon_in_degree_one() {
    let dir = std::env::temp_dir().join(format!("gradus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let gen = json(&["--seed", "3", "colon", "--f", "random:3", "--q", "random:2", "--k", "1"]);
    assert_eq!(gen["results"]["dim"], 0);
    // The same forms read back from files.
    let f = dir.join("f.txt");
    let q = dir.join("q.txt");
    std::fs::write(&f, gen["inputs"]["f"]["value"].as_str().unwrap()).unwrap();
    std::fs::write(&q, gen["inputs"]["q"]["value"].as_str().unwrap()).unwrap();
    let fa = format!("@{}", f.display());
    let v = json(&["colon", "--f", &fa, "--q", q.to_str().unwrap(), "--k", "1"]);
    assert_eq!(v["results"]["dim"], 0);
    assert_eq!(v["inputs"]["f"]["sha256"], gen["inputs"]["f"]["sha256"]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reproduce_example_passes() {
    let v = json(&["reproduce-example"]);
    let checks = v["results"]["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    let (code, text, _) = run(&["reproduce-example"]);
    assert_eq!(code, 0);
    assert!(!text.is_empty());
}

#[test]
fn reruns_are_byte_identical_and_timing_is_opt_in() {
    let args = ["--output", "json", "--seed", "11", "lefschetz", "-f", "random:3"];
    let a = run(&args).1;
    assert_eq!(a, run(&args).1);
    assert!(a.ends_with(b"\n"));
    assert!(!String::from_utf8_lossy(&a).contains("wall_time_ms"));
    let mut timed = args.to_vec();
    timed.insert(0, "--timing");
    let v: Value = serde_json::from_slice(&run(&timed).1).unwrap();
    assert!(v["wall_time_ms"].is_u64());
    // A different seed draws a different form.
    let b = run(&["--output", "json", "--seed", "12", "lefschetz", "-f", "random:3"]).1;
    assert_ne!(a, b);
}

#[test]
fn prime_field_smoothness_rechecks_over_the_rationals() {
    let v = json(&["--field", "fp:10007", "smooth", "-f", "special:3"]);
    assert_eq!(v["field"], "fp:10007");
    assert_ne!(v["results"]["verdict"], "Smooth");
}
