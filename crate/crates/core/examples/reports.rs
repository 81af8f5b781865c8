//! Running commands in-process and reading their JSON reports.

use gradus::cli::run_with_args;

fn main() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with_args(
        ["gradus", "--output", "json", "--seed", "7", "colon", "--f", "random:3", "--q", "random:2", "--k", "1"],
        &mut out,
        &mut err,
    );
    let report: serde_json::Value = serde_json::from_slice(&out).unwrap();
    println!("exit {code}; dim (J_F : Q)_1 = {}", report["results"]["dim"]);
    println!("F sha256 {}", report["inputs"]["f"]["sha256"]);

    out.clear();
    let code = run_with_args(["gradus", "special-q"], &mut out, &mut err);
    print!("exit {code}\n{}", String::from_utf8_lossy(&out));
}
