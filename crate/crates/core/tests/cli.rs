use std::fs;
use std::path::PathBuf;

use starfield::cli::{run_with, EXIT_ERROR, EXIT_FAIL, EXIT_GUARD, EXIT_OK};

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

fn run_env(args: &[&str], env_config: Option<PathBuf>) -> Outcome {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["starfield"];
    argv.extend_from_slice(args);
    let code = run_with(argv, env_config, &mut out, &mut err);
    Outcome { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn run(args: &[&str]) -> Outcome {
    run_env(args, None)
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("starfield-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn mu_column(out: &str) -> Vec<String> {
    out.lines().skip(1).map(|l| l.split('\t').nth(4).unwrap().to_string()).collect()
}

#[test]
fn modes_table() {
    let r = run(&["modes"]);
    assert_eq!(r.code, EXIT_OK);
    let lines: Vec<&str> = r.out.lines().collect();
    assert_eq!(lines[0], "label\tk_index\tspatial\ttemporal\tmu");
    assert_eq!(lines.len(), 11);
    assert!(lines.contains(&"s0\t0\tcos\tsin\t1.000000000000"));
    assert!(lines.contains(&"cs1\t1\tsin\tcos\t1.414213562373"));
}

#[test]
fn pairing_table_shape() {
    let r = run(&["--kmax", "0", "pairing"]);
    assert_eq!(r.code, EXIT_OK);
    let lines: Vec<&str> = r.out.lines().collect();
    assert_eq!(lines[0], "sigma\tc0\ts0");
    assert_eq!(lines.len(), 3);
    let wick = run(&["--kmax", "0", "--star-form", "wick", "pairing"]);
    assert_eq!(wick.code, EXIT_OK);
    assert!(wick.out.starts_with("wick\tc0\ts0\n"));
}

#[test]
fn eval_outputs() {
    let r = run(&["eval", "poisson(s0, c0)"]);
    assert_eq!(r.code, EXIT_OK);
    let v: f64 = r.out.trim().parse().unwrap();
    assert!((v - 2.0 * std::f64::consts::PI).abs() < 1e-9);

    let r = run(&["--Ncap", "2", "eval", "theta(1)"]);
    assert_eq!(r.out.trim(), "identity (dim 10)");

    let r = run(&["--kmax", "0", "--Ncap", "2", "eval", "theta(hbar)"]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(r.out.trim(), "-1.0i * identity (dim 3)");

    let r = run(&["--kmax", "0", "--Ncap", "2", "eval", "thetaW(s0)"]);
    assert!(r.out.starts_with("operator (dim 3, nnz 4, formal degree 1, vacuum expectation 0.0"), "{}", r.out);
}

#[test]
fn eval_errors_exit_two() {
    let r = run(&["eval", "u *"]);
    assert_eq!(r.code, EXIT_ERROR);
    assert!(r.err.contains("byte 3"), "{}", r.err);
    assert!(r.out.is_empty());
    assert_eq!(run(&["eval", "nope"]).code, EXIT_ERROR);
    assert_eq!(run(&["eval", "comm(theta(c0), c0)"]).code, EXIT_ERROR);
    assert_eq!(run(&["frobnicate"]).code, EXIT_ERROR);
    assert_eq!(run(&["--mass", "-1", "modes"]).code, EXIT_ERROR);
    assert_eq!(run(&["--config", "/nonexistent/starfield.cfg", "modes"]).code, EXIT_ERROR);
}

#[test]
fn check_exit_codes() {
    let r = run(&["--kmax", "0", "check", "ccr"]);
    assert_eq!(r.code, EXIT_OK, "{}{}", r.out, r.err);
    assert!(r.out.lines().all(|l| l.split('\t').nth(1) == Some("PASS")));

    let r = run(&["--kmax", "0", "--tolerance", "1e-300", "check", "ccr"]);
    assert_eq!(r.code, EXIT_FAIL);
    assert!(r.out.contains("\tFAIL\t"));

    let r = run(&["--Ncap", "2", "--max-degree", "2", "check", "ordre"]);
    assert_eq!(r.code, EXIT_GUARD);
    assert!(r.err.contains("guard"), "{}", r.err);
    assert_eq!(run(&["--Ncap", "5", "--max-degree", "3", "check", "wick"]).code, EXIT_GUARD);
}

#[test]
fn config_file_and_overrides() {
    let file = scratch("run.cfg", "# comment\nmass = 2\nkmax = 0\n\nL = 3.5\n");
    let r = run(&["--config", file.to_str().unwrap(), "modes"]);
    assert_eq!(mu_column(&r.out), ["2.000000000000", "2.000000000000"]);

    let r = run_env(&["modes"], Some(file.clone()));
    assert_eq!(mu_column(&r.out), ["2.000000000000", "2.000000000000"]);

    let r = run_env(&["--mass", "3", "modes"], Some(file.clone()));
    assert_eq!(mu_column(&r.out), ["3.000000000000", "3.000000000000"]);

    let other = scratch("other.cfg", "mass = 5\nkmax = 0\n");
    let r = run_env(&["--config", other.to_str().unwrap(), "modes"], Some(file));
    assert_eq!(mu_column(&r.out), ["5.000000000000", "5.000000000000"]);

    let broken = scratch("broken.cfg", "mass 2\n");
    let r = run(&["--config", broken.to_str().unwrap(), "modes"]);
    assert_eq!(r.code, EXIT_ERROR);
    assert!(r.err.contains("broken.cfg:1:"), "{}", r.err);

    let unknown = scratch("unknown.cfg", "colour = blue\n");
    assert_eq!(run(&["--config", unknown.to_str().unwrap(), "modes"]).code, EXIT_ERROR);
}

#[test]
fn custom_pairing_form() {
    let form = scratch("form.tsv", "u\tv\n0\t1/2\n-1/2\t0\n");
    let path = form.to_str().unwrap();
    let r = run(&["--star-form", path, "eval", "u * v"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert_eq!(r.out.trim(), "1 * u*v + 1/2 * hbar");

    let r = run(&["--star-form", path, "eval", "poisson(u, v)"]);
    assert_eq!(r.out.trim(), "1");

    let r = run(&["--star-form", path, "pairing"]);
    assert!(r.out.starts_with(&format!("{path}\tu\tv\n")), "{}", r.out);

    assert_eq!(run(&["--star-form", path, "eval", "theta(u)"]).code, EXIT_ERROR);
    let ragged = scratch("ragged.tsv", "u\tv\n0\n1\t2\n");
    assert_eq!(run(&["--star-form", ragged.to_str().unwrap(), "pairing"]).code, EXIT_ERROR);
}

#[test]
fn check_is_deterministic() {
    let args = ["--seed", "3", "--trials", "5", "--Ncap", "4", "--max-degree", "2", "check", "all"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.code, EXIT_OK, "{}{}", first.out, first.err);
    assert_eq!(first.out, second.out);
    let other = run(&["--seed", "4", "--trials", "5", "--Ncap", "4", "--max-degree", "2", "check", "all"]);
    assert_eq!(other.code, EXIT_OK);
}
