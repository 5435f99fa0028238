//! Golden runs of the `lsea` binary, shared by the golden and acceptance tests.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct GoldenCase {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub env: &'static [(&'static str, &'static str)],
    pub exit: i32,
}

const fn case(name: &'static str, args: &'static [&'static str], exit: i32) -> GoldenCase {
    GoldenCase { name, args, env: &[], exit }
}

pub const CASES: &[GoldenCase] = &[
    case("norm", &["-n", "2", "norm", "r1*l2"], 0),
    case("norm_zero", &["norm", "l1 - l1"], 0),
    case("norm_square", &["norm", "(l1-r1)^2"], 0),
    case("norm_file", &["norm", "@element.json"], 0),
    case("norm_json", &["--json", "-n", "2", "norm", "3/2*l1*r2 - 1"], 0),
    case("mul", &["mul", "r1", "l1^2"], 0),
    case("comm", &["comm", "l1", "r1"], 0),
    case("ad", &["ad", "l1", "r1*r2"], 0),
    case("pderiv", &["pderiv", "l1^2*l2 - 3*l2", "-j", "2"], 0),
    case("pderiv_not_in_l", &["pderiv", "l1*r1", "-j", "1"], 1),
    case("shift", &["shift", "l1^2*l2"], 0),
    case("lm", &["lm", "l1^2*r1 + l2^3*r2 + l1*l2^2"], 0),
    case("lc", &["lc", "l1*l2^2*r2 - 2*l1*l2^2*r1*r1 + l2^3"], 0),
    case("lm_zero", &["lm", "0"], 0),
    case("wdeg", &["wdeg", "l1*r2 + l2", "--weights", "2,-1"], 0),
    case("wdeg_zero", &["wdeg", "0"], 0),
    case("parts", &["parts", "l1*r1 + l2 + 1"], 0),
    case("der_check", &["-n", "2", "der", "check", "example41.json"], 0),
    case("der_check_fails", &["der", "check", "not_a_derivation.json"], 1),
    case("der_apply", &["der", "apply", "example41.json", "l1*r2"], 0),
    case("der_apply_unverified", &["der", "apply", "not_a_derivation.json", "l1"], 1),
    case("der_probe", &["der", "probe", "example41.json", "r2", "--bound", "5"], 0),
    case("der_probe_zero", &["der", "probe", "example41.json", "r1"], 0),
    case("der_grade", &["der", "grade", "example41.json"], 0),
    case("der_wrong_n", &["-n", "3", "der", "check", "example41.json"], 2),
    case("endo_check", &["endo", "check", "lift.json"], 0),
    case("endo_apply", &["endo", "apply", "lift.json", "l1*r1"], 0),
    case("endo_compose", &["endo", "compose", "lift.json", "affine.json"], 0),
    case("endo_lift", &["-n", "2", "endo", "lift", "l1+l2^2;l2"], 0),
    case("endo_lift_wrong_arity", &["-n", "2", "endo", "lift", "l1"], 2),
    case("endo_affine", &["endo", "affine", "affine.json"], 0),
    case("endo_not_affine", &["endo", "affine", "lift.json"], 0),
    case("endo_wrong_kind", &["endo", "check", "example41.json"], 2),
    case("u1_pair", &["-n", "1", "u1", "pair", "--alpha", "2", "--h", "r1^3"], 0),
    case("u1_pair_json", &["--json", "u1", "pair", "--alpha", "-1/3", "--h", "r1 - 2*r1^2"], 0),
    case("u1_pair_zero_alpha", &["u1", "pair", "--alpha", "0", "--h", "r1"], 2),
    case("solve_ad_preimage", &["solve", "ad-preimage", "r1*r1; r1*r2"], 0),
    case("solve_ad_incompatible", &["solve", "ad-preimage", "r1*r1; r2*r2"], 1),
    case("solve_ad_not_homogeneous", &["solve", "ad-preimage", "r1*r1; r1"], 2),
    case("solve_lemma27", &["solve", "lemma27", "--i", "2", "--d", "2"], 0),
    case("solve_rfactor", &["solve", "rfactor", "--k", "2", "--i", "1", "--j", "2", "r1 + r2^2"], 0),
    case("solve_derspace", &["-n", "2", "solve", "derspace", "--degree", "-1"], 0),
    case("solve_derspace_into_i", &["-n", "1", "solve", "derspace", "--degree", "1", "--into-i"], 0),
    case("verify", &["verify", "cor25", "--seed", "7", "--cases", "20"], 0),
    case("verify_example41", &["verify", "example41", "--seed", "1"], 0),
    case("verify_json", &["--json", "verify", "lemma27", "--seed", "3", "--cases", "4"], 0),
    case("verify_unknown", &["verify", "nope"], 2),
    case("parse_error", &["norm", "l1 + * r1"], 2),
    case("index_error", &["-n", "1", "norm", "l2"], 2),
    case("missing_file", &["der", "check", "absent.json"], 2),
    case("usage_error", &["frobnicate"], 2),
    case("term_limit", &["--max-terms", "5", "norm", "(l1+r1+l2+r2)^3"], 4),
    GoldenCase {
        name: "term_limit_env",
        args: &["mul", "(l1+r1)^3", "(l2+r2)^3"],
        env: &[("LSEA_MAX_TERMS", "10")],
        exit: 4,
    },
];

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn fixtures() -> PathBuf {
    crate_dir().join("tests/fixtures")
}

pub fn golden_dir() -> PathBuf {
    crate_dir().join("tests/golden")
}

pub struct Run {
    pub exit: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    /// The text stored in a golden file.
    pub fn transcript(&self) -> String {
        format!("exit: {}\n--- stdout\n{}--- stderr\n{}", self.exit, self.stdout, self.stderr)
    }
}

pub fn lsea(bin: &Path, args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(bin);
    cmd.args(args).current_dir(fixtures()).env_remove("LSEA_MAX_TERMS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        exit: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

/// Runs every golden case; returns one message per mismatch.
/// With `LSEA_BLESS` set, rewrites the golden files instead.
pub fn check_goldens(bin: &Path) -> Vec<String> {
    let bless = std::env::var_os("LSEA_BLESS").is_some();
    let mut problems = Vec::new();
    for c in CASES {
        let run = lsea(bin, c.args, c.env);
        if run.exit != c.exit {
            problems.push(format!("{}: exit {} (expected {})\n{}", c.name, run.exit, c.exit, run.stderr));
        }
        let again = lsea(bin, c.args, c.env);
        if again.transcript() != run.transcript() {
            problems.push(format!("{}: output differs between two runs", c.name));
        }
        let path = golden_dir().join(format!("{}.txt", c.name));
        if bless {
            std::fs::write(&path, run.transcript()).expect("golden dir writable");
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(want) if want == run.transcript() => {}
            Ok(want) => problems.push(format!(
                "{}: output changed\n--- golden\n{want}--- actual\n{}",
                c.name,
                run.transcript()
            )),
            Err(_) => problems.push(format!("{}: missing {}", c.name, path.display())),
        }
    }
    problems
}
