use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn gks(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gks"));
    cmd.args(args).env_remove("GKS_SIZE_LIMIT").env_remove("GKS_JOBS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(r: &Run) -> Value {
    serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{e}: {}", r.stdout))
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("gks-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn symmetry_verdicts_set_the_exit_code() {
    let ok = gks(&["check-sym", "d_t"], &[]);
    assert_eq!(ok.code, 0, "{}", ok.stderr);
    let bad = gks(&["--format", "json", "check-sym", "x*d_x"], &[]);
    assert_eq!(bad.code, 1);
    let v = json(&bad);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "check-sym");
    assert_eq!(v["is_symmetry"], false);
    assert_ne!(v["residual"]["text"], "0");
}

#[test]
fn leading_minus_is_not_a_flag() {
    let r = gks(&["check-sym", "-2*(u - 3*beta*t)*d_u + 4*t*d_t + x*d_x + y*d_y", "--family", "table1:5"], &[]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
}

#[test]
fn parse_errors_exit_two_with_a_caret() {
    let r = gks(&["check-sym", "d_x + * d_y"], &[]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains('^'), "{}", r.stderr);
    let j = gks(&["--format", "json", "conslaw", "d_x", "--phi", "sin("], &[]);
    assert_eq!(j.code, 2);
    assert_eq!(json(&j)["exit_code"], 2);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["table1", "--row", "19"],
        vec!["--tol", "0", "check-sym", "d_t"],
        vec!["--trials", "0", "check-sym", "d_t"],
        vec!["paper-suite", "--only", "nothing"],
        vec!["selfadjoint", "--mode", "weak"],
        vec!["check-sym", "d_t", "--family", "case:9"],
        vec!["--golden-dir", "/nonexistent/gks", "table1", "--row", "2"],
        vec!["frobnicate"],
    ] {
        assert_eq!(gks(&args, &[]).code, 2, "{args:?}");
    }
}

#[test]
fn size_limit_exits_three_and_flag_beats_env() {
    let q = ["selfadjoint", "--mode", "quasi"];
    assert_eq!(gks(&[&["--size-limit", "20"], &q[..]].concat(), &[]).code, 3);
    assert_eq!(gks(&q, &[("GKS_SIZE_LIMIT", "20")]).code, 3);
    assert_eq!(gks(&[&["--size-limit", "100000000"], &q[..]].concat(), &[("GKS_SIZE_LIMIT", "20")]).code, 0);
}

#[test]
fn strict_self_adjointness_fails_as_recorded() {
    let r = gks(&["--format", "json", "selfadjoint", "--mode", "strict"], &[]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = json(&r);
    assert_eq!(v["verdict"], "fails");
    assert_eq!(v["witness"], "2");
    let forced = gks(&["selfadjoint", "--mode", "strict", "--expect", "holds"], &[]);
    assert_eq!(forced.code, 1);
}

#[test]
fn conserved_vector_for_a_case() {
    let r = gks(&["--format", "json", "conslaw", "d_x", "--family", "case:5", "--phi", "exp(-alpha*t)*((c1 + c2*x)*y + c3 + c4*x)"], &[]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    assert_eq!(json(&r)["divergence"]["text"], "0");
}

#[test]
fn prolongation_lists_every_jet() {
    let r = gks(&["--format", "json", "prolong", "-x*d_u + t*d_x", "--order", "2"], &[]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = json(&r);
    assert_eq!(v["prolongation"].as_array().unwrap().len(), 10);
    assert_eq!(v["generator"], "t*d_x - x*d_u");
}

#[test]
fn paper_suite_is_deterministic() {
    let args = ["--format", "json", "paper-suite", "--only", "theorems", "--only", "section5", "--numeric", "--trials", "5"];
    let a = gks(&args, &[("GKS_JOBS", "1")]);
    let b = gks(&args, &[("GKS_JOBS", "4")]);
    let c = gks(&[&args[..], &["--jobs", "2"]].concat(), &[]);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let v = json(&a);
    assert_eq!(v["pass"], true);
    assert_eq!(v["suites"].as_array().unwrap().len(), 2);
}

#[test]
fn golden_dir_override_changes_verdicts() {
    let dir = scratch("golden");
    let src = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../golden");
    for f in ["table1.json", "theorems3.json"] {
        std::fs::copy(src.join(f), dir.join(f)).unwrap();
    }
    let d = dir.to_str().unwrap();
    assert_eq!(gks(&["--golden-dir", d, "table1", "--row", "15"], &[]).code, 0);
    let text = std::fs::read_to_string(dir.join("theorems3.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["strict"]["verdict"] = "holds".into();
    std::fs::write(dir.join("theorems3.json"), v.to_string()).unwrap();
    assert_eq!(gks(&["--golden-dir", d, "selfadjoint", "--mode", "strict"], &[]).code, 1);
    std::fs::remove_dir_all(&dir).unwrap();
}
