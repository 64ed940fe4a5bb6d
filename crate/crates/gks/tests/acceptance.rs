//! One line per acceptance criterion. Known deviations are listed in `KNOWN`; the test
//! fails if any other criterion fails or if a known one starts passing.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::io::Write;
use std::time::Instant;

use gks::golden::{GoldenDir, Table1};
use gks::report::{Check, SuiteReport};
use gks::suite::{self, Numeric, Options};
use gks_core::adjoint::euler_lagrange;
use gks_core::conservation::noether_vector;
use gks_core::parse::{parse_expr, ParseContext};
use gks_core::{Dep, Indep};
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

const TOL: f64 = 1e-9;
const TRIALS: usize = 100;
const SEED: u64 = 1;
const TABLE1_SECS: f64 = 120.0;
const APPENDIX_SECS: f64 = 300.0;
const SECTION5_SECS: f64 = 600.0;
const VERBATIM_MIN: f64 = 0.95;
const MIN_SECTION5_VECTORS: usize = 17;

/// Criteria that fail against their literal wording, with the reason.
const KNOWN: &[(&str, &str)] = &[(
    "adjoint-equals-printed",
    "the printed adjoint has (g'' - h' u_y) u_y^2; no cubic u_y term can arise from v h(u) u_y^2, \
     so exact equality with the printed display is impossible; the corrected display matches exactly",
)];

struct Line {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn run_suite(name: &str) -> (SuiteReport, f64) {
    let opts = Options { golden: GoldenDir::default(), numeric: Some(Numeric { trials: TRIALS, tol: TOL, seed: SEED }) };
    let t = Instant::now();
    let r = suite::run(name, &opts).unwrap();
    (r, t.elapsed().as_secs_f64())
}

fn exact(r: &SuiteReport) -> impl Iterator<Item = &Check> {
    r.checks.iter().filter(|c| !c.id.ends_with("/numeric"))
}

fn find<'a>(r: &'a SuiteReport, id: &str) -> &'a Check {
    r.checks.iter().find(|c| c.id == id).unwrap_or_else(|| panic!("no check {id}"))
}

fn failing<'a>(it: impl Iterator<Item = &'a Check>) -> Vec<String> {
    it.filter(|c| !c.pass).map(|c| c.id.clone()).collect()
}

fn property<S: Strategy>(cases: u32, s: S, f: impl Fn(S::Value) -> bool) -> Result<(), String> {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner
        .run(&s, |v| if f(v) { Ok(()) } else { Err(TestCaseError::fail("property violated")) })
        .map_err(|e| e.to_string())
}

fn property_line(name: &'static str, cases: u32, r: Result<(), String>) -> Line {
    match r {
        Ok(()) => Line { name, pass: true, detail: format!("{cases} random cases") },
        Err(e) => Line { name, pass: false, detail: e },
    }
}

fn table1(r: &SuiteReport, secs: f64) -> Line {
    let t: Table1 = GoldenDir::default().load("table1.json").unwrap();
    let gens: Vec<&Check> = exact(r).filter(|c| c.id.matches('/').count() == 2).collect();
    let typos: Vec<&Check> = gens.iter().copied().filter(|c| !c.expect).collect();
    let repaired = typos.iter().filter(|c| find(r, &format!("{}/repair", c.id)).pass).count();
    let bad = failing(exact(r));
    Line {
        name: "table1-replay",
        pass: t.rows.len() == 18 && bad.is_empty() && repaired == typos.len() && secs < TABLE1_SECS,
        detail: format!(
            "{} rows, {} generator checks, {} printed typos each repaired and verified, {secs:.1}s (limit {TABLE1_SECS}s){}",
            t.rows.len(),
            gens.len(),
            typos.len(),
            if bad.is_empty() { String::new() } else { format!("; failing: {bad:?}") }
        ),
    }
}

fn adjoint(r: &SuiteReport) -> Line {
    let printed = find(r, "theorems/adjoint/printed");
    let corrected = find(r, "theorems/adjoint/corrected");
    Line {
        name: "adjoint-equals-printed",
        pass: printed.holds,
        detail: format!(
            "generated minus printed = {}; generated equals corrected display: {}",
            printed.data["difference"].as_str().unwrap_or("?"),
            corrected.holds
        ),
    }
}

fn theorems(r: &SuiteReport) -> Line {
    let scope: Vec<&Check> = exact(r).filter(|c| !c.id.starts_with("theorems/adjoint")).collect();
    let witness = find(r, "theorems/strict/coefficient-u_xxxx").holds && find(r, "theorems/strict/not-self-adjoint").holds;
    let cases = scope.iter().filter(|c| c.id.ends_with("/self-adjoint") && c.pass).count();
    let bad = failing(scope.iter().copied());
    Line {
        name: "self-adjointness-theorems",
        pass: bad.is_empty() && witness && cases == 5,
        detail: format!(
            "strict fails with witness 2 on u_xxxx: {witness}; quasi conditions and solution checked; {cases}/5 cases zero the nonlinear system{}",
            if bad.is_empty() { String::new() } else { format!("; failing: {bad:?}") }
        ),
    }
}

fn appendix(r: &SuiteReport, secs: f64) -> Line {
    let frac = find(r, "appendix/verbatim-fraction").data["fraction"].as_f64().unwrap();
    let span = find(r, "appendix/span");
    let bad = failing(exact(r));
    Line {
        name: "appendix-determining-equations",
        pass: frac >= VERBATIM_MIN && span.holds && bad.is_empty() && secs < APPENDIX_SECS,
        detail: format!(
            "verbatim fraction {frac:.4} (min {VERBATIM_MIN}), remaining entries in the span: {}, {secs:.1}s (limit {APPENDIX_SECS}s)",
            span.holds
        ),
    }
}

fn section5_formula(r: &SuiteReport, secs: f64) -> Line {
    let div: Vec<&Check> = exact(r).filter(|c| c.id.ends_with("/formula/divergence")).collect();
    let zero = div.iter().filter(|c| c.holds).count();
    Line {
        name: "section5-formula-vectors",
        pass: zero == div.len() && div.len() >= MIN_SECTION5_VECTORS && secs < SECTION5_SECS,
        detail: format!("{zero}/{} formula vectors have divergence exactly 0, {secs:.1}s (limit {SECTION5_SECS}s)", div.len()),
    }
}

fn section5_printed(r: &SuiteReport) -> Line {
    let printed: Vec<&Check> = exact(r).filter(|c| c.id.ends_with("/printed/divergence")).collect();
    let mut verified = 0;
    let mut flagged = Vec::new();
    let mut unexplained = Vec::new();
    for c in &printed {
        if c.holds {
            verified += 1;
            continue;
        }
        let base = c.id.trim_end_matches("/printed/divergence");
        let residual = c.data["residual"].as_str().unwrap_or("");
        let repaired = r.checks.iter().any(|v| v.id.starts_with(&format!("{base}/variant/")) && v.holds && v.pass);
        if !residual.is_empty() && residual != "0" && repaired {
            flagged.push(base.trim_start_matches("section5/").to_string());
        } else {
            unexplained.push(c.id.clone());
        }
    }
    let mislabel: Vec<&Check> = exact(r).filter(|c| c.id.contains("/equivalent")).collect();
    let bad = failing(mislabel.iter().copied());
    Line {
        name: "section5-printed-vectors",
        pass: unexplained.is_empty() && bad.is_empty() && verified + flagged.len() == printed.len(),
        detail: format!(
            "{verified}/{} verify as printed; flagged with their residual and a verified correction: {flagged:?}{}",
            printed.len(),
            if unexplained.is_empty() { String::new() } else { format!("; unexplained: {unexplained:?}") }
        ),
    }
}

fn numeric(reports: &[&SuiteReport]) -> Line {
    let checks: Vec<&Check> = reports.iter().flat_map(|r| r.checks.iter()).filter(|c| c.id.ends_with("/numeric")).collect();
    let zero_claims: Vec<&&Check> = checks.iter().filter(|c| c.expect).collect();
    let max = zero_claims.iter().filter_map(|c| c.data["max_rel"].as_f64()).fold(0.0, f64::max);
    let evaluated = zero_claims.iter().all(|c| c.data["evaluated"].as_u64().is_some_and(|n| n as usize * 2 >= TRIALS));
    let bad = failing(checks.iter().copied());
    Line {
        name: "numeric-spot-checks",
        pass: bad.is_empty() && evaluated && max < TOL && !zero_claims.is_empty(),
        detail: format!("{} exact zero claims, {TRIALS} seeds each, max relative residual {max:.2e} (tol {TOL:e})", zero_claims.len()),
    }
}

#[test]
fn acceptance() {
    let (t1, t1_secs) = run_suite("table1");
    let (app, app_secs) = run_suite("appendix");
    let (thm, _) = run_suite("theorems");
    let (s5, s5_secs) = run_suite("section5");
    let (s4, _) = run_suite("section4");

    let mut lines = vec![
        table1(&t1, t1_secs),
        adjoint(&thm),
        theorems(&thm),
        appendix(&app, app_secs),
        section5_formula(&s5, s5_secs),
        section5_printed(&s5),
    ];

    lines.push(property_line(
        "euler-lagrange-kernel",
        100,
        property(100, (common::poly(3, true, 3), common::poly(3, true, 3), common::poly(3, true, 3)), |(a, b, c)| {
            let div = &(&a.d(Indep::X) + &b.d(Indep::Y)) + &c.d(Indep::T);
            euler_lagrange(&div, Dep::U).is_zero()
        }),
    ));
    lines.push(property_line(
        "noether-identity-off-shell",
        50,
        property(50, (common::generator(), common::poly(4, true, 3)), |(g, l)| common::noether_defect(&g, &l).is_zero()),
    ));
    lines.push(property_line(
        "total-derivative-commutation-leibniz",
        200,
        property(200, (common::poly(3, true, 4), common::poly(3, true, 3)), |(a, b)| {
            let commute = [(Indep::X, Indep::Y), (Indep::X, Indep::T), (Indep::Y, Indep::T)]
                .iter()
                .all(|(p, q)| a.d(*p).d(*q) == a.d(*q).d(*p));
            let leibniz = Indep::ALL.iter().all(|d| (&a * &b).d(*d) == &(&a.d(*d) * &b) + &(&a * &b.d(*d)));
            commute && leibniz
        }),
    ));
    lines.push(property_line(
        "dsl-round-trip",
        1000,
        property(1000, common::rich(), |e| parse_expr(&e.to_string(), &ParseContext::default()).is_ok_and(|b| b == e)),
    ));
    lines.push(numeric(&[&t1, &app, &thm, &s5, &s4]));
    lines.push(property_line(
        "weighted-vs-classical-operator",
        20,
        property(20, (common::generator(), common::poly(4, true, 3)), |(g, l)| {
            noether_vector(&g, &l) == common::classical_vector(&g, &l, 4)
        }),
    ));

    // Written to stderr directly so the lines survive the test harness's output capture.
    let known: Vec<&str> = KNOWN.iter().map(|(n, _)| *n).collect();
    let mut err = std::io::stderr().lock();
    writeln!(err).unwrap();
    for l in &lines {
        let tag = if l.pass { "PASS" } else { "FAIL" };
        writeln!(err, "{tag}  {:<38} {}", l.name, l.detail).unwrap();
        if let Some((_, why)) = KNOWN.iter().find(|(n, _)| *n == l.name) {
            writeln!(err, "      known deviation: {why}").unwrap();
        }
    }
    let unexpected: Vec<&str> = lines.iter().filter(|l| l.pass == known.contains(&l.name)).map(|l| l.name).collect();
    assert!(unexpected.is_empty(), "criteria with unexpected outcome: {unexpected:?}");
    assert!(s4.pass, "section 4 residual system: {:?}", failing(s4.checks.iter()));
}
