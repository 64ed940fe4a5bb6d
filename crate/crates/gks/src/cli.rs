//! Command-line front end.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use gks_core::adjoint::{adjoint_equation, self_adjointness_with, strict_witness, Mode};
use gks_core::conservation::{conserved_vector, divergence, triviality};
use gks_core::constraint::ConstraintSet;
use gks_core::parse::ParseContext;
use gks_core::pde::Family;
use gks_core::symmetry::{check_symmetry, determining_system, prolong};
use serde_json::{json, Value};

use crate::context::{arg_atom, constraints, generator, resolve_family};
use crate::golden::{Constraint, GoldenDir, Theorems};
use crate::report::{envelope, render_suites, Check, Format, SuiteReport};
use crate::suite::{self, Numeric, Options};
use crate::{json as js, parse, verify, AppError, Result};

#[derive(Debug, Parser)]
#[command(name = "gks", version, about = "Symmetries, self-adjointness and conservation laws of the generalized anisotropic Kuramoto-Sivashinsky equation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Args)]
pub struct Global {
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Largest expression size, in nodes, before a computation aborts.
    #[arg(long, global = true, env = "GKS_SIZE_LIMIT")]
    pub size_limit: Option<usize>,
    /// Worker threads.
    #[arg(long, global = true, env = "GKS_JOBS")]
    pub jobs: Option<usize>,
    /// Read golden data from this directory instead of the built-in copy.
    #[arg(long, global = true)]
    pub golden_dir: Option<PathBuf>,
}

/// Extra declarations for expressions typed on the command line.
#[derive(Debug, Args, Default)]
pub struct Decls {
    /// Declare a function, as `F(y,t)`.
    #[arg(long = "function", value_name = "NAME(ARGS)")]
    pub functions: Vec<String>,
    /// A constraint on a declared function, as `LEAD: EQUATION`, for example `F_t: F_t + F_yyyy`.
    #[arg(long = "constraint", value_name = "LEAD: EQ")]
    pub constraints: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Prolongation coefficients of a generator.
    Prolong {
        #[arg(allow_hyphen_values = true)]
        generator: String,
        #[arg(long, default_value_t = 4)]
        order: u32,
        #[command(flatten)]
        decls: Decls,
    },
    /// Determining equations for the unknown generator.
    Detsys {
        #[arg(long, default_value = "generic")]
        family: String,
    },
    /// Check that a generator is a point symmetry.
    CheckSym {
        #[arg(allow_hyphen_values = true)]
        generator: String,
        #[arg(long, default_value = "generic")]
        family: String,
        #[command(flatten)]
        decls: Decls,
    },
    /// The adjoint equation.
    Adjoint {
        #[arg(long, default_value = "generic")]
        family: String,
    },
    /// Self-adjointness residual and its system.
    Selfadjoint {
        #[arg(long, default_value = "strict")]
        mode: String,
        #[arg(long, default_value = "generic")]
        family: String,
        /// Substitute this for v instead of the mode's default.
        #[arg(long)]
        subst: Option<String>,
        /// Expected verdict; defaults to the recorded one for the generic family.
        #[arg(long)]
        expect: Option<String>,
        #[command(flatten)]
        decls: Decls,
    },
    /// Conserved vector for a symmetry and multiplier, with its divergence check.
    Conslaw {
        #[arg(allow_hyphen_values = true)]
        generator: String,
        #[arg(long, default_value = "generic")]
        family: String,
        #[arg(long)]
        phi: String,
        #[command(flatten)]
        decls: Decls,
    },
    /// Check the claims listed in a JSON file.
    Verify {
        #[arg(long)]
        input: PathBuf,
        /// Also spot-check every exact zero in floating point.
        #[arg(long)]
        numeric: bool,
    },
    /// Replay the symmetry classification table.
    Table1 {
        #[arg(long)]
        row: Option<u32>,
        #[arg(long)]
        numeric: bool,
    },
    /// Replay every recorded result.
    PaperSuite {
        /// Run only these suites.
        #[arg(long = "only", value_name = "SUITE")]
        only: Vec<String>,
        #[arg(long)]
        numeric: bool,
    },
}

/// What a command prints, and whether it passed.
pub struct Outcome {
    pub pass: bool,
    pub json: Value,
    pub text: String,
}

fn declare(mut ctx: ParseContext, decls: &Decls) -> Result<(ParseContext, ConstraintSet)> {
    for f in &decls.functions {
        let (name, rest) = f
            .split_once('(')
            .ok_or_else(|| AppError::Usage(format!("expected NAME(ARGS) in --function {f:?}")))?;
        let args = rest.trim_end().strip_suffix(')').ok_or_else(|| AppError::Usage(format!("unclosed ( in {f:?}")))?;
        let args = args.split(',').map(|a| arg_atom(a.trim())).collect::<Result<Vec<_>>>()?;
        ctx.declare_function(name.trim(), args);
    }
    let mut list = Vec::new();
    for c in &decls.constraints {
        let (lead, eq) =
            c.split_once(':').ok_or_else(|| AppError::Usage(format!("expected LEAD: EQUATION in --constraint {c:?}")))?;
        list.push(Constraint { equation: eq.trim().into(), lead: lead.trim().into() });
    }
    let cons = constraints(&list, &ctx)?;
    Ok((ctx, cons))
}

fn family_json(f: &Family) -> Value {
    let m: BTreeMap<&str, String> = f.closed.iter().map(|(k, v)| (k.as_str(), v.to_string())).collect();
    json!({"name": f.name, "closed": m})
}

fn numeric(g: &Global, on: bool) -> Option<Numeric> {
    on.then_some(Numeric { trials: g.trials as usize, tol: g.tol, seed: g.seed })
}

fn suites_outcome(reports: Vec<SuiteReport>) -> Outcome {
    let pass = reports.iter().all(|s| s.pass);
    let text = render_suites(&reports);
    Outcome { pass, json: json!({"suites": reports}), text }
}

fn recorded_verdict(mode: Mode, golden: &GoldenDir) -> Result<String> {
    let t: Theorems = golden.load("theorems3.json")?;
    Ok(match mode {
        Mode::Strict => t.strict.verdict,
        Mode::Quasi => t.quasi.verdict,
        Mode::Nonlinear => "holds-under-constraints".into(),
    })
}

pub fn execute(cmd: &Command, g: &Global) -> Result<Outcome> {
    let golden = GoldenDir::new(g.golden_dir.as_deref());
    match cmd {
        Command::Prolong { generator: src, order, decls } => {
            let (ctx, _) = declare(ParseContext::default(), decls)?;
            let gen = generator(src, &ctx)?;
            let p = prolong(&gen, *order);
            let mut text = String::new();
            let mut list = Vec::new();
            for (j, e) in &p {
                let name = if j.order() == 0 { "eta".to_string() } else { format!("eta^{j}") };
                text.push_str(&format!("{name} = {e}\n"));
                list.push(json!({"jet": j.to_string(), "coefficient": js::expr(e)}));
            }
            Ok(Outcome { pass: true, json: json!({"generator": gen.to_string(), "prolongation": list}), text })
        }
        Command::Detsys { family } => {
            let (fam, _) = resolve_family(family, &golden)?;
            let ds = determining_system(&fam)?;
            let mut text = String::new();
            let mut list = Vec::new();
            for (i, q) in ds.equations.iter().enumerate() {
                let jets = q.jets.to_expr().to_string();
                text.push_str(&format!("{:3}  [{jets}]  {} = 0\n", i + 1, q.expr));
                list.push(json!({"jets": jets, "equation": js::expr(&q.expr)}));
            }
            Ok(Outcome { pass: true, json: json!({"family": family_json(&fam), "count": list.len(), "equations": list}), text })
        }
        Command::CheckSym { generator: src, family, decls } => {
            let (fam, ctx) = resolve_family(family, &golden)?;
            let (ctx, cons) = declare(ctx, decls)?;
            let gen = generator(src, &ctx)?;
            let c = check_symmetry(&gen, &fam, &cons)?;
            let verdict = if c.is_symmetry { "symmetry" } else { "not a symmetry" };
            let text = format!("{gen}: {verdict}\nresidual: {}\n", c.residual);
            Ok(Outcome {
                pass: c.is_symmetry,
                json: json!({"family": family_json(&fam), "generator": gen.to_string(), "is_symmetry": c.is_symmetry, "residual": js::expr(&c.residual)}),
                text,
            })
        }
        Command::Adjoint { family } => {
            let (fam, _) = resolve_family(family, &golden)?;
            let a = adjoint_equation(&fam);
            Ok(Outcome { pass: true, json: json!({"family": family_json(&fam), "adjoint": js::expr(&a)}), text: format!("{a} = 0\n") })
        }
        Command::Selfadjoint { mode, family, subst, expect, decls } => {
            let m = Mode::from_name(mode).ok_or_else(|| AppError::Usage(format!("unknown mode {mode}; expected strict, quasi or nonlinear")))?;
            let (fam, ctx) = resolve_family(family, &golden)?;
            let (ctx, _) = declare(ctx, decls)?;
            let value = match subst {
                Some(s) => parse(s, &ctx)?,
                None => m.substitution(),
            };
            let sa = self_adjointness_with(&fam, &value, Some(m))?;
            let witness = if m == Mode::Strict { strict_witness(&sa)? } else { None };
            let verdict = if sa.residual.is_zero() {
                "holds"
            } else if witness.is_some() {
                "fails"
            } else {
                "holds-under-constraints"
            };
            let expected = match expect {
                Some(e) => Some(e.clone()),
                None if family == "generic" && subst.is_none() => Some(recorded_verdict(m, &golden)?),
                None => None,
            };
            let pass = expected.as_deref().is_none_or(|e| e == verdict);
            let system: Vec<Value> =
                sa.system.iter().map(|q| json!({"jets": q.jets.to_expr().to_string(), "equation": js::expr(&q.expr)})).collect();
            let mut text = format!("mode {}: v = {}\nverdict: {verdict}", m.name(), sa.substitution);
            if let Some(e) = &expected {
                text.push_str(&format!(" (expected {e})"));
            }
            if let Some(w) = &witness {
                text.push_str(&format!("\nwitness: coefficient {w} of u_xxxx"));
            }
            text.push_str(&format!("\nresidual: {}\n{} conditions:\n", sa.residual, sa.system.len()));
            for q in &sa.system {
                text.push_str(&format!("  {} = 0\n", q.expr));
            }
            Ok(Outcome {
                pass,
                json: json!({
                    "family": family_json(&fam),
                    "mode": m.name(),
                    "substitution": js::expr(&sa.substitution),
                    "verdict": verdict,
                    "expected": expected,
                    "witness": witness.map(|w| w.to_string()),
                    "residual": js::expr(&sa.residual),
                    "system": system,
                }),
                text,
            })
        }
        Command::Conslaw { generator: src, family, phi, decls } => {
            let (fam, ctx) = resolve_family(family, &golden)?;
            let (ctx, cons) = declare(ctx, decls)?;
            let gen = generator(src, &ctx)?;
            let phi = parse(phi, &ctx)?;
            let cv = conserved_vector(&gen, &fam, &phi, &cons)?;
            let d = divergence(&cv, &fam)?;
            let tr = triviality(&cv, &fam)?;
            let names = ["C^x", "C^y", "C^t"];
            let mut text = String::new();
            for (n, c) in names.iter().zip(&cv.c) {
                text.push_str(&format!("{n} = {c}\n"));
            }
            text.push_str(&format!(
                "divergence on solutions: {}\ncharacteristic of the density: {}\n",
                d.residual, tr.characteristic
            ));
            Ok(Outcome {
                pass: d.is_zero(),
                json: json!({
                    "family": family_json(&fam),
                    "generator": gen.to_string(),
                    "phi": js::expr(&phi),
                    "vector": {"cx": js::expr(&cv.c[0]), "cy": js::expr(&cv.c[1]), "ct": js::expr(&cv.c[2])},
                    "divergence": js::expr(&d.residual),
                    "conserved": d.is_zero(),
                    "characteristic": js::expr(&tr.characteristic),
                    "trivial": tr.is_trivial(),
                }),
                text,
            })
        }
        Command::Verify { input, numeric: on } => {
            let src = std::fs::read_to_string(input).map_err(|e| AppError::Usage(format!("{}: {e}", input.display())))?;
            let checks = verify::run(&src, &golden, numeric(g, *on))?;
            Ok(suites_outcome(vec![SuiteReport::new("verify", checks)]))
        }
        Command::Table1 { row, numeric: on } => {
            let opts = Options { golden, numeric: numeric(g, *on) };
            let mut r = suite::run("table1", &opts)?;
            if let Some(n) = row {
                let prefix = format!("table1/row{n:02}/");
                let kept: Vec<Check> = r.checks.into_iter().filter(|c| c.id.starts_with(&prefix)).collect();
                if kept.is_empty() {
                    return Err(AppError::Usage(format!("no table row {n}")));
                }
                r = SuiteReport::new("table1", kept);
            }
            Ok(suites_outcome(vec![r]))
        }
        Command::PaperSuite { only, numeric: on } => {
            let opts = Options { golden, numeric: numeric(g, *on) };
            let names: Vec<&str> = if only.is_empty() { suite::ALL.to_vec() } else { only.iter().map(String::as_str).collect() };
            let reports = names.iter().map(|n| suite::run(n, &opts)).collect::<Result<Vec<_>>>()?;
            Ok(suites_outcome(reports))
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Prolong { .. } => "prolong",
        Command::Detsys { .. } => "detsys",
        Command::CheckSym { .. } => "check-sym",
        Command::Adjoint { .. } => "adjoint",
        Command::Selfadjoint { .. } => "selfadjoint",
        Command::Conslaw { .. } => "conslaw",
        Command::Verify { .. } => "verify",
        Command::Table1 { .. } => "table1",
        Command::PaperSuite { .. } => "paper-suite",
    }
}

/// Parse arguments, run, print, and return the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let g = &cli.global;
    if g.tol.is_nan() || g.tol <= 0.0 {
        eprintln!("usage error: --tol must be positive");
        return 2;
    }
    if let Some(n) = g.size_limit {
        gks_core::limits::set_size_limit(n);
    }
    if let Some(n) = g.jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let name = command_name(&cli.command);
    match execute(&cli.command, g) {
        Ok(o) => {
            match g.format {
                Format::Text => print!("{}", o.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&envelope(name, o.pass, o.json)).unwrap()),
            }
            if o.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            match g.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&envelope(name, false, json!({"error": e.to_string(), "exit_code": e.exit_code()})))
                        .unwrap()
                ),
            }
            e.exit_code()
        }
    }
}
