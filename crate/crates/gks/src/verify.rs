//! Claims read from a JSON file, each checked exactly and optionally in floating point.
//!
//! ```json
//! {
//!   "family": "f=alpha*u + beta; g=0; h=0; r=0",
//!   "functions": {"F": ["y", "t"]},
//!   "constraints": [{"equation": "F_t - alpha*F + F_yyyy", "lead": "F_t"}],
//!   "checks": [
//!     {"id": "shift", "kind": "symmetry", "generator": "F*d_u"},
//!     {"id": "mass", "kind": "conservation", "vector": {"cx": "...", "cy": "...", "ct": "u"}},
//!     {"id": "noether", "kind": "noether", "generator": "d_x", "phi": "1", "expect": false},
//!     {"id": "adjoint", "kind": "self-adjoint", "substitution": "1"},
//!     {"id": "identity", "kind": "zero", "expr": "u_t - u_t"}
//!   ]
//! }
//! ```

use std::collections::BTreeMap;

use gks_core::adjoint::substituted_adjoint;
use gks_core::conservation::{conserved_vector, divergence, ConservedVector};
use gks_core::numcheck::ZeroClaim;
use gks_core::pde::Reducer;
use gks_core::symmetry::check_symmetry;
use serde::Deserialize;
use serde_json::json;

use crate::context::{constraints, generator, resolve_family, with_definitions, with_functions};
use crate::golden::{Constraint, GoldenDir, PrintedVector};
use crate::report::Check;
use crate::suite::{numeric_check, Numeric, Options};
use crate::{parse, AppError, Result};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Input {
    #[serde(default = "generic")]
    pub family: String,
    #[serde(default)]
    pub functions: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub definitions: Vec<(String, String)>,
    #[serde(default)]
    pub constraints: Vec<Constraint>,
    /// Parameters sampled from positive values in numeric checks.
    #[serde(default)]
    pub positive: Vec<String>,
    pub checks: Vec<Claim>,
}

fn generic() -> String {
    "generic".into()
}

fn yes() -> bool {
    true
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Claim {
    Symmetry {
        id: String,
        generator: String,
        #[serde(default = "yes")]
        expect: bool,
    },
    /// A given vector has zero divergence on solutions.
    Conservation {
        id: String,
        vector: PrintedVector,
        #[serde(default = "yes")]
        expect: bool,
    },
    /// The vector built from a symmetry and multiplier has zero divergence on solutions.
    Noether {
        id: String,
        generator: String,
        phi: String,
        #[serde(default = "yes")]
        expect: bool,
    },
    /// The adjoint vanishes on solutions after `v = substitution`.
    SelfAdjoint {
        id: String,
        substitution: String,
        #[serde(default = "yes")]
        expect: bool,
    },
    /// An expression vanishes on solutions.
    Zero {
        id: String,
        expr: String,
        #[serde(default = "yes")]
        expect: bool,
    },
}

pub fn run(src: &str, golden: &GoldenDir, numeric: Option<Numeric>) -> Result<Vec<Check>> {
    let input: Input = serde_json::from_str(src).map_err(|e| AppError::Usage(format!("verify input: {e}")))?;
    let (fam, ctx) = resolve_family(&input.family, golden)?;
    let ctx = with_definitions(with_functions(ctx, &input.functions)?, &input.definitions)?;
    let cons = constraints(&input.constraints, &ctx)?;
    let opts = Options { golden: golden.clone(), numeric };
    let mut out = Vec::new();
    for c in &input.checks {
        let (id, expect, residual, claim) = match c {
            Claim::Symmetry { id, generator: g, expect } => {
                let r = check_symmetry(&generator(g, &ctx)?, &fam, &cons)?;
                (id, *expect, r.residual, r.claim)
            }
            Claim::Conservation { id, vector: v, expect } => {
                let cv = ConservedVector::new([parse(&v.cx, &ctx)?, parse(&v.cy, &ctx)?, parse(&v.ct, &ctx)?], cons.clone());
                let d = divergence(&cv, &fam)?;
                (id, *expect, d.residual, d.claim)
            }
            Claim::Noether { id, generator: g, phi, expect } => {
                let cv = conserved_vector(&generator(g, &ctx)?, &fam, &parse(phi, &ctx)?, &cons)?;
                let d = divergence(&cv, &fam)?;
                (id, *expect, d.residual, d.claim)
            }
            Claim::SelfAdjoint { id, substitution, expect } => {
                let (r, claim) = substituted_adjoint(&fam, &parse(substitution, &ctx)?, &cons)?;
                (id, *expect, r, claim)
            }
            Claim::Zero { id, expr, expect } => {
                let e = cons.apply(&Reducer::new(&fam).reduce(&parse(expr, &ctx)?)?)?;
                (id, *expect, e.clone(), ZeroClaim::new(vec![e]))
            }
        };
        let holds = residual.is_zero();
        out.push(Check::new(id.clone(), expect, holds).data(json!({"residual": residual.to_string()})));
        if let Some(n) = numeric_check(&opts, id, &claim, &input.positive, holds)? {
            out.push(n);
        }
    }
    Ok(out)
}
