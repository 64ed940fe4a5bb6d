//! Floating-point spot checks of symbolic zero claims.
//!
//! A claim is a list of separately computed pieces whose sum should vanish. Each trial
//! draws every atom at random, evaluates the pieces, and compares the sum against the
//! largest individual term.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::ToPrimitive;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::expr::{Atom, Dep, Expr, Q, Symbol};

/// Pieces whose exact sum is claimed to be zero.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ZeroClaim {
    pub pieces: Vec<Expr>,
}

impl ZeroClaim {
    pub fn new(pieces: Vec<Expr>) -> ZeroClaim {
        ZeroClaim { pieces }
    }

    pub fn exact_sum(&self) -> Expr {
        Expr::sum(&self.pieces)
    }
}

/// Values for every atom plus cubic models for one-argument functions.
#[derive(Clone, Debug, Default)]
pub struct Assignment {
    pub values: BTreeMap<Atom, f64>,
    pub models: BTreeMap<Symbol, [f64; 4]>,
}

const SINGULAR: f64 = 1e-12;

fn q_f64(q: &Q) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn poly_eval(c: &[f64; 4], k: i32, x: f64) -> f64 {
    match k {
        -1 => c[0] * x + c[1] * x * x / 2.0 + c[2] * x * x * x / 3.0 + c[3] * x * x * x * x / 4.0,
        0 => c[0] + c[1] * x + c[2] * x * x + c[3] * x * x * x,
        1 => c[1] + 2.0 * c[2] * x + 3.0 * c[3] * x * x,
        2 => 2.0 * c[2] + 6.0 * c[3] * x,
        3 => 6.0 * c[3],
        _ => 0.0,
    }
}

impl Assignment {
    fn atom(&self, a: &Atom) -> Result<f64> {
        if let Some(v) = self.values.get(a) {
            return Ok(*v);
        }
        match a {
            Atom::Surd(p) => Ok(*p as f64),
            Atom::Func(app) if app.args.len() == 1 => {
                let c = self
                    .models
                    .get(&app.name)
                    .ok_or_else(|| Error::Domain(format!("no model for {}", app.name)))?;
                let x = self.eval(&app.args[0])?;
                if app.deriv[0] < -1 {
                    return Err(Error::Domain("repeated antiderivative".into()));
                }
                Ok(poly_eval(c, app.deriv[0], x))
            }
            Atom::Exp(x) => Ok(libm::exp(self.eval(x)?)),
            Atom::Sin(x) => Ok(libm::sin(self.eval(x)?)),
            Atom::Cos(x) => Ok(libm::cos(self.eval(x)?)),
            Atom::Radical(x) => self.eval(x),
            _ => Err(Error::Domain(format!("unassigned atom {a}"))),
        }
    }

    fn term_values(&self, e: &Expr, out: &mut Vec<f64>) -> Result<()> {
        for t in e.terms() {
            let mut v = q_f64(&t.coeff);
            for (a, x) in t.mono.factors() {
                let b = self.atom(a)?;
                let xf = *x.numer() as f64 / *x.denom() as f64;
                if x.is_integer() {
                    if *x.numer() < 0 && b.abs() < SINGULAR {
                        return Err(Error::DivisionByZero);
                    }
                    v *= libm::pow(b, xf);
                } else {
                    if b < 0.0 || (xf < 0.0 && b < SINGULAR) {
                        return Err(Error::Domain(format!("fractional power of {b}")));
                    }
                    v *= libm::pow(b, xf);
                }
            }
            out.push(v);
        }
        Ok(())
    }

    pub fn eval(&self, e: &Expr) -> Result<f64> {
        let mut v = Vec::with_capacity(e.len());
        self.term_values(e, &mut v)?;
        Ok(v.iter().sum())
    }
}

/// How random values are drawn.
#[derive(Clone, Debug)]
#[derive(Default)]
pub struct SampleOptions {
    /// Parameters drawn from `[1/2, 2]` instead of `[-2, 2]`.
    pub positive: BTreeSet<String>,
    /// Jets above this order are set to zero, as for a polynomial solution ansatz.
    pub max_jet_order: Option<u32>,
}


struct Rng(ChaCha8Rng);

impl Rng {
    fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    /// Uniform in `[-m, m]` but bounded away from zero.
    fn nonzero(&mut self, m: f64) -> f64 {
        let v = self.range(0.25, m);
        if self.0.next_u32() & 1 == 0 {
            v
        } else {
            -v
        }
    }
}

fn collect_atoms(e: &Expr, out: &mut BTreeSet<Atom>) {
    e.for_each_atom(&mut |a| {
        out.insert(a.clone());
    });
}

pub fn random_assignment(exprs: &[Expr], seed: u64, opts: &SampleOptions) -> Assignment {
    let mut atoms = BTreeSet::new();
    for e in exprs {
        collect_atoms(e, &mut atoms);
    }
    let mut rng = Rng(ChaCha8Rng::seed_from_u64(seed));
    let mut asg = Assignment::default();
    for a in atoms {
        let v = match &a {
            Atom::Param(n) if opts.positive.contains(&**n) => rng.range(0.5, 2.0),
            Atom::Param(_) => rng.nonzero(2.0),
            Atom::Indep(_) => rng.range(-1.0, 1.0),
            Atom::Jet(Dep::U | Dep::V, j) => {
                if opts.max_jet_order.is_some_and(|m| j.order() > m) {
                    0.0
                } else {
                    rng.range(-2.0, 2.0)
                }
            }
            Atom::Func(app) if app.args.len() == 1 => {
                if !asg.models.contains_key(&app.name) {
                    let c = [rng.nonzero(1.0), rng.nonzero(1.0), rng.nonzero(1.0), rng.nonzero(1.0)];
                    asg.models.insert(app.name.clone(), c);
                }
                continue;
            }
            Atom::Func(_) => rng.range(-2.0, 2.0),
            _ => continue,
        };
        asg.values.insert(a, v);
    }
    asg
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpotReport {
    pub trials: usize,
    pub evaluated: usize,
    pub skipped: usize,
    pub max_rel: f64,
    pub pass: bool,
}

/// Relative residual of one trial, or `None` when the point is singular.
pub fn relative_residual(claim: &ZeroClaim, asg: &Assignment) -> Result<Option<f64>> {
    let mut vals = Vec::new();
    for p in &claim.pieces {
        match asg.term_values(p, &mut vals) {
            Ok(()) => {}
            Err(Error::DivisionByZero) | Err(Error::Domain(_)) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    let scale = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if !scale.is_finite() {
        return Ok(None);
    }
    let sum: f64 = vals.iter().sum();
    if scale == 0.0 {
        return Ok(Some(0.0));
    }
    Ok(Some(sum.abs() / scale))
}

pub fn spot_check(claim: &ZeroClaim, trials: usize, tol: f64, seed: u64, opts: &SampleOptions) -> Result<SpotReport> {
    let mut r = SpotReport { trials, evaluated: 0, skipped: 0, max_rel: 0.0, pass: true };
    for k in 0..trials {
        let asg = random_assignment(&claim.pieces, seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(k as u64), opts);
        match relative_residual(claim, &asg)? {
            None => r.skipped += 1,
            Some(rel) => {
                r.evaluated += 1;
                if rel > r.max_rel || rel.is_nan() {
                    r.max_rel = if rel.is_nan() { f64::INFINITY } else { rel };
                }
            }
        }
    }
    r.pass = r.max_rel <= tol && r.evaluated * 2 >= trials;
    Ok(r)
}
