//! Infix rendering in the input syntax, so that `parse(print(e)) == e`.

use core::fmt::{self, Display, Formatter, Write};

use num_traits::{One, Signed};

use super::{Atom, Dep, Exponent, Expr, FuncApp, Q, Term};

fn write_q(f: &mut Formatter<'_>, c: &Q) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

fn write_exponent(f: &mut Formatter<'_>, e: Exponent) -> fmt::Result {
    if e.is_one() {
        Ok(())
    } else if e.is_integer() && e > Exponent::from_integer(0) {
        write!(f, "^{}", e.numer())
    } else if e.is_integer() {
        write!(f, "^({})", e.numer())
    } else {
        write!(f, "^({}/{})", e.numer(), e.denom())
    }
}

pub(crate) fn write_func(f: &mut Formatter<'_>, app: &FuncApp) -> fmt::Result {
    let args = |f: &mut Formatter<'_>| -> fmt::Result {
        f.write_char('(')?;
        for (i, a) in app.args.iter().enumerate() {
            if i > 0 {
                f.write_char(',')?;
            }
            write!(f, "{a}")?;
        }
        f.write_char(')')
    };
    if app.args.len() == 1 {
        let k = app.deriv[0];
        if k < 0 {
            let mut inner = app.clone();
            inner.deriv[0] = k + 1;
            write!(f, "Int(")?;
            write_func(f, &inner)?;
            return write!(f, ",{})", app.args[0]);
        }
        f.write_str(&app.name)?;
        for _ in 0..k {
            f.write_char('\'')?;
        }
        return args(f);
    }
    f.write_str(&app.name)?;
    if !app.is_underived() {
        let plain = app.args.iter().all(|a| matches!(a.as_atom(), Some(Atom::Indep(_)) | Some(Atom::Jet(Dep::U, _))));
        if !plain {
            return Err(fmt::Error);
        }
        f.write_char('_')?;
        for (a, &k) in app.args.iter().zip(&app.deriv) {
            for _ in 0..k {
                write!(f, "{a}")?;
            }
        }
    }
    args(f)
}

fn write_atom(f: &mut Formatter<'_>, a: &Atom) -> fmt::Result {
    match a {
        Atom::Surd(p) => write!(f, "{p}"),
        Atom::Param(s) => f.write_str(s),
        Atom::Indep(d) => f.write_str(d.name()),
        Atom::Jet(dep, j) => {
            f.write_str(dep.name())?;
            if j.order() > 0 {
                write!(f, "_{j}")?;
            }
            Ok(())
        }
        Atom::Func(app) => write_func(f, app),
        Atom::Exp(x) => write!(f, "exp({x})"),
        Atom::Sin(x) => write!(f, "sin({x})"),
        Atom::Cos(x) => write!(f, "cos({x})"),
        Atom::Radical(x) => write!(f, "({x})"),
    }
}

fn write_term(f: &mut Formatter<'_>, t: &Term, first: bool) -> fmt::Result {
    let neg = t.coeff.is_negative();
    match (first, neg) {
        (true, true) => f.write_char('-')?,
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
        _ => {}
    }
    let c = t.coeff.abs();
    if t.mono.is_one() {
        return write_q(f, &c);
    }
    let mut sep = false;
    if !c.is_one() {
        write_q(f, &c)?;
        sep = true;
    }
    for (a, e) in t.mono.factors() {
        if sep {
            f.write_char('*')?;
        }
        write_atom(f, a)?;
        write_exponent(f, *e)?;
        sep = true;
    }
    Ok(())
}

impl Display for Expr {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_char('0');
        }
        for (i, t) in self.terms().iter().enumerate() {
            write_term(f, t, i == 0)?;
        }
        Ok(())
    }
}

impl Display for Atom {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_atom(f, self)
    }
}

impl Display for super::Monomial {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_char('1');
        }
        for (i, (a, e)) in self.factors().iter().enumerate() {
            if i > 0 {
                f.write_char('*')?;
            }
            write_atom(f, a)?;
            write_exponent(f, *e)?;
        }
        Ok(())
    }
}
