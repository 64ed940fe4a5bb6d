use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use smallvec::SmallVec;

use super::Expr;

pub type Symbol = Arc<str>;

/// Independent variables, ordered x < y < t.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Indep {
    X,
    Y,
    T,
}

impl Indep {
    pub const ALL: [Indep; 3] = [Indep::X, Indep::Y, Indep::T];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Indep::X => "x",
            Indep::Y => "y",
            Indep::T => "t",
        }
    }

    pub fn from_char(c: char) -> Option<Indep> {
        match c {
            'x' => Some(Indep::X),
            'y' => Some(Indep::Y),
            't' => Some(Indep::T),
            _ => None,
        }
    }
}

/// Dependent variables: the solution `u` and the adjoint variable `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dep {
    U,
    V,
}

impl Dep {
    pub fn name(self) -> &'static str {
        match self {
            Dep::U => "u",
            Dep::V => "v",
        }
    }
}

/// Symmetrized derivative multi-index (counts of x, y and t).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JetIndex {
    pub ix: u16,
    pub iy: u16,
    pub it: u16,
}

impl JetIndex {
    pub const ZERO: JetIndex = JetIndex { ix: 0, iy: 0, it: 0 };

    pub const fn new(ix: u16, iy: u16, it: u16) -> JetIndex {
        JetIndex { ix, iy, it }
    }

    pub fn unit(d: Indep) -> JetIndex {
        JetIndex::ZERO.shifted(d)
    }

    pub fn order(self) -> u32 {
        self.ix as u32 + self.iy as u32 + self.it as u32
    }

    pub fn get(self, d: Indep) -> u16 {
        match d {
            Indep::X => self.ix,
            Indep::Y => self.iy,
            Indep::T => self.it,
        }
    }

    pub fn shifted(mut self, d: Indep) -> JetIndex {
        match d {
            Indep::X => self.ix += 1,
            Indep::Y => self.iy += 1,
            Indep::T => self.it += 1,
        }
        self
    }

    pub fn lowered(mut self, d: Indep) -> Option<JetIndex> {
        let slot = match d {
            Indep::X => &mut self.ix,
            Indep::Y => &mut self.iy,
            Indep::T => &mut self.it,
        };
        if *slot == 0 {
            return None;
        }
        *slot -= 1;
        Some(self)
    }


    /// `self - o` when `o <= self` componentwise.
    pub fn minus(self, o: JetIndex) -> Option<JetIndex> {
        Some(JetIndex::new(
            self.ix.checked_sub(o.ix)?,
            self.iy.checked_sub(o.iy)?,
            self.it.checked_sub(o.it)?,
        ))
    }

    pub fn contains(self, o: JetIndex) -> bool {
        self.minus(o).is_some()
    }

    /// Directions spelled out in x, y, t order, e.g. `xxy`.
    pub fn letters(self) -> impl Iterator<Item = Indep> {
        core::iter::repeat_n(Indep::X, self.ix as usize)
            .chain(core::iter::repeat_n(Indep::Y, self.iy as usize))
            .chain(core::iter::repeat_n(Indep::T, self.it as usize))
    }

    /// Number of ordered tuples with these counts, `|J|! / (jx! jy! jt!)`.
    pub fn multiplicity(self) -> u64 {
        let f = |n: u16| (1..=n as u64).product::<u64>();
        f(self.order() as u16) / (f(self.ix) * f(self.iy) * f(self.it))
    }

    /// All indices of total order at most `n`.
    pub fn up_to(n: u32) -> Vec<JetIndex> {
        let mut out = Vec::new();
        for k in 0..=n {
            for ix in (0..=k).rev() {
                for iy in (0..=k - ix).rev() {
                    out.push(JetIndex::new(ix as u16, iy as u16, (k - ix - iy) as u16));
                }
            }
        }
        out
    }
}

impl core::ops::Add for JetIndex {
    type Output = JetIndex;

    fn add(self, o: JetIndex) -> JetIndex {
        JetIndex::new(self.ix + o.ix, self.iy + o.iy, self.it + o.it)
    }
}

impl fmt::Display for JetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in self.letters() {
            f.write_str(d.name())?;
        }
        Ok(())
    }
}

/// Application of a named function, possibly differentiated.
///
/// `deriv[k]` counts derivatives in the k-th argument; for a one-argument function
/// `deriv[0] == -1` is the antiderivative in that argument.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FuncApp {
    pub name: Symbol,
    pub deriv: SmallVec<[i32; 4]>,
    pub args: Vec<Expr>,
}

impl FuncApp {
    pub fn new(name: Symbol, args: Vec<Expr>) -> FuncApp {
        let deriv = core::iter::repeat_n(0, args.len()).collect();
        FuncApp { name, deriv, args }
    }

    pub fn with_deriv(&self, k: usize, by: i32) -> FuncApp {
        let mut g = self.clone();
        g.deriv[k] += by;
        g
    }

    pub fn order(&self) -> i32 {
        self.deriv.iter().sum()
    }

    pub fn is_underived(&self) -> bool {
        self.deriv.iter().all(|&d| d == 0)
    }
}

/// Symbolic factor of a monomial.
///
/// The variant order fixes the canonical factor order inside monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    /// Prime base of a fractional rational power; exponent stays in [0, 1).
    Surd(u64),
    Param(Symbol),
    Indep(Indep),
    Jet(Dep, JetIndex),
    Func(Arc<FuncApp>),
    /// At most one per monomial, always with exponent 1.
    Exp(Expr),
    Sin(Expr),
    Cos(Expr),
    /// Multi-term base raised to a negative or fractional power; leading coefficient 1.
    Radical(Expr),
}

impl Atom {
    pub fn param(name: &str) -> Atom {
        Atom::Param(Symbol::from(name))
    }

    pub fn u() -> Atom {
        Atom::Jet(Dep::U, JetIndex::ZERO)
    }

    pub fn v() -> Atom {
        Atom::Jet(Dep::V, JetIndex::ZERO)
    }

    pub fn jet_u(j: JetIndex) -> Atom {
        Atom::Jet(Dep::U, j)
    }

    pub fn as_jet(&self) -> Option<(Dep, JetIndex)> {
        match self {
            Atom::Jet(d, j) => Some((*d, *j)),
            _ => None,
        }
    }

    pub fn as_func(&self) -> Option<&FuncApp> {
        match self {
            Atom::Func(f) => Some(f),
            _ => None,
        }
    }

    /// Expressions nested inside this atom.
    pub fn children(&self) -> &[Expr] {
        match self {
            Atom::Func(f) => &f.args,
            Atom::Exp(a) | Atom::Sin(a) | Atom::Cos(a) | Atom::Radical(a) => core::slice::from_ref(a),
            _ => &[],
        }
    }

    pub fn is_primitive(&self) -> bool {
        matches!(self, Atom::Surd(_) | Atom::Param(_) | Atom::Indep(_) | Atom::Jet(..))
    }
}
