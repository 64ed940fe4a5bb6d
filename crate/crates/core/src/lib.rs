//! Jet-space symbolic engine for the generalized anisotropic Kuramoto-Sivashinsky family
//!
//! Everything here is exact: coefficients are arbitrary-precision rationals and every
//! expression is kept in a canonical sparse polynomial form over symbolic atoms, so
//! structural equality is the identity test used throughout.
#![no_std]

extern crate alloc;

pub mod adjoint;
pub mod conservation;
pub mod constraint;
mod error;
pub mod expr;
pub mod limits;
pub mod numcheck;
pub mod parse;
pub mod pde;
pub mod symmetry;

pub use error::Error;
pub use expr::{Atom, Dep, Expr, Indep, JetIndex, Q};
