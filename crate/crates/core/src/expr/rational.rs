//! Exact rational powers with surd extraction.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use super::{Exponent, Q};
use crate::error::{Error, Result};

pub(crate) type Surds = SmallVec<[(u64, Exponent); 2]>;

pub(crate) fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub(crate) fn q_pow_int(c: &Q, n: i64) -> Q {
    let mut base = if n < 0 { c.recip() } else { c.clone() };
    let mut k = n.unsigned_abs();
    let mut acc = Q::one();
    while k > 0 {
        if k & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        k >>= 1;
    }
    acc
}

fn factor(n: &BigInt) -> Result<SmallVec<[(u64, i64); 4]>> {
    let mut m = n
        .to_u64()
        .ok_or_else(|| Error::Unsupported(alloc::format!("fractional power of large integer {n}")))?;
    let mut out = SmallVec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        if m % p == 0 {
            let mut k = 0;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
        if p > 10_000_000 {
            return Err(Error::Unsupported(alloc::format!("cannot factor {n}")));
        }
    }
    if m > 1 {
        out.push((m, 1));
    }
    Ok(out)
}

fn floor_exp(e: Exponent) -> i64 {
    e.floor().to_integer()
}

/// `c^q` as a rational times a product of prime surds with exponents in (0, 1).
pub(crate) fn q_pow(c: &Q, q: Exponent) -> Result<(Q, Surds)> {
    if q.is_integer() {
        if c.is_zero() && q < Exponent::zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok((q_pow_int(c, q.to_integer()), Surds::new()));
    }
    if c.is_zero() {
        return if q > Exponent::zero() { Ok((Q::zero(), Surds::new())) } else { Err(Error::DivisionByZero) };
    }
    let mut coeff = Q::one();
    if c.is_negative() {
        if q.denom() % 2 == 0 {
            return Err(Error::Domain(alloc::format!("even root of negative number {c}")));
        }
        if q.numer() % 2 != 0 {
            coeff = -coeff;
        }
    }
    let mut surds = Surds::new();
    let mut push = |p: u64, e: Exponent, coeff: &mut Q| {
        let k = floor_exp(e);
        *coeff *= q_pow_int(&q_int(p as i64), k);
        let frac = e - Exponent::from_integer(k);
        if !frac.is_zero() {
            surds.push((p, frac));
        }
    };
    for (p, k) in factor(&c.numer().abs())? {
        push(p, q * Exponent::from_integer(k), &mut coeff);
    }
    for (p, k) in factor(c.denom())? {
        push(p, -q * Exponent::from_integer(k), &mut coeff);
    }
    surds.sort();
    Ok((coeff, surds))
}

/// Reduce a surd exponent into [0, 1), returning the integer part folded into a rational.
pub(crate) fn fold_surd(p: u64, e: Exponent) -> (Q, Exponent) {
    let k = floor_exp(e);
    (q_pow_int(&q_int(p as i64), k), e - Exponent::from_integer(k))
}
