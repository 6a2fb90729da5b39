use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::Zero;

use super::{Endpoint, ExtPoly, Mono, PseudoPoly, SymConst};
use crate::error::{Error, Result};
use crate::overapprox::{BoundShape, Constants, OvApPair};
use crate::recdsl::Coefficient;

/// `d * p(n) >= q(n)` for all `n >= 2` implies `OvAp(e, d*f + c)(n) <= d*f(n) + c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub p: PseudoPoly,
    pub q: PseudoPoly,
    /// Exponents `(A, B)` of the multiplier `n^A (n-1)^B` that cleared the denominators.
    pub multiplier: (i32, i32),
}

fn sign(c: &SymConst, consts: &Constants) -> Option<Ordering> {
    let (lo, hi) = c.enclose(consts);
    let zero = BigRational::zero();
    if lo >= zero {
        Some(if hi.is_zero() { Ordering::Equal } else { Ordering::Greater })
    } else if hi <= zero {
        Some(Ordering::Less)
    } else {
        None
    }
}

/// Removes `(n-1)^-1` factors using `1/n <= 1/(n-1) <= 2/n` for `n >= 2`.
///
/// `lower` selects a pointwise lower bound of the polynomial, otherwise an upper bound.
/// Keeping the multiplier a pure power of `n` means `q` never picks up the
/// negative coefficients that expanding `(n-1)` would introduce.
fn relax_n_minus_one(poly: &ExtPoly, lower: bool, consts: &Constants) -> Result<ExtPoly> {
    let mut out = ExtPoly::zero();
    for (m, c) in poly.terms() {
        if m.b >= 0 {
            out = out.add(&ExtPoly::mono(c.clone(), m.a, m.b, m.log));
            continue;
        }
        let s = sign(c, consts).ok_or_else(|| {
            Error::Structure(format!("coefficient {c} of a 1/(n-1) term has undetermined sign"))
        })?;
        // Lower bound of a positive term uses 1/n, of a negative term 2/n; mirrored for upper bounds.
        let factor = match (s == Ordering::Less, lower) {
            (false, true) | (true, false) => 1,
            (true, true) | (false, false) => 2,
        };
        let relaxed = Mono::new(m.a - 1, m.b + 1, m.log);
        out = out.add(&ExtPoly::mono(c.scale(&BigRational::from_integer(factor.into())), relaxed.a, relaxed.b, relaxed.log));
    }
    Ok(out)
}

fn to_pseudo(poly: &ExtPoly, consts: &Constants, at: Endpoint) -> Result<PseudoPoly> {
    let mut log = Vec::new();
    let mut plain = Vec::new();
    for (m, c) in poly.terms() {
        if m.a < 0 || m.b != 0 {
            return Err(Error::Structure(format!("denominator left after clearing: {poly}")));
        }
        let slot = if m.log { &mut log } else { &mut plain };
        let i = m.a as usize;
        if slot.len() <= i {
            slot.resize(i + 1, BigRational::zero());
        }
        slot[i] += c.resolve(consts, at);
    }
    Ok(PseudoPoly::new(log, plain))
}

/// Rearranges `OvAp(e, d*f + c) <= d*f + c` into `d * p >= q`.
///
/// `p0 = f - p_d` and `q0 = p_c - c` are relaxed to pure powers of `n`, multiplied
/// by the smallest `n^A` clearing every denominator, and their constants are
/// committed: lower endpoints for `p`, upper endpoints for `q`.
pub fn to_inequality(ov: &OvApPair, f: BoundShape, c: &Coefficient, consts: &Constants) -> Result<Inequality> {
    let p0 = f.poly().sub(&ov.p_d);
    let q0 = ov.p_c(c).sub(&ExtPoly::constant(SymConst::from_coefficient(c)));
    let p1 = relax_n_minus_one(&p0, true, consts)?;
    let q1 = relax_n_minus_one(&q0, false, consts)?;
    let a = -p1.min_exponents().0.min(q1.min_exponents().0).min(0);
    let p = to_pseudo(&p1.mul_monomial(a, 0), consts, Endpoint::Lower)?;
    let q = to_pseudo(&q1.mul_monomial(a, 0), consts, Endpoint::Upper)?;
    q.require_nonnegative("q")?;
    if q.leading_coeff() <= BigRational::zero() {
        return Err(Error::Structure(format!("q has no positive leading coefficient: {q}")));
    }
    Ok(Inequality { p, q, multiplier: (a, 0) })
}
