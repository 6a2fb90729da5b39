//! The threshold `N` beyond which the ratio `q(n)/p(n)` stays within `ε` of its limit.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{ln_int, rational_to_f64};
use crate::pseudopoly::PseudoPoly;

/// How a candidate `N` is accepted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ThresholdRule {
    /// A floating-point screen with strict `< ε`, confirmed by an exact check with
    /// directed `ln N` bounds that accepts `<= ε`.
    #[default]
    Screened,
    /// Exact check only, strict `< ε`.
    Strict,
}

/// Largest `N` the search will consider.
pub const THRESHOLD_CAP: u64 = 10_000_000;

/// Bits used for the directed bounds on `ln N`.
const LN_PREC: u32 = 96;

/// One side of the threshold condition: `offset + Σ |coeff| · term(N) / p̄(N)`.
struct Side<'a> {
    poly: &'a PseudoPoly,
    offset: BigRational,
}

/// `p̄(N) = C_p · N^k`, with `ln N` when `p̄` carries it.
struct Leading {
    coeff: BigRational,
    power: u32,
    has_log: bool,
}

impl Side<'_> {
    /// Floating-point value, summed in the printed order: log terms, then plain terms.
    fn screen(&self, n: u64, lead: &Leading) -> f64 {
        let nf = n as f64;
        let ln = nf.ln();
        let pbar = rational_to_f64(&lead.coeff) * nf.powi(lead.power as i32) * if lead.has_log { ln } else { 1.0 };
        let mut acc = rational_to_f64(&self.offset);
        for (i, a) in self.poly.log_coeffs().iter().enumerate() {
            acc += rational_to_f64(&a.abs()) * (nf.powi(i as i32) * ln) / pbar;
        }
        for (i, b) in self.poly.plain_coeffs().iter().enumerate() {
            acc += rational_to_f64(&b.abs()) * nf.powi(i as i32) / pbar;
        }
        acc
    }

    /// Exact upper bound of the value: every `ln N` is replaced by the bound that
    /// makes its term larger.
    fn upper(&self, n: u64, lead: &Leading) -> BigRational {
        let ln = ln_int(n, LN_PREC);
        let (ln_lo, ln_hi) = (ln.lo().to_rational(), ln.hi().to_rational());
        let nn = BigRational::from_integer(BigInt::from(n));
        let pow = |i: usize| num_traits::pow(nn.clone(), i);
        let denom = &lead.coeff * pow(lead.power as usize);
        let mut acc = self.offset.clone();
        for (i, a) in self.poly.log_coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            // ln N cancels when p̄ carries it as well
            let term = a.abs() * pow(i) / &denom;
            acc += if lead.has_log { term } else { term * &ln_hi };
        }
        for (i, b) in self.poly.plain_coeffs().iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let term = b.abs() * pow(i) / &denom;
            acc += if lead.has_log { term / &ln_lo } else { term };
        }
        acc
    }
}

fn sides<'a>(p: &'a PseudoPoly, q: &'a PseudoPoly) -> Result<(Side<'a>, Side<'a>, Leading)> {
    let lp = p.leading();
    let lq = q.leading();
    if !lp.coeff.is_positive() {
        return Err(Error::InvalidArgument(format!("p needs a positive leading coefficient: {p}")));
    }
    if !lq.coeff.is_positive() || !q.all_nonnegative() {
        return Err(Error::InvalidArgument(format!("q needs non-negative coefficients and a positive leading one: {q}")));
    }
    if lp.degree < lq.degree {
        return Err(Error::InvalidArgument(format!("degree of p ({}) is below degree of q ({})", lp.degree, lq.degree)));
    }
    let limit = if lp.degree == lq.degree { &lq.coeff / &lp.coeff } else { BigRational::zero() };
    let lead = Leading { coeff: lp.coeff, power: lp.degree.power(), has_log: lp.degree.has_log() };
    Ok((Side { poly: p, offset: -BigRational::one() }, Side { poly: q, offset: -limit }, lead))
}

/// `1_{deg p = deg q} · C_q / C_p`, the limit of `q(n)/p(n)`.
pub fn ratio_limit(p: &PseudoPoly, q: &PseudoPoly) -> BigRational {
    if p.degree() == q.degree() && !p.leading_coeff().is_zero() {
        q.leading_coeff() / p.leading_coeff()
    } else {
        BigRational::zero()
    }
}

/// Least `N >= 2` with `x(N) < ε` and `y(N) < ε` under the default rule.
pub fn threshold_n(p: &PseudoPoly, q: &PseudoPoly, eps: &BigRational) -> Result<u64> {
    threshold_n_with(p, q, eps, ThresholdRule::default())
}

pub fn threshold_n_with(p: &PseudoPoly, q: &PseudoPoly, eps: &BigRational, rule: ThresholdRule) -> Result<u64> {
    if !eps.is_positive() || *eps >= BigRational::one() {
        return Err(Error::InvalidArgument(format!("epsilon must lie in (0, 1), got {eps}")));
    }
    let (x, y, lead) = sides(p, q)?;
    let eps_f = rational_to_f64(eps);
    let accepts = |n: u64| match rule {
        ThresholdRule::Screened => {
            x.screen(n, &lead) < eps_f
                && y.screen(n, &lead) < eps_f
                && x.upper(n, &lead) <= *eps
                && y.upper(n, &lead) <= *eps
        }
        ThresholdRule::Strict => x.upper(n, &lead) < *eps && y.upper(n, &lead) < *eps,
    };
    // x and y do not increase for N >= 3, so a failure at the cap rules out every N below it.
    if !accepts(THRESHOLD_CAP) {
        return Err(Error::Resource(format!(
            "threshold exceeds {THRESHOLD_CAP} (x = {:.6}, y = {:.6} there)",
            x.screen(THRESHOLD_CAP, &lead),
            y.screen(THRESHOLD_CAP, &lead)
        )));
    }
    Ok((2..=THRESHOLD_CAP).find(|&n| accepts(n)).expect("cap accepts"))
}
