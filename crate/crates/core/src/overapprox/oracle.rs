//! Numeric checks of the logarithm, floor and summation inequalities behind the
//! over-approximation cells. Everything is evaluated with outward rounding, and a
//! check passes only when the rounded enclosure certifies it.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::numeric::{self, parse_decimal, Interval, LnSeq};

/// Working precision of the oracle; generous because the summation gaps are
/// small differences of quantities around `n² ln n`.
const ORACLE_PREC: u32 = 192;

#[derive(Clone, Debug, PartialEq)]
pub struct PropCheck {
    pub name: &'static str,
    pub holds: bool,
    /// Enclosure of the quantity that was compared, for diagnostics.
    pub value: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PropReport {
    pub n: u64,
    pub checks: Vec<PropCheck>,
}

impl PropReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn ratio(a: u64, b: u64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn int(v: u64) -> Interval {
    Interval::from_int(v, ORACLE_PREC)
}

fn exact(q: &BigRational) -> Interval {
    Interval::from_rational(q, ORACLE_PREC)
}

/// `ln(a/b) + shift <= 0`, certified.
fn log_ratio_le(a: u64, b: u64, shift: &BigRational) -> (bool, String) {
    let v = &numeric::ln_rational(&ratio(a, b), ORACLE_PREC) + &exact(shift);
    (v.hi().to_rational() <= BigRational::from_integer(0.into()), v.to_string())
}

fn within(v: &Interval, lo: &BigRational, hi: &BigRational) -> bool {
    v.lo().to_rational() >= *lo && v.hi().to_rational() <= *hi
}

/// Running prefix `Σ_{j<k} ln j` whose index trails the main sweep.
struct TrailingLnSum {
    k: u64,
    logs: LnSeq,
    sum: Interval,
}

impl TrailingLnSum {
    fn new(horizon: u64) -> Self {
        TrailingLnSum { k: 1, logs: LnSeq::new(ORACLE_PREC, horizon), sum: Interval::zero(ORACLE_PREC) }
    }

    fn advance_to(&mut self, k: u64) -> &Interval {
        while self.k < k {
            let l = self.logs.next().expect("endless sequence");
            self.sum = &self.sum + &l;
            self.k += 1;
        }
        &self.sum
    }
}

/// Incremental evaluation of all checks for increasing `n`.
///
/// Sums are carried forward, so reporting at `n` costs `O(n - previous n)`.
pub struct PropSweep {
    n: u64,
    logs: LnSeq,
    ln_n: Interval,
    harmonic: Interval,
    sum_ln: Interval,
    sum_jln: Interval,
    floor_half: TrailingLnSum,
    ceil_half: TrailingLnSum,
}

impl PropSweep {
    pub fn new(horizon: u64) -> Self {
        let mut logs = LnSeq::new(ORACLE_PREC, horizon);
        let ln1 = logs.next().expect("endless sequence");
        let ln2 = logs.next().expect("endless sequence");
        PropSweep {
            n: 2,
            logs,
            ln_n: ln2,
            harmonic: int(1),
            sum_ln: ln1.clone(),
            sum_jln: ln1,
            floor_half: TrailingLnSum::new(horizon),
            ceil_half: TrailingLnSum::new(horizon),
        }
    }

    fn step(&mut self) {
        let n = self.n;
        self.harmonic = &self.harmonic + &exact(&ratio(1, n));
        self.sum_ln = &self.sum_ln + &self.ln_n;
        self.sum_jln = &self.sum_jln + &(&int(n) * &self.ln_n);
        self.ln_n = self.logs.next().expect("endless sequence");
        self.n += 1;
    }

    /// Report for `n`; calls must use non-decreasing `n >= 2`.
    pub fn report_at(&mut self, n: u64) -> PropReport {
        assert!(n >= self.n, "sweep only moves forward (at {}, asked {n})", self.n);
        while self.n < n {
            self.step();
        }
        let mut checks = Vec::new();
        let mut push = |name: &'static str, (holds, value): (bool, String)| {
            checks.push(PropCheck { name, holds, value })
        };
        let fl = n / 2;
        let cl = n.div_ceil(2);
        let zero = rat(0, 1);

        // ln n - ln 2 - 1/(n-1) <= ln floor(n/2) <= ln n - ln 2
        push("ln floor(n/2) lower", log_ratio_le(n, 2 * fl, &-ratio(1, n - 1)));
        push("ln floor(n/2) upper", log_ratio_le(2 * fl, n, &zero));
        // ln n - ln 2 <= ln ceil(n/2) <= ln n - ln 2 + 1/n
        push("ln ceil(n/2) lower", log_ratio_le(n, 2 * cl, &zero));
        push("ln ceil(n/2) upper", log_ratio_le(2 * cl, n, &-ratio(1, n)));
        // ln n - 1/(n-1) <= ln(n-1) <= ln n - 1/n
        push("ln(n-1) lower", log_ratio_le(n, n - 1, &-ratio(1, n - 1)));
        push("ln(n-1) upper", log_ratio_le(n - 1, n, &ratio(1, n)));

        let ln_n = &self.ln_n;
        let nn = int(n);
        let half = exact(&rat(1, 2));
        // ∫_1^n ln x dx = n ln n - n + 1
        let int_ln = &(&(&nn * ln_n) - &nn) + &int(1);

        let g1 = ln_n - &self.harmonic;
        push("harmonic gap", (within(&g1, &parse_decimal("-0.7552").unwrap(), &rat(-1, 6)), g1.to_string()));

        let g2 = &(&int_ln - &self.sum_ln) - &(&half * ln_n);
        push("log-sum gap", (within(&g2, &rat(-1, 12), &parse_decimal("0.2701").unwrap()), g2.to_string()));

        // ∫_1^n x ln x dx = n² ln n / 2 - n²/4 + 1/4
        let n2 = int(n * n);
        let int_xln = &(&(&(&n2 * ln_n) * &half) - &exact(&ratio(n * n, 4))) + &exact(&rat(1, 4));
        let g3 = &(&(&(&int_xln - &self.sum_jln) - &(&half * &int_ln)) + &(&exact(&rat(1, 12)) * ln_n))
            - &exact(&ratio(n - 1, 2));
        push(
            "n-log-sum gap",
            (within(&g3, &rat(-19, 72), &parse_decimal("0.1575").unwrap()), g3.to_string()),
        );

        if n >= 4 {
            // Σ_{j=ceil(n/2)}^{n-1} ln j + Σ_{j=floor(n/2)}^{n-1} ln j
            //   <= n ln n - (1 - ln 2) n + ln n / 2 + 0.6672 + 1/(2n)
            let s_ceil = self.ceil_half.advance_to(cl).clone();
            let s_floor = self.floor_half.advance_to(fl).clone();
            let lhs = &(&(&self.sum_ln + &self.sum_ln) - &s_ceil) - &s_floor;
            let ln2 = numeric::ln2(ORACLE_PREC);
            let rhs = &(&(&(&(&nn * ln_n) - &(&(&int(1) - &ln2) * &nn)) + &(&half * ln_n))
                + &exact(&parse_decimal("0.6672").unwrap()))
                + &exact(&ratio(1, 2 * n));
            push("halves log-sum", (lhs.certainly_le(&rhs), format!("{lhs} <= {rhs}")));
        }

        // (n-1)/2 <= floor(n/2) <= n/2 <= ceil(n/2) <= (n+1)/2, in doubled integers
        let floors = n - 1 <= 2 * fl && 2 * fl <= n && n <= 2 * cl && 2 * cl <= n + 1;
        push("floor/ceil bounds", (floors, format!("floor={fl}, ceil={cl}")));
        // (Σ_{j<n} c)/n <= c and the halves form: (n - ceil + n - floor) c / n <= c
        let consts = n - 1 <= n && (n - cl) + (n - fl) <= n;
        push("constant sums", (consts, format!("{} <= {n}", (n - cl) + (n - fl))));

        PropReport { n, checks }
    }
}

/// All checks at a single `n >= 2`; linear in `n`.
pub fn check_prop1_2_3(n: u64) -> PropReport {
    assert!(n >= 2, "checks start at n = 2");
    PropSweep::new(n).report_at(n)
}
