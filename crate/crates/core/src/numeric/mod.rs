//! Exact and outward-rounded arithmetic shared by every analysis stage.

pub mod decimal;
pub mod dyadic;
pub mod interval;
pub mod transcendental;

pub use decimal::{format_directed, format_rational, parse_decimal, rational_to_f64, Milli};
pub use dyadic::{Dyadic, Round};
pub use interval::Interval;
pub use transcendental::{euler, ln2, ln_int, ln_rational, LnSeq};

/// Working precision (significant bits) used when none is configured.
pub const DEFAULT_PRECISION: u32 = 60;

/// Precision taken from `RTBOUND_PRECISION` when set to a sane value.
pub fn configured_precision() -> u32 {
    std::env::var("RTBOUND_PRECISION")
        .ok()
        .and_then(|v| v.trim().parse::<u32>().ok())
        .filter(|p| (24..=4096).contains(p))
        .unwrap_or(DEFAULT_PRECISION)
}
