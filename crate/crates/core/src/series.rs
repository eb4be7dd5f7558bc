//! Certified-error summation of infinite series.
//!
//! Two shapes are supported, each with a stopping rule whose truncation
//! error is bounded by the requested tolerance:
//!
//! - alternating series with nonincreasing term magnitudes: the first
//!   omitted term bounds the error, so terms are accumulated while their
//!   magnitude exceeds the tolerance;
//! - sub-geometric series (|term(i+1)| <= r * |term(i)| for a fixed r < 1):
//!   the geometric majorant |term(n)| * r / (1 - r) bounds the tail.
//!
//! Callers supply an iteration cap derived from the analytic shape of their
//! series; a hard ceiling guards against contract violations that would
//! otherwise never terminate.

use crate::rational::{Rational, Tolerance};

/// Ceiling on term consumption regardless of the caller's cap.
pub const HARD_SERIES_CAP: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("series cap of {cap} terms exceeded; the term stream violates its contract")]
    CapExceeded { cap: usize },
}

/// Signed terms with alternating signs and nonincreasing magnitudes
/// converging to zero. The contract is the caller's obligation; it is
/// spot-checked cheaply during summation and sampled by tests.
pub struct AlternatingSeries {
    terms: Box<dyn Iterator<Item = Rational>>,
}

impl AlternatingSeries {
    pub fn new(terms: impl Iterator<Item = Rational> + 'static) -> Self {
        AlternatingSeries {
            terms: Box::new(terms),
        }
    }

    pub fn from_term_fn(term: impl Fn(u64) -> Rational + 'static) -> Self {
        AlternatingSeries::new((0u64..).map(term))
    }
}

/// Signed terms whose magnitudes decay at least geometrically with the
/// stated ratio.
pub struct SubGeometricSeries {
    terms: Box<dyn Iterator<Item = Rational>>,
    ratio: Rational,
}

impl SubGeometricSeries {
    /// Requires 0 < ratio < 1.
    pub fn new(terms: impl Iterator<Item = Rational> + 'static, ratio: Rational) -> Self {
        assert!(
            ratio.is_positive() && ratio < Rational::one(),
            "sub-geometric ratio must lie in (0, 1), got {ratio}"
        );
        SubGeometricSeries {
            terms: Box::new(terms),
            ratio,
        }
    }

    pub fn from_term_fn(term: impl Fn(u64) -> Rational + 'static, ratio: Rational) -> Self {
        SubGeometricSeries::new((0u64..).map(term), ratio)
    }
}

/// Sums an alternating decreasing series, stopping before the first term
/// whose magnitude is at most `eps`. The result is within `eps` of the true
/// sum.
pub fn sum_alternating(
    series: AlternatingSeries,
    eps: &Tolerance,
    cap: usize,
) -> Result<Rational, SeriesError> {
    let cap = cap.min(HARD_SERIES_CAP);
    let mut sum = Rational::zero();
    let mut consumed = 0usize;
    let mut previous_magnitude: Option<Rational> = None;
    for term in series.terms {
        let magnitude = term.abs();
        if magnitude <= *eps.rational() {
            return Ok(sum);
        }
        if consumed == cap {
            return Err(SeriesError::CapExceeded { cap });
        }
        if let Some(prev) = &previous_magnitude {
            debug_assert!(
                magnitude <= *prev,
                "alternating series magnitudes must not increase"
            );
        }
        previous_magnitude = Some(magnitude);
        sum = &sum + &term;
        consumed += 1;
    }
    Ok(sum)
}

/// Sums a sub-geometric series, stopping once the geometric tail bound
/// |term| * r / (1 - r) drops to `eps` or below. The result is within `eps`
/// of the true sum.
pub fn sum_subgeometric(
    series: SubGeometricSeries,
    eps: &Tolerance,
    cap: usize,
) -> Result<Rational, SeriesError> {
    let cap = cap.min(HARD_SERIES_CAP);
    let tail_factor = &series.ratio / &(&Rational::one() - &series.ratio);
    let mut sum = Rational::zero();
    let mut consumed = 0usize;
    for term in series.terms {
        if consumed == cap {
            return Err(SeriesError::CapExceeded { cap });
        }
        sum = &sum + &term;
        consumed += 1;
        let tail_bound = &term.abs() * &tail_factor;
        if tail_bound <= *eps.rational() {
            return Ok(sum);
        }
    }
    Ok(sum)
}

/// A generous term-count cap for any series whose magnitudes eventually
/// shrink by at least half per term and start at magnitude <= 1: linear in
/// the demanded accuracy bits with headroom.
pub fn default_cap(eps: &Tolerance) -> usize {
    (eps.accuracy_bits() as usize).saturating_add(80)
}
