//! The real numbers as the completion of the rationals.
//!
//! A [`Real`] wraps a regular function with rational carrier. Total
//! uniformly continuous operations are lifted through the monad operations;
//! non-uniformly continuous ones (squaring, multiplication) first find a
//! bounding interval by querying their argument at tolerance 1 and lift the
//! clamped restriction; partial ones (reciprocal, later ln) take an explicit
//! [`PositivityWitness`] supplying the domain bound.
//!
//! Ordering on reals is only semi-decidable. [`check_nonneg_at`] can refute
//! non-negativity at a single tolerance; [`find_positivity_witness`] runs
//! the halving search that either produces a witness `0 < eps <= x`,
//! certifies negativity, or gives up after a bounded number of probes.

use std::cell::Cell;
use std::fmt;

use crate::completion::{
    ball_check, map2, map_prime, modulus_identity, modulus_lipschitz, BallVerdict, RegularFn,
    UcFn, UcFn2,
};
use crate::rational::{approx_dyadic, to_decimal_string, ExtTolerance, Rational, Tolerance};

/// Peak-denominator instrumentation. Every query answered by a [`Real`]
/// reports its denominator bit-length here while a watch is active; the
/// watermark records the largest coefficient that flowed through an
/// evaluation, which is what compression is meant to keep small.
pub mod stats {
    use super::*;

    thread_local! {
        static WATERMARK: Cell<Option<u64>> = const { Cell::new(None) };
    }

    pub(crate) fn observe(value: &Rational) {
        WATERMARK.with(|w| {
            if let Some(peak) = w.get() {
                w.set(Some(peak.max(value.denom().bits())));
            }
        });
    }

    /// Runs `body` with denominator watching enabled on this thread and
    /// returns its result together with the peak denominator bit-length
    /// observed across every real-number query made inside.
    pub fn watch_denominator_bits<T>(body: impl FnOnce() -> T) -> (T, u64) {
        WATERMARK.with(|w| w.set(Some(0)));
        let result = body();
        let peak = WATERMARK.with(|w| w.replace(None)).unwrap_or(0);
        (result, peak)
    }
}

/// A real number: a regular function from tolerances to rational
/// approximations. Values are immutable and cheap to clone; concurrent
/// queries are safe.
#[derive(Clone)]
pub struct Real {
    rf: RegularFn<Rational>,
}

impl Real {
    /// Wraps an existing regular function as a real.
    pub fn new(rf: RegularFn<Rational>) -> Self {
        Real {
            rf: RegularFn::from_fn(move |eps| {
                let value = rf.query(eps);
                stats::observe(&value);
                value
            }),
        }
    }

    pub fn from_fn(query: impl Fn(&Tolerance) -> Rational + Send + Sync + 'static) -> Self {
        Real {
            rf: RegularFn::from_fn(move |eps| {
                let value = query(eps);
                stats::observe(&value);
                value
            }),
        }
    }

    pub fn constant(value: Rational) -> Self {
        Real::from_fn(move |_| value.clone())
    }

    pub fn from_int(n: i64) -> Self {
        Real::constant(Rational::from_int(n))
    }

    pub fn query(&self, eps: &Tolerance) -> Rational {
        self.rf.query(eps)
    }

    pub fn as_regular(&self) -> &RegularFn<Rational> {
        &self.rf
    }

    pub fn add(&self, other: &Real) -> Real {
        let plus = UcFn2::new(
            |a: &Rational, b: &Rational| a + b,
            modulus_identity(),
            modulus_identity(),
        );
        Real::new(map2(&plus, &self.rf, &other.rf))
    }

    pub fn neg(&self) -> Real {
        let negate = UcFn::new(|a: &Rational| -a, modulus_identity());
        Real::new(map_prime(&negate, &self.rf))
    }

    pub fn sub(&self, other: &Real) -> Real {
        self.add(&other.neg())
    }

    /// Multiplication by an exact rational constant. The modulus is
    /// eps/|q|, infinite when q = 0 (a bounded constant function).
    pub fn scale(&self, q: &Rational) -> Real {
        let factor = q.clone();
        let modulus_factor = q.abs();
        let lifted = UcFn::new(
            move |a: &Rational| a * &factor,
            move |eps: &Tolerance| {
                if modulus_factor.is_zero() {
                    ExtTolerance::Infinite
                } else {
                    ExtTolerance::finite(eps.scale(&modulus_factor.recip().expect("nonzero")))
                }
            },
        );
        Real::new(map_prime(&lifted, &self.rf))
    }

    /// Squaring, restricted to the domain [-c, c] with c = |self(1)| + 1,
    /// which always contains the value.
    pub fn sq(&self) -> Real {
        let c = &self.query(&Tolerance::one()).abs() + &Rational::one();
        self.sq_with_bound(c)
    }

    /// Squaring with a caller-supplied domain bound `c >= |self|`. The
    /// result does not depend on the bound chosen, as long as it is valid.
    pub fn sq_with_bound(&self, c: Rational) -> Real {
        assert!(c.is_positive(), "squaring domain bound must be positive");
        let neg_c = -&c;
        let slope = &c * &Rational::from_int(2);
        let clamp_c = c.clone();
        let lifted = UcFn::new(
            move |a: &Rational| {
                let t = a.clamp_to(&neg_c, &clamp_c);
                &t * &t
            },
            modulus_lipschitz(slope),
        );
        Real::new(map_prime(&lifted, &self.rf))
    }

    /// Multiplication. Domain bounds come from querying each factor at
    /// tolerance 1; both factors are clamped so the per-argument moduli are
    /// uniform over the whole carrier.
    pub fn mul(&self, other: &Real) -> Real {
        let bound_other = &other.query(&Tolerance::one()).abs() + &Rational::one();
        let bound_self = &self.query(&Tolerance::one()).abs() + &Rational::one();
        let (c, cp) = (bound_other, bound_self);
        let neg_c = -&c;
        let neg_cp = -&cp;
        let (c_in, cp_in) = (c.clone(), cp.clone());
        let product = UcFn2::new(
            move |a: &Rational, b: &Rational| {
                &a.clamp_to(&neg_cp, &cp_in) * &b.clamp_to(&neg_c, &c_in)
            },
            modulus_lipschitz(c),
            modulus_lipschitz(cp),
        );
        Real::new(map2(&product, &self.rf, &other.rf))
    }

    /// Reciprocal of a real certified apart from zero. For a positive
    /// witness with bound c, lifts a -> 1/max(a, c), uniformly continuous
    /// on [c, oo) with modulus eps * c^2; the negative case goes through
    /// negation. Panics if a probe exposes the witness as invalid.
    pub fn inv(&self, witness: &SignWitness) -> Real {
        match witness {
            SignWitness::Positive(w) => {
                let c = w.epsilon().rational().clone();
                let probe_at = w.epsilon().half();
                let probed = self.query(&probe_at);
                assert!(
                    probed >= &c - probe_at.rational(),
                    "positivity witness {c} violated: x({probe_at}) = {probed}"
                );
                let c_in = c.clone();
                let c_sq = &c * &c;
                let lifted = UcFn::new(
                    move |a: &Rational| {
                        Rational::max(a, &c_in).recip().expect("bounded away from zero")
                    },
                    move |eps: &Tolerance| ExtTolerance::finite(eps.scale(&c_sq)),
                );
                Real::new(map_prime(&lifted, &self.rf))
            }
            SignWitness::Negative(w) => self
                .neg()
                .inv(&SignWitness::Positive(w.clone()))
                .neg(),
        }
    }

    pub fn abs(&self) -> Real {
        let lifted = UcFn::new(|a: &Rational| a.abs(), modulus_identity());
        Real::new(map_prime(&lifted, &self.rf))
    }

    pub fn min(&self, other: &Real) -> Real {
        let lifted = UcFn2::new(
            |a: &Rational, b: &Rational| Rational::min(a, b),
            modulus_identity(),
            modulus_identity(),
        );
        Real::new(map2(&lifted, &self.rf, &other.rf))
    }

    pub fn max(&self, other: &Real) -> Real {
        let lifted = UcFn2::new(
            |a: &Rational, b: &Rational| Rational::max(a, b),
            modulus_identity(),
            modulus_identity(),
        );
        Real::new(map2(&lifted, &self.rf, &other.rf))
    }

    /// Re-approximates at half tolerance and snaps onto the dyadic grid for
    /// the other half. Equivalent to the identity, but keeps numerator and
    /// denominator sizes proportional to the tolerance actually requested.
    pub fn compress(&self) -> Real {
        let x = self.clone();
        Real::from_fn(move |eps| {
            let half = eps.half();
            approx_dyadic(&x.query(&half), &half)
        })
    }

    /// Necessary-condition test for 0 <= self at one tolerance: refuted
    /// exactly when self(eps) < -eps.
    pub fn check_nonneg_at(&self, eps: &Tolerance) -> BallVerdict {
        if self.query(eps) < -eps.rational() {
            BallVerdict::Refuted
        } else {
            BallVerdict::Consistent
        }
    }

    /// Sampled ball-relation check against another real.
    pub fn ball_check(
        &self,
        radius: &ExtTolerance,
        other: &Real,
        probes: &[Tolerance],
    ) -> BallVerdict {
        ball_check(radius, &self.rf, &other.rf, probes)
    }

    /// Decimal rendering with `digits` fractional digits. The queried
    /// tolerance and the rounding step each contribute half of a final
    /// error of at most 10^-digits.
    pub fn to_decimal(&self, digits: u32) -> String {
        assert!(digits >= 1, "need at least one decimal digit");
        let eps = Tolerance::decimal(digits).half();
        let approx = self.query(&eps);
        to_decimal_string(&approx, digits)
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({} ± 1/1000)", self.query(&Tolerance::ratio(1, 1000)))
    }
}

/// A rational eps > 0 with unit(eps) <= x: constructive evidence that x is
/// positive, and the domain bound partial functions need.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositivityWitness {
    epsilon: Tolerance,
}

impl PositivityWitness {
    pub fn new(epsilon: Tolerance) -> Self {
        PositivityWitness { epsilon }
    }

    pub fn epsilon(&self) -> &Tolerance {
        &self.epsilon
    }
}

impl fmt::Display for PositivityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.epsilon.fmt(f)
    }
}

/// Which side of zero a value is certified to lie on; the payload witnesses
/// the magnitude (`Negative(w)` certifies x <= -w).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignWitness {
    Positive(PositivityWitness),
    Negative(PositivityWitness),
}

/// Outcome of the positivity search. `Inconclusive` is inherent: a value
/// equal to zero keeps every probe inside the undecided band forever.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessSearch {
    Positive(PositivityWitness),
    Negative(PositivityWitness),
    Inconclusive,
}

/// The halving search for a positivity witness: probe x at delta; if
/// x(delta) - delta > 0 that gap is a witness, if x(delta) + delta < 0 the
/// value is certified negative, otherwise halve delta and retry. Performs
/// `max_iters` halvings (max_iters + 1 probes) before giving up.
pub fn find_positivity_witness(x: &Real, delta0: &Tolerance, max_iters: u32) -> WitnessSearch {
    find_positivity_witness_traced(x, delta0, max_iters).0
}

/// As [`find_positivity_witness`], also reporting how many probes ran.
pub fn find_positivity_witness_traced(
    x: &Real,
    delta0: &Tolerance,
    max_iters: u32,
) -> (WitnessSearch, u32) {
    assert!(max_iters >= 1, "witness search needs at least one iteration");
    let mut delta = delta0.clone();
    let mut probes = 0u32;
    for _ in 0..=max_iters {
        let q = x.query(&delta);
        probes += 1;
        let lower = &q - delta.rational();
        if lower.is_positive() {
            let eps = Tolerance::new(lower).expect("positive by the check above");
            return (WitnessSearch::Positive(PositivityWitness::new(eps)), probes);
        }
        let upper = &q + delta.rational();
        if upper.is_negative() {
            let eps = Tolerance::new(-upper).expect("positive by the check above");
            return (WitnessSearch::Negative(PositivityWitness::new(eps)), probes);
        }
        delta = delta.half();
    }
    (WitnessSearch::Inconclusive, probes)
}

/// Semi-decides x < y by searching for a positivity witness of y - x.
pub fn lt(x: &Real, y: &Real, delta0: &Tolerance, max_iters: u32) -> WitnessSearch {
    find_positivity_witness(&y.sub(x), delta0, max_iters)
}
