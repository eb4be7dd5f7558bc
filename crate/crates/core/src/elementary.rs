//! Elementary real functions built from rational-valued series on reduced
//! domains and lifted through the monad.
//!
//! Each function follows the same recipe: range-reduce the argument into the
//! interval where its series has a usable error bound, sum the series with a
//! certified tolerance, and undo the reduction with exact identities
//! (triple-angle for sin, powers of two for ln and exp). Compression is
//! inserted at the documented points — after each sin reconstruction step,
//! between the pi-formula accumulations, and between exp squarings — to keep
//! rational coefficients proportional to the tolerances in play.

use num_bigint::BigInt;
use num_traits::One;

use crate::completion::{bind_prime, UcFn};
use crate::rational::{ExtTolerance, Rational, Tolerance};
use crate::real::{PositivityWitness, Real, SignWitness};
use crate::series::{
    default_cap, sum_alternating, sum_subgeometric, AlternatingSeries, SubGeometricSeries,
};

/// Whether the documented compression points are active. Disabling is only
/// interesting for measuring what compression buys; results are equivalent
/// either way.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Compression {
    #[default]
    On,
    Off,
}

fn compress_if(mode: Compression, x: Real) -> Real {
    match mode {
        Compression::On => x.compress(),
        Compression::Off => x,
    }
}

/// sin on rational arguments. The alternating series converges (with the
/// last-term error bound) for |r| <= 1, so the argument is divided by 3^k
/// first and the triple-angle identity sin(a) = 3 sin(a/3) - 4 sin^3(a/3)
/// is replayed k times, compressing after each step.
pub fn sin_q(a: &Rational, mode: Compression) -> Real {
    let mut k = 0u32;
    let mut scaled = a.abs();
    while scaled > Rational::one() {
        scaled = scaled / Rational::from_int(3);
        k += 1;
    }
    let reduced = a / &Rational::from_int(3).pow(k);
    let mut s = alternating_series_real(move || sin_terms(reduced.clone()));
    for _ in 0..k {
        let cubed = s.mul(&s.sq());
        s = compress_if(
            mode,
            s.scale(&Rational::from_int(3))
                .sub(&cubed.scale(&Rational::from_int(4))),
        );
    }
    // sin lands in [-1, 1]; clamping answers onto that range keeps coarse
    // queries harmless when the lift takes the infinite-modulus branch
    let minus_one = Rational::from_int(-1);
    let one = Rational::one();
    Real::from_fn(move |eps| s.query(eps).clamp_to(&minus_one, &one))
}

/// sin, lifted. The modulus is the identity below tolerance 1 and infinite
/// above it: sin is bounded, so coarse answers need no input accuracy.
pub fn sin(x: &Real) -> Real {
    sin_with(x, Compression::On)
}

pub fn sin_with(x: &Real, mode: Compression) -> Real {
    let lift = UcFn::new(
        move |a: &Rational| sin_q(a, mode).as_regular().clone(),
        |eps: &Tolerance| {
            if *eps.rational() < Rational::one() {
                ExtTolerance::finite(eps.clone())
            } else {
                ExtTolerance::Infinite
            }
        },
    );
    // compressing the lift argument keeps the rationals fed into the series
    // proportional to the tolerance, whatever produced the argument
    let argument = compress_if(mode, x.clone());
    Real::new(bind_prime(&lift, argument.as_regular()))
}

/// cos via the exact identity cos(x) = 1 - 2 sin^2(x/2).
pub fn cos(x: &Real) -> Real {
    cos_with(x, Compression::On)
}

pub fn cos_with(x: &Real, mode: Compression) -> Real {
    let half = sin_with(&x.scale(&Rational::ratio(1, 2)), mode);
    Real::from_int(1).sub(&half.sq().scale(&Rational::from_int(2)))
}

/// arctan on rational arguments with |a| <= 1.
///
/// The raw alternating series is kept only for |a| <= 1/2, where each term
/// gains two bits; larger arguments are split once by the arctangent sum
/// law, atan(a) = atan(1/2) + atan((a - 1/2)/(1 + a/2)), whose residual
/// argument lies in (0, 1/3]. Without the split, queries near |a| = 1 would
/// need on the order of 1/eps Leibniz terms.
pub fn atan_q(a: &Rational) -> Real {
    assert!(
        a.abs() <= Rational::one(),
        "atan_q needs |a| <= 1, got {a}"
    );
    if a.is_negative() {
        return atan_q(&-a).neg();
    }
    let half = Rational::ratio(1, 2);
    if *a > half {
        let residual = &(a - &half) / &(&Rational::one() + &(a * &half));
        return atan_series(half).add(&atan_series(residual));
    }
    atan_series(a.clone())
}

fn atan_series(a: Rational) -> Real {
    debug_assert!(a.abs() <= Rational::ratio(1, 2));
    alternating_series_real(move || atan_terms(a.clone()))
}

/// arctan on reals, total. A probe at tolerance 1/8 picks a branch with
/// enough margin that every exact precondition below it holds:
/// |value| <= 1 takes the series lift, moderate values go through
/// atan(x) = pi/4 + atan((x-1)/(x+1)), and large ones through
/// atan(x) = pi/2 - atan(1/x).
pub fn atan(x: &Real) -> Real {
    atan_with(x, Compression::On)
}

pub fn atan_with(x: &Real, mode: Compression) -> Real {
    let probe = x.query(&Tolerance::ratio(1, 8));
    if probe.is_negative() {
        return atan_with(&x.neg(), mode).neg();
    }
    let threshold_series = Rational::ratio(7, 8);
    let threshold_inverse = Rational::from_int(4);
    if probe <= threshold_series {
        // |value| <= 1
        let minus_one = Rational::from_int(-1);
        let one = Rational::one();
        let lift = UcFn::new(
            move |a: &Rational| atan_q(&a.clamp_to(&minus_one, &one)).as_regular().clone(),
            |eps: &Tolerance| ExtTolerance::finite(eps.clone()),
        );
        Real::new(bind_prime(&lift, x.as_regular()))
    } else if probe <= threshold_inverse {
        // value in (3/4, 33/8]: residual (x-1)/(x+1) = 1 - 2/(x+1) lands
        // within the series branch of the recursive call
        let shifted = x.add(&Real::from_int(1));
        let witness = SignWitness::Positive(PositivityWitness::new(Tolerance::ratio(7, 4)));
        let residual = Real::from_int(1).sub(&shifted.inv(&witness).scale(&Rational::from_int(2)));
        pi_with(mode)
            .scale(&Rational::ratio(1, 4))
            .add(&atan_with(&residual, mode))
    } else {
        // value > 31/8: 1/value < 8/31 lands within the series branch
        let witness = SignWitness::Positive(PositivityWitness::new(Tolerance::ratio(31, 8)));
        pi_with(mode)
            .scale(&Rational::ratio(1, 2))
            .sub(&atan_with(&x.inv(&witness), mode))
    }
}

/// pi from a four-term Machin-like combination of small arctangents,
/// compressing between accumulations:
/// 176 atan(1/57) + 28 atan(1/239) - 48 atan(1/682) + 96 atan(1/12943).
pub fn pi() -> Real {
    pi_with(Compression::On)
}

pub fn pi_with(mode: Compression) -> Real {
    let t1 = atan_q(&Rational::ratio(1, 57)).scale(&Rational::from_int(176));
    let t2 = atan_q(&Rational::ratio(1, 239)).scale(&Rational::from_int(28));
    let t3 = atan_q(&Rational::ratio(1, 682)).scale(&Rational::from_int(48));
    let t4 = atan_q(&Rational::ratio(1, 12943)).scale(&Rational::from_int(96));
    let acc = compress_if(mode, t1.add(&t2));
    let acc = compress_if(mode, acc.sub(&t3));
    compress_if(mode, acc.add(&t4))
}

/// Iterates b -> (a + b)/(1 - a b) n times from 0, verifying after each
/// step that the result stays inside ]-1, 1[ — the region where the
/// arctangent sum law applies without a branch correction. On success the
/// returned r satisfies n * atan(a) = atan(r); failure (`None`) means some
/// intermediate multiple left the principal range.
pub fn arctan_multiple_check(a: &Rational, n: u32) -> Option<Rational> {
    assert!(
        a.abs() < Rational::one(),
        "arctan_multiple_check needs -1 < a < 1"
    );
    let one = Rational::one();
    let mut b = Rational::zero();
    for _ in 0..n {
        b = &(a + &b) / &(&one - &(a * &b));
        if b.abs() >= one {
            return None;
        }
    }
    Some(b)
}

/// artanh on rational arguments with |a| <= 1/3, via the sub-geometric
/// series sum a^(2i+1)/(2i+1) with ratio a^2.
pub fn artanh_q(a: &Rational) -> Real {
    assert!(
        a.abs() <= Rational::ratio(1, 3),
        "artanh_q needs |a| <= 1/3, got {a}"
    );
    if a.is_zero() {
        return Real::from_int(0);
    }
    let a = a.clone();
    let ratio = &a * &a;
    Real::from_fn(move |eps| {
        let series = SubGeometricSeries::new(artanh_terms(a.clone()), ratio.clone());
        sum_subgeometric(series, eps, default_cap(eps)).expect("artanh cap is analytic")
    })
}

/// ln(2) = 2 artanh(1/3), the range-reduction constant for [`ln`].
pub fn ln2() -> Real {
    artanh_q(&Rational::ratio(1, 3)).scale(&Rational::from_int(2))
}

/// Natural logarithm of a real certified positive by `witness`.
///
/// A probe at an eighth of the witness brackets the value within a factor
/// of 9/7, which pins the power of two 2^m with x * 2^-m in [8/15, 48/35].
/// On that interval ln comes from the rational formula
/// ln(n/d) = 2 artanh((n - d)/(n + d)), and ln(x) = ln(x 2^-m) + m ln 2.
/// Panics if the probe exposes the witness as invalid.
pub fn ln(x: &Real, witness: &PositivityWitness) -> Real {
    let eps0 = witness.epsilon();
    let probe_at = eps0.half().half().half();
    let probed = x.query(&probe_at);
    assert!(
        probed >= eps0.rational() - probe_at.rational(),
        "positivity witness {eps0} violated: x({probe_at}) = {probed}"
    );
    let m = (&probed * &Rational::ratio(5, 3)).floor_log2();
    let reduced = x.scale(&Rational::pow2(-m));
    let lo = Rational::ratio(1, 2);
    let hi = Rational::from_int(2);
    let lift = UcFn::new(
        move |a: &Rational| ln_q(&a.clamp_to(&lo, &hi)).as_regular().clone(),
        // slope of ln on [1/2, 2] is at most 2
        |eps: &Tolerance| ExtTolerance::finite(eps.half()),
    );
    let principal = Real::new(bind_prime(&lift, reduced.as_regular()));
    principal.add(&ln2().scale(&Rational::from_int(m)))
}

/// ln on [1/2, 2] via artanh; (n - d)/(n + d) lies in [-1/3, 1/3] there.
fn ln_q(a: &Rational) -> Real {
    debug_assert!(*a >= Rational::ratio(1, 2) && *a <= Rational::from_int(2));
    let t = Rational::from_parts(a.numer() - a.denom(), a.numer() + a.denom())
        .expect("positive denominator");
    artanh_q(&t).scale(&Rational::from_int(2))
}

/// exp, range-reduced by halving: with s = 2^ceil(lg m) for an integer
/// m >= |x(1)| + 2, the reduced argument x/s lies strictly inside (-1, 1);
/// the result is recovered by squaring s times with compression between
/// squarings.
pub fn exp(x: &Real) -> Real {
    exp_with(x, Compression::On)
}

pub fn exp_with(x: &Real, mode: Compression) -> Real {
    let magnitude = x.query(&Tolerance::one()).abs();
    let m = magnitude.ceil_int() + BigInt::from(2);
    let squarings = ceil_log2(&m);
    let reduced = compress_if(mode, x.scale(&Rational::pow2(-(squarings as i64))));
    let minus_one = Rational::from_int(-1);
    let one = Rational::one();
    let lift = UcFn::new(
        move |a: &Rational| exp_q(&a.clamp_to(&minus_one, &one)).as_regular().clone(),
        // slope of exp on [-1, 1] is at most e < 3
        |eps: &Tolerance| ExtTolerance::finite(eps.scale(&Rational::ratio(1, 3))),
    );
    let mut result = Real::new(bind_prime(&lift, reduced.as_regular()));
    for step in 0..squarings {
        if step > 0 {
            result = compress_if(mode, result);
        }
        result = result.sq();
    }
    result
}

/// exp on [-1, 1]. Positive arguments sum 1 + a plus the tail from a^2/2
/// on, which is sub-geometric with ratio 1/3; negative ones go through
/// exp(a) = 1/exp(-a), whose positivity witness is the constant 1.
fn exp_q(a: &Rational) -> Real {
    debug_assert!(a.abs() <= Rational::one());
    if a.is_zero() {
        return Real::from_int(1);
    }
    if a.is_negative() {
        let witness = SignWitness::Positive(PositivityWitness::new(Tolerance::one()));
        return exp_q(&-a).inv(&witness);
    }
    let a = a.clone();
    Real::from_fn(move |eps| {
        let head = &Rational::one() + &a;
        let series = SubGeometricSeries::new(exp_tail_terms(a.clone()), Rational::ratio(1, 3));
        let tail = sum_subgeometric(series, eps, default_cap(eps)).expect("exp cap is analytic");
        &head + &tail
    })
}

/// Square root, extended to return 0 for negative inputs. The lift queries
/// its argument at eps^2: |sqrt a - sqrt b| <= sqrt|a - b|.
pub fn sqrt(x: &Real) -> Real {
    let lift = UcFn::new(
        |a: &Rational| {
            let a = a.max(&Rational::zero());
            Real::from_fn(move |eps| sqrt_q(&a, eps)).as_regular().clone()
        },
        |eps: &Tolerance| ExtTolerance::finite(eps.times(eps)),
    );
    Real::new(bind_prime(&lift, x.as_regular()))
}

/// A rational within `tol` of sqrt(a) for a >= 0, by integer square root of
/// ceil(a * 4^p) at the precision p where 2^-p <= tol.
pub fn sqrt_q(a: &Rational, tol: &Tolerance) -> Rational {
    debug_assert!(!a.is_negative());
    let p = (-tol.rational().floor_log2()).max(0) as u32;
    let four_p = BigInt::one() << (2 * p as usize);
    // ceil(a * 4^p) for nonnegative a
    let scaled_num = a.numer() * &four_p + a.denom() - BigInt::one();
    let scaled = scaled_num / a.denom();
    let root = scaled.sqrt();
    Rational::from_parts(root, BigInt::one() << p as usize).expect("power of two")
}

fn ceil_log2(m: &BigInt) -> u32 {
    assert!(m >= &BigInt::one());
    let bits = m.bits() as u32;
    if m.magnitude().count_ones() == 1 {
        bits - 1
    } else {
        bits
    }
}

fn alternating_series_real(
    terms: impl Fn() -> Box<dyn Iterator<Item = Rational>> + Send + Sync + 'static,
) -> Real {
    Real::from_fn(move |eps| {
        let series = AlternatingSeries::new(terms());
        sum_alternating(series, eps, default_cap(eps)).expect("series cap is analytic")
    })
}

/// Terms of sin at r: r, -r^3/3!, r^5/5!, ...
fn sin_terms(r: Rational) -> Box<dyn Iterator<Item = Rational>> {
    let r_sq = &r * &r;
    Box::new(
        std::iter::successors(Some((0u64, r)), move |(i, t)| {
            let k = 2 * i + 2;
            let next = &(&-t * &r_sq) / &Rational::from_int((k * (k + 1)) as i64);
            Some((i + 1, next))
        })
        .map(|(_, t)| t),
    )
}

/// Terms of atan at a: a, -a^3/3, a^5/5, ...
fn atan_terms(a: Rational) -> Box<dyn Iterator<Item = Rational>> {
    let a_sq = &a * &a;
    Box::new(
        std::iter::successors(Some((0u64, a)), move |(i, t)| {
            let odd = 2 * i + 1;
            let next = &(&(&-t * &a_sq) * &Rational::from_int(odd as i64))
                / &Rational::from_int(odd as i64 + 2);
            Some((i + 1, next))
        })
        .map(|(_, t)| t),
    )
}

/// Terms of artanh at a: a, a^3/3, a^5/5, ...
fn artanh_terms(a: Rational) -> Box<dyn Iterator<Item = Rational>> {
    let a_sq = &a * &a;
    Box::new(
        std::iter::successors(Some((0u64, a)), move |(i, t)| {
            let odd = 2 * i + 1;
            let next = &(&(t * &a_sq) * &Rational::from_int(odd as i64))
                / &Rational::from_int(odd as i64 + 2);
            Some((i + 1, next))
        })
        .map(|(_, t)| t),
    )
}

/// Terms of exp at a from index 2: a^2/2!, a^3/3!, ...
fn exp_tail_terms(a: Rational) -> Box<dyn Iterator<Item = Rational>> {
    let first = &(&a * &a) / &Rational::from_int(2);
    Box::new(
        std::iter::successors(Some((2u64, first)), move |(i, t)| {
            let next = &(t * &a) / &Rational::from_int(*i as i64 + 1);
            Some((i + 1, next))
        })
        .map(|(_, t)| t),
    )
}
