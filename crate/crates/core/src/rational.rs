//! Arbitrary-precision rational arithmetic: the base carrier for every
//! approximation in this crate.
//!
//! [`Rational`] is kept in canonical reduced form (positive denominator,
//! gcd(|num|, den) = 1). [`Tolerance`] is a strictly positive rational, the
//! request "give me an approximation within this much". [`ExtTolerance`]
//! extends tolerances with an infinity that compares greater than every
//! finite value; it is the codomain of continuity moduli for bounded
//! functions.
//!
//! [`approx_dyadic`] snaps a rational onto a dyadic grid chosen from the
//! tolerance's denominator; it is the primitive behind compression.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RationalError {
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("tolerance must be strictly positive, got {0}")]
    NonPositiveTolerance(Rational),
    #[error("invalid rational literal `{0}`")]
    BadLiteral(String),
}

/// An exact rational number in canonical reduced form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    /// Builds `numer/denom`, reducing to canonical form.
    pub fn from_parts(numer: BigInt, denom: BigInt) -> Result<Self, RationalError> {
        if denom.is_zero() {
            return Err(RationalError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    /// Shorthand for small literal fractions; panics on a zero denominator.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "ratio: zero denominator");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    /// 2^k for any integer k (negative k gives 1/2^|k|).
    pub fn pow2(k: i64) -> Self {
        let mag = BigInt::one() << k.unsigned_abs() as usize;
        if k >= 0 {
            Rational::from_bigint(mag)
        } else {
            Rational(BigRational::new(BigInt::one(), mag))
        }
    }

    /// 10^k for k >= 0.
    pub fn pow10(k: u32) -> Self {
        Rational::from_bigint(BigInt::from(10u32).pow(k))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive in canonical form.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn min(&self, other: &Self) -> Self {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn max(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn clamp_to(&self, lo: &Self, hi: &Self) -> Self {
        debug_assert!(lo <= hi);
        if self < lo {
            lo.clone()
        } else if self > hi {
            hi.clone()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(Rational(&self.0 / &rhs.0))
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(self.0.pow(exp as i32))
    }

    /// Total-order comparison (canonical form makes this exact).
    pub fn compare(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    /// Nearest integer, ties rounded away from zero.
    pub fn round_ties_away(&self) -> BigInt {
        let two: BigInt = BigInt::from(2);
        let two_num: BigInt = self.numer() * &two;
        let den = self.denom();
        let double_den: BigInt = den * &two;
        if self.is_negative() {
            -((-two_num + den) / double_den)
        } else {
            (two_num + den) / double_den
        }
    }

    /// Smallest integer >= self.
    pub fn ceil_int(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Largest i with 2^i <= self. Requires self > 0.
    pub fn floor_log2(&self) -> i64 {
        assert!(self.is_positive(), "floor_log2 needs a positive rational");
        let mut i = self.numer().bits() as i64 - self.denom().bits() as i64;
        // candidate is within one of the answer; fix up by exact comparison
        while Rational::pow2(i) > *self {
            i -= 1;
        }
        while Rational::pow2(i + 1) <= *self {
            i += 1;
        }
        i
    }

    /// Parses `int`, `int/uint`, or an exact decimal literal like `3.25`.
    pub fn parse_literal(s: &str) -> Result<Self, RationalError> {
        let bad = || RationalError::BadLiteral(s.to_string());
        if let Some((ip, fp)) = s.split_once('.') {
            if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let (neg, ip_digits) = match ip.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, ip),
            };
            if ip_digits.is_empty() || !ip_digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let scale = BigInt::from(10u32).pow(fp.len() as u32);
            let numer: BigInt = ip_digits.parse::<BigInt>().map_err(|_| bad())? * &scale
                + fp.parse::<BigInt>().map_err(|_| bad())?;
            let numer = if neg { -numer } else { numer };
            Rational::from_parts(numer, scale)
        } else if let Some((n, d)) = s.split_once('/') {
            let numer: BigInt = n.parse().map_err(|_| bad())?;
            let denom: BigInt = d.parse().map_err(|_| bad())?;
            if denom.sign() != Sign::Plus {
                return Err(bad());
            }
            Rational::from_parts(numer, denom)
        } else {
            let numer: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_bigint(numer))
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Div for &Rational {
    type Output = Rational;
    /// Exact division; panics on a zero divisor (use [`Rational::checked_div`]
    /// where the divisor is not known to be nonzero).
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        (&self).div(&rhs)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

/// A strictly positive rational tolerance.
///
/// The arithmetic provided here (halving, scaling by positive factors,
/// min/max) is closed over positivity, so a `Tolerance` can circulate through
/// modulus computations without re-validation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Tolerance(Rational);

impl Tolerance {
    pub fn new(value: Rational) -> Result<Self, RationalError> {
        if value.is_positive() {
            Ok(Tolerance(value))
        } else {
            Err(RationalError::NonPositiveTolerance(value))
        }
    }

    /// Shorthand for literal tolerances; panics unless `numer/denom > 0`.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        Tolerance::new(Rational::ratio(numer, denom)).expect("tolerance literal must be positive")
    }

    pub fn one() -> Self {
        Tolerance(Rational::one())
    }

    /// 10^-digits, the width of one decimal place at the given precision.
    pub fn decimal(digits: u32) -> Self {
        Tolerance(Rational::one() / Rational::pow10(digits))
    }

    pub fn rational(&self) -> &Rational {
        &self.0
    }

    pub fn into_rational(self) -> Rational {
        self.0
    }

    pub fn half(&self) -> Self {
        Tolerance(&self.0 * &Rational::ratio(1, 2))
    }

    pub fn double(&self) -> Self {
        Tolerance(&self.0 * &Rational::from_int(2))
    }

    pub fn times(&self, other: &Tolerance) -> Self {
        Tolerance(&self.0 * &other.0)
    }

    /// Scales by a positive rational factor; panics otherwise.
    pub fn scale(&self, factor: &Rational) -> Self {
        assert!(factor.is_positive(), "tolerance scale factor must be positive");
        Tolerance(&self.0 * factor)
    }

    pub fn min(&self, other: &Tolerance) -> Self {
        Tolerance(Rational::min(&self.0, &other.0))
    }

    pub fn max(&self, other: &Tolerance) -> Self {
        Tolerance(Rational::max(&self.0, &other.0))
    }

    /// Number of bits of ceil(1/self): how many binary digits of accuracy
    /// this tolerance demands. Used to size series iteration caps.
    pub fn accuracy_bits(&self) -> u64 {
        let inv = self.0.recip().expect("tolerance is nonzero");
        if inv <= Rational::one() {
            1
        } else {
            inv.ceil_int().bits()
        }
    }
}

impl fmt::Display for Tolerance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A tolerance extended with infinity; `Infinite` compares greater than
/// every finite tolerance. A modulus returning `Infinite` signals that the
/// function is bounded tightly enough that no input accuracy is needed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum ExtTolerance {
    Finite(Tolerance),
    Infinite,
}

impl ExtTolerance {
    pub fn finite(t: Tolerance) -> Self {
        ExtTolerance::Finite(t)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtTolerance::Infinite)
    }

    pub fn as_finite(&self) -> Option<&Tolerance> {
        match self {
            ExtTolerance::Finite(t) => Some(t),
            ExtTolerance::Infinite => None,
        }
    }
}

impl fmt::Display for ExtTolerance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtTolerance::Finite(t) => t.fmt(f),
            ExtTolerance::Infinite => write!(f, "inf"),
        }
    }
}

/// Snaps `a` onto the dyadic grid b/2^n, where 2^n is the smallest power of
/// two strictly greater than the denominator of `delta` and b is the nearest
/// integer to a*2^n (ties away from zero). The result is within `delta` of
/// `a` and its denominator divides 2^n.
pub fn approx_dyadic(a: &Rational, delta: &Tolerance) -> Rational {
    let n = delta.rational().denom().bits();
    let grid = BigInt::one() << n;
    let scaled = a * &Rational::from_bigint(grid.clone());
    let b = scaled.round_ties_away();
    Rational::from_parts(b, grid).expect("power of two is nonzero")
}

/// True when two decimal strings with the same number of fractional digits
/// differ by at most one unit in the last place. An approximation within
/// half an ulp of the true value can legitimately round to either neighbor
/// when the truth sits near a rounding boundary.
pub fn decimal_close(a: &str, b: &str) -> bool {
    fn parse(s: &str) -> Option<(BigInt, usize)> {
        let (int_part, frac_part) = s.split_once('.')?;
        if !frac_part.bytes().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let combined: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
        Some((combined, frac_part.len()))
    }
    match (parse(a), parse(b)) {
        (Some((va, da)), Some((vb, db))) => da == db && (va - vb).abs() <= BigInt::one(),
        _ => false,
    }
}

/// Renders `value` with exactly `digits` fractional decimal digits, rounding
/// ties away from zero.
pub fn to_decimal_string(value: &Rational, digits: u32) -> String {
    let scaled = value * &Rational::pow10(digits);
    let n = scaled.round_ties_away();
    let sign = if n.sign() == Sign::Minus { "-" } else { "" };
    let mag = n.magnitude();
    let base = num_bigint::BigUint::from(10u32).pow(digits);
    let (int_part, frac_part) = mag.div_rem(&base);
    format!(
        "{sign}{int_part}.{frac:0>width$}",
        frac = frac_part.to_string(),
        width = digits as usize
    )
}
