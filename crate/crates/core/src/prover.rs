//! Closed real-number expressions, their evaluator, and the semi-decision
//! procedure for strict inequalities.
//!
//! Evaluation is structural. The partial operations — division and ln —
//! first run the positivity search on their side condition and thread the
//! discovered witness into the lifted function, so the caller never supplies
//! proofs. A side condition that is provably violated raises a domain
//! error; one that cannot be certified within the iteration budget raises
//! an "uncertain domain" error, which is inherent: equality with zero is
//! undecidable.
//!
//! [`prove_pos`] runs the same halving search on an evaluated expression
//! and reports the outcome with the witness and probe count; [`prove_lt`]
//! reduces `lhs < rhs` to positivity of `rhs - lhs`.

use std::fmt;

use crate::elementary::{atan_with, cos_with, exp_with, ln, pi_with, sin_with, sqrt, Compression};
use crate::rational::{Rational, Tolerance};
use crate::real::{
    find_positivity_witness_traced, PositivityWitness, Real, SignWitness, WitnessSearch,
};

/// Search parameters used for every internally-discovered witness: delta
/// starts at 1 and halves 64 times, reaching 2^-64 before giving up.
pub const DEFAULT_MAX_ITERS: u32 = 64;

pub fn default_delta0() -> Tolerance {
    Tolerance::one()
}

/// A closed real-number expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Lit(Rational),
    Pi,
    E,
    Neg(Box<Expr>),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
    Atan(Box<Expr>),
    Exp(Box<Expr>),
    Ln(Box<Expr>),
    Sqrt(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// Integer power with a nonnegative exponent.
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn lit(q: Rational) -> Expr {
        Expr::Lit(q)
    }

    pub fn int(n: i64) -> Expr {
        Expr::Lit(Rational::from_int(n))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Lit(q) => write!(f, "{q}"),
            Expr::Pi => write!(f, "pi"),
            Expr::E => write!(f, "e"),
            Expr::Neg(e) => write!(f, "-({e})"),
            Expr::Sin(e) => write!(f, "sin({e})"),
            Expr::Cos(e) => write!(f, "cos({e})"),
            Expr::Atan(e) => write!(f, "atan({e})"),
            Expr::Exp(e) => write!(f, "exp({e})"),
            Expr::Ln(e) => write!(f, "ln({e})"),
            Expr::Sqrt(e) => write!(f, "sqrt({e})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, n) => write!(f, "({a})^{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("{context}: argument is provably negative")]
    ProvablyNegative { context: &'static str },
    #[error("{context}: cannot certify domain side condition (value may be zero)")]
    UncertainDomain { context: &'static str },
}

/// Evaluates a closed expression to a real, discovering positivity
/// witnesses for the side conditions of `/` and `ln`.
pub fn eval(expr: &Expr) -> Result<Real, EvalError> {
    eval_with(expr, Compression::On)
}

pub fn eval_with(expr: &Expr, mode: Compression) -> Result<Real, EvalError> {
    match expr {
        Expr::Lit(q) => Ok(Real::constant(q.clone())),
        Expr::Pi => Ok(pi_with(mode)),
        Expr::E => Ok(exp_with(&Real::from_int(1), mode)),
        Expr::Neg(e) => Ok(eval_with(e, mode)?.neg()),
        Expr::Sin(e) => Ok(sin_with(&eval_with(e, mode)?, mode)),
        Expr::Cos(e) => Ok(cos_with(&eval_with(e, mode)?, mode)),
        Expr::Atan(e) => Ok(atan_with(&eval_with(e, mode)?, mode)),
        Expr::Exp(e) => Ok(exp_with(&eval_with(e, mode)?, mode)),
        Expr::Sqrt(e) => Ok(sqrt(&eval_with(e, mode)?)),
        Expr::Ln(e) => {
            let value = eval_with(e, mode)?;
            match search(&value) {
                WitnessSearch::Positive(w) => Ok(ln(&value, &w)),
                WitnessSearch::Negative(_) => Err(EvalError::ProvablyNegative { context: "ln" }),
                WitnessSearch::Inconclusive => {
                    Err(EvalError::UncertainDomain { context: "ln" })
                }
            }
        }
        Expr::Add(a, b) => Ok(eval_with(a, mode)?.add(&eval_with(b, mode)?)),
        Expr::Sub(a, b) => Ok(eval_with(a, mode)?.sub(&eval_with(b, mode)?)),
        Expr::Mul(a, b) => Ok(eval_with(a, mode)?.mul(&eval_with(b, mode)?)),
        Expr::Div(a, b) => {
            let numerator = eval_with(a, mode)?;
            let denominator = eval_with(b, mode)?;
            let witness = match search(&denominator) {
                WitnessSearch::Positive(w) => SignWitness::Positive(w),
                WitnessSearch::Negative(w) => SignWitness::Negative(w),
                WitnessSearch::Inconclusive => {
                    return Err(EvalError::UncertainDomain { context: "division" })
                }
            };
            Ok(numerator.mul(&denominator.inv(&witness)))
        }
        Expr::Pow(base, n) => {
            let value = eval_with(base, mode)?;
            Ok(pow_real(&value, *n))
        }
    }
}

fn search(x: &Real) -> WitnessSearch {
    find_positivity_witness_traced(x, &default_delta0(), DEFAULT_MAX_ITERS).0
}

fn pow_real(x: &Real, n: u32) -> Real {
    match n {
        0 => Real::from_int(1),
        1 => x.clone(),
        _ if n % 2 == 0 => pow_real(x, n / 2).sq(),
        _ => x.mul(&pow_real(x, n - 1)),
    }
}

/// Outcome of a strict-inequality proof attempt. `Proved` carries the
/// positivity witness and the number of probes the search spent; the
/// witness is independently checkable: unit(witness) <= value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProofOutcome {
    Proved {
        witness: PositivityWitness,
        probes: u32,
    },
    Disproved,
    Inconclusive {
        probes: u32,
    },
}

/// Semi-decides 0 < expr by the halving witness search on the evaluated
/// expression.
pub fn prove_pos(expr: &Expr, delta0: &Tolerance, max_iters: u32) -> Result<ProofOutcome, EvalError> {
    let value = eval(expr)?;
    let (outcome, probes) = find_positivity_witness_traced(&value, delta0, max_iters);
    Ok(match outcome {
        WitnessSearch::Positive(witness) => ProofOutcome::Proved { witness, probes },
        WitnessSearch::Negative(_) => ProofOutcome::Disproved,
        WitnessSearch::Inconclusive => ProofOutcome::Inconclusive { probes },
    })
}

/// Semi-decides lhs < rhs as positivity of rhs - lhs.
pub fn prove_lt(
    lhs: &Expr,
    rhs: &Expr,
    delta0: &Tolerance,
    max_iters: u32,
) -> Result<ProofOutcome, EvalError> {
    prove_pos(
        &Expr::Sub(Box::new(rhs.clone()), Box::new(lhs.clone())),
        delta0,
        max_iters,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::BallVerdict;
    use crate::elementary::pi;
    use crate::rational::{decimal_close, ExtTolerance};

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn tol(n: i64, d: i64) -> Tolerance {
        Tolerance::ratio(n, d)
    }

    fn b(e: Expr) -> Box<Expr> {
        Box::new(e)
    }

    fn assert_equiv(x: &Real, y: &Real) {
        let probes = vec![tol(1, 4), tol(1, 1 << 10), tol(1, 1 << 24)];
        assert_eq!(
            x.ball_check(&ExtTolerance::finite(tol(1, 1 << 30)), y, &probes),
            BallVerdict::Consistent
        );
    }

    #[test]
    fn eval_constants() {
        assert_equiv(&eval(&Expr::Pi).unwrap(), &pi());
        let e_digits = eval(&Expr::E).unwrap().to_decimal(20);
        assert!(decimal_close(&e_digits, "2.71828182845904523536"));
    }

    #[test]
    fn eval_table_row_via_witnessed_division() {
        // sqrt(e/pi): division discovers the positivity of pi on its own
        let expr = Expr::Sqrt(b(Expr::Div(b(Expr::E), b(Expr::Pi))));
        let digits = eval(&expr).unwrap().to_decimal(20);
        assert!(
            decimal_close(&digits, "0.93019136710263285866"),
            "got {digits}"
        );
    }

    #[test]
    fn eval_division_by_negative_denominator() {
        // 1 / (0 - 2) = -1/2: the sign witness comes back negative
        let expr = Expr::Div(b(Expr::int(1)), b(Expr::Sub(b(Expr::int(0)), b(Expr::int(2)))));
        assert_equiv(&eval(&expr).unwrap(), &Real::constant(r(-1, 2)));
    }

    #[test]
    fn eval_domain_errors() {
        let expr = Expr::Ln(b(Expr::int(-1)));
        assert_eq!(
            eval(&expr).unwrap_err(),
            EvalError::ProvablyNegative { context: "ln" }
        );
        let expr = Expr::Div(b(Expr::int(1)), b(Expr::int(0)));
        assert_eq!(
            eval(&expr).unwrap_err(),
            EvalError::UncertainDomain { context: "division" }
        );
        let expr = Expr::Ln(b(Expr::Lit(Rational::zero())));
        assert_eq!(
            eval(&expr).unwrap_err(),
            EvalError::UncertainDomain { context: "ln" }
        );
    }

    #[test]
    fn eval_respects_commutativity_samples() {
        let pairs = [
            (Expr::Pi, Expr::E),
            (Expr::int(3), Expr::Sin(b(Expr::int(2)))),
            (Expr::Lit(r(-7, 3)), Expr::Sqrt(b(Expr::int(5)))),
        ];
        for (a, b_) in pairs {
            let ab = Expr::Mul(b(a.clone()), b(b_.clone()));
            let ba = Expr::Mul(b(b_), b(a));
            assert_equiv(&eval(&ab).unwrap(), &eval(&ba).unwrap());
        }
    }

    #[test]
    fn nested_partial_functions_resolve_witnesses_recursively() {
        // ln(ln(exp(exp(1)))) = 1: both ln side conditions hold strictly
        let expr = Expr::Ln(b(Expr::Ln(b(Expr::Exp(b(Expr::Exp(b(Expr::int(1)))))))));
        let value = eval(&expr).unwrap();
        assert_equiv(&value, &Real::from_int(1));
    }

    #[test]
    fn pow_follows_binary_exponentiation() {
        let expr = Expr::Pow(b(Expr::Lit(r(3, 2))), 5);
        assert_equiv(&eval(&expr).unwrap(), &Real::constant(r(243, 32)));
        let expr = Expr::Pow(b(Expr::Pi), 0);
        assert_equiv(&eval(&expr).unwrap(), &Real::from_int(1));
    }

    #[test]
    fn prove_pos_examples() {
        // the local-maximum case rational interval arithmetic cannot do
        let sin_half_pi = Expr::Sin(b(Expr::Div(b(Expr::Pi), b(Expr::int(2)))));
        match prove_pos(&sin_half_pi, &default_delta0(), DEFAULT_MAX_ITERS).unwrap() {
            ProofOutcome::Proved { witness, .. } => {
                let value = eval(&sin_half_pi).unwrap();
                for d in [tol(1, 3), tol(1, 1000)] {
                    assert!(value.query(&d) >= witness.epsilon().rational() - d.rational());
                }
            }
            other => panic!("expected a proof, got {other:?}"),
        }

        // pi - 3.14159 is around 2.65e-6: the search has to halve a while
        let tight = Expr::Sub(b(Expr::Pi), b(Expr::Lit(r(314159, 100000))));
        match prove_pos(&tight, &default_delta0(), DEFAULT_MAX_ITERS).unwrap() {
            ProofOutcome::Proved { probes, .. } => assert!(probes > 10),
            other => panic!("expected a proof, got {other:?}"),
        }

        match prove_pos(&Expr::int(0), &default_delta0(), 16).unwrap() {
            ProofOutcome::Inconclusive { probes } => assert_eq!(probes, 17),
            other => panic!("expected inconclusive, got {other:?}"),
        }
    }

    #[test]
    fn prove_lt_examples_and_antisymmetry() {
        let zero = Expr::int(0);
        let one = Expr::int(1);
        assert!(matches!(
            prove_lt(&zero, &one, &default_delta0(), 16).unwrap(),
            ProofOutcome::Proved { .. }
        ));
        let four = Expr::int(4);
        assert!(matches!(
            prove_lt(&Expr::Pi, &four, &default_delta0(), 16).unwrap(),
            ProofOutcome::Proved { .. }
        ));
        assert!(matches!(
            prove_lt(&four, &Expr::Pi, &default_delta0(), 16).unwrap(),
            ProofOutcome::Disproved
        ));

        // antisymmetry on sampled pairs
        let pairs = [
            (Expr::int(2), Expr::E),
            (Expr::Lit(r(1, 8)), Expr::Sin(b(Expr::int(1)))),
        ];
        for (a, b_) in pairs {
            let forward = prove_lt(&a, &b_, &default_delta0(), 48).unwrap();
            let backward = prove_lt(&b_, &a, &default_delta0(), 48).unwrap();
            match (forward, backward) {
                (ProofOutcome::Proved { .. }, ProofOutcome::Disproved) => {}
                other => panic!("antisymmetry violated: {other:?}"),
            }
        }
    }
}
