//! Exact real arithmetic where a real number is a function from positive
//! rational tolerances to rational approximations, coherent up to the sum of
//! the tolerances involved. Elementary functions carry certified error
//! bounds all the way through, and strict inequalities between closed
//! expressions can be semi-decided by a witness search.
//!
//! The layers, bottom up:
//!
//! - [`rational`]: arbitrary-precision rationals, tolerances, and the dyadic
//!   approximation primitive;
//! - [`completion`]: regular functions over a carrier and the monad
//!   operations that lift uniformly continuous functions;
//! - [`series`]: certified summation of alternating and sub-geometric
//!   series;
//! - [`real`]: the reals as the completion of the rationals, with order,
//!   positivity witnesses, and compression;
//! - [`elementary`]: sin, cos, arctan, exp, ln, sqrt, and pi via range
//!   reduction and series;
//! - [`prover`] / [`parse`]: a closed-expression evaluator that discovers
//!   domain witnesses, and the strict-inequality search;
//! - [`cli`]: the `creal` command-line front end.

pub mod cli;
pub mod completion;
pub mod elementary;
pub mod parse;
pub mod prover;
pub mod rational;
pub mod real;
pub mod series;

pub use completion::{BallVerdict, RegularFn, UcFn, UcFn2};
pub use elementary::Compression;
pub use prover::{Expr, ProofOutcome};
pub use rational::{ExtTolerance, Rational, Tolerance};
pub use real::{PositivityWitness, Real, SignWitness, WitnessSearch};
