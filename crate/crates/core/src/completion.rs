//! The completion monad: regular functions over an approximable carrier.
//!
//! A point of a completed metric space is represented by a [`RegularFn`]: a
//! function from positive tolerances to carrier approximations satisfying
//! the regularity condition |x(e1) - x(e2)| <= e1 + e2 (stated with the
//! carrier's ball relation for non-rational carriers). [`UcFn`] packages a
//! function between carriers with its modulus of continuity, and
//! [`unit`] / [`join`] / [`map_prime`] / [`map_general`] / [`bind_prime`] /
//! [`ap`] / [`map2`] are the monad operations that lift carrier functions to
//! completed values.
//!
//! `map_prime` is the default lift everywhere in this crate: the rational
//! carrier is a prelength space, where the prime variants are valid and
//! query their argument at the coarsest sufficient tolerance. `map_general`
//! is kept for the carriers where that assumption is unavailable and for
//! law-checking.
//!
//! Every `RegularFn` memoizes its finest answered query. Returning a cached
//! answer for a tolerance `e' <= e` at a query for `e` is observationally
//! pure: the substituted function is still regular and equivalent to the
//! original.

use std::sync::{Arc, Mutex};

use crate::rational::{ExtTolerance, Rational, Tolerance};

/// A regular function: tolerance-indexed approximations of a point in the
/// completion of the carrier `X`.
pub struct RegularFn<X> {
    inner: Arc<Inner<X>>,
}

struct Inner<X> {
    query: Box<dyn Fn(&Tolerance) -> X + Send + Sync>,
    // finest answered query so far; a finer cached answer serves coarser queries
    cache: Mutex<Option<(Tolerance, X)>>,
}

impl<X> Clone for RegularFn<X> {
    fn clone(&self) -> Self {
        RegularFn {
            inner: Arc::clone(&self.inner),
        }
    }
}

impl<X: Clone + Send + Sync + 'static> RegularFn<X> {
    pub fn from_fn(query: impl Fn(&Tolerance) -> X + Send + Sync + 'static) -> Self {
        RegularFn {
            inner: Arc::new(Inner {
                query: Box::new(query),
                cache: Mutex::new(None),
            }),
        }
    }

    pub fn constant(value: X) -> Self {
        RegularFn::from_fn(move |_| value.clone())
    }

    /// Approximates the represented point to within `eps`.
    pub fn query(&self, eps: &Tolerance) -> X {
        {
            let cache = self.inner.cache.lock().unwrap();
            if let Some((cached_eps, value)) = cache.as_ref() {
                if cached_eps <= eps {
                    return value.clone();
                }
            }
        }
        let value = (self.inner.query)(eps);
        let mut cache = self.inner.cache.lock().unwrap();
        let stale = match cache.as_ref() {
            Some((cached_eps, _)) => cached_eps > eps,
            None => true,
        };
        if stale {
            *cache = Some((eps.clone(), value.clone()));
        }
        value
    }

    /// Queries through an extended tolerance. An infinite tolerance means the
    /// consumer needs no accuracy at all; any fixed tolerance is then valid
    /// and this crate uses 1.
    pub fn query_ext(&self, eps: &ExtTolerance) -> X {
        match eps {
            ExtTolerance::Finite(t) => self.query(t),
            ExtTolerance::Infinite => self.query(&Tolerance::one()),
        }
    }
}

/// A uniformly continuous function between carriers, packaged with its
/// modulus of continuity: when the inputs are within `modulus(eps)`, the
/// outputs are within `eps`.
pub struct UcFn<X, Y> {
    inner: Arc<UcInner<X, Y>>,
}

struct UcInner<X, Y> {
    apply: Box<dyn Fn(&X) -> Y + Send + Sync>,
    modulus: Box<dyn Fn(&Tolerance) -> ExtTolerance + Send + Sync>,
}

impl<X, Y> Clone for UcFn<X, Y> {
    fn clone(&self) -> Self {
        UcFn {
            inner: Arc::clone(&self.inner),
        }
    }
}

impl<X, Y> UcFn<X, Y> {
    pub fn new(
        apply: impl Fn(&X) -> Y + Send + Sync + 'static,
        modulus: impl Fn(&Tolerance) -> ExtTolerance + Send + Sync + 'static,
    ) -> Self {
        UcFn {
            inner: Arc::new(UcInner {
                apply: Box::new(apply),
                modulus: Box::new(modulus),
            }),
        }
    }

    pub fn apply(&self, x: &X) -> Y {
        (self.inner.apply)(x)
    }

    pub fn modulus(&self, eps: &Tolerance) -> ExtTolerance {
        (self.inner.modulus)(eps)
    }
}

/// Modulus of a 1-Lipschitz function.
pub fn modulus_identity() -> impl Fn(&Tolerance) -> ExtTolerance + Send + Sync + 'static {
    |eps| ExtTolerance::finite(eps.clone())
}

/// Modulus of a function with Lipschitz constant `k > 0`: eps / k.
pub fn modulus_lipschitz(k: Rational) -> impl Fn(&Tolerance) -> ExtTolerance + Send + Sync + 'static {
    assert!(k.is_positive(), "Lipschitz constant must be positive");
    let inv = k.recip().expect("nonzero");
    move |eps| ExtTolerance::finite(eps.scale(&inv))
}

/// The injection of the carrier into its completion: a constant family.
pub fn unit<X: Clone + Send + Sync + 'static>(value: X) -> RegularFn<X> {
    RegularFn::constant(value)
}

/// Flattens a regular function of regular functions, splitting the tolerance
/// evenly between the two layers.
pub fn join<X: Clone + Send + Sync + 'static>(x: &RegularFn<RegularFn<X>>) -> RegularFn<X> {
    let x = x.clone();
    RegularFn::from_fn(move |eps| {
        let half = eps.half();
        x.query(&half).query(&half)
    })
}

/// The prelength-space lift: queries the argument at exactly `modulus(eps)`.
/// The result has the same modulus of continuity as `f`.
pub fn map_prime<X, Y>(f: &UcFn<X, Y>, x: &RegularFn<X>) -> RegularFn<Y>
where
    X: Clone + Send + Sync + 'static,
    Y: Clone + Send + Sync + 'static,
{
    let f = f.clone();
    let x = x.clone();
    RegularFn::from_fn(move |eps| f.apply(&x.query_ext(&f.modulus(eps))))
}

/// The lift valid over every metric space: queries at half the modulus.
pub fn map_general<X, Y>(f: &UcFn<X, Y>, x: &RegularFn<X>) -> RegularFn<Y>
where
    X: Clone + Send + Sync + 'static,
    Y: Clone + Send + Sync + 'static,
{
    let f = f.clone();
    let x = x.clone();
    RegularFn::from_fn(move |eps| {
        let at = match f.modulus(eps) {
            ExtTolerance::Finite(t) => ExtTolerance::finite(t.half()),
            ExtTolerance::Infinite => ExtTolerance::Infinite,
        };
        f.apply(&x.query_ext(&at))
    })
}

/// Kleisli extension, `join` after `map_prime`.
pub fn bind_prime<X, Y>(f: &UcFn<X, RegularFn<Y>>, x: &RegularFn<X>) -> RegularFn<Y>
where
    X: Clone + Send + Sync + 'static,
    Y: Clone + Send + Sync + 'static,
{
    join(&map_prime(f, x))
}

/// Applies a completed function value to a completed argument, splitting the
/// tolerance between extracting the function and mapping the argument.
pub fn ap<X, Y>(f: &RegularFn<UcFn<X, Y>>, x: &RegularFn<X>) -> RegularFn<Y>
where
    X: Clone + Send + Sync + 'static,
    Y: Clone + Send + Sync + 'static,
{
    let f = f.clone();
    let x = x.clone();
    RegularFn::from_fn(move |eps| {
        let half = eps.half();
        map_general(&f.query(&half), &x).query(&half)
    })
}

/// A two-argument uniformly continuous function with a modulus per argument,
/// curried on demand for [`map2`].
pub struct UcFn2<X, Y, Z> {
    apply: Arc<dyn Fn(&X, &Y) -> Z + Send + Sync>,
    modulus_first: Arc<dyn Fn(&Tolerance) -> ExtTolerance + Send + Sync>,
    modulus_second: Arc<dyn Fn(&Tolerance) -> ExtTolerance + Send + Sync>,
}

impl<X, Y, Z> Clone for UcFn2<X, Y, Z> {
    fn clone(&self) -> Self {
        UcFn2 {
            apply: Arc::clone(&self.apply),
            modulus_first: Arc::clone(&self.modulus_first),
            modulus_second: Arc::clone(&self.modulus_second),
        }
    }
}

impl<X, Y, Z> UcFn2<X, Y, Z>
where
    X: Clone + Send + Sync + 'static,
    Y: Clone + Send + Sync + 'static,
    Z: Clone + Send + Sync + 'static,
{
    pub fn new(
        apply: impl Fn(&X, &Y) -> Z + Send + Sync + 'static,
        modulus_first: impl Fn(&Tolerance) -> ExtTolerance + Send + Sync + 'static,
        modulus_second: impl Fn(&Tolerance) -> ExtTolerance + Send + Sync + 'static,
    ) -> Self {
        UcFn2 {
            apply: Arc::new(apply),
            modulus_first: Arc::new(modulus_first),
            modulus_second: Arc::new(modulus_second),
        }
    }

    /// Fixes the first argument, yielding the residual function in the
    /// second. In the sup-norm function-space metric the curried family is
    /// uniformly continuous with `modulus_first`.
    pub fn curry(&self, first: &X) -> UcFn<Y, Z> {
        let apply = Arc::clone(&self.apply);
        let first = first.clone();
        let modulus = Arc::clone(&self.modulus_second);
        UcFn::new(move |y| apply(&first, y), move |eps| modulus(eps))
    }

    /// The curried view as a carrier-to-function-space `UcFn`.
    pub fn as_curried(&self) -> UcFn<X, UcFn<Y, Z>> {
        let this = self.clone();
        let modulus = Arc::clone(&self.modulus_first);
        UcFn::new(move |x| this.curry(x), move |eps| modulus(eps))
    }
}

/// Binary lift: `ap` after the general map of the curried function.
pub fn map2<X, Y, Z>(f: &UcFn2<X, Y, Z>, x: &RegularFn<X>, y: &RegularFn<Y>) -> RegularFn<Z>
where
    X: Clone + Send + Sync + 'static,
    Y: Clone + Send + Sync + 'static,
    Z: Clone + Send + Sync + 'static,
{
    ap(&map_general(&f.as_curried(), x), y)
}

/// Verdict of a sampled ball-relation test. `Consistent` is a necessary
/// condition only; the full relation quantifies over every tolerance pair
/// and is merely semi-decidable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallVerdict {
    Consistent,
    Refuted,
}

/// Checks the completion ball relation of radius `radius` between `x` and
/// `y` at every ordered pair of probe tolerances: refuted as soon as some
/// pair violates |x(d1) - y(d2)| <= d1 + radius + d2.
pub fn ball_check(
    radius: &ExtTolerance,
    x: &RegularFn<Rational>,
    y: &RegularFn<Rational>,
    probes: &[Tolerance],
) -> BallVerdict {
    assert!(!probes.is_empty(), "ball_check needs at least one probe");
    let radius = match radius {
        ExtTolerance::Finite(t) => t,
        ExtTolerance::Infinite => return BallVerdict::Consistent,
    };
    for d1 in probes {
        let xv = x.query(d1);
        for d2 in probes {
            let yv = y.query(d2);
            let gap = (&xv - &yv).abs();
            let allowance = &(d1.rational() + radius.rational()) + d2.rational();
            if gap > allowance {
                return BallVerdict::Refuted;
            }
        }
    }
    BallVerdict::Consistent
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::sync::Mutex as StdMutex;

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn tol(n: i64, d: i64) -> Tolerance {
        Tolerance::ratio(n, d)
    }

    fn probes() -> Vec<Tolerance> {
        vec![tol(1, 2), tol(1, 16), tol(1, 256), tol(1, 65536)]
    }

    fn assert_equiv(x: &RegularFn<Rational>, y: &RegularFn<Rational>) {
        // equivalence at a tight radius over the standard probe ladder
        let radius = ExtTolerance::finite(tol(1, 1_000_000_000));
        assert_eq!(ball_check(&radius, x, y, &probes()), BallVerdict::Consistent);
    }

    #[test]
    fn unit_is_constant() {
        let x = unit(r(1, 2));
        assert_eq!(x.query(&tol(1, 100)), r(1, 2));
        let y = unit(Rational::from_int(-3));
        assert_eq!(y.query(&tol(7, 1)), Rational::from_int(-3));
        // regularity of a constant holds with zero slack
        assert_eq!(x.query(&tol(1, 5)), x.query(&tol(5, 1)));
    }

    #[test]
    fn join_collapses_unit_layers() {
        let x = join(&unit(unit(Rational::from_int(5))));
        assert_eq!(x.query(&tol(1, 3)), Rational::from_int(5));
    }

    #[test]
    fn join_splits_tolerance_evenly() {
        // w(delta) = unit(delta): join queries the outer and inner layer at
        // eps/2 each, so the answer at 1/4 is 1/8.
        let w: RegularFn<RegularFn<Rational>> =
            RegularFn::from_fn(|delta| unit(delta.rational().clone()));
        assert_eq!(join(&w).query(&tol(1, 4)), r(1, 8));
    }

    #[test]
    fn join_unit_is_identity_at_ball_level() {
        let x = RegularFn::from_fn(|eps: &Tolerance| &r(2, 7) + &eps.rational().min(&r(1, 1)));
        assert_equiv(&join(&unit(x.clone())), &x);
    }

    #[test]
    fn map_prime_applies_through_modulus() {
        let add_one = UcFn::new(|a: &Rational| a + &Rational::one(), modulus_identity());
        let out = map_prime(&add_one, &unit(Rational::from_int(2)));
        assert_eq!(out.query(&tol(1, 10)), Rational::from_int(3));

        // doubling with modulus eps/2 queries the argument exactly there
        let double = UcFn::new(
            |a: &Rational| a * &Rational::from_int(2),
            modulus_lipschitz(Rational::from_int(2)),
        );
        let out = map_prime(&double, &unit(r(1, 3)));
        assert_eq!(out.query(&Tolerance::one()), r(2, 3));
    }

    #[test]
    fn map_general_queries_finer() {
        let add_one = UcFn::new(|a: &Rational| a + &Rational::one(), modulus_identity());
        let out = map_general(&add_one, &unit(Rational::from_int(2)));
        assert_eq!(out.query(&tol(1, 10)), Rational::from_int(3));

        let double = UcFn::new(
            |a: &Rational| a * &Rational::from_int(2),
            modulus_lipschitz(Rational::from_int(2)),
        );
        let out = map_general(&double, &unit(r(1, 3)));
        assert_eq!(out.query(&Tolerance::one()), r(2, 3));
    }

    #[test]
    fn map_variants_agree_at_ball_level() {
        let double = UcFn::new(
            |a: &Rational| a * &Rational::from_int(2),
            modulus_lipschitz(Rational::from_int(2)),
        );
        let x = RegularFn::from_fn(|eps: &Tolerance| &r(5, 4) - &eps.rational().min(&r(1, 1)));
        assert_equiv(&map_prime(&double, &x), &map_general(&double, &x));
    }

    #[test]
    fn infinite_modulus_queries_at_fixed_tolerance() {
        // clamp into [0, 1]: range diameter 1, so no input accuracy is needed
        // once eps >= 1
        let clamp01 = UcFn::new(
            |a: &Rational| a.clamp_to(&Rational::zero(), &Rational::one()),
            |eps| {
                if *eps.rational() < Rational::one() {
                    ExtTolerance::finite(eps.clone())
                } else {
                    ExtTolerance::Infinite
                }
            },
        );
        // two inputs that agree at tolerance 1 but differ at finer ones
        let x1 = unit(Rational::from_int(5));
        let x2 = RegularFn::from_fn(|eps: &Tolerance| {
            &Rational::from_int(5) + &(&Rational::one() - &eps.rational().min(&Rational::one()))
        });
        assert_eq!(x1.query(&Tolerance::one()), x2.query(&Tolerance::one()));
        let o1 = map_prime(&clamp01, &x1);
        let o2 = map_prime(&clamp01, &x2);
        let two = tol(2, 1);
        assert_eq!(o1.query(&two), o2.query(&two));
        assert_eq!(o1.query(&two), Rational::one());
    }

    #[test]
    fn map_prime_never_queries_finer_than_modulus() {
        // instrument the argument to record every tolerance it is asked for
        let seen: Arc<StdMutex<Vec<Rational>>> = Arc::new(StdMutex::new(Vec::new()));
        let seen_in = Arc::clone(&seen);
        let x = RegularFn::from_fn(move |eps: &Tolerance| {
            seen_in.lock().unwrap().push(eps.rational().clone());
            r(1, 3)
        });
        let double = UcFn::new(
            |a: &Rational| a * &Rational::from_int(2),
            modulus_lipschitz(Rational::from_int(2)),
        );
        let out = map_prime(&double, &x);
        for eps in [tol(1, 1), tol(1, 7), tol(3, 5)] {
            out.query(&eps);
            let floor = double.modulus(&eps);
            let floor = floor.as_finite().unwrap().rational();
            for q in seen.lock().unwrap().iter() {
                assert!(q >= floor, "queried {q} below modulus {floor}");
            }
            seen.lock().unwrap().clear();
        }
    }

    #[test]
    fn bind_prime_satisfies_unit_law() {
        // f(a) = unit(a + 1) lifted over unit(q) collapses to f(q)
        let f = UcFn::new(
            |a: &Rational| unit(a + &Rational::one()),
            modulus_identity(),
        );
        let out = bind_prime(&f, &unit(r(1, 4)));
        assert_equiv(&out, &unit(r(5, 4)));
        // definition expansion: query at eps goes through f at eps/2
        assert_eq!(out.query(&tol(1, 2)), r(5, 4));
    }

    #[test]
    fn ap_applies_function_values() {
        let identity = UcFn::new(|a: &Rational| a.clone(), modulus_identity());
        let x = RegularFn::from_fn(|eps: &Tolerance| &r(3, 2) + &eps.rational().min(&r(1, 2)));
        assert_equiv(&ap(&unit(identity), &x), &x);

        let double = UcFn::new(
            |a: &Rational| a * &Rational::from_int(2),
            modulus_lipschitz(Rational::from_int(2)),
        );
        assert_equiv(&ap(&unit(double), &unit(r(1, 4))), &unit(r(1, 2)));
    }

    fn plus() -> UcFn2<Rational, Rational, Rational> {
        UcFn2::new(|a: &Rational, b: &Rational| a + b, modulus_identity(), modulus_identity())
    }

    #[test]
    fn map2_adds() {
        let out = map2(&plus(), &unit(r(1, 3)), &unit(r(1, 6)));
        assert_equiv(&out, &unit(r(1, 2)));
        let min2 = UcFn2::new(
            |a: &Rational, b: &Rational| a.min(b),
            modulus_identity(),
            modulus_identity(),
        );
        let x = RegularFn::from_fn(|eps: &Tolerance| &r(9, 8) - &eps.rational().min(&r(1, 1)));
        assert_equiv(&map2(&min2, &x, &x), &x);
    }

    #[test]
    fn map2_matches_pointwise_application_on_units() {
        for (a, b) in [(r(1, 3), r(1, 6)), (r(-5, 2), r(7, 3)), (r(0, 1), r(4, 9))] {
            let out = map2(&plus(), &unit(a.clone()), &unit(b.clone()));
            assert_equiv(&out, &unit(&a + &b));
        }
    }

    #[test]
    fn ball_check_examples() {
        let zero = unit(Rational::zero());
        let half = unit(r(1, 2));
        let one = unit(Rational::one());
        let eps1 = ExtTolerance::finite(Tolerance::one());
        assert_eq!(ball_check(&eps1, &zero, &half, &probes()), BallVerdict::Consistent);

        // |0 - 1| = 1 > 1/8 + 1/4 + 1/8
        let quarter = ExtTolerance::finite(tol(1, 4));
        let tight = vec![tol(1, 8)];
        assert_eq!(ball_check(&quarter, &zero, &one, &tight), BallVerdict::Refuted);

        let x = RegularFn::from_fn(|eps: &Tolerance| eps.rational().min(&r(1, 1)));
        assert_eq!(
            ball_check(&ExtTolerance::finite(tol(1, 1000)), &x, &x, &probes()),
            BallVerdict::Consistent
        );
        assert_eq!(
            ball_check(&ExtTolerance::Infinite, &zero, &one, &tight),
            BallVerdict::Consistent
        );
    }

    #[test]
    fn cache_returns_finer_answers_for_coarser_queries() {
        let calls: Arc<StdMutex<u32>> = Arc::new(StdMutex::new(0));
        let calls_in = Arc::clone(&calls);
        let x = RegularFn::from_fn(move |eps: &Tolerance| {
            *calls_in.lock().unwrap() += 1;
            eps.rational().clone()
        });
        let fine = x.query(&tol(1, 64));
        assert_eq!(x.query(&tol(1, 2)), fine);
        assert_eq!(*calls.lock().unwrap(), 1);
        // a finer query recomputes
        x.query(&tol(1, 128));
        assert_eq!(*calls.lock().unwrap(), 2);
    }

    #[test]
    fn concurrent_queries_share_the_cache_safely() {
        let calls: Arc<StdMutex<u32>> = Arc::new(StdMutex::new(0));
        let calls_in = Arc::clone(&calls);
        let x = RegularFn::from_fn(move |eps: &Tolerance| {
            *calls_in.lock().unwrap() += 1;
            &r(3, 7) + &eps.rational().min(&Rational::one())
        });
        let handles: Vec<_> = (0..8)
            .map(|i| {
                let x = x.clone();
                std::thread::spawn(move || {
                    let eps = tol(1, 1 << (i + 2));
                    (eps.clone(), x.query(&eps))
                })
            })
            .collect();
        let answers: Vec<(Tolerance, Rational)> =
            handles.into_iter().map(|h| h.join().unwrap()).collect();
        // every pair of answers respects regularity, whichever thread's
        // result ended up cached
        for (e1, v1) in &answers {
            for (e2, v2) in &answers {
                assert!((v1 - v2).abs() <= e1.rational() + e2.rational());
            }
        }
        assert!(*calls.lock().unwrap() >= 1);
    }

    proptest! {
        // The uniform-continuity contract of representative lifted
        // functions: inputs within modulus(eps) give outputs within eps.
        // The shapes mirror the arithmetic lifts the real layer builds.
        #[test]
        fn ucfn_contract_holds_on_samples(
            (an, ad) in (-2000i64..2000, 1i64..=50),
            gap_n in -999i64..=999,
            en in 1i64..=400,
        ) {
            let eps = tol(en, 100);
            let c = Rational::from_int(5);
            let double = UcFn::new(
                |a: &Rational| a * &Rational::from_int(2),
                modulus_lipschitz(Rational::from_int(2)),
            );
            let clamp_square = {
                let c = c.clone();
                UcFn::new(
                    move |a: &Rational| {
                        let t = a.clamp_to(&-&c, &c);
                        &t * &t
                    },
                    modulus_lipschitz(Rational::from_int(10)),
                )
            };
            let recip_above = {
                let c = c.clone();
                UcFn::new(
                    move |a: &Rational| Rational::max(a, &c).recip().unwrap(),
                    |eps: &Tolerance| ExtTolerance::finite(eps.scale(&Rational::from_int(25))),
                )
            };
            let abs_fn = UcFn::new(|a: &Rational| a.abs(), modulus_identity());
            for f in [&double, &clamp_square, &recip_above, &abs_fn] {
                let ExtTolerance::Finite(delta) = f.modulus(&eps) else { unreachable!() };
                // place b within modulus(eps) of a
                let a = r(an, ad);
                let b = &a + &(delta.rational() * &r(gap_n, 1000));
                prop_assert!((&f.apply(&a) - &f.apply(&b)).abs() <= *eps.rational());
                // modulus is monotone nondecreasing
                prop_assert!(f.modulus(&eps) <= f.modulus(&eps.double()));
                prop_assert!(f.modulus(&eps.half()) <= f.modulus(&eps));
            }
        }

        // Regularity survives the monad operations on a family of synthetic
        // regular functions x(eps) = q + c * min(eps, 1) with |c| <= 1.
        #[test]
        fn lifted_values_stay_regular(
            q in -50i64..50,
            cn in -8i64..=8,
            e1 in 1i64..2000,
            e2 in 1i64..2000,
        ) {
            let base = r(q, 7);
            let slope = r(cn, 8);
            let x = RegularFn::from_fn(move |eps: &Tolerance| {
                &base + &(&slope * &eps.rational().min(&Rational::one()))
            });
            let double = UcFn::new(
                |a: &Rational| a * &Rational::from_int(2),
                modulus_lipschitz(Rational::from_int(2)),
            );
            let y = map_prime(&double, &x);
            let z = map2(&plus(), &x, &y);
            let t1 = tol(e1, 1000);
            let t2 = tol(e2, 1000);
            for v in [&x, &y, &z] {
                let gap = (&v.query(&t1) - &v.query(&t2)).abs();
                let slack = t1.rational() + t2.rational();
                prop_assert!(gap <= slack, "regularity violated: {gap} > {slack}");
            }
        }
    }
}
