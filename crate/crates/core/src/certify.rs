//! Exact equilibrium certificates by exhaustive deviation search.
//!
//! In the all-pay auction, payoffs are linear in a player's own mixed
//! strategy, so it suffices to compare against every pure bid. A bid above
//! the opponent's maximum support point `M` wins surely and costs more than
//! `M + 1`, which also wins surely, so bids `0..=M + 1` are exhaustive.
//!
//! In the General Lotto game with fixed means, `H` is linear in the
//! deviating distribution and the extreme points of the fixed-mean simplex
//! are one- and two-point distributions. A two-point deviation with upper
//! point beyond `M + 1` is beaten by the same deviation with upper point
//! `M + 1`, so upper points up to `max support + 2` cover it.

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::dist::{dirac, Bid, FiniteDist};
use crate::equilibria::{build_equilibrium, EqParams, Valuations};
use crate::error::{Error, Result};
use crate::payoff::{allpay_payoff, h_value, pure_bid_payoff};
use crate::rational::{self, from_u64, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestResponse {
    pub value: Rational,
    /// Every maximizing bid, ascending.
    pub argmax: Vec<Bid>,
    /// Largest bid examined.
    pub truncation_bound: Bid,
}

/// Best pure response of a bidder with valuation `v` to `opponent`.
pub fn best_response(v: &Rational, opponent: &FiniteDist) -> Result<BestResponse> {
    if !v.is_positive() {
        return Err(Error::InvalidValuation(Box::new(v.clone())));
    }
    let bound = opponent.max_support() + 1;
    let mut value: Option<Rational> = None;
    let mut argmax = Vec::new();
    for k in 0..=bound {
        let p = pure_bid_payoff(v, k, opponent);
        match &value {
            Some(best) if p < *best => {}
            Some(best) if p == *best => argmax.push(k),
            _ => {
                value = Some(p);
                argmax = vec![k];
            }
        }
    }
    Ok(BestResponse {
        value: value.expect("at least one bid examined"),
        argmax,
        truncation_bound: bound,
    })
}

/// Outcome of checking a profile. Gains are measured against the profile's
/// own payoff and are zero exactly at an equilibrium.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub is_equilibrium: bool,
    pub max_gain_p1: Rational,
    pub max_gain_p2: Rational,
    pub best_deviation_p1: FiniteDist,
    pub best_deviation_p2: FiniteDist,
    pub truncation_bound: Bid,
}

impl Certificate {
    fn new(
        gain1: Rational,
        gain2: Rational,
        dev1: FiniteDist,
        dev2: FiniteDist,
        truncation_bound: Bid,
    ) -> Self {
        debug_assert!(!gain1.is_negative() && !gain2.is_negative());
        Self {
            is_equilibrium: gain1.is_zero() && gain2.is_zero(),
            max_gain_p1: gain1,
            max_gain_p2: gain2,
            best_deviation_p1: dev1,
            best_deviation_p2: dev2,
            truncation_bound,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "is_equilibrium": self.is_equilibrium,
            "max_gain_p1": rational::format(&self.max_gain_p1),
            "max_gain_p2": rational::format(&self.max_gain_p2),
            "best_deviation_p1": self.best_deviation_p1.to_json(),
            "best_deviation_p2": self.best_deviation_p2.to_json(),
            "truncation_bound": self.truncation_bound,
        })
    }
}

/// Checks `(x, y)` against every pure deviation of both bidders.
pub fn certify_allpay(v: &Valuations, x: &FiniteDist, y: &FiniteDist) -> Result<Certificate> {
    let side = |val: &Rational, own: &FiniteDist, opp: &FiniteDist| -> Result<(Rational, BestResponse)> {
        let br = best_response(val, opp)?;
        let gain = &br.value - allpay_payoff(val, own, opp)?;
        debug_assert_eq!(
            gain.is_zero(),
            own.support().all(|k| br.argmax.binary_search(&k).is_ok()),
            "zero gain must coincide with support inside the argmax"
        );
        Ok((gain, br))
    };
    let (g1, br1) = side(v.v1(), x, y)?;
    let (g2, br2) = side(v.v2(), y, x)?;
    let bound = br1.truncation_bound.max(br2.truncation_bound);
    Ok(Certificate::new(g1, g2, dirac(br1.argmax[0]), dirac(br2.argmax[0]), bound))
}

/// Best same-mean deviation against `opp`: `(value of H, witness)`.
fn best_lotto_deviation(mean: &Rational, opp: &FiniteDist, bound: Bid) -> (Rational, FiniteDist) {
    // H of each pure bid against the opponent
    let h: Vec<Rational> = (0..=bound)
        .map(|k| int(1) - opp.tail_prob(k) - opp.tail_prob(k + 1))
        .collect();
    let mut best: Option<(Rational, FiniteDist)> = None;
    let mut consider = |value: Rational, witness: &dyn Fn() -> FiniteDist| match &best {
        Some((b, _)) if value <= *b => {}
        _ => best = Some((value, witness())),
    };
    if rational::is_integer(mean) {
        let k = rational::floor_i64(mean) as Bid;
        if k <= bound {
            consider(h[k as usize].clone(), &|| dirac(k));
        }
    }
    let below = rational::ceil_i64(mean) as Bid; // first index not below mean
    for i in 0..below.min(bound + 1) {
        let fi = from_u64(i);
        if fi >= *mean {
            break;
        }
        for j in (rational::floor_i64(mean) as Bid + 1)..=bound {
            let fj = from_u64(j);
            let span = &fj - &fi;
            let p_lo = (&fj - mean) / &span;
            let p_hi = (mean - &fi) / &span;
            let value = &p_lo * &h[i as usize] + &p_hi * &h[j as usize];
            consider(value, &|| {
                FiniteDist::from_weights([(i, p_lo.clone()), (j, p_hi.clone())])
                    .expect("two-point weights are a distribution")
            });
        }
    }
    best.expect("the mean lies within [0, bound]")
}

/// Checks `(x, y)` as an equilibrium of the General Lotto game in which each
/// player must keep the mean of their own strategy.
pub fn certify_lotto(x: &FiniteDist, y: &FiniteDist) -> Certificate {
    let bound = x.max_support().max(y.max_support()) + 2;
    let current = h_value(x, y);
    let (best1, dev1) = best_lotto_deviation(&x.expectation(), y, bound);
    let (best2, dev2) = best_lotto_deviation(&y.expectation(), x, bound);
    let gain1 = best1 - &current;
    let gain2 = best2 + &current;
    Certificate::new(gain1, gain2, dev1, dev2, bound)
}

/// Whether the mixed-and-matched profiles `(X_a, Y_b)` and `(X_b, Y_a)` are
/// both equilibria.
pub fn cross_check(v: &Valuations, pa: &EqParams, pb: &EqParams) -> Result<bool> {
    let a = build_equilibrium(v, pa)?;
    let b = build_equilibrium(v, pb)?;
    Ok(certify_allpay(v, &a.x, &b.y)?.is_equilibrium && certify_allpay(v, &b.x, &a.y)?.is_equilibrium)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{mix, uniform_even, uniform_odd};
    use crate::equilibria::canonical_params;
    use crate::rational::rat;

    fn d(pairs: &[(Bid, i64, i64)]) -> FiniteDist {
        FiniteDist::from_weights(pairs.iter().map(|&(k, n, q)| (k, rat(n, q)))).unwrap()
    }

    fn vals(a: i64, b: i64) -> Valuations {
        Valuations::new(int(a), int(b)).unwrap()
    }

    #[test]
    fn best_response_examples() {
        let br = best_response(&int(8), &d(&[(0, 3, 4), (2, 1, 4)])).unwrap();
        assert_eq!(br.value, int(5));
        assert_eq!(br.argmax, vec![1, 2, 3]);
        assert_eq!(br.truncation_bound, 3);

        let br = best_response(&int(2), &dirac(0)).unwrap();
        assert_eq!(br.value, int(1));
        assert_eq!(br.argmax, vec![0, 1]);

        let opp = mix(&[(rat(1, 2), &dirac(1)), (rat(1, 2), &dirac(3))]).unwrap();
        let br = best_response(&int(4), &opp).unwrap();
        assert_eq!(br.value, int(0));
        assert_eq!(br.argmax, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn best_response_rejects_nonpositive_valuation() {
        assert!(matches!(best_response(&int(0), &dirac(0)), Err(Error::InvalidValuation(_))));
    }

    #[test]
    fn certify_examples() {
        let v = vals(8, 3);
        let p = build_equilibrium(&v, &canonical_params(&v)).unwrap();
        let c = certify_allpay(&v, &p.x, &p.y).unwrap();
        assert!(c.is_equilibrium);
        assert_eq!((c.max_gain_p1, c.max_gain_p2), (int(0), int(0)));

        let v = vals(6, 4);
        let y = d(&[(0, 1, 3), (1, 1, 3), (3, 1, 3)]);
        assert!(certify_allpay(&v, &uniform_odd(2).unwrap(), &y).unwrap().is_equilibrium);

        let v = vals(4, 4);
        let c = certify_allpay(&v, &dirac(0), &dirac(0)).unwrap();
        assert!(!c.is_equilibrium);
        assert_eq!(c.max_gain_p1, int(1));
        assert_eq!(c.best_deviation_p1, dirac(1));
    }

    #[test]
    fn lotto_examples() {
        let c = certify_lotto(&uniform_odd(2).unwrap(), &uniform_even(2).unwrap());
        assert!(c.is_equilibrium);
        assert_eq!(h_value(&uniform_odd(2).unwrap(), &uniform_even(2).unwrap()), int(0));

        let c = certify_lotto(&dirac(1), &dirac(1));
        assert!(c.is_equilibrium);
    }

    #[test]
    fn lotto_detects_profitable_same_mean_deviation() {
        // against dirac(1), splitting mean 1 as {0: 1/2, 2: 1/2} scores 0, as
        // does dirac(1); but against dirac(0) the point mass at 1 wins surely
        // while {0: 1/2, 2: 1/2} only wins half the time
        let c = certify_lotto(&uniform_even(1).unwrap(), &dirac(0));
        assert!(!c.is_equilibrium);
        assert_eq!(c.max_gain_p1, rat(1, 2));
        assert_eq!(c.best_deviation_p1, dirac(1));
    }

    #[test]
    fn lotto_two_point_enumeration_matches_brute_force() {
        // compare against a direct search over every two-point split on a
        // small grid, including points beyond the truncation bound
        let y = d(&[(0, 1, 2), (3, 1, 2)]);
        let mean = rat(4, 3);
        let mut best = None::<Rational>;
        for i in 0..=1u64 {
            for j in 2..=12u64 {
                let (fi, fj) = (from_u64(i), from_u64(j));
                let dev = FiniteDist::from_weights([
                    (i, (&fj - &mean) / (&fj - &fi)),
                    (j, (&mean - &fi) / (&fj - &fi)),
                ])
                .unwrap();
                let h = h_value(&dev, &y);
                if best.as_ref().is_none_or(|b| h > *b) {
                    best = Some(h);
                }
            }
        }
        let (value, witness) = best_lotto_deviation(&mean, &y, 5);
        assert_eq!(Some(value.clone()), best);
        assert_eq!(witness.expectation(), mean);
        assert_eq!(h_value(&witness, &y), value);
    }

    #[test]
    fn cross_check_examples() {
        let v = vals(4, 4);
        let a = EqParams::IntSym { alpha: int(0), beta: int(0) };
        let b = EqParams::IntSym { alpha: int(1), beta: int(1) };
        assert!(cross_check(&v, &a, &b).unwrap());

        let v = vals(8, 3);
        let c = canonical_params(&v);
        assert!(cross_check(&v, &c, &c).unwrap());

        let bad = EqParams::IntSym { alpha: int(2), beta: int(0) };
        assert!(matches!(cross_check(&vals(4, 4), &a, &bad), Err(Error::ConstraintViolation(_))));
    }

    #[test]
    fn certificate_json_shape() {
        let v = vals(4, 4);
        let c = certify_allpay(&v, &dirac(0), &dirac(0)).unwrap();
        assert_eq!(
            c.to_json().to_string(),
            r#"{"is_equilibrium":false,"max_gain_p1":"1","max_gain_p2":"1","best_deviation_p1":[[1,"1"]],"best_deviation_p2":[[1,"1"]],"truncation_bound":1}"#
        );
    }
}
