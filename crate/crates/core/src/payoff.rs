//! All-pay auction payoffs, the General Lotto payoff `H`, and closed-form
//! lower bounds on `H` against the uniform building blocks.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::dist::{self, Bid, FiniteDist};
use crate::error::{Error, Result};
use crate::rational::{int, rat, Rational};

/// `Pr(X > Y) - Pr(X < Y)` for independent `X`, `Y`.
pub fn h_value(x: &FiniteDist, y: &FiniteDist) -> Rational {
    let mut h = Rational::zero();
    for (a, p) in x.iter() {
        for (b, q) in y.iter() {
            match a.cmp(&b) {
                Ordering::Greater => h += p * q,
                Ordering::Less => h -= p * q,
                Ordering::Equal => {}
            }
        }
    }
    debug_assert_eq!(h, h_value_by_tails(x, y), "H double sum disagrees with tail series");
    h
}

/// `1 - sum_i Pr(X = i) (Pr(Y >= i) + Pr(Y >= i + 1))`.
pub fn h_value_by_tails(x: &FiniteDist, y: &FiniteDist) -> Rational {
    let s: Rational = x
        .iter()
        .map(|(i, p)| p * (y.tail_prob(i) + y.tail_prob(i + 1)))
        .sum();
    Rational::one() - s
}

fn check_valuation(v: &Rational) -> Result<()> {
    if v.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidValuation(Box::new(v.clone())))
    }
}

/// Payoff of a bidder with valuation `v` playing `x` against `y`: the prize
/// when strictly higher, half of it on ties, minus the expected bid.
pub fn allpay_payoff(v: &Rational, x: &FiniteDist, y: &FiniteDist) -> Result<Rational> {
    check_valuation(v)?;
    let half = v / int(2);
    let mut win = Rational::zero();
    let mut tie = Rational::zero();
    for (a, p) in x.iter() {
        for (b, q) in y.iter() {
            match a.cmp(&b) {
                Ordering::Greater => win += p * q,
                Ordering::Equal => tie += p * q,
                Ordering::Less => {}
            }
        }
    }
    let e = x.expectation();
    let payoff = v * win + &half * tie - &e;
    debug_assert_eq!(
        payoff,
        &half * (h_value(x, y) - (int(2) * &e / v - int(1))),
        "all-pay payoff disagrees with its H form"
    );
    Ok(payoff)
}

/// Payoff of the pure bid `k` against `y`.
pub(crate) fn pure_bid_payoff(v: &Rational, k: Bid, y: &FiniteDist) -> Rational {
    let below = Rational::one() - y.tail_prob(k);
    let tie = y.prob(k);
    v * below + v / int(2) * tie - Rational::from_integer(k.into())
}

/// Building block whose `H` against an arbitrary opponent has a closed-form
/// lower bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundKind {
    UniformOdd { m: i64 },
    UniformEven { m: i64 },
    W { j: i64, m: i64 },
    UniformOddShift { m: i64 },
    V { j: i64, m: i64 },
    /// `(1 - α) U_O^m + α U_O^{m+1}`
    MixOddOdd { m: i64, alpha: Rational },
    /// `(1 - α) U_E^m + α U_O^{m+1}`
    MixEvenOdd { m: i64, alpha: Rational },
    /// `αδ V_j^m + (1 - αδ) U_O^m`, `δ = (2m+1)/(m+1)`
    MixOddV { j: i64, m: i64, alpha: Rational },
    /// `αδ V_j^m + (1 - αδ) U_E^m`, `δ = (2m+1)/(m+1)`
    MixEvenV { j: i64, m: i64, alpha: Rational },
    /// `(1-α)σ V_j^m + (1 - (1-α)σ) U_O^{m+1}`, `σ = (2m+1)/m`
    MixOddShiftV { j: i64, m: i64, alpha: Rational },
}

/// Result of [`h_lower_bound`]: `h_value(block, y) >= value`, with equality
/// exactly when `tight`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub value: Rational,
    pub tight: bool,
}

pub fn delta(m: i64) -> Rational {
    rat(2 * m + 1, m + 1)
}

pub fn sigma(m: i64) -> Rational {
    rat(2 * m + 1, m)
}

fn unit_interval(name: &str, a: &Rational) -> Result<()> {
    if a.is_negative() || *a > Rational::one() {
        Err(Error::InvalidParameter(format!("{name} = {a} must lie in [0, 1]")))
    } else {
        Ok(())
    }
}

impl BoundKind {
    /// The distribution the bound is about.
    pub fn block(&self) -> Result<FiniteDist> {
        use BoundKind::*;
        match self {
            UniformOdd { m } => dist::uniform_odd(*m),
            UniformEven { m } => dist::uniform_even(*m),
            W { j, m } => dist::w_dist(*j, *m),
            UniformOddShift { m } => dist::uniform_odd_shift(*m),
            V { j, m } => dist::v_dist(*j, *m),
            MixOddOdd { m, alpha } => {
                unit_interval("alpha", alpha)?;
                let (lo, hi) = (dist::uniform_odd(*m)?, dist::uniform_odd(m + 1)?);
                dist::mix(&[(int(1) - alpha, &lo), (alpha.clone(), &hi)])
            }
            MixEvenOdd { m, alpha } => {
                unit_interval("alpha", alpha)?;
                if *m < 1 {
                    return Err(Error::InvalidParameter(format!("m = {m} must be >= 1")));
                }
                let (lo, hi) = (dist::uniform_even(*m)?, dist::uniform_odd(m + 1)?);
                dist::mix(&[(int(1) - alpha, &lo), (alpha.clone(), &hi)])
            }
            MixOddV { j, m, alpha } | MixEvenV { j, m, alpha } => {
                let v = dist::v_dist(*j, *m)?;
                let w = alpha * delta(*m);
                unit_interval("alpha * delta", &w)?;
                let base = if matches!(self, MixOddV { .. }) {
                    dist::uniform_odd(*m)?
                } else {
                    dist::uniform_even(*m)?
                };
                dist::mix(&[(w.clone(), &v), (int(1) - w, &base)])
            }
            MixOddShiftV { j, m, alpha } => {
                let v = dist::v_dist(*j, *m)?;
                unit_interval("alpha", alpha)?;
                let w = (int(1) - alpha) * sigma(*m);
                unit_interval("(1 - alpha) * sigma", &w)?;
                let top = dist::uniform_odd(m + 1)?;
                dist::mix(&[(w.clone(), &v), (int(1) - w, &top)])
            }
        }
    }

    /// First index `k` such that the bound is tight iff
    /// `sum_{j >= k} Pr(Y >= j) = 0`. Endpoint weights that switch off a
    /// component move the threshold to that of the remaining component.
    fn tail_threshold(&self) -> Bid {
        use BoundKind::*;
        let m = |m: &i64| *m as Bid;
        match self {
            UniformOdd { m: mm } | W { m: mm, .. } => 2 * m(mm) + 1,
            UniformEven { m: mm } | V { m: mm, .. } => 2 * m(mm) + 2,
            UniformOddShift { m: mm } => 2 * m(mm),
            MixOddOdd { m: mm, alpha } => {
                if alpha.is_one() {
                    2 * m(mm) + 3
                } else {
                    2 * m(mm) + 1
                }
            }
            MixEvenOdd { m: mm, alpha } => {
                if alpha.is_one() {
                    2 * m(mm) + 3
                } else {
                    2 * m(mm) + 2
                }
            }
            MixOddV { m: mm, alpha, .. } => {
                if (alpha * delta(*mm)).is_one() {
                    2 * m(mm) + 2
                } else {
                    2 * m(mm) + 1
                }
            }
            MixEvenV { m: mm, .. } => 2 * m(mm) + 2,
            MixOddShiftV { m: mm, alpha, .. } => {
                if alpha.is_one() {
                    2 * m(mm) + 3
                } else {
                    2 * m(mm) + 2
                }
            }
        }
    }

    /// Right-hand side of the bound at opponent `y`.
    fn bound_value(&self, y: &FiniteDist) -> Rational {
        use BoundKind::*;
        let e = y.expectation();
        let one = Rational::one();
        let p = |i: i64| y.prob(i as Bid);
        // coefficient on E(Y) shared by the mixed-block bounds
        let mixed_slope = |m: i64, alpha: &Rational| rat(1, m + 1) + (&one - alpha) / int(m * (m + 1));
        match self {
            UniformOdd { m } => &one - e / int(*m),
            UniformEven { m } => &one - (e + &one) / int(m + 1),
            W { j, m } => &one - e / int(*m) + (p(2 * j) - p(0)) / int(2 * m),
            UniformOddShift { m } => &one - (e - &one) / int(m - 1) - p(0) / int(m - 1),
            V { j, m } => &one - int(2) * e / int(2 * m + 1) + p(2 * j - 1) / int(2 * m + 1),
            MixOddOdd { m, alpha } => &one - e * mixed_slope(*m, alpha),
            MixEvenOdd { m, alpha } => &one - (e + &one) / int(m + 1) + alpha / int(m + 1),
            MixOddV { j, m, alpha } => {
                &one - e * mixed_slope(*m, alpha) + alpha / int(m + 1) * p(2 * j - 1)
            }
            MixEvenV { j, m, alpha } => {
                let a = alpha / int(m + 1);
                &one - (e + &one) / int(m + 1) * (&one + &a) + a * (int(2) + p(2 * j - 1))
            }
            MixOddShiftV { j, m, alpha } => {
                &one - e * mixed_slope(*m, alpha) + (&one - alpha) / int(*m) * p(2 * j - 1)
            }
        }
    }
}

/// Lower bound on `h_value(kind.block(), y)` and whether it is attained.
pub fn h_lower_bound(kind: &BoundKind, y: &FiniteDist) -> Result<Bound> {
    kind.block()?;
    let value = kind.bound_value(y);
    let tight = y.tail_sum(kind.tail_threshold()).is_zero();
    Ok(Bound { value, tight })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{dirac, mix, uniform_even, uniform_odd, v_dist};

    #[test]
    fn h_examples() {
        let u = uniform_odd(3).unwrap();
        assert_eq!(h_value(&u, &u), int(0));
        assert_eq!(h_value(&dirac(1), &dirac(0)), int(1));
        assert_eq!(h_value(&dirac(0), &uniform_even(1).unwrap()), rat(-1, 2));
        assert_eq!(h_value(&uniform_odd(2).unwrap(), &uniform_even(2).unwrap()), int(0));
    }

    #[test]
    fn payoff_examples() {
        assert_eq!(allpay_payoff(&int(2), &dirac(1), &dirac(0)).unwrap(), int(1));
        assert_eq!(allpay_payoff(&rat(7, 3), &dirac(0), &dirac(0)).unwrap(), rat(7, 6));
        let x = mix(&[(rat(2, 3), &dirac(1)), (rat(1, 3), &dirac(3))]).unwrap();
        let y = FiniteDist::from_weights([(0, rat(3, 4)), (2, rat(1, 4))]).unwrap();
        assert_eq!(allpay_payoff(&int(8), &x, &y).unwrap(), int(5));
    }

    #[test]
    fn payoff_rejects_nonpositive_valuation() {
        assert!(matches!(
            allpay_payoff(&int(0), &dirac(0), &dirac(0)),
            Err(Error::InvalidValuation(_))
        ));
        assert!(allpay_payoff(&int(-1), &dirac(0), &dirac(0)).is_err());
    }

    #[test]
    fn pure_bid_payoff_matches_general_payoff() {
        let y = FiniteDist::from_weights([(0, rat(1, 3)), (2, rat(1, 6)), (5, rat(1, 2))]).unwrap();
        for k in 0..8 {
            assert_eq!(
                pure_bid_payoff(&rat(9, 2), k, &y),
                allpay_payoff(&rat(9, 2), &dirac(k), &y).unwrap()
            );
        }
    }

    #[test]
    fn bound_examples() {
        let b = h_lower_bound(&BoundKind::UniformOdd { m: 2 }, &uniform_even(2).unwrap()).unwrap();
        assert_eq!(b, Bound { value: int(0), tight: true });

        let b = h_lower_bound(&BoundKind::UniformEven { m: 1 }, &dirac(5)).unwrap();
        assert_eq!(b, Bound { value: int(-2), tight: false });

        let b = h_lower_bound(&BoundKind::V { j: 1, m: 1 }, &dirac(1)).unwrap();
        assert_eq!(b, Bound { value: rat(2, 3), tight: true });
        assert_eq!(h_value(&v_dist(1, 1).unwrap(), &dirac(1)), rat(2, 3));
    }

    #[test]
    fn bound_rejects_invalid_kinds() {
        let y = dirac(0);
        assert!(h_lower_bound(&BoundKind::UniformOddShift { m: 1 }, &y).is_err());
        assert!(h_lower_bound(&BoundKind::W { j: 2, m: 2 }, &y).is_err());
        assert!(h_lower_bound(&BoundKind::MixOddOdd { m: 1, alpha: rat(3, 2) }, &y).is_err());
        // αδ > 1 is not a distribution
        assert!(h_lower_bound(&BoundKind::MixOddV { j: 1, m: 1, alpha: int(1) }, &y).is_err());
        assert!(h_lower_bound(&BoundKind::MixOddShiftV { j: 1, m: 1, alpha: int(0) }, &y).is_err());
    }

    #[test]
    fn mixed_bound_endpoints_follow_surviving_component() {
        // α = 1 turns MixOddOdd(1, α) into U_O^2, which is tight against dirac(3)
        let kind = BoundKind::MixOddOdd { m: 1, alpha: int(1) };
        let y = dirac(3);
        let b = h_lower_bound(&kind, &y).unwrap();
        assert_eq!(h_value(&kind.block().unwrap(), &y), b.value);
        assert!(b.tight);
    }
}
