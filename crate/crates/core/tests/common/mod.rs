#![allow(dead_code)]

use allpay::dist::{Bid, FiniteDist};
use allpay::equilibria::Valuations;
use allpay::payoff::{delta, sigma, BoundKind};
use allpay::rational::{int, rat, Rational};
use num_traits::One;
use proptest::prelude::*;

/// Valuations used by the certification grid.
pub fn grid() -> Vec<Rational> {
    vec![
        rat(1, 2),
        int(1),
        rat(3, 2),
        int(2),
        rat(5, 2),
        int(3),
        rat(10, 3),
        rat(7, 2),
        int(4),
        rat(9, 2),
        rat(23, 5),
        int(5),
        rat(27, 5),
        int(6),
        int(8),
    ]
}

pub fn grid_pairs() -> Vec<Valuations> {
    let g = grid();
    let mut out = Vec::new();
    for v1 in &g {
        for v2 in &g {
            if v1 >= v2 {
                out.push(Valuations::new(v1.clone(), v2.clone()).unwrap());
            }
        }
    }
    out
}

pub fn vi(a: i64, b: i64) -> Valuations {
    Valuations::new(int(a), int(b)).unwrap()
}

/// One representative pair per case that has free parameters.
pub fn nondegenerate_instances() -> Vec<Valuations> {
    vec![
        vi(4, 4),
        vi(6, 6),
        vi(6, 2),
        vi(3, 2),
        vi(6, 4),
        vi(8, 6),
        vi(5, 4),
        vi(4, 3),
        Valuations::new(int(6), rat(9, 2)).unwrap(),
        vi(8, 3),
        Valuations::new(int(8), rat(7, 2)).unwrap(),
        Valuations::new(int(9), rat(11, 2)).unwrap(),
    ]
}

/// Every bound kind with `m <= max_m` and a spread of weights, including the
/// endpoints where one mixture component drops out.
pub fn bound_kinds(max_m: i64) -> Vec<BoundKind> {
    use BoundKind::*;
    let mut out = Vec::new();
    for m in 1..=max_m {
        let mut alphas = vec![int(0), rat(1, 3), rat(1, 2), rat(2, 3), int(1)];
        out.push(UniformOdd { m });
        out.push(UniformEven { m });
        out.push(UniformOddShift { m });
        for j in 1..=m {
            out.push(W { j, m });
            out.push(V { j, m });
        }
        for a in &alphas {
            out.push(MixOddOdd { m, alpha: a.clone() });
            out.push(MixEvenOdd { m, alpha: a.clone() });
        }
        alphas.push(Rational::one() / delta(m));
        alphas.push(Rational::one() - Rational::one() / sigma(m));
        for j in 1..=m {
            for a in &alphas {
                out.push(MixOddV { j, m, alpha: a.clone() });
                out.push(MixEvenV { j, m, alpha: a.clone() });
                out.push(MixOddShiftV { j, m, alpha: a.clone() });
            }
        }
    }
    out.retain(|k| k.block().is_ok());
    out
}

/// Random distribution on `0..=max_bid` with small rational weights.
pub fn arb_dist(max_bid: Bid) -> impl Strategy<Value = FiniteDist> {
    prop::collection::vec((0..=max_bid, 1i64..=12), 1..=6).prop_map(|pts| {
        let total: i64 = pts.iter().map(|(_, w)| w).sum();
        FiniteDist::from_weights(pts.into_iter().map(|(k, w)| (k, rat(w, total)))).unwrap()
    })
}

/// Random positive rational `n/d` with `n/d <= max`.
pub fn arb_valuation(max: i64) -> impl Strategy<Value = Rational> {
    (1i64..=6).prop_flat_map(move |d| (1..=max * d).prop_map(move |n| rat(n, d)))
}
