//! Finitely supported distributions over bid levels and the uniform
//! building blocks that equilibrium strategies are assembled from.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::rational::{self, from_u64, int, Rational};

pub type Bid = u64;

/// Probability distribution on finitely many nonnegative integers.
///
/// Stored weights are strictly positive and sum to exactly one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteDist {
    weights: BTreeMap<Bid, Rational>,
}

impl FiniteDist {
    /// Builds a distribution from `(bid, weight)` pairs. Zero weights are
    /// dropped, repeated bids are summed.
    pub fn from_weights<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Bid, Rational)>,
    {
        let mut weights: BTreeMap<Bid, Rational> = BTreeMap::new();
        for (k, w) in pairs {
            if w.is_negative() {
                return Err(Error::InvalidDistribution(format!(
                    "negative weight {w} at bid {k}"
                )));
            }
            *weights.entry(k).or_insert_with(Rational::zero) += w;
        }
        weights.retain(|_, w| !w.is_zero());
        let total: Rational = weights.values().sum();
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!(
                "weights sum to {total}, not 1"
            )));
        }
        Ok(Self { weights })
    }

    fn from_uniform(points: impl IntoIterator<Item = Bid>, weight: Rational) -> Self {
        let weights = points.into_iter().map(|k| (k, weight.clone())).collect();
        let d = Self { weights };
        debug_assert!(d.total_mass().is_one());
        d
    }

    pub fn prob(&self, k: Bid) -> Rational {
        self.weights.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `(bid, weight)` pairs in ascending bid order.
    pub fn iter(&self) -> impl Iterator<Item = (Bid, &Rational)> + '_ {
        self.weights.iter().map(|(k, w)| (*k, w))
    }

    pub fn support(&self) -> impl Iterator<Item = Bid> + '_ {
        self.weights.keys().copied()
    }

    pub fn support_len(&self) -> usize {
        self.weights.len()
    }

    pub fn min_support(&self) -> Bid {
        *self.weights.keys().next().expect("distribution is never empty")
    }

    pub fn max_support(&self) -> Bid {
        *self.weights.keys().next_back().expect("distribution is never empty")
    }

    pub fn total_mass(&self) -> Rational {
        self.weights.values().sum()
    }

    pub fn expectation(&self) -> Rational {
        self.iter().map(|(k, w)| from_u64(k) * w).sum()
    }

    /// `Pr(X >= k)`.
    pub fn tail_prob(&self, k: Bid) -> Rational {
        self.weights.range(k..).map(|(_, w)| w).sum()
    }

    /// `sum_{j >= k} Pr(X >= j)`, which is `E[(X - k + 1)^+]`.
    pub fn tail_sum(&self, k: Bid) -> Rational {
        self.weights
            .range(k..)
            .map(|(&j, w)| from_u64(j - k + 1) * w)
            .sum()
    }

    /// Moves `amount` of probability from bid `from` to bid `to`.
    pub fn shift_mass(&self, from: Bid, to: Bid, amount: &Rational) -> Result<Self> {
        let available = self.prob(from);
        if amount.is_negative() || *amount > available {
            return Err(Error::InvalidParameter(format!(
                "cannot move {amount} from bid {from} holding {available}"
            )));
        }
        let mut pairs: Vec<(Bid, Rational)> =
            self.iter().map(|(k, w)| (k, w.clone())).collect();
        for (k, w) in pairs.iter_mut() {
            if *k == from {
                *w -= amount;
            }
        }
        pairs.push((to, amount.clone()));
        Self::from_weights(pairs)
    }

    /// `[[k, "p/q"], ...]` in ascending bid order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.iter()
                .map(|(k, w)| Value::Array(vec![Value::from(k), Value::from(rational::format(w))]))
                .collect(),
        )
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidDistribution(msg.to_string());
        let entries = value
            .as_array()
            .ok_or_else(|| bad("expected an array of [bid, \"p/q\"] pairs"))?;
        if entries.is_empty() {
            return Err(bad("empty distribution"));
        }
        let mut pairs = Vec::with_capacity(entries.len());
        for entry in entries {
            let pair = entry
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| bad("each entry must be a [bid, \"p/q\"] pair"))?;
            let k = pair[0]
                .as_u64()
                .ok_or_else(|| bad("bid must be a nonnegative integer"))?;
            let w = match &pair[1] {
                Value::String(s) => rational::parse(s)?,
                Value::Number(n) if n.is_u64() => from_u64(n.as_u64().unwrap()),
                _ => return Err(bad("probability must be a \"p/q\" string")),
            };
            if pairs.iter().any(|(j, _)| *j == k) {
                return Err(Error::InvalidDistribution(format!("bid {k} listed twice")));
            }
            pairs.push((k, w));
        }
        Self::from_weights(pairs)
    }
}

fn nonneg(name: &str, value: i64) -> Result<Bid> {
    Bid::try_from(value)
        .map_err(|_| Error::InvalidParameter(format!("{name} = {value} must be nonnegative")))
}

pub fn dirac(k: Bid) -> FiniteDist {
    FiniteDist::from_uniform([k], Rational::one())
}

/// Uniform on the odd numbers `1, 3, ..., 2m - 1`.
pub fn uniform_odd(m: i64) -> Result<FiniteDist> {
    if m < 1 {
        return Err(Error::InvalidParameter(format!("uniform_odd needs m >= 1, got {m}")));
    }
    let m = m as Bid;
    Ok(FiniteDist::from_uniform(
        (1..=m).map(|i| 2 * i - 1),
        Rational::new(1.into(), m.into()),
    ))
}

/// Uniform on the even numbers `0, 2, ..., 2m`.
pub fn uniform_even(m: i64) -> Result<FiniteDist> {
    let m = nonneg("m", m)
        .map_err(|_| Error::InvalidParameter(format!("uniform_even needs m >= 0, got {m}")))?;
    Ok(FiniteDist::from_uniform(
        (0..=m).map(|i| 2 * i),
        Rational::new(1.into(), (m + 1).into()),
    ))
}

/// Uniform on the even numbers `2, 4, ..., 2m - 2`; mean `m`.
///
/// Undefined for `m = 1` (the support would be empty), so that is rejected.
pub fn uniform_odd_shift(m: i64) -> Result<FiniteDist> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "uniform_odd_shift needs m >= 2, got {m}"
        )));
    }
    let m = m as Bid;
    Ok(FiniteDist::from_uniform(
        (1..m).map(|i| 2 * i),
        Rational::new(1.into(), (m - 1).into()),
    ))
}

/// `uniform_odd(m)` with its first `2j + 1` positions replaced by a
/// two-point moving average.
pub fn w_dist(j: i64, m: i64) -> Result<FiniteDist> {
    if m < 2 || j < 1 || j > m - 1 {
        return Err(Error::InvalidParameter(format!(
            "w_dist needs m >= 2 and 1 <= j <= m - 1, got j = {j}, m = {m}"
        )));
    }
    let (j, m) = (j as Bid, m as Bid);
    let full = Rational::new(1.into(), m.into());
    let half = Rational::new(1.into(), (2 * m).into());
    let mut pairs = vec![(0, half.clone())];
    pairs.extend((1..j).map(|i| (2 * i, full.clone())));
    pairs.push((2 * j, half));
    pairs.extend((j + 1..=m).map(|i| (2 * i - 1, full.clone())));
    Ok(FiniteDist::from_weights(pairs).expect("w_dist weights sum to one"))
}

/// `uniform_even(m)`-like distribution with its first `2j` positions
/// replaced by a two-point moving average; mean `m + (m + 1)/(2m + 1)`.
pub fn v_dist(j: i64, m: i64) -> Result<FiniteDist> {
    if m < 1 || j < 1 || j > m {
        return Err(Error::InvalidParameter(format!(
            "v_dist needs m >= 1 and 1 <= j <= m, got j = {j}, m = {m}"
        )));
    }
    let (j, m) = (j as Bid, m as Bid);
    let two = Rational::new(2.into(), (2 * m + 1).into());
    let one = Rational::new(1.into(), (2 * m + 1).into());
    let mut pairs: Vec<(Bid, Rational)> = (1..j).map(|i| (2 * i - 1, two.clone())).collect();
    pairs.push((2 * j - 1, one));
    pairs.extend((j..=m).map(|i| (2 * i, two.clone())));
    Ok(FiniteDist::from_weights(pairs).expect("v_dist weights sum to one"))
}

/// Convex combination of distributions. Weights must be nonnegative and sum
/// to exactly one; zero-weight components contribute nothing.
pub fn mix(components: &[(Rational, &FiniteDist)]) -> Result<FiniteDist> {
    if components.is_empty() {
        return Err(Error::InvalidMixture("no components".into()));
    }
    let mut total = Rational::zero();
    for (w, _) in components {
        if w.is_negative() {
            return Err(Error::InvalidMixture(format!("negative weight {w}")));
        }
        total += w;
    }
    if !total.is_one() {
        return Err(Error::InvalidMixture(format!("weights sum to {total}, not 1")));
    }
    let pairs = components
        .iter()
        .filter(|(w, _)| !w.is_zero())
        .flat_map(|(w, d)| d.iter().map(move |(k, p)| (k, w * p)));
    FiniteDist::from_weights(pairs)
}

/// Mean of `v_dist(j, m)` for any admissible `j`.
pub fn v_dist_mean(m: i64) -> Rational {
    int(m) + rational::rat(m + 1, 2 * m + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn d(pairs: &[(Bid, i64, i64)]) -> FiniteDist {
        FiniteDist::from_weights(pairs.iter().map(|&(k, n, q)| (k, rat(n, q)))).unwrap()
    }

    #[test]
    fn dirac_is_point_mass() {
        assert_eq!(dirac(0), d(&[(0, 1, 1)]));
        assert_eq!(dirac(3), d(&[(3, 1, 1)]));
        assert_eq!(dirac(5).expectation(), int(5));
    }

    #[test]
    fn uniform_builders_match_definitions() {
        assert_eq!(uniform_odd(1).unwrap(), d(&[(1, 1, 1)]));
        assert_eq!(uniform_odd(2).unwrap(), d(&[(1, 1, 2), (3, 1, 2)]));
        assert_eq!(uniform_odd(3).unwrap().expectation(), int(3));

        assert_eq!(uniform_even(0).unwrap(), d(&[(0, 1, 1)]));
        assert_eq!(uniform_even(1).unwrap(), d(&[(0, 1, 2), (2, 1, 2)]));
        assert_eq!(uniform_even(2).unwrap().expectation(), int(2));

        assert_eq!(uniform_odd_shift(2).unwrap(), d(&[(2, 1, 1)]));
        assert_eq!(uniform_odd_shift(3).unwrap(), d(&[(2, 1, 2), (4, 1, 2)]));
        assert_eq!(uniform_odd_shift(4).unwrap().expectation(), int(4));
    }

    #[test]
    fn builders_reject_out_of_range() {
        assert!(matches!(uniform_odd(0), Err(Error::InvalidParameter(_))));
        assert!(matches!(uniform_even(-1), Err(Error::InvalidParameter(_))));
        assert!(matches!(uniform_odd_shift(1), Err(Error::InvalidParameter(_))));
        assert!(w_dist(1, 1).is_err());
        assert!(w_dist(0, 3).is_err());
        assert!(w_dist(3, 3).is_err());
        assert!(v_dist(0, 2).is_err());
        assert!(v_dist(3, 2).is_err());
        assert!(v_dist(1, 0).is_err());
    }

    #[test]
    fn distorted_builders_match_definitions() {
        assert_eq!(w_dist(1, 2).unwrap(), d(&[(0, 1, 4), (2, 1, 4), (3, 1, 2)]));
        assert_eq!(
            w_dist(2, 3).unwrap(),
            d(&[(0, 1, 6), (2, 1, 3), (4, 1, 6), (5, 1, 3)])
        );
        assert_eq!(w_dist(1, 3).unwrap().expectation(), int(3));

        assert_eq!(v_dist(1, 1).unwrap(), d(&[(1, 1, 3), (2, 2, 3)]));
        assert_eq!(v_dist(2, 2).unwrap(), d(&[(1, 2, 5), (3, 1, 5), (4, 2, 5)]));
        assert_eq!(v_dist(1, 2).unwrap().expectation(), rat(13, 5));
    }

    #[test]
    fn mixtures() {
        let u = uniform_even(3).unwrap();
        assert_eq!(mix(&[(int(1), &u)]).unwrap(), u);
        assert_eq!(
            mix(&[(rat(1, 2), &dirac(0)), (rat(1, 2), &dirac(2))]).unwrap(),
            uniform_even(1).unwrap()
        );
        assert_eq!(
            mix(&[
                (rat(2, 3), &uniform_odd(1).unwrap()),
                (rat(1, 3), &uniform_odd(2).unwrap())
            ])
            .unwrap(),
            d(&[(1, 5, 6), (3, 1, 6)])
        );
        let boundary = mix(&[(int(0), &dirac(7)), (int(1), &dirac(1))]).unwrap();
        assert_eq!(boundary, dirac(1));
    }

    #[test]
    fn mix_rejects_bad_weights() {
        let a = dirac(0);
        assert!(matches!(
            mix(&[(rat(1, 2), &a), (rat(1, 3), &a)]),
            Err(Error::InvalidMixture(_))
        ));
        assert!(matches!(
            mix(&[(rat(3, 2), &a), (rat(-1, 2), &a)]),
            Err(Error::InvalidMixture(_))
        ));
        assert!(matches!(mix(&[]), Err(Error::InvalidMixture(_))));
    }

    #[test]
    fn expectation_and_tails() {
        assert_eq!(dirac(0).expectation(), int(0));
        assert_eq!(uniform_even(3).unwrap().expectation(), int(3));
        let m = mix(&[(rat(3, 4), &dirac(0)), (rat(1, 4), &dirac(2))]).unwrap();
        assert_eq!(m.expectation(), rat(1, 2));

        assert_eq!(uniform_even(1).unwrap().tail_prob(1), rat(1, 2));
        assert_eq!(dirac(3).tail_prob(4), int(0));
        assert_eq!(uniform_odd(2).unwrap().tail_prob(2), rat(1, 2));
        assert_eq!(uniform_odd(2).unwrap().tail_prob(0), int(1));
    }

    #[test]
    fn tail_sum_is_sum_of_tail_probs() {
        let y = d(&[(0, 1, 5), (3, 2, 5), (7, 2, 5)]);
        for k in 0..10 {
            let direct: Rational = (k..=8).map(|j| y.tail_prob(j)).sum();
            assert_eq!(y.tail_sum(k), direct, "k = {k}");
        }
    }

    #[test]
    fn from_weights_validates() {
        assert!(FiniteDist::from_weights([(0, rat(1, 2))]).is_err());
        assert!(FiniteDist::from_weights([(0, rat(3, 2)), (1, rat(-1, 2))]).is_err());
        let merged = FiniteDist::from_weights([(2, rat(1, 2)), (2, rat(1, 2)), (5, int(0))]).unwrap();
        assert_eq!(merged, dirac(2));
    }

    #[test]
    fn json_form() {
        let u = uniform_even(1).unwrap();
        assert_eq!(u.to_json().to_string(), r#"[[0,"1/2"],[2,"1/2"]]"#);
        assert_eq!(dirac(4).to_json().to_string(), r#"[[4,"1"]]"#);
        let back = FiniteDist::from_json(&u.to_json()).unwrap();
        assert_eq!(back, u);
        let unordered: Value = serde_json::from_str(r#"[[2,"1/2"],[0,"0.5"]]"#).unwrap();
        assert_eq!(FiniteDist::from_json(&unordered).unwrap(), u);
    }

    #[test]
    fn json_rejects_malformed() {
        for s in [
            r#"[]"#,
            r#"{"0":"1"}"#,
            r#"[[0,"1/2"]]"#,
            r#"[[0,"1/2"],[0,"1/2"]]"#,
            r#"[[-1,"1"]]"#,
            r#"[[0,0.5],[1,0.5]]"#,
            r#"[[0]]"#,
        ] {
            let v: Value = serde_json::from_str(s).unwrap();
            assert!(FiniteDist::from_json(&v).is_err(), "{s} should be rejected");
        }
    }

    #[test]
    fn shift_mass_moves_probability() {
        let y = uniform_even(1).unwrap();
        let moved = y.shift_mass(0, 3, &rat(1, 100)).unwrap();
        assert_eq!(moved.prob(0), rat(49, 100));
        assert_eq!(moved.prob(3), rat(1, 100));
        assert!(y.shift_mass(1, 3, &rat(1, 100)).is_err());
    }
}
