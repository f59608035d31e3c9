//! Discrete versus continuous equilibrium payoffs as player 2's valuation
//! varies with player 1's held fixed.
//!
//! The model is symmetric in the player labels, so when `v2 > v1` the
//! equilibria are taken from the role-swapped pair and player 2's payoff is
//! the stronger player's payoff there.

use std::fmt::Write as _;

use num_traits::{Signed, Zero};

use crate::equilibria::{classify, payoff_range, CaseTag, Valuations};
use crate::error::{Error, Result};
use crate::rational::{self, int, is_integer, rat, Rational};

/// Equilibrium payoffs `(P1, P2)` with a continuum of bids.
pub fn continuous_payoffs(v1: &Rational, v2: &Rational) -> Result<(Rational, Rational)> {
    for v in [v1, v2] {
        if !v.is_positive() {
            return Err(Error::InvalidValuation(Box::new(v.clone())));
        }
    }
    Ok(if v1 >= v2 {
        (v1 - v2, Rational::zero())
    } else {
        (Rational::zero(), v2 - v1)
    })
}

/// Range of player 2's discrete equilibrium payoff, the governing case and
/// whether the roles had to be swapped.
pub fn discrete_p2_range(v1: &Rational, v2: &Rational) -> Result<((Rational, Rational), CaseTag, bool)> {
    let (vals, swapped) = Valuations::ordered(v1.clone(), v2.clone())?;
    let range = payoff_range(&vals);
    let p2 = if swapped { range.p1 } else { range.p2 };
    Ok((p2, classify(&vals), swapped))
}

/// Player 2's payoff difference as a closed piecewise function of `v2`,
/// valid when `v1` is not an even integer:
///
/// * `0` for `v2 <= 2 floor(v1/2)`,
/// * `v2/2 - floor(v2/2)` for `2 floor(v1/2) < v2 <= v1`,
/// * `v1 - floor(v1/2) - v2/2` for `v1 < v2 <= 2 ceil(v1/2)`,
/// * `2 (v1/2 - floor(v1/2) - 1/2)` for `v2 > 2 ceil(v1/2)`.
///
/// Returns `None` for even `v1`, where the discrete payoff is not unique.
pub fn closed_form_difference(v1: &Rational, v2: &Rational) -> Option<Rational> {
    let h1 = v1 / int(2);
    if is_integer(&h1) {
        return None;
    }
    let (f1, c1) = (h1.floor(), h1.ceil());
    let h2 = v2 / int(2);
    Some(if *v2 <= int(2) * &f1 {
        Rational::zero()
    } else if v2 <= v1 {
        &h2 - h2.floor()
    } else if *v2 <= int(2) * &c1 {
        v1 - &f1 - &h2
    } else {
        int(2) * (&h1 - &f1 - rat(1, 2))
    })
}

/// Player 2's discrete payoff minus the continuous one, as an interval. The
/// interval is a single point unless `v1` or `v2` is an even integer and the
/// equilibrium payoffs form a continuum.
pub fn payoff_difference(v1: &Rational, v2: &Rational) -> Result<(Rational, Rational)> {
    let ((lo, hi), _, _) = discrete_p2_range(v1, v2)?;
    let cont = continuous_payoffs(v1, v2)?.1;
    let diff = (lo - &cont, hi - &cont);
    if let Some(closed) = closed_form_difference(v1, v2) {
        assert_eq!(diff.0, diff.1, "payoff of player 2 is unique when v1 is not even");
        assert_eq!(diff.0, closed, "closed form disagrees at v1 = {v1}, v2 = {v2}");
    }
    Ok(diff)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub v2: Rational,
    pub disc_p2_min: Rational,
    pub disc_p2_max: Rational,
    pub cont_p2: Rational,
    pub diff_min: Rational,
    pub diff_max: Rational,
    pub case: CaseTag,
    pub roles_swapped: bool,
}

impl SweepRow {
    pub fn at(v1: &Rational, v2: &Rational) -> Result<Self> {
        let ((lo, hi), case, roles_swapped) = discrete_p2_range(v1, v2)?;
        let cont_p2 = continuous_payoffs(v1, v2)?.1;
        let (diff_min, diff_max) = payoff_difference(v1, v2)?;
        Ok(Self {
            v2: v2.clone(),
            disc_p2_min: lo,
            disc_p2_max: hi,
            cont_p2,
            diff_min,
            diff_max,
            case,
            roles_swapped,
        })
    }
}

/// One row per `v2` in `v2_min, v2_min + step, ...` up to and including
/// `v2_max` when it is hit exactly.
pub fn sweep(v1: &Rational, v2_min: &Rational, v2_max: &Rational, step: &Rational) -> Result<Vec<SweepRow>> {
    if !v1.is_positive() {
        return Err(Error::InvalidValuation(Box::new(v1.clone())));
    }
    if !v2_min.is_positive() || v2_min > v2_max || !step.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "sweep needs 0 < v2_min <= v2_max and step > 0, got {v2_min}..{v2_max} step {step}"
        )));
    }
    let mut rows = Vec::new();
    let mut v2 = v2_min.clone();
    while v2 <= *v2_max {
        rows.push(SweepRow::at(v1, &v2)?);
        v2 += step;
    }
    Ok(rows)
}

pub const CSV_HEADER: &str = "v2,disc_p2_min,disc_p2_max,cont_p2,diff_min,diff_max,case,roles_swapped";

/// Renders rows as CSV. With `decimals = Some(k)` rationals are shown as
/// `k`-digit decimals instead of `p/q`.
pub fn to_csv(rows: &[SweepRow], decimals: Option<usize>) -> String {
    let fmt = |r: &Rational| match decimals {
        Some(k) => rational::to_decimal(r, k),
        None => rational::format(r),
    };
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            fmt(&r.v2),
            fmt(&r.disc_p2_min),
            fmt(&r.disc_p2_max),
            fmt(&r.cont_p2),
            fmt(&r.diff_min),
            fmt(&r.diff_max),
            r.case,
            r.roles_swapped
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn continuous_examples() {
        assert_eq!(continuous_payoffs(&int(8), &int(3)).unwrap(), (int(5), int(0)));
        assert_eq!(continuous_payoffs(&int(3), &int(3)).unwrap(), (int(0), int(0)));
        assert_eq!(continuous_payoffs(&int(3), &int(5)).unwrap(), (int(0), int(2)));
        assert!(matches!(continuous_payoffs(&int(0), &int(1)), Err(Error::InvalidValuation(_))));
    }

    #[test]
    fn difference_examples() {
        let v1 = rat(23, 5);
        assert_eq!(payoff_difference(&v1, &rat(9, 2)).unwrap(), (rat(1, 4), rat(1, 4)));
        assert_eq!(payoff_difference(&v1, &int(4)).unwrap(), (int(0), int(0)));
        let v1 = rat(27, 5);
        assert_eq!(payoff_difference(&v1, &int(7)).unwrap(), (rat(2, 5), rat(2, 5)));
    }

    #[test]
    fn sweep_examples() {
        let v1 = rat(23, 5);
        let rows = sweep(&v1, &int(4), &rat(23, 5), &rat(1, 2)).unwrap();
        let v2s: Vec<_> = rows.iter().map(|r| r.v2.clone()).collect();
        assert_eq!(v2s, vec![int(4), rat(9, 2)]);
        let rows: Vec<_> = [int(4), rat(9, 2), rat(23, 5)]
            .iter()
            .map(|v2| SweepRow::at(&v1, v2).unwrap().diff_min)
            .collect();
        assert_eq!(rows, vec![int(0), rat(1, 4), rat(3, 10)]);

        let row = SweepRow::at(&int(4), &int(5)).unwrap();
        assert!(row.disc_p2_min < row.disc_p2_max);
        assert!(row.roles_swapped);
        assert_eq!(row.case, CaseTag::IntV2Ge4);
    }

    #[test]
    fn sweep_includes_endpoint_when_hit() {
        let rows = sweep(&int(5), &int(1), &int(3), &rat(1, 2)).unwrap();
        assert_eq!(rows.len(), 5);
        assert_eq!(rows.last().unwrap().v2, int(3));
    }

    #[test]
    fn sweep_rejects_bad_ranges() {
        assert!(sweep(&int(5), &int(3), &int(1), &int(1)).is_err());
        assert!(sweep(&int(5), &int(0), &int(1), &int(1)).is_err());
        assert!(sweep(&int(5), &int(1), &int(2), &int(0)).is_err());
        assert!(sweep(&int(-5), &int(1), &int(2), &int(1)).is_err());
    }

    #[test]
    fn csv_rendering() {
        let rows = vec![SweepRow::at(&rat(23, 5), &rat(9, 2)).unwrap()];
        assert_eq!(
            to_csv(&rows, None),
            format!("{CSV_HEADER}\n9/2,1/4,1/4,0,1/4,1/4,NonInt_EqFloor,false\n")
        );
        assert_eq!(
            to_csv(&rows, Some(2)),
            format!("{CSV_HEADER}\n4.50,0.25,0.25,0.00,0.25,0.25,NonInt_EqFloor,false\n")
        );
    }
}
