//! Equilibrium families of the discrete all-pay auction.
//!
//! A valuation pair is first classified into a [`CaseTag`]; each case has a
//! (possibly trivial) region of free parameters described by
//! [`ParamSpace`]. Every feasible [`EqParams`] point yields an explicit
//! equilibrium [`Profile`] together with its closed-form payoffs.

mod params;

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::dist::{self, dirac, mix, FiniteDist};
use crate::error::{Error, Result};
use crate::payoff::{delta, sigma};
use crate::rational::{self, ceil_i64, floor_i64, int, is_integer, Rational};

pub use params::{EqParams, Interval, ParamSpace, Region, XFamily};

/// Prize valuations with player 1 the (weakly) stronger player.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Valuations {
    v1: Rational,
    v2: Rational,
}

impl Valuations {
    pub fn new(v1: Rational, v2: Rational) -> Result<Self> {
        if !v2.is_positive() || v1 < v2 {
            return Err(Error::InvalidValuations { v1: Box::new(v1), v2: Box::new(v2) });
        }
        Ok(Self { v1, v2 })
    }

    /// Orders an arbitrary positive pair so the stronger player comes first.
    /// The flag reports whether the roles were swapped.
    pub fn ordered(a: Rational, b: Rational) -> Result<(Self, bool)> {
        for v in [&a, &b] {
            if !v.is_positive() {
                return Err(Error::InvalidValuation(Box::new(v.clone())));
            }
        }
        if a >= b {
            Ok((Self::new(a, b)?, false))
        } else {
            Ok((Self::new(b, a)?, true))
        }
    }

    pub fn v1(&self) -> &Rational {
        &self.v1
    }

    pub fn v2(&self) -> &Rational {
        &self.v2
    }

    pub(crate) fn half_v1(&self) -> Rational {
        &self.v1 / int(2)
    }

    pub(crate) fn half_v2(&self) -> Rational {
        &self.v2 / int(2)
    }
}

/// Which branch of the characterization governs a valuation pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    /// `v2/2` a positive integer and `v1 = v2`.
    IntSym,
    /// `v1 > v2 = 2`.
    IntV2Eq2,
    /// `v1 > v2`, `v2` even and at least 4.
    IntV2Ge4,
    /// `v2 > 2`, `v2/2` not an integer, `floor(v1/2) = floor(v2/2)`.
    NonIntEqFloor,
    /// `v2 > 2`, `v2/2` not an integer, `v1/2 = floor(v2/2) + 1`.
    NonIntBoundary,
    /// `v2 > 2`, `v2/2` not an integer, `v1/2 > floor(v2/2) + 1`.
    NonIntFar,
    /// `v2 < 2 < v1`.
    SmallGt,
    /// `v2 < 2 = v1`.
    SmallEq,
    /// `v2 <= v1 < 2`.
    SmallLt,
}

impl CaseTag {
    pub const ALL: [CaseTag; 9] = [
        CaseTag::IntSym,
        CaseTag::IntV2Eq2,
        CaseTag::IntV2Ge4,
        CaseTag::NonIntEqFloor,
        CaseTag::NonIntBoundary,
        CaseTag::NonIntFar,
        CaseTag::SmallGt,
        CaseTag::SmallEq,
        CaseTag::SmallLt,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::IntSym => "Int_Sym",
            CaseTag::IntV2Eq2 => "Int_V2Eq2",
            CaseTag::IntV2Ge4 => "Int_V2Ge4",
            CaseTag::NonIntEqFloor => "NonInt_EqFloor",
            CaseTag::NonIntBoundary => "NonInt_Boundary",
            CaseTag::NonIntFar => "NonInt_Far",
            CaseTag::SmallGt => "Small_Gt",
            CaseTag::SmallEq => "Small_Eq",
            CaseTag::SmallLt => "Small_Lt",
        }
    }

    /// True when the case admits more than one equilibrium profile.
    pub fn has_free_params(self) -> bool {
        !matches!(
            self,
            CaseTag::NonIntEqFloor | CaseTag::SmallGt | CaseTag::SmallLt
        )
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn classify(v: &Valuations) -> CaseTag {
    let two = int(2);
    let (h1, h2) = (v.half_v1(), v.half_v2());
    if v.v2 < two {
        return match v.v1.cmp(&two) {
            std::cmp::Ordering::Greater => CaseTag::SmallGt,
            std::cmp::Ordering::Equal => CaseTag::SmallEq,
            std::cmp::Ordering::Less => CaseTag::SmallLt,
        };
    }
    if is_integer(&h2) {
        return if v.v1 == v.v2 {
            CaseTag::IntSym
        } else if v.v2 == two {
            CaseTag::IntV2Eq2
        } else {
            CaseTag::IntV2Ge4
        };
    }
    let m = h2.floor();
    if h1.floor() == m {
        CaseTag::NonIntEqFloor
    } else if h1 == m + Rational::one() {
        CaseTag::NonIntBoundary
    } else {
        CaseTag::NonIntFar
    }
}

/// An equilibrium strategy profile with its closed-form payoffs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub valuations: Valuations,
    pub case: CaseTag,
    pub params: EqParams,
    pub x: FiniteDist,
    pub y: FiniteDist,
    pub predicted_p1: Rational,
    pub predicted_p2: Rational,
}

impl Profile {
    pub fn to_json(&self) -> Value {
        json!({
            "case": self.case.as_str(),
            "v1": rational::format(&self.valuations.v1),
            "v2": rational::format(&self.valuations.v2),
            "params": self.params.to_json(),
            "x": self.x.to_json(),
            "y": self.y.to_json(),
            "p1": rational::format(&self.predicted_p1),
            "p2": rational::format(&self.predicted_p2),
        })
    }
}

pub fn param_space(v: &Valuations) -> ParamSpace {
    ParamSpace::new(v.clone())
}

pub fn canonical_params(v: &Valuations) -> EqParams {
    let space = param_space(v);
    let p = space.canonical();
    debug_assert!(space.check(&p).is_ok(), "canonical point must be feasible");
    p
}

/// `(1 - w) δ0 + w Z`, the weaker player's "stay out or compete" form.
fn zero_or(w: Rational, z: &FiniteDist) -> Result<FiniteDist> {
    mix(&[(int(1) - &w, &dirac(0)), (w, z)])
}

/// `(1 - a) U_O^m + a U_O^{m+1}`.
fn odd_pair(m: i64, a: &Rational) -> Result<FiniteDist> {
    let (lo, hi) = (dist::uniform_odd(m)?, dist::uniform_odd(m + 1)?);
    mix(&[(int(1) - a, &lo), (a.clone(), &hi)])
}

/// `(1 - a) U_E^m + a U_O^{m+1}`.
fn even_odd_pair(m: i64, a: &Rational) -> Result<FiniteDist> {
    let (lo, hi) = (dist::uniform_even(m)?, dist::uniform_odd(m + 1)?);
    mix(&[(int(1) - a, &lo), (a.clone(), &hi)])
}

/// `w V_j^m + (1 - w) base`.
fn v_blend(j: i64, m: i64, w: &Rational, base: &FiniteDist) -> Result<FiniteDist> {
    let v = dist::v_dist(j, m)?;
    mix(&[(w.clone(), &v), (int(1) - w, base)])
}

/// Weighted sum over `(weight, component)` pairs, skipping zero weights
/// before the components are built.
fn weighted<F>(terms: Vec<(Rational, F)>) -> Result<FiniteDist>
where
    F: FnOnce() -> Result<FiniteDist>,
{
    let mut built = Vec::new();
    for (w, make) in terms {
        if !w.is_zero() {
            built.push((w, make()?));
        }
    }
    let refs: Vec<(Rational, &FiniteDist)> = built.iter().map(|(w, d)| (w.clone(), d)).collect();
    mix(&refs)
}

type Thunk<'a> = Box<dyn FnOnce() -> Result<FiniteDist> + 'a>;

/// The profile prescribed by the governing branch at a feasible parameter
/// point.
pub fn build_equilibrium(v: &Valuations, p: &EqParams) -> Result<Profile> {
    let space = param_space(v);
    space.check(p)?;
    let (x, y) = build_strategies(&space, p)?;
    let (predicted_p1, predicted_p2) = payoffs_unchecked(&space, p);
    Ok(Profile {
        valuations: v.clone(),
        case: space.case(),
        params: p.clone(),
        x,
        y,
        predicted_p1,
        predicted_p2,
    })
}

fn build_strategies(space: &ParamSpace, p: &EqParams) -> Result<(FiniteDist, FiniteDist)> {
    match (&space.region, p) {
        (Region::IntSym { m }, EqParams::IntSym { alpha, beta }) => {
            let m = *m;
            Ok((even_odd_pair(m, alpha)?, even_odd_pair(m, beta)?))
        }
        (Region::IntV2Eq2 { .. }, EqParams::IntV2Eq2 { b, lambda }) => {
            let (uo, ue) = (dist::uniform_odd(1)?, dist::uniform_even(1)?);
            let z = mix(&[(lambda.clone(), &uo), (int(1) - lambda, &ue)])?;
            Ok((uo, zero_or(b.clone(), &z)?))
        }
        (
            Region::IntV2Ge4 { m, .. },
            EqParams::IntV2Ge4 { b, lambda_o, lambda_e, lambda_o_up1, lambda_w },
        ) => {
            let m = *m;
            let mut terms: Vec<(Rational, Thunk)> = vec![
                (lambda_o.clone(), Box::new(move || dist::uniform_odd(m))),
                (lambda_e.clone(), Box::new(move || dist::uniform_even(m))),
                (lambda_o_up1.clone(), Box::new(move || dist::uniform_odd_shift(m))),
            ];
            for (j, w) in (1..).zip(lambda_w) {
                terms.push((w.clone(), Box::new(move || dist::w_dist(j, m))));
            }
            let z = weighted(terms)?;
            Ok((dist::uniform_odd(m)?, zero_or(b / int(m), &z)?))
        }
        (Region::NonIntEqFloor { m, lambda, kappa }, EqParams::NonIntEqFloor) => {
            let (uo, ue) = (dist::uniform_odd(*m)?, dist::uniform_even(*m)?);
            let x = mix(&[(lambda.clone(), &uo), (int(1) - lambda, &ue)])?;
            let y = mix(&[(kappa.clone(), &uo), (int(1) - kappa, &ue)])?;
            Ok((x, y))
        }
        (
            Region::NonIntBoundary { m, split, .. },
            EqParams::NonIntBoundary { alpha, lambda_o, lambda_e, lambda_v, kappa_v },
        ) => {
            let m = *m;
            let a = alpha.clone();
            let mut terms: Vec<(Rational, Thunk)> = vec![
                (lambda_o.clone(), Box::new({
                    let a = a.clone();
                    move || odd_pair(m, &a)
                })),
                (lambda_e.clone(), Box::new({
                    let a = a.clone();
                    move || even_odd_pair(m, &a)
                })),
            ];
            if *alpha <= *split {
                let w = alpha * delta(m);
                for (j, lam) in (1..).zip(lambda_v) {
                    let w = w.clone();
                    terms.push((lam.clone(), Box::new(move || {
                        v_blend(j, m, &w, &dist::uniform_odd(m)?)
                    })));
                }
                for (j, kap) in (1..).zip(kappa_v) {
                    let w = w.clone();
                    terms.push((kap.clone(), Box::new(move || {
                        v_blend(j, m, &w, &dist::uniform_even(m)?)
                    })));
                }
            } else {
                let w = (int(1) - alpha) * sigma(m);
                for (j, lam) in (1..).zip(lambda_v) {
                    let w = w.clone();
                    terms.push((lam.clone(), Box::new(move || {
                        v_blend(j, m, &w, &dist::uniform_odd(m + 1)?)
                    })));
                }
            }
            Ok((weighted(terms)?, dist::uniform_even(m)?))
        }
        (
            Region::NonIntFar { m, b, alpha, family },
            EqParams::NonIntFar { weight_u, weight_x },
        ) => {
            let m = *m;
            let mut terms: Vec<(Rational, Thunk)> = vec![(weight_u.clone(), Box::new({
                let a = alpha.clone();
                move || odd_pair(m, &a)
            }))];
            for (j, w) in (1..).zip(weight_x) {
                let a = alpha.clone();
                let family = *family;
                terms.push((w.clone(), Box::new(move || far_component(family, j, m, &a))));
            }
            let y = zero_or(b / int(m), &dist::uniform_even(m)?)?;
            Ok((weighted(terms)?, y))
        }
        (Region::SmallGt, EqParams::SmallGt) => Ok((dirac(1), dirac(0))),
        (Region::SmallEq, EqParams::SmallEq { alpha }) => {
            let x = mix(&[(int(1) - alpha, &dirac(0)), (alpha.clone(), &dirac(1))])?;
            Ok((x, dirac(0)))
        }
        (Region::SmallLt, EqParams::SmallLt) => Ok((dirac(0), dirac(0))),
        _ => Err(Error::ParamsCaseMismatch {
            expected: space.case().to_string(),
            got: p.case().to_string(),
        }),
    }
}

/// The `j`-th member of the distorted family available to the stronger
/// player when `v1/2 > floor(v2/2) + 1`.
pub fn far_component(family: XFamily, j: i64, m: i64, alpha: &Rational) -> Result<FiniteDist> {
    match family {
        XFamily::OddBase => v_blend(j, m, &(alpha * delta(m)), &dist::uniform_odd(m)?),
        XFamily::OddShiftBase => v_blend(
            j,
            m,
            &((int(1) - alpha) * sigma(m)),
            &dist::uniform_odd(m + 1)?,
        ),
    }
}

/// Closed-form equilibrium payoffs `(P1, P2)` at a feasible parameter point.
pub fn predicted_payoffs(v: &Valuations, p: &EqParams) -> Result<(Rational, Rational)> {
    let space = param_space(v);
    space.check(p)?;
    Ok(payoffs_unchecked(&space, p))
}

fn payoffs_unchecked(space: &ParamSpace, p: &EqParams) -> (Rational, Rational) {
    let v = &space.valuations;
    let (v1, v2) = (&v.v1, &v.v2);
    let one = Rational::one();
    let zero = Rational::zero();
    match (&space.region, p) {
        (Region::IntSym { .. }, EqParams::IntSym { alpha, beta }) => (&one - beta, &one - alpha),
        (Region::IntV2Eq2 { .. }, EqParams::IntV2Eq2 { b, .. }) => {
            (v1 - b * v1 / int(2) - &one, zero)
        }
        (Region::IntV2Ge4 { .. }, EqParams::IntV2Ge4 { b, .. }) => {
            (v1 - b * v1 / v2 - v2 / int(2), zero)
        }
        (Region::NonIntEqFloor { m, .. }, _) => (v.half_v1() - int(*m), v.half_v2() - int(*m)),
        (Region::NonIntBoundary { .. }, EqParams::NonIntBoundary { alpha, .. }) => {
            (one.clone(), &one - v2 / v1 * alpha - (v1 - v2) / int(2))
        }
        (Region::NonIntFar { .. }, _) => {
            (v1 + &one - int(2 * ceil_i64(&v.half_v2())), zero)
        }
        (Region::SmallGt, _) => (v1 - &one, zero),
        // With Y = δ0 the tie at zero is split, so the weaker player keeps
        // v2/2 whenever player 1 stays at zero.
        (Region::SmallEq, EqParams::SmallEq { alpha }) => (
            (&one + alpha) * v.half_v1() - alpha,
            (&one - alpha) * v.half_v2(),
        ),
        (Region::SmallLt, _) => (v.half_v1(), v.half_v2()),
        _ => unreachable!("parameters were checked against the case"),
    }
}

/// Closed interval of equilibrium payoffs for each player.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PayoffRange {
    pub p1: (Rational, Rational),
    pub p2: (Rational, Rational),
}

impl PayoffRange {
    fn point(p1: Rational, p2: Rational) -> Self {
        Self {
            p1: (p1.clone(), p1),
            p2: (p2.clone(), p2),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.p1.0 == self.p1.1 && self.p2.0 == self.p2.1
    }

    pub fn to_json(&self) -> Value {
        let pair = |(lo, hi): &(Rational, Rational)| json!([rational::format(lo), rational::format(hi)]);
        json!({ "p1": pair(&self.p1), "p2": pair(&self.p2) })
    }
}

/// Payoffs are affine in the single scalar parameter of each family, so the
/// extremes sit at the endpoints of that parameter's interval.
pub fn payoff_range(v: &Valuations) -> PayoffRange {
    let space = param_space(v);
    let at = |p: EqParams| payoffs_unchecked(&space, &p);
    let sorted = |a: Rational, b: Rational| if a <= b { (a, b) } else { (b, a) };
    match &space.region {
        Region::IntSym { .. } => {
            let unit = (Rational::zero(), Rational::one());
            PayoffRange { p1: unit.clone(), p2: unit }
        }
        Region::IntV2Eq2 { b } => {
            let lo = at(EqParams::IntV2Eq2 { b: b.lo.clone(), lambda: Rational::zero() }).0;
            let hi = at(EqParams::IntV2Eq2 { b: b.hi.clone(), lambda: Rational::zero() }).0;
            PayoffRange { p1: sorted(lo, hi), p2: (Rational::zero(), Rational::zero()) }
        }
        Region::IntV2Ge4 { m, b } => {
            let probe = |b: &Rational| {
                at(EqParams::IntV2Ge4 {
                    b: b.clone(),
                    lambda_o: Rational::one(),
                    lambda_e: Rational::zero(),
                    lambda_o_up1: Rational::zero(),
                    lambda_w: vec![Rational::zero(); (*m - 1) as usize],
                })
                .0
            };
            PayoffRange {
                p1: sorted(probe(&b.lo), probe(&b.hi)),
                p2: (Rational::zero(), Rational::zero()),
            }
        }
        Region::NonIntBoundary { m, alpha, .. } => {
            let probe = |a: &Rational| {
                at(EqParams::NonIntBoundary {
                    alpha: a.clone(),
                    lambda_o: Rational::one(),
                    lambda_e: Rational::zero(),
                    lambda_v: vec![Rational::zero(); *m as usize],
                    kappa_v: vec![Rational::zero(); *m as usize],
                })
                .1
            };
            PayoffRange {
                p1: (Rational::one(), Rational::one()),
                p2: sorted(probe(&alpha.lo), probe(&alpha.hi)),
            }
        }
        Region::SmallEq => {
            let lo = at(EqParams::SmallEq { alpha: Rational::zero() });
            let hi = at(EqParams::SmallEq { alpha: Rational::one() });
            PayoffRange { p1: sorted(lo.0, hi.0), p2: sorted(lo.1, hi.1) }
        }
        _ => {
            let (p1, p2) = at(space.canonical());
            PayoffRange::point(p1, p2)
        }
    }
}

/// `floor(v2/2)` and `ceil(v2/2)` as integers.
pub(crate) fn floor_ceil_half(r: &Rational) -> (i64, i64) {
    let h = r / int(2);
    (floor_i64(&h), ceil_i64(&h))
}
