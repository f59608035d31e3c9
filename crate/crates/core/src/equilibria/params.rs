use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use super::{classify, floor_ceil_half, CaseTag, Valuations};
use crate::error::{Error, Result};
use crate::payoff::delta;
use crate::rational::{self, int, rat, Rational};

/// Free parameters of one equilibrium family. Weight vectors are dense:
/// `lambda_w[j - 1]` is the weight on `W_j^m`, `lambda_v[j - 1]` and
/// `kappa_v[j - 1]` the weights on the `V_j^m` blends, `weight_x[j - 1]`
/// the weight on the `j`-th distorted component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EqParams {
    IntSym {
        alpha: Rational,
        beta: Rational,
    },
    IntV2Eq2 {
        b: Rational,
        lambda: Rational,
    },
    IntV2Ge4 {
        b: Rational,
        lambda_o: Rational,
        lambda_e: Rational,
        lambda_o_up1: Rational,
        lambda_w: Vec<Rational>,
    },
    NonIntEqFloor,
    NonIntBoundary {
        alpha: Rational,
        lambda_o: Rational,
        lambda_e: Rational,
        lambda_v: Vec<Rational>,
        kappa_v: Vec<Rational>,
    },
    NonIntFar {
        weight_u: Rational,
        weight_x: Vec<Rational>,
    },
    SmallGt,
    SmallEq {
        alpha: Rational,
    },
    SmallLt,
}

/// Distorted components available to the stronger player in the
/// `NonInt_Far` case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XFamily {
    /// `αδ V_j^m + (1 - αδ) U_O^m`, used when `v2/2 <= ceil(v2/2) - 1/2`.
    OddBase,
    /// `(1-α)σ V_j^m + (1 - (1-α)σ) U_O^{m+1}` otherwise.
    OddShiftBase,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn contains(&self, r: &Rational) -> bool {
        self.lo <= *r && *r <= self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn to_json(&self) -> Value {
        json!([rational::format(&self.lo), rational::format(&self.hi)])
    }
}

/// Case-specific description of the feasible parameter region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Region {
    /// `α, β ∈ [0, 1]`; strategies mix `U_E^m` and `U_O^{m+1}`.
    IntSym { m: i64 },
    /// `b ∈ [0, min(1, 4/v1)]` with a `b`-dependent window for `λ`.
    IntV2Eq2 { b: Interval },
    /// `b` interval plus one linear equality and one floor on `λ_O`.
    IntV2Ge4 { m: i64, b: Interval },
    /// Unique equilibrium; `lambda` and `kappa` are the weights on `U_O^m`.
    NonIntEqFloor { m: i64, lambda: Rational, kappa: Rational },
    /// `α ∈ [0, alpha_max]`, switching component families above `split = 1/δ`.
    NonIntBoundary { m: i64, alpha: Interval, split: Rational },
    /// Fixed `b`, `α`; the stronger player mixes freely over `1 + m` components.
    NonIntFar { m: i64, b: Rational, alpha: Rational, family: XFamily },
    SmallGt,
    /// `α ∈ [0, 1]`.
    SmallEq,
    SmallLt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamSpace {
    pub valuations: Valuations,
    pub region: Region,
}

fn violation(msg: String) -> Error {
    Error::ConstraintViolation(msg)
}

fn in_unit(name: &str, r: &Rational) -> Result<()> {
    if r.is_negative() || *r > Rational::one() {
        Err(violation(format!("{name} = {r} outside [0, 1]")))
    } else {
        Ok(())
    }
}

fn in_interval(name: &str, r: &Rational, i: &Interval) -> Result<()> {
    if i.contains(r) {
        Ok(())
    } else {
        Err(violation(format!("{name} = {r} outside [{}, {}]", i.lo, i.hi)))
    }
}

fn simplex<'a>(named: impl IntoIterator<Item = (String, &'a Rational)>) -> Result<()> {
    let mut total = Rational::zero();
    for (name, w) in named {
        if w.is_negative() {
            return Err(violation(format!("weight {name} = {w} is negative")));
        }
        total += w;
    }
    if !total.is_one() {
        return Err(violation(format!("weights sum to {total}, not 1")));
    }
    Ok(())
}

fn expect_len(name: &str, v: &[Rational], len: i64) -> Result<()> {
    if v.len() as i64 != len {
        return Err(violation(format!(
            "{name} has {} entries, expected {len}",
            v.len()
        )));
    }
    Ok(())
}

fn indexed<'a>(name: &'a str, v: &'a [Rational]) -> impl Iterator<Item = (String, &'a Rational)> + 'a {
    v.iter().enumerate().map(move |(i, w)| (format!("{name}[{}]", i + 1), w))
}

fn zeros(n: i64) -> Vec<Rational> {
    vec![Rational::zero(); n as usize]
}

fn unit(n: i64, at: i64) -> Vec<Rational> {
    let mut v = zeros(n);
    v[at as usize] = Rational::one();
    v
}

impl ParamSpace {
    pub fn new(valuations: Valuations) -> Self {
        let v1 = valuations.v1().clone();
        let v2 = valuations.v2().clone();
        let (h1, h2) = (valuations.half_v1(), valuations.half_v2());
        let (m, c) = floor_ceil_half(&v2);
        let region = match classify(&valuations) {
            CaseTag::IntSym => Region::IntSym { m: m - 1 },
            CaseTag::IntV2Eq2 => Region::IntV2Eq2 {
                b: Interval::new(Rational::zero(), rational::min(&int(1), &(int(4) / &v1))),
            },
            CaseTag::IntV2Ge4 => Region::IntV2Ge4 {
                m,
                b: Interval::new(
                    &v2 * (&v2 - int(2)) / (int(2) * &v1),
                    rational::min(&int(m), &(&v2 * (&v2 + int(2)) / (int(2) * &v1))),
                ),
            },
            CaseTag::NonIntEqFloor => Region::NonIntEqFloor {
                m,
                lambda: int(m) / &h2 * (int(m + 1) - &h2),
                kappa: int(m) / &h1 * (int(m + 1) - &h1),
            },
            CaseTag::NonIntBoundary => Region::NonIntBoundary {
                m,
                alpha: Interval::new(Rational::zero(), boundary_alpha_max(&h2, m, c)),
                split: Rational::one() / delta(m),
            },
            CaseTag::NonIntFar => Region::NonIntFar {
                m,
                b: int(m * c) / &h1,
                alpha: boundary_alpha_max(&h2, m, c),
                family: if h2 <= int(c) - rat(1, 2) {
                    XFamily::OddBase
                } else {
                    XFamily::OddShiftBase
                },
            },
            CaseTag::SmallGt => Region::SmallGt,
            CaseTag::SmallEq => Region::SmallEq,
            CaseTag::SmallLt => Region::SmallLt,
        };
        Self { valuations, region }
    }

    pub fn case(&self) -> CaseTag {
        match self.region {
            Region::IntSym { .. } => CaseTag::IntSym,
            Region::IntV2Eq2 { .. } => CaseTag::IntV2Eq2,
            Region::IntV2Ge4 { .. } => CaseTag::IntV2Ge4,
            Region::NonIntEqFloor { .. } => CaseTag::NonIntEqFloor,
            Region::NonIntBoundary { .. } => CaseTag::NonIntBoundary,
            Region::NonIntFar { .. } => CaseTag::NonIntFar,
            Region::SmallGt => CaseTag::SmallGt,
            Region::SmallEq => CaseTag::SmallEq,
            Region::SmallLt => CaseTag::SmallLt,
        }
    }

    /// Feasible `λ` for a given `b > 0` when `v1 > v2 = 2`.
    pub fn lambda_window(&self, b: &Rational) -> Interval {
        let v1 = self.valuations.v1();
        let four = int(4) / (b * v1);
        Interval {
            lo: rational::max(&Rational::zero(), &(&four - int(2) / b + int(1))),
            hi: rational::min(&Rational::one(), &(four - int(1))),
        }
    }

    /// Right-hand side of `λ_{O↑1}/(m-1) - λ_E/(m+1) = v2²/(2 v1 b) - 1`.
    pub fn equality_rhs(&self, b: &Rational) -> Rational {
        let (v1, v2) = (self.valuations.v1(), self.valuations.v2());
        v2 * v2 / (int(2) * v1 * b) - int(1)
    }

    /// Lower bound on `λ_O` at `b`.
    pub fn lambda_o_floor(&self, b: &Rational) -> Rational {
        let (v1, v2) = (self.valuations.v1(), self.valuations.v2());
        v2 / (int(2) * b) * (v2 * (v2 + int(2)) / (int(2) * v1) + b - v2)
    }

    /// Required value of `λ_E + Σκ_j (1-αδ)/(1-α)` (or of `λ_E` alone above
    /// the split) at `α` in the boundary case.
    pub fn boundary_target(&self, alpha: &Rational) -> Rational {
        let Region::NonIntBoundary { alpha: range, .. } = &self.region else {
            panic!("boundary_target called outside NonInt_Boundary");
        };
        let one = Rational::one();
        (&range.hi - alpha) / (&one - alpha)
    }

    /// Validates `p` against every constraint of the region, naming the first
    /// one that fails.
    pub fn check(&self, p: &EqParams) -> Result<()> {
        match (&self.region, p) {
            (Region::IntSym { .. }, EqParams::IntSym { alpha, beta }) => {
                in_unit("alpha", alpha)?;
                in_unit("beta", beta)
            }
            (Region::IntV2Eq2 { b: range }, EqParams::IntV2Eq2 { b, lambda }) => {
                in_interval("b", b, range)?;
                in_unit("lambda", lambda)?;
                if b.is_positive() {
                    let w = self.lambda_window(b);
                    if !w.contains(lambda) {
                        return Err(violation(format!(
                            "lambda = {lambda} outside [4/(b v1) - 2/b + 1, 4/(b v1) - 1] ∩ [0, 1] = [{}, {}] at b = {b}",
                            w.lo, w.hi
                        )));
                    }
                }
                Ok(())
            }
            (
                Region::IntV2Ge4 { m, b: range },
                EqParams::IntV2Ge4 { b, lambda_o, lambda_e, lambda_o_up1, lambda_w },
            ) => {
                in_interval("b", b, range)?;
                expect_len("lambda_w", lambda_w, m - 1)?;
                simplex(
                    [
                        ("lambda_o".to_string(), lambda_o),
                        ("lambda_e".to_string(), lambda_e),
                        ("lambda_o_up1".to_string(), lambda_o_up1),
                    ]
                    .into_iter()
                    .chain(indexed("lambda_w", lambda_w)),
                )?;
                let lhs = lambda_o_up1 / int(m - 1) - lambda_e / int(m + 1);
                let rhs = self.equality_rhs(b);
                if lhs != rhs {
                    return Err(violation(format!(
                        "lambda_o_up1/(m-1) - lambda_e/(m+1) = {lhs} but v2^2/(2 v1 b) - 1 = {rhs}"
                    )));
                }
                let floor = self.lambda_o_floor(b);
                if *lambda_o < floor {
                    return Err(violation(format!("lambda_o = {lambda_o} below its floor {floor}")));
                }
                Ok(())
            }
            (Region::NonIntEqFloor { .. }, EqParams::NonIntEqFloor) => Ok(()),
            (
                Region::NonIntBoundary { m, alpha: range, split },
                EqParams::NonIntBoundary { alpha, lambda_o, lambda_e, lambda_v, kappa_v },
            ) => {
                in_interval("alpha", alpha, range)?;
                expect_len("lambda_v", lambda_v, *m)?;
                expect_len("kappa_v", kappa_v, *m)?;
                simplex(
                    [("lambda_o".to_string(), lambda_o), ("lambda_e".to_string(), lambda_e)]
                        .into_iter()
                        .chain(indexed("lambda_v", lambda_v))
                        .chain(indexed("kappa_v", kappa_v)),
                )?;
                let target = self.boundary_target(alpha);
                let one = Rational::one();
                if alpha <= split {
                    let kappa: Rational = kappa_v.iter().sum();
                    let lhs = lambda_e + kappa * (&one - alpha * delta(*m)) / (&one - alpha);
                    if lhs != target {
                        return Err(violation(format!(
                            "lambda_e + sum(kappa_v) (1 - alpha delta)/(1 - alpha) = {lhs}, required {target}"
                        )));
                    }
                } else {
                    if let Some((i, k)) = kappa_v.iter().enumerate().find(|(_, k)| !k.is_zero()) {
                        return Err(violation(format!(
                            "kappa_v[{}] = {k} must be 0 when alpha > 1/delta",
                            i + 1
                        )));
                    }
                    if *lambda_e != target {
                        return Err(violation(format!(
                            "lambda_e = {lambda_e}, required {target} when alpha > 1/delta"
                        )));
                    }
                }
                Ok(())
            }
            (Region::NonIntFar { m, .. }, EqParams::NonIntFar { weight_u, weight_x }) => {
                expect_len("weight_x", weight_x, *m)?;
                simplex(std::iter::once(("weight_u".to_string(), weight_u)).chain(indexed("weight_x", weight_x)))
            }
            (Region::SmallGt, EqParams::SmallGt) | (Region::SmallLt, EqParams::SmallLt) => Ok(()),
            (Region::SmallEq, EqParams::SmallEq { alpha }) => in_unit("alpha", alpha),
            _ => Err(Error::ParamsCaseMismatch {
                expected: self.case().to_string(),
                got: p.case().to_string(),
            }),
        }
    }

    /// The deterministic feasible point used when no parameters are given.
    pub fn canonical(&self) -> EqParams {
        let (v1, v2) = (self.valuations.v1(), self.valuations.v2());
        match &self.region {
            Region::IntSym { .. } => EqParams::IntSym { alpha: Rational::zero(), beta: Rational::zero() },
            Region::IntV2Eq2 { .. } => EqParams::IntV2Eq2 {
                b: v2 * v2 / (int(2) * v1),
                lambda: Rational::one(),
            },
            Region::IntV2Ge4 { m, .. } => EqParams::IntV2Ge4 {
                b: v2 * v2 / (int(2) * v1),
                lambda_o: Rational::one(),
                lambda_e: Rational::zero(),
                lambda_o_up1: Rational::zero(),
                lambda_w: zeros(m - 1),
            },
            Region::NonIntEqFloor { .. } => EqParams::NonIntEqFloor,
            Region::NonIntBoundary { m, .. } => {
                let lambda_e = self.boundary_target(&Rational::zero());
                EqParams::NonIntBoundary {
                    alpha: Rational::zero(),
                    lambda_o: Rational::one() - &lambda_e,
                    lambda_e,
                    lambda_v: zeros(*m),
                    kappa_v: zeros(*m),
                }
            }
            Region::NonIntFar { m, .. } => EqParams::NonIntFar {
                weight_u: Rational::one(),
                weight_x: zeros(*m),
            },
            Region::SmallGt => EqParams::SmallGt,
            Region::SmallEq => EqParams::SmallEq { alpha: Rational::one() },
            Region::SmallLt => EqParams::SmallLt,
        }
    }

    /// Vertices of the region (per scalar parameter value) plus interior
    /// midpoints; every returned point is feasible.
    pub fn sample_points(&self) -> Vec<EqParams> {
        let mut out = match &self.region {
            Region::IntSym { .. } => {
                let h = rat(1, 2);
                [(0, 0), (0, 2), (2, 0), (2, 2), (1, 1)]
                    .into_iter()
                    .map(|(a, b)| EqParams::IntSym { alpha: &h * int(a), beta: &h * int(b) })
                    .collect()
            }
            Region::IntV2Eq2 { b: range } => {
                let mut pts = Vec::new();
                for b in [range.lo.clone(), range.midpoint(), self.canonical_b(), range.hi.clone()] {
                    let w = if b.is_zero() {
                        Interval::new(Rational::zero(), Rational::one())
                    } else {
                        self.lambda_window(&b)
                    };
                    for lambda in [w.lo.clone(), w.midpoint(), w.hi.clone()] {
                        pts.push(EqParams::IntV2Eq2 { b: b.clone(), lambda });
                    }
                }
                pts
            }
            Region::IntV2Ge4 { m, b: range } => self.ge4_samples(*m, range),
            Region::NonIntBoundary { m, alpha, split } => self.boundary_samples(*m, alpha, split),
            Region::NonIntFar { m, .. } => {
                let mut pts = vec![self.canonical()];
                for j in 0..*m {
                    pts.push(EqParams::NonIntFar { weight_u: Rational::zero(), weight_x: unit(*m, j) });
                    for q in [rat(1, 4), rat(3, 4)] {
                        let weight_x = unit(*m, j).into_iter().map(|w| w * &q).collect();
                        pts.push(EqParams::NonIntFar { weight_u: Rational::one() - &q, weight_x });
                    }
                }
                let share = rat(1, m + 1);
                pts.push(EqParams::NonIntFar { weight_u: share.clone(), weight_x: vec![share; *m as usize] });
                pts
            }
            Region::SmallEq => [rat(0, 1), rat(1, 2), rat(1, 1)]
                .into_iter()
                .map(|alpha| EqParams::SmallEq { alpha })
                .collect(),
            _ => vec![self.canonical()],
        };
        out.dedup();
        for p in &out {
            debug_assert!(self.check(p).is_ok(), "sample point {p:?} infeasible: {:?}", self.check(p));
        }
        out
    }

    fn canonical_b(&self) -> Rational {
        let (v1, v2) = (self.valuations.v1(), self.valuations.v2());
        v2 * v2 / (int(2) * v1)
    }

    /// Cheapest point at `b`: only the component needed by the equality
    /// constraint, everything else on `U_O^m`.
    fn ge4_minimal(&self, m: i64, b: &Rational) -> EqParams {
        let r = self.equality_rhs(b);
        let (up1, e) = if r.is_negative() {
            (Rational::zero(), -&r * int(m + 1))
        } else {
            (&r * int(m - 1), Rational::zero())
        };
        EqParams::IntV2Ge4 {
            b: b.clone(),
            lambda_o: Rational::one() - &up1 - &e,
            lambda_e: e,
            lambda_o_up1: up1,
            lambda_w: zeros(m - 1),
        }
    }

    fn ge4_samples(&self, m: i64, range: &Interval) -> Vec<EqParams> {
        let b0 = self.canonical_b();
        let mut pts = vec![
            self.ge4_minimal(m, &range.lo),
            self.ge4_minimal(m, &range.hi),
            self.ge4_minimal(m, &b0),
            self.ge4_minimal(m, &range.midpoint()),
            self.ge4_minimal(m, &((&range.lo + &b0) / int(2))),
        ];
        // at b0 the equality has zero right-hand side: shift the slack above
        // the floor onto W_1, W_{m-1}, or a balanced E / O↑1 pair
        let floor = rational::max(&Rational::zero(), &self.lambda_o_floor(&b0));
        let slack = Rational::one() - &floor;
        for j in [0, m - 2] {
            let mut w = zeros(m - 1);
            w[j as usize] = slack.clone();
            pts.push(EqParams::IntV2Ge4 {
                b: b0.clone(),
                lambda_o: floor.clone(),
                lambda_e: Rational::zero(),
                lambda_o_up1: Rational::zero(),
                lambda_w: w,
            });
        }
        let t = &slack / int(2 * m);
        pts.push(EqParams::IntV2Ge4 {
            b: b0,
            lambda_o: floor,
            lambda_e: &t * int(m + 1),
            lambda_o_up1: &t * int(m - 1),
            lambda_w: zeros(m - 1),
        });
        pts.dedup();
        pts
    }

    fn boundary_samples(&self, m: i64, range: &Interval, split: &Rational) -> Vec<EqParams> {
        let first_hi = rational::min(split, &range.hi);
        let mut alphas = vec![range.lo.clone(), (&range.lo + &first_hi) / int(2), first_hi.clone()];
        if range.hi > *split {
            alphas.push((split + &range.hi) / int(2));
            alphas.push(range.hi.clone());
        }
        let one = Rational::one();
        let mut pts = Vec::new();
        for alpha in alphas {
            let target = self.boundary_target(&alpha);
            let rest = &one - &target;
            let base = |lambda_o: Rational, lambda_e: Rational, lambda_v: Vec<Rational>, kappa_v: Vec<Rational>| {
                EqParams::NonIntBoundary { alpha: alpha.clone(), lambda_o, lambda_e, lambda_v, kappa_v }
            };
            pts.push(base(rest.clone(), target.clone(), zeros(m), zeros(m)));
            let mut lv = zeros(m);
            lv[(m - 1) as usize] = rest.clone();
            pts.push(base(Rational::zero(), target.clone(), lv, zeros(m)));
            if alpha <= *split {
                let coef = (&one - &alpha * delta(m)) / (&one - &alpha);
                if coef.is_positive() && target <= coef {
                    let mut kv = zeros(m);
                    kv[0] = &target / &coef;
                    pts.push(base(&one - &kv[0], Rational::zero(), zeros(m), kv));
                }
            }
        }
        pts
    }

    pub fn to_json(&self) -> Value {
        let case = self.case().as_str();
        let body = match &self.region {
            Region::IntSym { m } => json!({ "m": m, "alpha": [ "0", "1" ], "beta": [ "0", "1" ] }),
            Region::IntV2Eq2 { b } => json!({
                "b": b.to_json(),
                "lambda": "[max(0, 4/(b v1) - 2/b + 1), min(1, 4/(b v1) - 1)]; any value in [0, 1] at b = 0",
            }),
            Region::IntV2Ge4 { m, b } => json!({
                "m": m,
                "b": b.to_json(),
                "simplex": ["lambda_o", "lambda_e", "lambda_o_up1", "lambda_w[1..m-1]"],
                "equality": "lambda_o_up1/(m-1) - lambda_e/(m+1) = v2^2/(2 v1 b) - 1",
                "floor": "lambda_o >= (v2/(2b)) (v2(v2+2)/(2 v1) + b - v2)",
            }),
            Region::NonIntEqFloor { m, lambda, kappa } => json!({
                "m": m,
                "x_weight_on_uniform_odd": rational::format(lambda),
                "y_weight_on_uniform_odd": rational::format(kappa),
            }),
            Region::NonIntBoundary { m, alpha, split } => json!({
                "m": m,
                "alpha": alpha.to_json(),
                "alpha_split": rational::format(split),
                "simplex": ["lambda_o", "lambda_e", "lambda_v[1..m]", "kappa_v[1..m]"],
                "equality": "lambda_e + sum(kappa_v) (1 - alpha delta)/(1 - alpha) = (alpha_max - alpha)/(1 - alpha); kappa_v = 0 above the split",
            }),
            Region::NonIntFar { m, b, alpha, family } => json!({
                "m": m,
                "b": rational::format(b),
                "alpha": rational::format(alpha),
                "family": match family { XFamily::OddBase => "odd_base", XFamily::OddShiftBase => "odd_shift_base" },
                "simplex": ["weight_u", "weight_x[1..m]"],
            }),
            Region::SmallEq => json!({ "alpha": ["0", "1"] }),
            Region::SmallGt | Region::SmallLt => json!({}),
        };
        json!({ "case": case, "region": body })
    }
}

/// `ceil(v2/2) (v2/2 - floor(v2/2)) / (v2/2)`.
fn boundary_alpha_max(h2: &Rational, m: i64, c: i64) -> Rational {
    int(c) * (h2 - int(m)) / h2
}

fn rat_json(r: &Rational) -> Value {
    Value::from(rational::format(r))
}

fn vec_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rat_json).collect())
}

fn field(obj: &Map<String, Value>, key: &str) -> Result<Rational> {
    match obj.get(key) {
        Some(Value::String(s)) => rational::parse(s),
        Some(Value::Number(n)) if n.is_i64() => Ok(int(n.as_i64().unwrap())),
        _ => Err(Error::Parse { what: "parameter", input: key.to_string() }),
    }
}

fn vec_field(obj: &Map<String, Value>, key: &str) -> Result<Vec<Rational>> {
    let err = || Error::Parse { what: "parameter vector", input: key.to_string() };
    obj.get(key)
        .and_then(Value::as_array)
        .ok_or_else(err)?
        .iter()
        .map(|v| match v {
            Value::String(s) => rational::parse(s),
            Value::Number(n) if n.is_i64() => Ok(int(n.as_i64().unwrap())),
            _ => Err(err()),
        })
        .collect()
}

impl EqParams {
    pub fn case(&self) -> CaseTag {
        match self {
            EqParams::IntSym { .. } => CaseTag::IntSym,
            EqParams::IntV2Eq2 { .. } => CaseTag::IntV2Eq2,
            EqParams::IntV2Ge4 { .. } => CaseTag::IntV2Ge4,
            EqParams::NonIntEqFloor => CaseTag::NonIntEqFloor,
            EqParams::NonIntBoundary { .. } => CaseTag::NonIntBoundary,
            EqParams::NonIntFar { .. } => CaseTag::NonIntFar,
            EqParams::SmallGt => CaseTag::SmallGt,
            EqParams::SmallEq { .. } => CaseTag::SmallEq,
            EqParams::SmallLt => CaseTag::SmallLt,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            EqParams::IntSym { alpha, beta } => json!({ "alpha": rat_json(alpha), "beta": rat_json(beta) }),
            EqParams::IntV2Eq2 { b, lambda } => json!({ "b": rat_json(b), "lambda": rat_json(lambda) }),
            EqParams::IntV2Ge4 { b, lambda_o, lambda_e, lambda_o_up1, lambda_w } => json!({
                "b": rat_json(b),
                "lambda_o": rat_json(lambda_o),
                "lambda_e": rat_json(lambda_e),
                "lambda_o_up1": rat_json(lambda_o_up1),
                "lambda_w": vec_json(lambda_w),
            }),
            EqParams::NonIntBoundary { alpha, lambda_o, lambda_e, lambda_v, kappa_v } => json!({
                "alpha": rat_json(alpha),
                "lambda_o": rat_json(lambda_o),
                "lambda_e": rat_json(lambda_e),
                "lambda_v": vec_json(lambda_v),
                "kappa_v": vec_json(kappa_v),
            }),
            EqParams::NonIntFar { weight_u, weight_x } => json!({
                "weight_u": rat_json(weight_u),
                "weight_x": vec_json(weight_x),
            }),
            EqParams::SmallEq { alpha } => json!({ "alpha": rat_json(alpha) }),
            EqParams::NonIntEqFloor | EqParams::SmallGt | EqParams::SmallLt => json!({}),
        }
    }

    /// Reads the parameter object of the given case, in the shape produced by
    /// [`EqParams::to_json`].
    pub fn from_json(case: CaseTag, value: &Value) -> Result<Self> {
        let empty = Map::new();
        let obj = match value {
            Value::Object(o) => o,
            Value::Null => &empty,
            _ => return Err(Error::Parse { what: "parameter object", input: value.to_string() }),
        };
        Ok(match case {
            CaseTag::IntSym => EqParams::IntSym { alpha: field(obj, "alpha")?, beta: field(obj, "beta")? },
            CaseTag::IntV2Eq2 => EqParams::IntV2Eq2 { b: field(obj, "b")?, lambda: field(obj, "lambda")? },
            CaseTag::IntV2Ge4 => EqParams::IntV2Ge4 {
                b: field(obj, "b")?,
                lambda_o: field(obj, "lambda_o")?,
                lambda_e: field(obj, "lambda_e")?,
                lambda_o_up1: field(obj, "lambda_o_up1")?,
                lambda_w: vec_field(obj, "lambda_w")?,
            },
            CaseTag::NonIntEqFloor => EqParams::NonIntEqFloor,
            CaseTag::NonIntBoundary => EqParams::NonIntBoundary {
                alpha: field(obj, "alpha")?,
                lambda_o: field(obj, "lambda_o")?,
                lambda_e: field(obj, "lambda_e")?,
                lambda_v: vec_field(obj, "lambda_v")?,
                kappa_v: vec_field(obj, "kappa_v")?,
            },
            CaseTag::NonIntFar => EqParams::NonIntFar {
                weight_u: field(obj, "weight_u")?,
                weight_x: vec_field(obj, "weight_x")?,
            },
            CaseTag::SmallGt => EqParams::SmallGt,
            CaseTag::SmallEq => EqParams::SmallEq { alpha: field(obj, "alpha")? },
            CaseTag::SmallLt => EqParams::SmallLt,
        })
    }
}
