//! Discrete norms on F_p(t), matrix length functions and the induced
//! left-invariant pseudometric.
//!
//! Every norm is written multiplicatively as gamma(x) = e^{-v(x)} for a
//! discrete valuation v, so all lengths are exact nonnegative integers
//! ("valuation units") and no floating point appears anywhere.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, GroupElement, Poly, RatFunc};
use crate::dist::Dist;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormError {
    #[error("finite place must be a nonconstant irreducible polynomial, got {0}")]
    NotIrreducible(String),
    #[error("norm profile must be nonempty")]
    EmptyProfile,
    #[error("duplicate norm in profile: {0}")]
    DuplicateNorm(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A discrete norm descriptor. All three kinds satisfy the discrete-norm
/// axioms by construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NormSpec {
    /// Valuation at t: multiplicity of t.
    TAdic,
    /// Valuation at infinity: v = deg(den) - deg(num).
    Degree,
    /// Valuation at a finite place given by a monic irreducible polynomial.
    FinitePlace(Poly),
}

impl NormSpec {
    /// Validates and canonicalizes (monic) a finite place.
    pub fn finite_place(pi: Poly) -> Result<NormSpec, NormError> {
        let pi = pi.monic();
        if pi.degree().map(|d| d >= 1).unwrap_or(false) && pi.is_irreducible() {
            Ok(NormSpec::FinitePlace(pi))
        } else {
            Err(NormError::NotIrreducible(pi.to_string()))
        }
    }

    /// The uniformizer: a generator of the maximal ideal of the ring of
    /// integers of this norm.
    pub fn uniformizer(&self, field: crate::algebra::PrimeField) -> RatFunc {
        match self {
            NormSpec::TAdic => RatFunc::t(field),
            NormSpec::Degree => RatFunc::t(field).inverse().expect("t nonzero"),
            NormSpec::FinitePlace(pi) => RatFunc::from_poly(pi.clone()),
        }
    }
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormSpec::TAdic => write!(f, "t_adic"),
            NormSpec::Degree => write!(f, "degree"),
            NormSpec::FinitePlace(pi) => write!(f, "finite_place({pi})"),
        }
    }
}

/// A valuation value: an integer or +infinity (for 0). The derived
/// ordering puts every finite value below Infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Val {
    Finite(i64),
    Infinite,
}

impl Val {
    pub fn finite(self) -> Option<i64> {
        match self {
            Val::Finite(v) => Some(v),
            Val::Infinite => None,
        }
    }

    fn add(self, rhs: Val) -> Val {
        match (self, rhs) {
            (Val::Finite(a), Val::Finite(b)) => Val::Finite(a + b),
            _ => Val::Infinite,
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Finite(v) => write!(f, "{v}"),
            Val::Infinite => write!(f, "+inf"),
        }
    }
}

/// The valuation of x under the given norm; v(0) = +infinity.
pub fn valuation(x: &RatFunc, spec: &NormSpec) -> Val {
    if x.is_zero() {
        return Val::Infinite;
    }
    match spec {
        NormSpec::TAdic => {
            let vn = x.num().t_multiplicity().expect("num nonzero") as i64;
            let vd = x.den().t_multiplicity().expect("den nonzero") as i64;
            Val::Finite(vn - vd)
        }
        NormSpec::Degree => {
            let dn = x.num().degree().expect("num nonzero") as i64;
            let dd = x.den().degree().expect("den nonzero") as i64;
            Val::Finite(dd - dn)
        }
        NormSpec::FinitePlace(pi) => {
            let vn = x.num().multiplicity_of(pi).expect("num nonzero") as i64;
            let vd = x.den().multiplicity_of(pi).expect("den nonzero") as i64;
            Val::Finite(vn - vd)
        }
    }
}

/// True when x lies in the ring of integers of the norm, gamma(x) <= 1.
pub fn is_integral(x: &RatFunc, spec: &NormSpec) -> bool {
    valuation(x, spec) >= Val::Finite(0)
}

/// Outcome of checking the valuation axioms on sample pairs:
/// v(xy) = v(x) + v(y) and v(x+y) >= min(v(x), v(y)).
#[derive(Clone, Debug, Serialize)]
pub struct NormAxiomReport {
    pub pairs_checked: usize,
    pub violation: Option<NormAxiomViolation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NormAxiomViolation {
    pub axiom: &'static str,
    pub x: String,
    pub y: String,
    pub detail: String,
}

impl NormAxiomReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Verifies multiplicativity and the ultrametric inequality on all
/// sampled pairs; the first violation is reported, not raised.
pub fn norm_axiom_check(spec: &NormSpec, samples: &[(RatFunc, RatFunc)]) -> NormAxiomReport {
    let mut checked = 0;
    for (x, y) in samples {
        checked += 1;
        let vx = valuation(x, spec);
        let vy = valuation(y, spec);
        let vxy = valuation(&x.mul(y), spec);
        if vxy != vx.add(vy) {
            return NormAxiomReport {
                pairs_checked: checked,
                violation: Some(NormAxiomViolation {
                    axiom: "multiplicativity",
                    x: x.to_string(),
                    y: y.to_string(),
                    detail: format!("v(xy)={vxy} but v(x)+v(y)={}", vx.add(vy)),
                }),
            };
        }
        let vsum = valuation(&x.add(y), spec);
        let lower = vx.min(vy);
        if vsum < lower {
            return NormAxiomReport {
                pairs_checked: checked,
                violation: Some(NormAxiomViolation {
                    axiom: "ultrametric",
                    x: x.to_string(),
                    y: y.to_string(),
                    detail: format!("v(x+y)={vsum} < min(v(x),v(y))={lower}"),
                }),
            };
        }
    }
    NormAxiomReport {
        pairs_checked: checked,
        violation: None,
    }
}

/// A finite list of discrete norms defining a sum length function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricProfile {
    norms: Vec<NormSpec>,
    /// Whether finite-ball properness has been certified empirically for
    /// the acting ring (see `ball_finiteness_probe`).
    pub properness_certified: bool,
}

impl MetricProfile {
    pub fn new(norms: Vec<NormSpec>) -> Result<MetricProfile, NormError> {
        if norms.is_empty() {
            return Err(NormError::EmptyProfile);
        }
        let mut seen = HashSet::new();
        for n in &norms {
            if !seen.insert(n.clone()) {
                return Err(NormError::DuplicateNorm(n.to_string()));
            }
        }
        Ok(MetricProfile {
            norms,
            properness_certified: false,
        })
    }

    pub fn single(norm: NormSpec) -> MetricProfile {
        MetricProfile {
            norms: vec![norm],
            properness_certified: false,
        }
    }

    pub fn norms(&self) -> &[NormSpec] {
        &self.norms
    }
}

/// An integer-vector length, one coordinate per norm in the profile.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LengthValue {
    pub units: Vec<u64>,
}

impl LengthValue {
    /// Scalar length: the coordinate sum (the sum length function).
    pub fn scalar(&self) -> u64 {
        self.units.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.units.iter().all(|&u| u == 0)
    }
}

/// Length coordinate of g under a single norm, in valuation units:
/// max over all entries of g and g^{-1} of (-v(entry)).
///
/// The coordinate is nonnegative for every invertible g: expanding
/// g g^{-1} = I along the diagonal forces some product of entries to
/// have valuation <= 0.
pub fn length_coord(g: &GroupElement, spec: &NormSpec) -> u64 {
    let mut best: Option<i64> = None;
    for e in g.mat().entries().iter().chain(g.inv_mat().entries()) {
        if let Val::Finite(v) = valuation(e, spec) {
            let cand = -v;
            best = Some(best.map_or(cand, |b| b.max(cand)));
        }
    }
    let best = best.expect("an invertible matrix has a nonzero entry");
    debug_assert!(best >= 0, "length coordinate must be nonnegative");
    best.max(0) as u64
}

/// Vector length of g under the profile; the identity maps to zero.
pub fn length(g: &GroupElement, profile: &MetricProfile) -> LengthValue {
    LengthValue {
        units: profile.norms().iter().map(|s| length_coord(g, s)).collect(),
    }
}

/// Left-invariant pseudometric d(g,h) = l(g^{-1} h), as a scalar.
pub fn pseudometric(
    g: &GroupElement,
    h: &GroupElement,
    profile: &MetricProfile,
) -> Result<u64, AlgebraError> {
    let diff = g.inverse().mul(h)?;
    Ok(length(&diff, profile).scalar())
}

/// Converts a pseudometric value to a metric value: off-diagonal zeros
/// are bumped to 1, everything else is unchanged.
pub fn metricize(d: Dist, distinct_points: bool) -> Dist {
    if distinct_points {
        d.max(Dist::Fin(1))
    } else {
        d
    }
}

/// Result of the finite-ball enumeration probe.
#[derive(Clone, Debug, Serialize)]
pub enum BallProbe {
    /// The closure saturated: the bounded set has exactly this size.
    Finite { size: usize },
    /// The bounded set kept growing past the element budget.
    BudgetExceeded { explored: usize },
}

/// Enumerates the subring generated by `gens` (with 0 and 1) under + and *,
/// keeping only elements within the norm bound gamma <= e^k (that is,
/// v >= -k) for every norm of the profile. Elements outside the bound are
/// not expanded. Saturation is its own oracle: if no new in-bound element
/// appears, the in-bound closure is exactly the reported set.
pub fn ball_finiteness_probe(
    profile: &MetricProfile,
    gens: &[RatFunc],
    k: i64,
    budget: usize,
) -> BallProbe {
    assert!(budget > 0, "budget must be positive");
    let field = gens
        .first()
        .map(|g| g.field())
        .unwrap_or_else(|| crate::algebra::PrimeField::new(2).unwrap());
    let in_ball = |x: &RatFunc| {
        profile
            .norms()
            .iter()
            .all(|s| valuation(x, s) >= Val::Finite(-k))
    };
    let mut set: HashSet<RatFunc> = HashSet::new();
    let mut frontier: Vec<RatFunc> = Vec::new();
    for seed in [RatFunc::zero(field), RatFunc::one(field)]
        .iter()
        .chain(gens.iter())
    {
        if in_ball(seed) && set.insert(seed.clone()) {
            frontier.push(seed.clone());
        }
    }
    if set.len() > budget {
        return BallProbe::BudgetExceeded { explored: set.len() };
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        let known: Vec<RatFunc> = set.iter().cloned().collect();
        for a in &frontier {
            for b in &known {
                for cand in [a.add(b), a.mul(b)] {
                    if in_ball(&cand) && set.insert(cand.clone()) {
                        next.push(cand);
                        if set.len() > budget {
                            return BallProbe::BudgetExceeded { explored: set.len() };
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    BallProbe::Finite { size: set.len() }
}
