//! Bound calculus for stable commutator length and the stabilisation
//! height lower bound it yields.
//!
//! Every bound is an exact rational carried inside a [`Derivation`] that
//! names the inequality used and its premises, so any stored result can be
//! recomputed with [`Derivation::replay`].
//!
//! Rules:
//!
//! * `KORKMAZ`: `scl(T_c) >= 1/(18g - 6)` for an essential curve on a closed
//!   surface of genus `g >= 3`.
//! * `PRODUCT`: `scl(gh) >= scl(g) + scl(h) - 1`.
//! * `POWER`: `scl(g^n) = |n| scl(g)`.
//! * `CHAIN`: iterated `PRODUCT` over `T_k ... T_1 φ_0 T_c^n`.
//! * `CAP`: capping boundary components by discs does not increase scl.
//! * `MODEL`: an upper bound `C(b1)` on the scl of a monodromy that is a
//!   product of `b1` twists, supplied by a [`CBoundModel`].

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BoundKind {
    Lower,
    Upper,
}

impl BoundKind {
    fn name(self) -> &'static str {
        match self {
            BoundKind::Lower => "LOWER",
            BoundKind::Upper => "UPPER",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RationalBound {
    #[serde(serialize_with = "rational::serialize")]
    value: BigRational,
    kind: BoundKind,
    subject: String,
}

impl RationalBound {
    /// Lower bound on an scl value; negative values clamp to zero.
    pub fn lower(value: BigRational, subject: impl Into<String>) -> Self {
        Self {
            value: clamp(value),
            kind: BoundKind::Lower,
            subject: subject.into(),
        }
    }

    pub fn upper(value: BigRational, subject: impl Into<String>) -> Self {
        Self {
            value,
            kind: BoundKind::Upper,
            subject: subject.into(),
        }
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn kind(&self) -> BoundKind {
        self.kind
    }

    pub fn subject(&self) -> &str {
        &self.subject
    }

    fn expect_lower(&self) -> Result<()> {
        match self.kind {
            BoundKind::Lower => Ok(()),
            other => Err(Error::KindMismatch {
                expected: "LOWER",
                found: other.name(),
            }),
        }
    }
}

impl fmt::Display for RationalBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.kind {
            BoundKind::Lower => ">=",
            BoundKind::Upper => "<=",
        };
        write!(f, "{} {} {}", self.subject, rel, rational::format_rational(&self.value))
    }
}

fn clamp(x: BigRational) -> BigRational {
    if x.is_negative() {
        BigRational::zero()
    } else {
        x
    }
}

fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Rule {
    Korkmaz,
    Product,
    Power,
    Chain,
    Cap,
    Model,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Korkmaz => "KORKMAZ",
            Rule::Product => "PRODUCT",
            Rule::Power => "POWER",
            Rule::Chain => "CHAIN",
            Rule::Cap => "CAP",
            Rule::Model => "MODEL",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Premise {
    Derived(Box<Derivation>),
    Bound(RationalBound),
    Integer(i64),
    Rational(#[serde(serialize_with = "rational::serialize")] BigRational),
}

impl Premise {
    fn value(&self) -> BigRational {
        match self {
            Premise::Derived(d) => d.result.value.clone(),
            Premise::Bound(b) => b.value.clone(),
            Premise::Integer(n) => int(*n),
            Premise::Rational(q) => q.clone(),
        }
    }

    fn bound(&self) -> Option<&RationalBound> {
        match self {
            Premise::Derived(d) => Some(&d.result),
            Premise::Bound(b) => Some(b),
            _ => None,
        }
    }

    fn replay(&self) -> Result<()> {
        match self {
            Premise::Derived(d) => d.replay(),
            _ => Ok(()),
        }
    }
}

impl From<Derivation> for Premise {
    fn from(d: Derivation) -> Self {
        Premise::Derived(Box::new(d))
    }
}

impl From<RationalBound> for Premise {
    fn from(b: RationalBound) -> Self {
        Premise::Bound(b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Derivation {
    rule: Rule,
    inputs: Vec<Premise>,
    result: RationalBound,
}

impl Derivation {
    pub fn rule(&self) -> Rule {
        self.rule
    }

    pub fn inputs(&self) -> &[Premise] {
        &self.inputs
    }

    pub fn result(&self) -> &RationalBound {
        &self.result
    }

    /// Number of derivation nodes in the tree.
    pub fn size(&self) -> usize {
        1 + self
            .inputs
            .iter()
            .map(|p| match p {
                Premise::Derived(d) => d.size(),
                _ => 0,
            })
            .sum::<usize>()
    }

    /// Recompute every node from its premises and compare exactly.
    pub fn replay(&self) -> Result<()> {
        for p in &self.inputs {
            p.replay()?;
        }
        let fail = |reason: String| Error::Replay {
            rule: self.rule.name(),
            reason,
        };
        let expected = match self.rule {
            Rule::Korkmaz => {
                let [Premise::Integer(g)] = self.inputs.as_slice() else {
                    return Err(fail("expected a single genus".into()));
                };
                korkmaz_value(*g)?
            }
            Rule::Product => {
                let [l, r] = self.inputs.as_slice() else {
                    return Err(fail("expected two premises".into()));
                };
                for p in [l, r] {
                    let b = p.bound().ok_or_else(|| fail("premise is not a bound".into()))?;
                    b.expect_lower()?;
                }
                clamp(l.value() + r.value() - int(1))
            }
            Rule::Power => {
                let [l, Premise::Integer(n)] = self.inputs.as_slice() else {
                    return Err(fail("expected a bound and an exponent".into()));
                };
                l.bound()
                    .ok_or_else(|| fail("premise is not a bound".into()))?
                    .expect_lower()?;
                int(n.unsigned_abs()) * l.value()
            }
            Rule::Chain => self.replay_chain().map_err(fail)?,
            Rule::Cap => {
                let [inner] = self.inputs.as_slice() else {
                    return Err(fail("expected one premise".into()));
                };
                inner
                    .bound()
                    .ok_or_else(|| fail("premise is not a bound".into()))?
                    .expect_lower()?;
                inner.value()
            }
            Rule::Model => {
                let [Premise::Rational(alpha), Premise::Rational(beta), Premise::Integer(m)] =
                    self.inputs.as_slice()
                else {
                    return Err(fail("expected alpha, beta and b1".into()));
                };
                alpha * int(*m) + beta
            }
        };
        let expected_kind = match self.rule {
            Rule::Model => BoundKind::Upper,
            _ => BoundKind::Lower,
        };
        if self.result.kind != expected_kind {
            return Err(fail(format!("result kind {}", self.result.kind.name())));
        }
        if self.result.value != expected {
            return Err(fail(format!(
                "stored {} but premises give {}",
                rational::format_rational(&self.result.value),
                rational::format_rational(&expected)
            )));
        }
        Ok(())
    }

    /// Layout: `[k, T_1..T_k, φ_0, POWER, PRODUCT x (k+1)]`. The products
    /// fold `T_c^n` with `φ_0` and then each `T_i`.
    fn replay_chain(&self) -> std::result::Result<BigRational, String> {
        let Some(Premise::Integer(k)) = self.inputs.first() else {
            return Err("missing term count".into());
        };
        let k = usize::try_from(*k).map_err(|_| "negative term count".to_string())?;
        if self.inputs.len() != 1 + (k + 2) + (k + 1) {
            return Err(format!("expected {} premises", 2 * k + 4));
        }
        let twists = &self.inputs[1..=k];
        let phi0 = &self.inputs[k + 1];
        let power = match &self.inputs[k + 2] {
            Premise::Derived(d) if d.rule == Rule::Power => d,
            _ => return Err("missing POWER premise".into()),
        };
        let steps = &self.inputs[k + 3..];

        let mut terms = vec![phi0];
        terms.extend(twists);
        let mut acc = power.result.value.clone();
        for (step, term) in steps.iter().zip(&terms) {
            let Premise::Derived(step) = step else {
                return Err("step is not a derivation".into());
            };
            if step.rule != Rule::Product {
                return Err("step is not a PRODUCT".into());
            }
            let [lhs, rhs] = step.inputs.as_slice() else {
                return Err("malformed PRODUCT step".into());
            };
            if lhs.value() != acc || rhs.value() != term.value() {
                return Err("PRODUCT step does not follow the chain".into());
            }
            acc = step.result.value.clone();
        }

        let mut sum = power.result.value.clone();
        for t in &terms {
            let b = t.bound().ok_or("term is not a bound")?;
            if b.kind != BoundKind::Lower {
                return Err("term is not a LOWER bound".into());
            }
            sum += t.value();
        }
        let value = clamp(sum - int(k as i64 + 1));
        // The stepwise fold clamps at every stage, so it can only be larger.
        if acc < value {
            return Err("stepwise fold is weaker than the closed form".into());
        }
        Ok(value)
    }
}

fn korkmaz_value(g: i64) -> Result<BigRational> {
    if g < 3 {
        return Err(Error::GenusTooSmall(g));
    }
    Ok(BigRational::new(1.into(), BigInt::from(g) * 18 - 6))
}

/// `scl(T_c) >= 1/(18g - 6)` on a closed surface of genus `g >= 3`.
pub fn korkmaz_lower(g: i64) -> Result<RationalBound> {
    Ok(RationalBound::lower(
        korkmaz_value(g)?,
        format!("scl(T_c), closed genus {g}"),
    ))
}

pub fn korkmaz_derivation(g: i64) -> Result<Derivation> {
    Ok(Derivation {
        rule: Rule::Korkmaz,
        inputs: vec![Premise::Integer(g)],
        result: korkmaz_lower(g)?,
    })
}

/// `scl(gh) >= scl(g) + scl(h) - 1`, clamped at zero.
pub fn product_rule(l1: &RationalBound, l2: &RationalBound) -> Result<RationalBound> {
    Ok(product_derivation(l1.clone().into(), l2.clone().into())?.result)
}

fn product_derivation(l: Premise, r: Premise) -> Result<Derivation> {
    for p in [&l, &r] {
        if let Some(b) = p.bound() {
            b.expect_lower()?;
        }
    }
    let subject = format!(
        "scl(({}) * ({}))",
        l.bound().map_or("?", |b| b.subject()),
        r.bound().map_or("?", |b| b.subject())
    );
    let result = RationalBound::lower(l.value() + r.value() - int(1), subject);
    Ok(Derivation {
        rule: Rule::Product,
        inputs: vec![l, r],
        result,
    })
}

/// `scl(g^n) = |n| scl(g)`.
pub fn power_rule(l: &RationalBound, n: i64) -> Result<RationalBound> {
    Ok(power_derivation(l.clone().into(), n)?.result)
}

fn power_derivation(l: Premise, n: i64) -> Result<Derivation> {
    let b = l.bound().ok_or(Error::KindMismatch {
        expected: "LOWER",
        found: "scalar",
    })?;
    b.expect_lower()?;
    let subject = format!("scl(({})^{n})", b.subject());
    let result = RationalBound::lower(int(n.unsigned_abs()) * l.value(), subject);
    Ok(Derivation {
        rule: Rule::Power,
        inputs: vec![l, Premise::Integer(n)],
        result,
    })
}

/// Lower bound on `scl(T_k ... T_1 φ_0 T_c^n)`:
/// `max(Σ scl(T_i) + scl(φ_0) + |n| scl(T_c) - (k + 1), 0)`.
pub fn chain_lower(
    twist_lowers: &[RationalBound],
    phi0_lower: &RationalBound,
    tc_lower: &RationalBound,
    n: i64,
) -> Result<Derivation> {
    chain_derivation(
        twist_lowers.iter().cloned().map(Premise::from).collect(),
        phi0_lower.clone().into(),
        tc_lower.clone().into(),
        n,
    )
}

/// [`chain_lower`] over arbitrary premises, e.g. a `KORKMAZ` derivation
/// for `scl(T_c)`.
pub fn chain_derivation(
    twists: Vec<Premise>,
    phi0: Premise,
    tc: Premise,
    n: i64,
) -> Result<Derivation> {
    for p in twists.iter().chain([&phi0, &tc]) {
        p.bound()
            .ok_or(Error::KindMismatch {
                expected: "LOWER",
                found: "scalar",
            })?
            .expect_lower()?;
    }
    let k = twists.len();
    let power = power_derivation(tc, n)?;

    let mut steps = Vec::with_capacity(k + 1);
    let mut acc = power.result.clone();
    for term in std::iter::once(&phi0).chain(&twists) {
        let lhs = RationalBound::lower(acc.value.clone(), "running chain bound");
        let step = product_derivation(lhs.into(), term.clone())?;
        acc = step.result.clone();
        steps.push(Premise::from(step));
    }

    let sum = twists
        .iter()
        .chain([&phi0])
        .fold(power.result.value.clone(), |s, t| s + t.value());
    let result = RationalBound::lower(
        sum - int(k as i64 + 1),
        format!("scl(T_k ... T_1 phi_0 T_c^{n}), k = {k}"),
    );

    let mut inputs = Vec::with_capacity(2 * k + 4);
    inputs.push(Premise::Integer(k as i64));
    inputs.extend(twists);
    inputs.push(phi0);
    inputs.push(power.into());
    inputs.extend(steps);
    Ok(Derivation {
        rule: Rule::Chain,
        inputs,
        result,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelFlag {
    Illustrative,
    UserSupplied,
}

/// Affine stand-in `C(m) = alpha m + beta` for the uniform upper bound on
/// scl of a monodromy that factors into `m` twists.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CBoundModel {
    #[serde(serialize_with = "rational::serialize")]
    alpha: BigRational,
    #[serde(serialize_with = "rational::serialize")]
    beta: BigRational,
    flag: ModelFlag,
}

impl CBoundModel {
    /// Requires `alpha >= 0`. A constant model must be non-negative, since
    /// otherwise no scl value could ever satisfy it.
    pub fn new(alpha: BigRational, beta: BigRational, flag: ModelFlag) -> Result<Self> {
        if alpha.is_negative() {
            return Err(Error::InvalidModel(format!(
                "alpha = {} makes C decreasing",
                rational::format_rational(&alpha)
            )));
        }
        if alpha.is_zero() && beta.is_negative() {
            return Err(Error::InvalidModel(format!(
                "constant C = {} is negative",
                rational::format_rational(&beta)
            )));
        }
        Ok(Self { alpha, beta, flag })
    }

    /// `C(m) = m`, the default. Not a certified constant.
    pub fn illustrative() -> Self {
        Self {
            alpha: int(1),
            beta: int(0),
            flag: ModelFlag::Illustrative,
        }
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    pub fn beta(&self) -> &BigRational {
        &self.beta
    }

    pub fn flag(&self) -> ModelFlag {
        self.flag
    }

    pub fn evaluate(&self, m: u64) -> BigRational {
        &self.alpha * int(m) + &self.beta
    }

    pub fn derivation(&self, m: u64) -> Derivation {
        let tag = match self.flag {
            ModelFlag::Illustrative => "illustrative",
            ModelFlag::UserSupplied => "user-supplied",
        };
        Derivation {
            rule: Rule::Model,
            inputs: vec![
                Premise::Rational(self.alpha.clone()),
                Premise::Rational(self.beta.clone()),
                Premise::Integer(m as i64),
            ],
            result: RationalBound::upper(
                self.evaluate(m),
                format!("C({m}), {tag} model"),
            ),
        }
    }
}

/// Extra Hopf plumbings always charged to reach genus three and make the
/// twist curve essential after capping.
pub const AUXILIARY_PLUMBINGS: u64 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeightQuery {
    /// First Betti number of the fibre surface.
    pub fibre_b1: u64,
    /// Stallings exponent: the monodromies are `φ_0 T_c^n`.
    pub n: i64,
    pub model: CBoundModel,
}

impl HeightQuery {
    pub fn new(fibre_b1: u64, n: i64, model: CBoundModel) -> Self {
        Self { fibre_b1, n, model }
    }

    /// `b1` of the stabilisation after `k` plumbings plus the auxiliary ones.
    pub fn stabilised_b1(&self, k: u64) -> u64 {
        self.fibre_b1 + k + AUXILIARY_PLUMBINGS
    }

    /// Largest genus a capped surface with this `b1` can have, floored at 3.
    pub fn capped_genus(&self, k: u64) -> u64 {
        (self.stabilised_b1(k) / 2).max(3)
    }

    /// `L(k) = max(|n| / (18 g - 6) - (k + 7), 0)`.
    pub fn chain_lower_value(&self, k: u64) -> BigRational {
        let g = self.capped_genus(k);
        let korkmaz = BigRational::new(1.into(), BigInt::from(g) * 18 - 6);
        clamp(int(self.n.unsigned_abs()) * korkmaz - int(k + AUXILIARY_PLUMBINGS + 1))
    }

    pub fn model_value(&self, k: u64) -> BigRational {
        self.model.evaluate(self.stabilised_b1(k))
    }

    /// Whether `k` plumbings are consistent with the model.
    pub fn admits(&self, k: u64) -> bool {
        self.chain_lower_value(k) <= self.model_value(k)
    }

    /// Smallest admissible `k`. `admits` is monotone in `k`, so an
    /// exponential probe followed by bisection finds it.
    pub fn search(&self) -> u64 {
        if self.admits(0) {
            return 0;
        }
        let mut hi = 1u64;
        while !self.admits(hi) {
            hi *= 2;
        }
        let mut lo = hi / 2; // !admits(lo)
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.admits(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }

    /// Full derivation comparing the chain bound against the model after
    /// `k` plumbings.
    pub fn plumbing_check(&self, k: u64) -> PlumbingCheck {
        let genus = self.capped_genus(k);
        let twist_count = k + AUXILIARY_PLUMBINGS;
        let twists = (1..=twist_count)
            .map(|i| RationalBound::lower(int(0), format!("scl(T_{i})")).into())
            .collect();
        let phi0 = RationalBound::lower(int(0), "scl(phi_0)").into();
        let tc = korkmaz_derivation(genus as i64)
            .expect("capped genus is at least 3")
            .into();
        let chain = chain_derivation(twists, phi0, tc, self.n).expect("all premises are lower bounds");
        let value = chain.result.value.clone();
        let lower = Derivation {
            rule: Rule::Cap,
            inputs: vec![chain.into()],
            result: RationalBound::lower(
                value,
                format!("scl(monodromy of S_n), {k} plumbings"),
            ),
        };
        let upper = self.model.derivation(self.stabilised_b1(k));
        let excluded = lower.result.value > upper.result.value;
        PlumbingCheck {
            plumbings: k,
            stabilised_b1: self.stabilised_b1(k),
            capped_genus: genus,
            lower,
            upper,
            excluded,
        }
    }
}

/// Comparison of the derived lower bound with the model's upper bound for
/// one plumbing count. `excluded` means the two are contradictory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlumbingCheck {
    pub plumbings: u64,
    pub stabilised_b1: u64,
    pub capped_genus: u64,
    pub lower: Derivation,
    pub upper: Derivation,
    pub excluded: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeightReport {
    pub h_lb: u64,
    pub model: ModelFlag,
    /// The last excluded plumbing count (if any) and the first admitted one.
    pub checks: Vec<PlumbingCheck>,
}

impl HeightReport {
    pub fn derivations(&self) -> impl Iterator<Item = &Derivation> {
        self.checks.iter().flat_map(|c| [&c.lower, &c.upper])
    }

    /// Replays every derivation and checks that the recorded comparisons
    /// pin down `h_lb`.
    pub fn verify(&self) -> Result<()> {
        let fail = |reason: &str| Error::Replay {
            rule: "HEIGHT",
            reason: reason.into(),
        };
        for d in self.derivations() {
            d.replay()?;
        }
        for c in &self.checks {
            if c.excluded != (c.lower.result.value > c.upper.result.value) {
                return Err(fail("exclusion flag disagrees with the bounds"));
            }
        }
        let last = self.checks.last().ok_or_else(|| fail("no checks"))?;
        if last.plumbings != self.h_lb || last.excluded {
            return Err(fail("h_lb is not admitted"));
        }
        if self.h_lb > 0 {
            let [prev, _] = self.checks.as_slice() else {
                return Err(fail("missing exclusion below h_lb"));
            };
            if prev.plumbings + 1 != self.h_lb || !prev.excluded {
                return Err(fail("h_lb - 1 is not excluded"));
            }
        }
        Ok(())
    }
}

/// Smallest plumbing count `k` not ruled out by the scl chain under the
/// given model. Every `k' < h_lb` forces `L(k') > C(m(k'))`.
pub fn height_lower_bound(q: &HeightQuery) -> HeightReport {
    let h_lb = q.search();
    let mut checks = Vec::with_capacity(2);
    if h_lb > 0 {
        checks.push(q.plumbing_check(h_lb - 1));
    }
    checks.push(q.plumbing_check(h_lb));
    HeightReport {
        h_lb,
        model: q.model.flag,
        checks,
    }
}
