//! Split-Rolle witnesses.
//!
//! For `f` whose irrational roots are all real and simple, the builder
//! produces rational nodes `q_1 < … < q_{n+1}`, positive integers `k_i` and a
//! power `m` such that `f` divides the derivative of
//! `F = (∏ (x - q_i)^{k_i})^m`. The nodes interleave with the roots of an
//! interpolant `g` (the irrational part of `f` times a few inserted rational
//! roots), which forces every Lagrange weight `g(q_i) / ∏_{j≠i}(q_i - q_j)`
//! to be positive; the weights, cleared of denominators, are the `k_i`.
//!
//! The exponents can run into the hundreds of thousands, so the verifier never
//! expands `F` blindly. Since `F' = m · G · ∏ (x - q_i)^{m k_i - 1}` with
//! `G = Σ k_i ∏_{j≠i} (x - q_j)`, `f` divides `F'` exactly when the part of
//! `f` left after removing its common factor with the node product divides
//! `m · G`, a polynomial of degree below the node count. Small witnesses are
//! additionally expanded and divided directly.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::exactalg::{AlgebraError, FactoredSplit, Poly, Rat};
use crate::realroots::{
    cauchy_bound, classify_roots, simplest_rational_between, Interval, RootClassification,
    RootError,
};
use crate::report::{Check, Report};

/// Witnesses of at most this degree are also checked by dense expansion.
pub const EXPAND_LIMIT: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("irrational roots not all real and simple")]
    NotTotallyRealSimple,
    #[error("constant polynomial has no witness")]
    DegenerateInput,
    #[error("interleaving rational {value} exceeds the denominator cap {cap}")]
    DenominatorCapExceeded { value: Rat, cap: BigInt },
    #[error("rational root {0} of f is not among the nodes")]
    MissingRationalRoot(Rat),
    #[error("node/exponent lists differ in length ({nodes} vs {exponents})")]
    LengthMismatch { nodes: usize, exponents: usize },
    #[error("Lagrange weight at node {index} is not positive: {weight}")]
    NonPositiveWeight { index: usize, weight: Rat },
    #[error("alternation plan violates its invariants: {0}")]
    BrokenPlan(String),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug, Default)]
pub struct WitnessOptions {
    /// Refuse when an interleaving rational needs a larger denominator.
    pub max_denominator: Option<BigInt>,
}

/// A root that the interpolant must vanish at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    /// An inserted rational separator.
    Rational(Rat),
    /// An irrational root of `f`, isolated by an open interval.
    Irrational(Interval),
}

impl Target {
    fn lo(&self) -> &Rat {
        match self {
            Target::Rational(r) => r,
            Target::Irrational(iv) => iv.lo(),
        }
    }

    fn hi(&self) -> &Rat {
        match self {
            Target::Rational(r) => r,
            Target::Irrational(iv) => iv.hi(),
        }
    }
}

/// Nodes and targets in strict alternation, plus the interpolant whose
/// roots are the targets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternationPlan {
    pub nodes: Vec<Rat>,
    pub targets: Vec<Target>,
    pub interpolant: Poly,
}

impl AlternationPlan {
    /// Checks the structural invariants: counts, strict interleaving, and
    /// that the interpolant has positive leading coefficient, the right
    /// degree, and vanishes at rational targets / changes sign across
    /// irrational ones.
    pub fn check(&self) -> Result<(), WitnessError> {
        let broken = |m: &str| Err(WitnessError::BrokenPlan(m.to_string()));
        if self.nodes.len() != self.targets.len() + 1 {
            return broken("node count must exceed target count by one");
        }
        for (i, t) in self.targets.iter().enumerate() {
            if !(self.nodes[i] <= *t.lo() && *t.hi() <= self.nodes[i + 1]) {
                return broken("targets do not interleave with nodes");
            }
            if let Target::Irrational(iv) = t {
                if iv.is_point() {
                    return broken("irrational target given as a point");
                }
            }
        }
        if self.nodes.windows(2).any(|w| w[0] >= w[1]) {
            return broken("nodes not strictly increasing");
        }
        if self.interpolant.degree().finite() != Some(self.targets.len()) {
            return broken("interpolant degree differs from target count");
        }
        if !self
            .interpolant
            .leading_coeff()
            .is_some_and(Rat::is_positive)
        {
            return broken("interpolant leading coefficient not positive");
        }
        for t in &self.targets {
            let ok = match t {
                Target::Rational(r) => self.interpolant.eval(r).is_zero(),
                Target::Irrational(iv) => {
                    self.interpolant.sign_at(iv.lo()) * self.interpolant.sign_at(iv.hi()) < 0
                }
            };
            if !ok {
                return broken("interpolant does not vanish at a target");
            }
        }
        Ok(())
    }
}

/// Certificate that `f` divides `((∏ (x - node_i)^{k_i})^power)'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RolleWitness {
    pub f: Poly,
    pub nodes: Vec<Rat>,
    pub exponents: Vec<BigUint>,
    pub power: u64,
    /// `k_i = scale · c_i` for the Lagrange weights `c_i` of the monic
    /// interpolant; equivalently `scale = Σ k_i`.
    pub scale: Rat,
}

impl RolleWitness {
    /// `F` in factored form (requires valid nodes and exponents).
    pub fn split_polynomial(&self) -> Result<FactoredSplit, AlgebraError> {
        let m = BigUint::from(self.power);
        FactoredSplit::new(
            self.nodes
                .iter()
                .cloned()
                .zip(self.exponents.iter().map(|k| k * &m))
                .collect(),
        )
    }

    /// Degree of `F`.
    pub fn degree(&self) -> BigUint {
        self.exponents.iter().sum::<BigUint>() * self.power
    }
}

/// Everything the builder computed along the way.
#[derive(Clone, Debug)]
pub struct WitnessBuild {
    pub classification: RootClassification,
    pub plan: AlternationPlan,
    pub weights: Vec<Rat>,
    pub witness: RolleWitness,
}

pub fn construct_witness(f: &Poly) -> Result<RolleWitness, WitnessError> {
    build_witness(f, &WitnessOptions::default()).map(|b| b.witness)
}

/// Full pipeline: classify, plan the alternation, clear the Lagrange
/// weights and pick the minimal power.
pub fn build_witness(f: &Poly, opts: &WitnessOptions) -> Result<WitnessBuild, WitnessError> {
    if f.is_constant() {
        return Err(WitnessError::DegenerateInput);
    }
    let f = if f.leading_coeff().is_some_and(Rat::is_negative) {
        -f
    } else {
        f.clone()
    };
    let classification = classify_roots(&f)?;
    let plan = build_alternation(&f, &classification, opts)?;
    let weights = lagrange_weights(&plan)?;
    let (exponents, scale) = clear_weights(&weights);
    let power = witness_power(&f, &plan.nodes, &exponents)?;
    Ok(WitnessBuild {
        classification,
        weights,
        witness: RolleWitness {
            f,
            nodes: plan.nodes.clone(),
            exponents,
            power,
            scale,
        },
        plan,
    })
}

enum Item {
    Node(Rat),
    Target(Interval),
}

/// Merges rational roots (mandatory nodes) with isolated irrational roots
/// (mandatory targets) and repairs the alternation with simplest-rational
/// separators: nodes between adjacent targets and at the ends, targets
/// between adjacent nodes.
pub fn build_alternation(
    f: &Poly,
    classification: &RootClassification,
    opts: &WitnessOptions,
) -> Result<AlternationPlan, WitnessError> {
    if !classification.totally_real || !classification.irrational_simple {
        return Err(WitnessError::NotTotallyRealSimple);
    }
    let irr = &classification.irrational_part;
    let cap = |r: Rat| -> Result<Rat, WitnessError> {
        match &opts.max_denominator {
            Some(cap) if r.denom() > cap => Err(WitnessError::DenominatorCapExceeded {
                value: r,
                cap: cap.clone(),
            }),
            _ => Ok(r),
        }
    };

    let mut items: Vec<Item> = classification
        .rational_roots
        .iter()
        .map(|(r, _)| Item::Node(r.clone()))
        .chain(
            classification
                .irrational_real
                .iter()
                .map(|(iv, _)| Item::Target(iv.clone())),
        )
        .collect();
    items.sort_by(|a, b| item_lo(a).cmp(item_lo(b)));

    // separators[i] sits between items i - 1 and i when both are targets.
    let mut separators: Vec<Option<Rat>> = vec![None; items.len()];
    for i in 1..items.len() {
        let (left, right) = items.split_at_mut(i);
        if let (Item::Target(a), Item::Target(b)) = (&mut left[i - 1], &mut right[0]) {
            separators[i] = Some(separate(irr, a, b)?);
        }
    }

    let bound = cauchy_bound(f)?;
    let outer = &bound + &Rat::one();
    let mut nodes = Vec::new();
    let mut targets = Vec::new();
    let mut inserted = Vec::new();

    let left_boundary = match items.first_mut() {
        Some(Item::Target(first)) => Some(cap(left_of(irr, &-&outer, first)?)?),
        _ => None,
    };
    let right_boundary = match items.last_mut() {
        Some(Item::Target(last)) => Some(cap(right_of(irr, last, &outer)?)?),
        _ => None,
    };
    nodes.extend(left_boundary);
    let mut prev_is_node = !nodes.is_empty();
    for (idx, item) in items.iter().enumerate() {
        match item {
            Item::Node(r) => {
                if prev_is_node {
                    let last = nodes.last().expect("previous node");
                    let t = cap(simplest_rational_between(last, r)?)?;
                    inserted.push(t.clone());
                    targets.push(Target::Rational(t));
                }
                nodes.push(r.clone());
                prev_is_node = true;
            }
            Item::Target(iv) => {
                if !prev_is_node {
                    let s = separators[idx].clone().expect("separator between targets");
                    nodes.push(cap(s)?);
                }
                targets.push(Target::Irrational(iv.clone()));
                prev_is_node = false;
            }
        }
    }
    nodes.extend(right_boundary);

    let interpolant = inserted
        .iter()
        .fold(irr.monic(), |acc, t| &acc * &Poly::linear(t));
    let plan = AlternationPlan {
        nodes,
        targets,
        interpolant,
    };
    plan.check()?;
    Ok(plan)
}

fn item_lo(item: &Item) -> &Rat {
    match item {
        Item::Node(r) => r,
        Item::Target(iv) => iv.lo(),
    }
}

/// Splits `iv` at the non-root `s`, keeping the half that holds the root.
fn split_at(a: &Poly, iv: &mut Interval, s: &Rat) {
    let keep_left = a.sign_at(iv.lo()) != a.sign_at(s);
    *iv = if keep_left {
        Interval::new(iv.lo().clone(), s.clone())
    } else {
        Interval::new(s.clone(), iv.hi().clone())
    }
    .expect("split point inside interval");
}

/// Simplest rational in `(lo, α)` where `α` is the root isolated by `iv`.
fn left_of(a: &Poly, lo: &Rat, iv: &mut Interval) -> Result<Rat, WitnessError> {
    loop {
        let s = simplest_rational_between(lo, iv.hi())?;
        if &s <= iv.lo() {
            return Ok(s);
        }
        split_at(a, iv, &s);
    }
}

/// Simplest rational in `(α, hi)` where `α` is the root isolated by `iv`.
fn right_of(a: &Poly, iv: &mut Interval, hi: &Rat) -> Result<Rat, WitnessError> {
    loop {
        let s = simplest_rational_between(iv.lo(), hi)?;
        if &s >= iv.hi() {
            return Ok(s);
        }
        split_at(a, iv, &s);
    }
}

/// Simplest rational strictly between the roots isolated by `a` and `b`
/// (with `a` left of `b`); shrinks both intervals so it lies between them.
fn separate(p: &Poly, a: &mut Interval, b: &mut Interval) -> Result<Rat, WitnessError> {
    loop {
        let s = simplest_rational_between(a.lo(), b.hi())?;
        if &s < a.hi() {
            split_at(p, a, &s);
        } else if &s > b.lo() {
            split_at(p, b, &s);
        } else {
            return Ok(s);
        }
    }
}

/// `c_i = g(q_i) / ∏_{j≠i} (q_i - q_j)`; every weight must be positive.
pub fn lagrange_weights(plan: &AlternationPlan) -> Result<Vec<Rat>, WitnessError> {
    let weights = lagrange_weights_of(&plan.interpolant, &plan.nodes);
    if let Some((index, weight)) = weights.iter().enumerate().find(|(_, w)| !w.is_positive()) {
        return Err(WitnessError::NonPositiveWeight {
            index,
            weight: weight.clone(),
        });
    }
    Ok(weights)
}

pub(crate) fn lagrange_weights_of(g: &Poly, nodes: &[Rat]) -> Vec<Rat> {
    nodes
        .iter()
        .enumerate()
        .map(|(i, q)| {
            let denom: Rat = nodes
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| q - p)
                .product();
            g.eval(q) / denom
        })
        .collect()
}

/// Clears denominators and divides by the gcd. Returns the integer vector
/// together with the factor it was multiplied by. Works for weights of any
/// sign; the first nonzero entry keeps its sign.
pub(crate) fn clear_denominators(weights: &[Rat]) -> (Vec<BigInt>, Rat) {
    let lcm = weights
        .iter()
        .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
    let ints: Vec<BigInt> = weights
        .iter()
        .map(|w| w.numer() * (&lcm / w.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
    if g.is_zero() {
        return (ints, Rat::one());
    }
    let ints = ints.into_iter().map(|n| n / &g).collect();
    (ints, Rat::new(lcm, g).expect("nonzero gcd"))
}

/// Canonical positive integers `k_i = scale · c_i` with `gcd(k) = 1`.
pub fn lagrange_exponents(plan: &AlternationPlan) -> Result<(Vec<BigUint>, Rat), WitnessError> {
    plan.check()?;
    let weights = lagrange_weights(plan)?;
    Ok(clear_weights(&weights))
}

fn clear_weights(weights: &[Rat]) -> (Vec<BigUint>, Rat) {
    let (ints, scale) = clear_denominators(weights);
    let exps = ints
        .into_iter()
        .map(|k| k.to_biguint().expect("positive weights"))
        .collect();
    (exps, scale)
}

/// Smallest `m >= 1` with `m·k_r - 1 >= μ_r` at every rational root `r` of
/// `f` (multiplicity `μ_r`, exponent `k_r`).
pub fn witness_power(f: &Poly, nodes: &[Rat], exponents: &[BigUint]) -> Result<u64, WitnessError> {
    if nodes.len() != exponents.len() {
        return Err(WitnessError::LengthMismatch {
            nodes: nodes.len(),
            exponents: exponents.len(),
        });
    }
    let roots = crate::exactalg::rational_roots(f)?;
    let mut power = 1u64;
    for (r, mult) in &roots.roots {
        let idx = nodes
            .iter()
            .position(|q| q == r)
            .ok_or_else(|| WitnessError::MissingRationalRoot(r.clone()))?;
        let need = BigUint::from(*mult as u64 + 1);
        let m = need.div_ceil(&exponents[idx]);
        power = power.max(m.to_u64().expect("at most multiplicity + 1"));
    }
    Ok(power)
}

/// `G = Σ k_i ∏_{j≠i} (x - q_j)`, the cleared Lagrange combination; `F0' =
/// G · ∏ (x - q_i)^{k_i - 1}` for `F0 = ∏ (x - q_i)^{k_i}`.
pub fn lagrange_combination(nodes: &[Rat], exponents: &[BigInt]) -> Poly {
    let mut g = Poly::zero();
    for (i, k) in exponents.iter().enumerate() {
        let others = nodes
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q);
        g = &g + &Poly::from_roots(others).scale(&Rat::from(k.clone()));
    }
    g
}

/// Whether `f` divides `F'` for `F = (∏ (x - q_i)^{k_i})^m`, decided through
/// `F' = m · G · A` with `A = ∏ (x - q_i)^{m k_i - 1}`: the gcd of `f` and
/// `A` is read off root multiplicities, and the cofactor must divide `G`.
/// Exponents must be positive.
pub fn derivative_divisible(
    nodes: &[Rat],
    exponents: &[BigUint],
    power: u64,
    f: &Poly,
) -> Result<bool, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroInput);
    }
    let m = BigUint::from(power);
    let mut available: Vec<(&Rat, BigUint)> = Vec::new();
    for (q, k) in nodes.iter().zip(exponents) {
        let e = k * &m - 1u32;
        match available.iter_mut().find(|(r, _)| *r == q) {
            Some((_, total)) => *total += e,
            None => available.push((q, e)),
        }
    }
    let mut rest = f.clone();
    for (q, e) in available {
        let mult = rest.root_multiplicity(q);
        let strip = if BigUint::from(mult) <= e {
            mult
        } else {
            e.to_usize().expect("below a usize multiplicity")
        };
        if strip > 0 {
            rest = rest
                .exact_div(&Poly::linear(q).pow(strip as u32))?
                .expect("multiplicity divides");
        }
    }
    let ks: Vec<BigInt> = exponents.iter().map(|k| BigInt::from(k.clone())).collect();
    let g = lagrange_combination(nodes, &ks).scale(&Rat::from(power as i64));
    if g.is_zero() {
        return Ok(true);
    }
    g.is_divisible_by(&rest)
}

fn divides_derivative(w: &RolleWitness, power: u64) -> Result<(bool, String), AlgebraError> {
    let factored = derivative_divisible(&w.nodes, &w.exponents, power, &w.f)?;
    let probe = RolleWitness { power, ..w.clone() };
    let split = probe.split_polynomial()?;
    match split.expand(EXPAND_LIMIT) {
        Some(big_f) => {
            let (_, r) = big_f.derivative().divrem(&w.f)?;
            let expanded = r.is_zero();
            if expanded != factored {
                return Ok((
                    false,
                    format!("factored and expanded routes disagree ({factored} vs {expanded})"),
                ));
            }
            Ok((
                expanded,
                format!(
                    "expanded F of degree {}; remainder {}",
                    split.degree(),
                    if expanded { "zero" } else { "nonzero" }
                ),
            ))
        }
        None => Ok((
            factored,
            format!(
                "F of degree {} checked through F' = m G A; {}",
                split.degree(),
                if factored {
                    "f divides"
                } else {
                    "f does not divide"
                }
            ),
        )),
    }
}

/// Total verifier: every check runs (or is reported as skipped) and a
/// failure is a negative report, never an error.
pub fn verify_witness(w: &RolleWitness) -> Report {
    let mut checks = Vec::new();
    let structural = if w.f.is_constant() {
        Err("f must be nonconstant".to_string())
    } else if w.nodes.is_empty() {
        Err("no nodes".to_string())
    } else if w.nodes.len() != w.exponents.len() {
        Err(format!(
            "{} nodes but {} exponents",
            w.nodes.len(),
            w.exponents.len()
        ))
    } else if w.nodes.windows(2).any(|p| p[0] >= p[1]) {
        Err("nodes not strictly increasing".to_string())
    } else if w.power == 0 {
        Err("power must be positive".to_string())
    } else {
        Ok(())
    };
    match &structural {
        Ok(()) => checks.push(Check::new(
            "structure",
            true,
            format!("{} nodes", w.nodes.len()),
        )),
        Err(e) => checks.push(Check::new("structure", false, e.clone())),
    }
    let positive = w.exponents.iter().all(|k| !k.is_zero());
    checks.push(Check::new(
        "exponents-positive",
        positive,
        if positive {
            "F splits over Q"
        } else {
            "zero exponent"
        },
    ));
    let g = w
        .exponents
        .iter()
        .fold(BigUint::zero(), |acc, k| acc.gcd(k));
    checks.push(Check::new(
        "exponents-canonical",
        g.is_one(),
        format!("gcd of exponents is {g}"),
    ));

    if structural.is_err() || !positive {
        for name in [
            "divisibility",
            "rolle-structure",
            "degree-bookkeeping",
            "scale",
            "power-minimal",
        ] {
            checks.push(Check::new(name, false, "skipped: malformed witness"));
        }
        return Report { checks };
    }

    let divisibility = divides_derivative(w, w.power);
    let divides = matches!(divisibility, Ok((true, _)));
    checks.push(match divisibility {
        Ok((ok, detail)) => Check::new("divisibility", ok, detail),
        Err(e) => Check::new("divisibility", false, e.to_string()),
    });

    let ks: Vec<BigInt> = w
        .exponents
        .iter()
        .map(|k| BigInt::from(k.clone()))
        .collect();
    let g = lagrange_combination(&w.nodes, &ks);
    let n = w.nodes.len();
    let values: Vec<i8> = w.nodes.iter().map(|q| g.sign_at(q)).collect();
    let alternates = g.degree().finite() == Some(n - 1)
        && values.iter().all(|&s| s != 0)
        && values.windows(2).all(|p| p[0] != p[1]);
    checks.push(Check::new(
        "rolle-structure",
        alternates,
        if alternates {
            format!("G changes sign in each of the {} gaps", n - 1)
        } else {
            "G does not change sign between every pair of consecutive nodes".to_string()
        },
    ));

    // lc(F') = deg F, nonzero in characteristic zero.
    let deg_f = w.degree();
    let degree_ok = match w
        .split_polynomial()
        .ok()
        .and_then(|s| s.expand(EXPAND_LIMIT))
    {
        Some(big_f) => {
            let d = big_f.degree().finite().unwrap_or(0);
            big_f.derivative().degree().finite() == d.checked_sub(1)
        }
        None => !deg_f.is_zero(),
    };
    checks.push(Check::new(
        "degree-bookkeeping",
        degree_ok,
        format!("deg F = {deg_f}, deg F' = deg F - 1"),
    ));

    let sum: BigUint = w.exponents.iter().sum();
    let scale_ok = w.scale == Rat::from(BigInt::from(sum.clone()));
    checks.push(Check::new(
        "scale",
        scale_ok,
        format!("scale {} against exponent sum {sum}", w.scale),
    ));

    let minimal = if w.power <= 1 {
        Ok(true)
    } else {
        divides_derivative(w, w.power - 1).map(|(ok, _)| !ok)
    };
    let minimal_ok = matches!(minimal, Ok(true)) && divides;
    checks.push(Check::new(
        "power-minimal",
        minimal_ok,
        if w.power == 1 {
            "power 1".to_string()
        } else if minimal_ok {
            format!("power {} fails", w.power - 1)
        } else {
            format!("power {} is not minimal", w.power)
        },
    ));
    Report { checks }
}
