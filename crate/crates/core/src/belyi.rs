//! Rational Belyi maps from tuples of rational points.
//!
//! For distinct rationals `q_1 < … < q_n` the weights `1 / ∏_{j≠i}(q_i - q_j)`
//! interpolate the constant 1, so after clearing denominators
//! `Σ k_i ∏_{j≠i}(x - q_j) = N` for integers `k_i` and a nonzero constant
//! `N`. Then `f = ∏ (x - q_i)^{k_i}` has logarithmic derivative
//! `N / ∏ (x - q_j)`, so its only critical points are the `q_i` (values 0
//! or ∞) and infinity (value 1, since `Σ k_i = 0`).
//!
//! Exponents grow quickly with the number of points, so nothing here
//! expands `f` unless its degree is small. The Wronskian
//! `num'·den - num·den'` equals `∏ (x - q_i)^{|k_i| - 1} · G` for the cleared
//! combination `G`; its roots are checked through `G` by exact division,
//! and through the expanded pair as well when the degree permits.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exactalg::{Poly, Rat};
use crate::report::{Check, Report};
use crate::witness::{clear_denominators, lagrange_combination};

/// Maps of at most this degree are also verified by dense expansion.
pub const EXPAND_LIMIT: usize = 256;

/// Largest total exponent for which [`evaluate_projective`] evaluates at a
/// finite non-special point.
pub const EVAL_LIMIT: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BelyiError {
    #[error("at least two points are required, got {0}")]
    TooFewPoints(usize),
    #[error("duplicate point {0}")]
    DuplicatePoint(Rat),
    #[error("exponent at point {0} is zero")]
    ZeroExponent(Rat),
    #[error("point and exponent lists differ in length")]
    LengthMismatch,
    #[error("degree {0} is too large to expand")]
    ExpansionTooLarge(BigUint),
}

/// A point of the projective line over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProjectivePoint {
    Finite(Rat),
    Infinity,
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectivePoint::Finite(r) => write!(f, "{r}"),
            ProjectivePoint::Infinity => f.write_str("infinity"),
        }
    }
}

/// A critical value of a Belyi map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CriticalValue {
    Zero,
    One,
    Infinity,
}

impl fmt::Display for CriticalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CriticalValue::Zero => "0",
            CriticalValue::One => "1",
            CriticalValue::Infinity => "infinity",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPoint {
    pub location: ProjectivePoint,
    pub value: CriticalValue,
    /// At least 2.
    pub ramification_index: BigUint,
}

/// `∏ (x - point)^exponent` with nonzero exponents at distinct points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredRational {
    factors: Vec<(Rat, BigInt)>,
}

impl FactoredRational {
    /// Sorts by point; rejects zero exponents and repeated points.
    pub fn new(mut factors: Vec<(Rat, BigInt)>) -> Result<Self, BelyiError> {
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some((p, _)) = factors.iter().find(|(_, k)| k.is_zero()) {
            return Err(BelyiError::ZeroExponent(p.clone()));
        }
        if let Some(w) = factors.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(BelyiError::DuplicatePoint(w[0].0.clone()));
        }
        Ok(FactoredRational { factors })
    }

    pub fn factors(&self) -> &[(Rat, BigInt)] {
        &self.factors
    }

    /// Degree of the numerator and of the denominator.
    pub fn degrees(&self) -> (BigUint, BigUint) {
        let mut num = BigUint::zero();
        let mut den = BigUint::zero();
        for (_, k) in &self.factors {
            if k.is_positive() {
                num += k.magnitude();
            } else {
                den += k.magnitude();
            }
        }
        (num, den)
    }

    pub fn exponent_sum(&self) -> BigInt {
        self.factors.iter().map(|(_, k)| k).sum()
    }
}

/// Coprime numerator and denominator of `fr`, both monic.
pub fn expand_factored(
    fr: &FactoredRational,
    max_degree: usize,
) -> Result<(Poly, Poly), BelyiError> {
    let (dn, dd) = fr.degrees();
    let limit = BigUint::from(max_degree);
    if dn > limit || dd > limit {
        return Err(BelyiError::ExpansionTooLarge(dn.max(dd)));
    }
    let mut num = Poly::one();
    let mut den = Poly::one();
    for (q, k) in &fr.factors {
        let e = k.magnitude().to_u32().expect("bounded by max_degree");
        let lin = Poly::linear(q).pow(e);
        if k.is_positive() {
            num = &num * &lin;
        } else {
            den = &den * &lin;
        }
    }
    Ok((num, den))
}

/// Value of `fr` at a point of the projective line.
pub fn evaluate_projective(
    fr: &FactoredRational,
    at: &ProjectivePoint,
) -> Result<ProjectivePoint, BelyiError> {
    match at {
        ProjectivePoint::Infinity => {
            let s = fr.exponent_sum();
            Ok(if s.is_zero() {
                ProjectivePoint::Finite(Rat::one())
            } else if s.is_positive() {
                ProjectivePoint::Infinity
            } else {
                ProjectivePoint::Finite(Rat::zero())
            })
        }
        ProjectivePoint::Finite(x) => {
            if let Some((_, k)) = fr.factors.iter().find(|(q, _)| q == x) {
                return Ok(if k.is_positive() {
                    ProjectivePoint::Finite(Rat::zero())
                } else {
                    ProjectivePoint::Infinity
                });
            }
            let (dn, dd) = fr.degrees();
            let total = &dn + &dd;
            if total > BigUint::from(EVAL_LIMIT) {
                return Err(BelyiError::ExpansionTooLarge(total));
            }
            let mut value = Rat::one();
            for (q, k) in &fr.factors {
                let e = k.magnitude().to_u32().expect("bounded by EVAL_LIMIT");
                let base = (x - q).pow(e);
                value = if k.is_positive() {
                    value * base
                } else {
                    value / base
                };
            }
            Ok(ProjectivePoint::Finite(value))
        }
    }
}

/// Certificate for the Belyi map `∏ (x - point_i)^{exponent_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BelyiCertificate {
    /// Strictly increasing.
    pub points: Vec<Rat>,
    pub exponents: Vec<BigInt>,
    /// `Σ k_i ∏_{j≠i} (x - q_j)`; positive.
    pub constant: Rat,
    /// Sum of the positive exponents.
    pub degree: BigUint,
    pub critical_report: Vec<CriticalPoint>,
}

impl BelyiCertificate {
    pub fn factored(&self) -> Result<FactoredRational, BelyiError> {
        if self.points.len() != self.exponents.len() {
            return Err(BelyiError::LengthMismatch);
        }
        FactoredRational::new(
            self.points
                .iter()
                .cloned()
                .zip(self.exponents.iter().cloned())
                .collect(),
        )
    }
}

fn check_points(points: &[Rat]) -> Result<(), BelyiError> {
    if points.len() < 2 {
        return Err(BelyiError::TooFewPoints(points.len()));
    }
    let mut sorted: Vec<&Rat> = points.iter().collect();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(BelyiError::DuplicatePoint(w[0].clone()));
    }
    Ok(())
}

/// Cleared Lagrange weights of the constant 1 at `points` (in the given
/// order), normalized to coprime integers with positive constant `N`.
pub fn belyi_exponents(points: &[Rat]) -> Result<(Vec<BigInt>, Rat), BelyiError> {
    check_points(points)?;
    let weights: Vec<Rat> = points
        .iter()
        .enumerate()
        .map(|(i, q)| {
            let p: Rat = points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, r)| q - r)
                .product();
            p.recip().expect("distinct points")
        })
        .collect();
    let (mut ks, mut constant) = clear_denominators(&weights);
    if constant.is_negative() {
        ks.iter_mut().for_each(|k| *k = -&*k);
        constant = -constant;
    }
    Ok((ks, constant))
}

/// Critical points of `∏ (x - q_i)^{k_i}`, assuming the cleared combination
/// is constant: the points with `|k_i| >= 2`, and infinity when its local
/// degree exceeds one.
///
/// At infinity with `Σ k = 0`, the local degree is the order of vanishing of
/// `f - 1`, i.e. `deg den - deg(num - den)`. By Newton's identities the two
/// monic factors agree in their top coefficients exactly as long as the
/// signed power sums `Σ k_i q_i^s` vanish, so the order is the first `s >= 1`
/// with `Σ k_i q_i^s ≠ 0`.
pub fn critical_points(points: &[Rat], exponents: &[BigInt]) -> Vec<CriticalPoint> {
    let mut out: Vec<CriticalPoint> = points
        .iter()
        .zip(exponents)
        .filter(|(_, k)| k.magnitude() >= &BigUint::from(2u32))
        .map(|(q, k)| CriticalPoint {
            location: ProjectivePoint::Finite(q.clone()),
            value: if k.is_positive() {
                CriticalValue::Zero
            } else {
                CriticalValue::Infinity
            },
            ramification_index: k.magnitude().clone(),
        })
        .collect();
    let sum: BigInt = exponents.iter().sum();
    let at_infinity = if sum.is_zero() {
        infinity_order(points, exponents).map(|t| (CriticalValue::One, BigUint::from(t)))
    } else {
        // f behaves like x^sum near infinity.
        let value = if sum.is_positive() {
            CriticalValue::Infinity
        } else {
            CriticalValue::Zero
        };
        Some((value, sum.magnitude().clone()))
    };
    if let Some((value, index)) = at_infinity {
        if index >= BigUint::from(2u32) {
            out.push(CriticalPoint {
                location: ProjectivePoint::Infinity,
                value,
                ramification_index: index,
            });
        }
    }
    out
}

fn infinity_order(points: &[Rat], exponents: &[BigInt]) -> Option<usize> {
    let mut powers: Vec<Rat> = points.to_vec();
    for s in 1..=points.len() {
        let total: Rat = powers
            .iter()
            .zip(exponents)
            .map(|(p, k)| p * &Rat::from(k.clone()))
            .sum();
        if !total.is_zero() {
            return Some(s);
        }
        for (p, q) in powers.iter_mut().zip(points) {
            *p = &*p * q;
        }
    }
    None
}

pub fn construct_belyi(points: &[Rat]) -> Result<BelyiCertificate, BelyiError> {
    check_points(points)?;
    let mut points = points.to_vec();
    points.sort();
    let (exponents, constant) = belyi_exponents(&points)?;
    let degree = exponents
        .iter()
        .filter(|k| k.is_positive())
        .map(|k| k.magnitude())
        .sum();
    let critical_report = critical_points(&points, &exponents);
    Ok(BelyiCertificate {
        points,
        exponents,
        constant,
        degree,
        critical_report,
    })
}

/// Divides out every linear factor at the given points; returns the
/// remaining cofactor.
fn strip_points(mut p: Poly, points: &[Rat]) -> Poly {
    for q in points {
        let lin = Poly::linear(q);
        while !p.is_constant() {
            match p.exact_div(&lin).expect("nonzero divisor") {
                Some(quot) => p = quot,
                None => break,
            }
        }
    }
    p
}

/// Roots of the Wronskian checked on the expanded pair: it must be divisible
/// by `∏ (x - q_i)^{|k_i| - 1}`, leaving a cofactor supported on the points.
fn expanded_containment(fr: &FactoredRational) -> Option<bool> {
    let (num, den) = expand_factored(fr, EXPAND_LIMIT).ok()?;
    let wronskian = &(&num.derivative() * &den) - &(&num * &den.derivative());
    let multiplier = fr.factors().iter().fold(Poly::one(), |acc, (q, k)| {
        let e = k.magnitude().to_u32().expect("small") - 1;
        &acc * &Poly::linear(q).pow(e)
    });
    let points: Vec<Rat> = fr.factors().iter().map(|(q, _)| q.clone()).collect();
    Some(match wronskian.exact_div(&multiplier).expect("nonzero") {
        Some(q) => {
            let rest = strip_points(q, &points);
            rest.is_constant() && !rest.is_zero()
        }
        None => false,
    })
}

/// Total verifier for a Belyi certificate.
pub fn verify_belyi(cert: &BelyiCertificate) -> Report {
    let mut checks = Vec::new();
    let structural = if cert.points.len() < 2 {
        Err(format!(
            "{} points; at least two required",
            cert.points.len()
        ))
    } else if cert.points.windows(2).any(|w| w[0] >= w[1]) {
        Err("points not strictly increasing".to_string())
    } else {
        cert.factored().map_err(|e| e.to_string())
    };
    let fr = match structural {
        Ok(fr) => {
            checks.push(Check::new(
                "structure",
                true,
                format!("{} points", cert.points.len()),
            ));
            fr
        }
        Err(e) => {
            checks.push(Check::new("structure", false, e));
            for name in [
                "exponent-sum",
                "lagrange-identity",
                "critical-containment",
                "degree",
                "critical-report",
                "value-at-infinity",
            ] {
                checks.push(Check::new(name, false, "skipped: malformed certificate"));
            }
            return Report { checks };
        }
    };

    let sum = fr.exponent_sum();
    checks.push(Check::new(
        "exponent-sum",
        sum.is_zero(),
        format!("sum of exponents is {sum}"),
    ));

    let g = lagrange_combination(&cert.points, &cert.exponents);
    let identity = g == Poly::constant(cert.constant.clone()) && !cert.constant.is_zero();
    checks.push(Check::new(
        "lagrange-identity",
        identity,
        if identity {
            format!("cleared combination equals {}", cert.constant)
        } else {
            format!(
                "cleared combination is {:?}, claimed {}",
                g.coeffs(),
                cert.constant
            )
        },
    ));

    // Wronskian = ∏ (x - q_i)^{|k_i| - 1} · G, so its roots lie among the
    // points iff G's do.
    let rest = strip_points(g.clone(), &cert.points);
    let factored_ok = !g.is_zero() && rest.is_constant() && !rest.is_zero();
    let (contained, detail) = match expanded_containment(&fr) {
        Some(expanded_ok) if expanded_ok != factored_ok => (
            false,
            format!("expanded and factored routes disagree ({expanded_ok} vs {factored_ok})"),
        ),
        Some(ok) => (ok, "expanded Wronskian divided exactly".to_string()),
        None => (
            factored_ok,
            "Wronskian cofactor divided exactly".to_string(),
        ),
    };
    checks.push(Check::new("critical-containment", contained, detail));

    let (dn, dd) = fr.degrees();
    let degree_ok = cert.degree == dn && dn == dd;
    checks.push(Check::new(
        "degree",
        degree_ok,
        format!("claimed {}, numerator {dn}, denominator {dd}", cert.degree),
    ));

    let recomputed = critical_points(&cert.points, &cert.exponents);
    let report_ok = recomputed == cert.critical_report;
    checks.push(Check::new(
        "critical-report",
        report_ok,
        if report_ok {
            format!(
                "{} critical points, values in {{0, 1, infinity}}",
                recomputed.len()
            )
        } else {
            "claimed critical data differs from the recomputed data".to_string()
        },
    ));

    let at_inf = evaluate_projective(&fr, &ProjectivePoint::Infinity);
    let inf_ok = at_inf == Ok(ProjectivePoint::Finite(Rat::one()));
    checks.push(Check::new(
        "value-at-infinity",
        inf_ok,
        match at_inf {
            Ok(v) => format!("f(infinity) = {v}"),
            Err(e) => e.to_string(),
        },
    ));
    Report { checks }
}
