//! Exact real-root analysis: Cauchy bounds, Sturm chains, bisection
//! isolation, interval refinement and root-structure classification.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exactalg::{rational_roots, squarefree_decomposition, AlgebraError, Poly, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("operation requires a polynomial of degree at least one")]
    ConstantInput,
    #[error("input polynomial is not squarefree")]
    NotSquarefree,
    #[error("interval endpoint {0} is a root; nudge the endpoints")]
    EndpointIsRoot(Rat),
    #[error("empty interval ({}, {})", .0.0, .0.1)]
    EmptyInterval(Box<(Rat, Rat)>),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Open interval `(lo, hi)`, or the exact point `lo` when `lo == hi`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rat,
    hi: Rat,
}

impl Interval {
    /// Returns `None` when `lo > hi`.
    pub fn new(lo: Rat, hi: Rat) -> Option<Self> {
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn point(at: Rat) -> Self {
        Interval {
            lo: at.clone(),
            hi: at,
        }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Membership in the open interval (or equality for a point).
    pub fn contains(&self, x: &Rat) -> bool {
        if self.is_point() {
            x == &self.lo
        } else {
            &self.lo < x && x < &self.hi
        }
    }

    /// Membership in `[lo, hi]`.
    pub fn contains_closed(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_within(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// `1 + max |a_i| / |a_n|` over the lower coefficients. All real roots lie
/// strictly inside `(-B, B)`.
pub fn cauchy_bound(a: &Poly) -> Result<Rat, RootError> {
    if a.is_constant() {
        return Err(RootError::ConstantInput);
    }
    let coeffs = a.coeffs();
    let lc = coeffs.last().expect("nonconstant").abs();
    let max = coeffs[..coeffs.len() - 1]
        .iter()
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(Rat::zero);
    Ok(Rat::one() + max)
}

/// Signed remainder sequence of a squarefree polynomial and its derivative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmChain {
    chain: Vec<Poly>,
}

impl SturmChain {
    pub fn new(a: &Poly) -> Result<Self, RootError> {
        if a.is_constant() {
            return Err(RootError::ConstantInput);
        }
        let mut chain = vec![a.clone(), a.derivative()];
        loop {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1])?;
            if r.is_zero() {
                break;
            }
            chain.push(-r);
        }
        if !chain.last().expect("nonempty").is_constant() {
            return Err(RootError::NotSquarefree);
        }
        Ok(SturmChain { chain })
    }

    pub fn polys(&self) -> &[Poly] {
        &self.chain
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut count = 0;
        let mut prev = 0i8;
        for s in signs.filter(|&s| s != 0) {
            if prev != 0 && s != prev {
                count += 1;
            }
            prev = s;
        }
        count
    }

    /// Sign variations of the chain evaluated at `x`.
    pub fn variations_at(&self, x: &Rat) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    fn variations_at_infinity(&self, negative: bool) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at_infinity(negative)))
    }

    /// Number of distinct real roots inside the open window. Endpoints that
    /// are roots are rejected.
    pub fn count_roots(&self, window: &Interval) -> Result<usize, RootError> {
        let head = &self.chain[0];
        for end in [window.lo(), window.hi()] {
            if head.eval(end).is_zero() {
                return Err(RootError::EndpointIsRoot(end.clone()));
            }
        }
        Ok(self.variations_at(window.lo()) - self.variations_at(window.hi()))
    }

    /// Number of distinct real roots on the whole line.
    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(true) - self.variations_at_infinity(false)
    }
}

pub fn sturm_chain(a: &Poly) -> Result<SturmChain, RootError> {
    SturmChain::new(a)
}

pub fn count_real_roots(chain: &SturmChain, window: &Interval) -> Result<usize, RootError> {
    chain.count_roots(window)
}

/// A point strictly inside `(lo, hi)` that is not a root of `a`: the
/// midpoint, or repeated mediants toward `lo` when the midpoint is a root.
fn split_point(a: &Poly, lo: &Rat, hi: &Rat) -> Rat {
    let mut mid = lo.midpoint(hi);
    while a.eval(&mid).is_zero() {
        mid = lo.mediant(&mid);
    }
    mid
}

/// Disjoint open intervals, ascending, each holding exactly one real root of
/// the squarefree input. Bisection of `(-B, B)` driven by Sturm counts.
pub fn isolate_real_roots(a: &Poly) -> Result<Vec<Interval>, RootError> {
    let chain = SturmChain::new(a)?;
    let bound = cauchy_bound(a)?;
    let mut out = Vec::new();
    let mut stack = vec![(-&bound, bound.clone(), chain.count_all())];
    // Depth-first, right half pushed first so output comes out ascending.
    while let Some((lo, hi, count)) = stack.pop() {
        match count {
            0 => {}
            1 => out.push(Interval { lo, hi }),
            _ => {
                let mid = split_point(a, &lo, &hi);
                let left = chain.count_roots(&Interval {
                    lo: lo.clone(),
                    hi: mid.clone(),
                })?;
                stack.push((mid.clone(), hi, count - left));
                stack.push((lo, mid, left));
            }
        }
    }
    Ok(out)
}

/// Shrinks an isolating interval of a squarefree polynomial by bisection on
/// sign changes until its width is at most `width`.
pub fn refine_interval(a: &Poly, iv: &Interval, width: &Rat) -> Interval {
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    let lo_sign = a.sign_at(&lo);
    while &(&hi - &lo) > width {
        let mid = split_point(a, &lo, &hi);
        if a.sign_at(&mid) == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Interval { lo, hi }
}

/// The rational in the open interval `(lo, hi)` with the smallest
/// denominator, then the smallest absolute numerator. Continued-fraction
/// descent of the Stern–Brocot tree.
pub fn simplest_rational_between(lo: &Rat, hi: &Rat) -> Result<Rat, RootError> {
    if lo >= hi {
        return Err(RootError::EmptyInterval(Box::new((lo.clone(), hi.clone()))));
    }
    if lo.is_negative() && hi.is_positive() {
        return Ok(Rat::zero());
    }
    if hi <= &Rat::zero() {
        return Ok(-simplest_nonnegative(&-hi, Some(-lo)));
    }
    Ok(simplest_nonnegative(lo, Some(hi.clone())))
}

/// Simplest rational in `(lo, hi)` for `lo >= 0`; `hi = None` is +inf.
fn simplest_nonnegative(lo: &Rat, hi: Option<Rat>) -> Rat {
    let mut terms: Vec<BigInt> = Vec::new();
    let mut lo = lo.clone();
    let mut hi = hi;
    loop {
        let fl = lo.floor();
        let next: BigInt = &fl + 1u32;
        let fits = match &hi {
            None => true,
            Some(h) => Rat::from(next.clone()) < *h,
        };
        if fits {
            terms.push(next);
            break;
        }
        // fl <= lo < hi <= fl + 1
        let flr = Rat::from(fl.clone());
        terms.push(fl);
        let h = hi.expect("finite upper end");
        let new_lo = (h - &flr).recip().expect("hi > floor(lo)");
        let new_hi = (&lo - &flr).recip();
        lo = new_lo;
        hi = new_hi;
    }
    let mut value = Rat::from(terms.pop().expect("at least one term"));
    while let Some(t) = terms.pop() {
        value = Rat::from(t) + value.recip().expect("partial quotients are positive");
    }
    value
}

/// Root structure of a polynomial: rational roots, isolated irrational real
/// roots and the number of complex-conjugate pairs, all with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootClassification {
    pub degree: usize,
    pub rational_roots: Vec<(Rat, usize)>,
    /// Ascending, disjoint, and free of rational roots in their closures.
    pub irrational_real: Vec<(Interval, usize)>,
    /// Counted with multiplicity.
    pub nonreal_pair_count: usize,
    pub totally_real: bool,
    pub irrational_simple: bool,
    /// Monic squarefree part of the rational-root-free cofactor; every
    /// interval in `irrational_real` isolates one of its roots.
    pub irrational_part: Poly,
}

impl RootClassification {
    /// Σ multiplicities + 2 · nonreal pairs.
    pub fn accounted_degree(&self) -> usize {
        self.rational_roots.iter().map(|(_, m)| m).sum::<usize>()
            + self.irrational_real.iter().map(|(_, m)| m).sum::<usize>()
            + 2 * self.nonreal_pair_count
    }
}

pub fn classify_roots(a: &Poly) -> Result<RootClassification, RootError> {
    let degree = a.degree().finite().ok_or(RootError::ConstantInput)?;
    if degree == 0 {
        return Err(RootError::ConstantInput);
    }
    let rr = rational_roots(a)?;
    let rational: Vec<Rat> = rr.roots.iter().map(|(r, _)| r.clone()).collect();

    let mut irrational_real = Vec::new();
    let mut nonreal_pair_count = 0;
    let mut irrational_part = Poly::one();
    if !rr.cofactor.is_constant() {
        let factors = squarefree_decomposition(&rr.cofactor)?;
        irrational_part = factors
            .iter()
            .fold(Poly::one(), |acc, sf| &acc * &sf.factor);
        let chains = factors
            .iter()
            .map(|sf| SturmChain::new(&sf.factor))
            .collect::<Result<Vec<_>, _>>()?;
        let mut real_per_factor = vec![0usize; factors.len()];
        for iv in isolate_real_roots(&irrational_part)? {
            let iv = exclude_points(&irrational_part, iv, &rational);
            let owner = chains
                .iter()
                .position(|c| c.count_roots(&iv).map(|n| n == 1).unwrap_or(false))
                .expect("each root of the squarefree part belongs to one factor");
            real_per_factor[owner] += 1;
            irrational_real.push((iv, factors[owner].multiplicity));
        }
        for (sf, real) in factors.iter().zip(real_per_factor) {
            let deg = sf.factor.degree().finite().expect("nonconstant");
            nonreal_pair_count += (deg - real) / 2 * sf.multiplicity;
        }
    }

    Ok(RootClassification {
        degree,
        rational_roots: rr.roots,
        totally_real: nonreal_pair_count == 0,
        irrational_simple: irrational_real.iter().all(|(_, m)| *m == 1),
        irrational_real,
        nonreal_pair_count,
        irrational_part,
    })
}

/// Refines `iv` until no point of `avoid` lies in its closure. The points
/// must not be roots of `a`.
pub(crate) fn exclude_points(a: &Poly, mut iv: Interval, avoid: &[Rat]) -> Interval {
    while avoid.iter().any(|r| iv.contains_closed(r)) {
        let half = iv.width() * Rat::new(1, 2).expect("nonzero");
        iv = refine_interval(a, &iv, &half);
    }
    iv
}
