#![allow(dead_code)]

use num_bigint::{BigInt, Sign};
use proptest::prelude::*;
use splitrolle::{Poly, Rat};

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d).unwrap()
}

pub fn small_rat(max_num: i64, max_den: i64) -> impl Strategy<Value = Rat> {
    (-max_num..=max_num, 1..=max_den).prop_map(|(n, d)| rat(n, d))
}

pub fn small_poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_rat(9, 5), 0..=max_len).prop_map(Poly::from_coeffs)
}

pub fn nonzero_poly(max_len: usize) -> impl Strategy<Value = Poly> {
    small_poly(max_len).prop_filter("nonzero", |p| !p.is_zero())
}

/// Distinct rationals, sorted.
pub fn distinct_rats(
    count: std::ops::RangeInclusive<usize>,
    max_num: i64,
    max_den: i64,
) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::btree_set(small_rat(max_num, max_den), count)
        .prop_map(|s| s.into_iter().collect())
}

/// Number of distinct real roots of a nonzero polynomial on the grid
/// `lo + k·step` up to `hi`: zeros on the grid plus sign changes across the
/// nonzero samples. Exact as long as no two roots share a grid cell and
/// every root has odd multiplicity.
pub fn grid_sign_changes(p: &Poly, lo: &Rat, hi: &Rat, step: &Rat) -> usize {
    // Integer arithmetic: p(x) · d^n at x = (a + k·u) / d.
    let d = lo.denom() * step.denom();
    let a = lo.numer() * step.denom();
    let u = step.numer() * lo.denom();
    let (_, ip) = p.primitive_part();
    let coeffs: Vec<BigInt> = ip.coeffs().iter().map(|c| c.numer().clone()).collect();
    let n = coeffs.len() - 1;
    let mut dpow = vec![BigInt::from(1)];
    for _ in 0..n {
        let next = dpow.last().unwrap() * &d;
        dpow.push(next);
    }
    let steps = ((hi - lo) / step.clone()).floor();
    let mut count = 0;
    let mut last = 0i8;
    let mut k = BigInt::from(0);
    while k <= steps {
        let x = &a + &k * &u;
        let mut acc = BigInt::from(0);
        for (i, c) in coeffs.iter().enumerate().rev() {
            acc = acc * &x + c * &dpow[n - i];
        }
        let s = match acc.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        };
        if s == 0 || (last != 0 && s != last) {
            count += 1;
        }
        last = s;
        k += 1;
    }
    count
}

/// Simplest rational strictly inside `(lo, hi)`: smallest denominator, then
/// smallest absolute numerator. Exhaustive; only for tiny inputs.
pub fn simplest_by_search(lo: &Rat, hi: &Rat) -> Rat {
    for d in 1i64.. {
        let dd = Rat::from(d);
        let from = (lo * &dd).floor();
        let to = (hi * &dd).ceil();
        let mut best: Option<Rat> = None;
        let mut n = from;
        while n <= to {
            let q = Rat::new(n.clone(), BigInt::from(d)).unwrap();
            if &q > lo && &q < hi && q.denom() == &BigInt::from(d) {
                let better = match &best {
                    Some(b) => q.abs() < b.abs(),
                    None => true,
                };
                if better {
                    best = Some(q);
                }
            }
            n += 1;
        }
        if let Some(b) = best {
            return b;
        }
    }
    unreachable!()
}

/// Dense product `∏ (x - q)^e`.
pub fn expand_split(factors: &[(Rat, u32)]) -> Poly {
    factors
        .iter()
        .fold(Poly::one(), |acc, (q, e)| &acc * &Poly::linear(q).pow(*e))
}
