mod common;

use common::*;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;
use splitrolle::belyi::{construct_belyi, verify_belyi, CriticalValue, ProjectivePoint};
use splitrolle::witness::lagrange_combination;
use splitrolle::{Poly, Rat};

const DENSE: u64 = 120;

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

/// Numerator and denominator of `∏ (x - q)^k`, expanded.
fn expand(points: &[Rat], exponents: &[BigInt]) -> (Poly, Poly) {
    let mut num = Poly::one();
    let mut den = Poly::one();
    for (q, k) in points.iter().zip(exponents) {
        let e = k.magnitude().to_u32().unwrap();
        if k.is_positive() {
            num = &num * &Poly::linear(q).pow(e);
        } else {
            den = &den * &Poly::linear(q).pow(e);
        }
    }
    (num, den)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn certificates_verify(points in distinct_rats(2..=8, 20, 20)) {
        let c = construct_belyi(&points).unwrap();
        prop_assert!(verify_belyi(&c).valid());
        let sum: BigInt = c.exponents.iter().sum();
        prop_assert_eq!(sum, BigInt::from(0));
        prop_assert_eq!(lagrange_combination(&c.points, &c.exponents), Poly::constant(c.constant.clone()));
        prop_assert!(c.constant.is_positive());
        // Weights 1/∏(q_i - q_j) alternate in sign along sorted points.
        for w in c.exponents.windows(2) {
            prop_assert!(w[0].signum() == -w[1].signum());
        }
    }

    #[test]
    fn dense_oracle_agrees(points in distinct_rats(2..=5, 6, 4)) {
        let c = construct_belyi(&points).unwrap();
        let deg = c.degree.to_u64().unwrap();
        prop_assume!(deg <= DENSE);
        let (num, den) = expand(&c.points, &c.exponents);
        prop_assert_eq!(num.degree(), den.degree());
        prop_assert_eq!(num.degree().finite(), Some(deg as usize));
        // Every finite critical point is one of the input points.
        let mut w = &(&num.derivative() * &den) - &(&num * &den.derivative());
        for q in &c.points {
            while let Some(quot) = w.exact_div(&Poly::linear(q)).unwrap() {
                w = quot;
            }
        }
        prop_assert!(w.is_constant() && !w.is_zero());
        // Local degree at infinity: order of vanishing of f - 1 in 1/x.
        let drop = deg as usize - (&num - &den).degree().finite().unwrap();
        let reported = c.critical_report.iter().find(|p| p.location == ProjectivePoint::Infinity);
        match reported {
            Some(p) => {
                prop_assert_eq!(p.value, CriticalValue::One);
                prop_assert_eq!(p.ramification_index.to_usize().unwrap(), drop);
            }
            None => prop_assert_eq!(drop, 1),
        }
        prop_assert_eq!(drop, c.points.len() - 1);
        // Finite report: |k| >= 2, value 0 for zeros and infinity for poles.
        let finite: Vec<_> = c.critical_report.iter().filter(|p| p.location != ProjectivePoint::Infinity).collect();
        let ramified = c.exponents.iter().filter(|k| k.magnitude().to_u64().unwrap() >= 2).count();
        prop_assert_eq!(finite.len(), ramified);
    }

    #[test]
    fn affine_equivariance(
        points in distinct_rats(2..=6, 10, 6),
        shift in small_rat(10, 5),
        stretch in small_rat(10, 5).prop_filter("positive", |s| s.is_positive()),
    ) {
        let moved: Vec<Rat> = points.iter().map(|q| q * &stretch + &shift).collect();
        let a = construct_belyi(&points).unwrap();
        let b = construct_belyi(&moved).unwrap();
        prop_assert_eq!(a.exponents, b.exponents);
        prop_assert_eq!(a.degree, b.degree);
    }
}

#[test]
fn unit_spaced_points_give_binomials() {
    for n in 2..=9u64 {
        let points: Vec<Rat> = (0..n as i64).map(Rat::from).collect();
        let c = construct_belyi(&points).unwrap();
        for (i, k) in c.exponents.iter().enumerate() {
            assert_eq!(
                k.magnitude(),
                binomial(n - 1, i as u64).magnitude(),
                "n={n}"
            );
        }
        let factorial: i64 = (1..n as i64).product();
        assert_eq!(c.constant, Rat::from(factorial));
        assert!(verify_belyi(&c).valid());
    }
}

#[test]
fn worked_instance_0_1_2() {
    let c = construct_belyi(&[rat(0, 1), rat(1, 1), rat(2, 1)]).unwrap();
    let ks: Vec<i64> = c.exponents.iter().map(|k| k.to_i64().unwrap()).collect();
    assert_eq!(ks, [1, -2, 1]);
    assert_eq!(c.constant, rat(2, 1));
    assert_eq!(c.degree, 2u32.into());
    let (num, den) = expand(&c.points, &c.exponents);
    assert_eq!(num, Poly::from_i64s(&[0, -2, 1]));
    assert_eq!(den, Poly::from_i64s(&[1, -2, 1]));
    let w = &(&num.derivative() * &den) - &(&num * &den.derivative());
    // x(x-2)/(x-1)^2 has Wronskian 2(x - 1).
    assert_eq!(w, Poly::from_i64s(&[-2, 2]));
}
