mod common;

use common::*;
use proptest::prelude::*;
use splitrolle::exactalg::{rational_roots, squarefree_decomposition, squarefree_part, Degree};
use splitrolle::expr::{format_poly, parse_poly};
use splitrolle::{Poly, Rat};

proptest! {
    #[test]
    fn divrem_reconstructs(a in small_poly(8), b in nonzero_poly(5)) {
        let (q, r) = a.divrem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.degree() < b.degree());
    }

    #[test]
    fn derivative_product_rule(a in small_poly(6), b in small_poly(6)) {
        let lhs = (&a * &b).derivative();
        let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_ring_map(a in small_poly(6), b in small_poly(6), x in small_rat(7, 4)) {
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
    }

    #[test]
    fn gcd_finds_planted_factor(
        a in nonzero_poly(4),
        b in nonzero_poly(4),
        c in nonzero_poly(4),
    ) {
        let g = (&a * &c).gcd(&(&b * &c)).unwrap();
        prop_assert!(g.leading_coeff().unwrap().is_one());
        prop_assert!((&a * &c).is_divisible_by(&g).unwrap());
        prop_assert!((&b * &c).is_divisible_by(&g).unwrap());
        prop_assert!(g.is_divisible_by(&c.monic()).unwrap());
    }

    #[test]
    fn squarefree_decomposition_reconstructs(
        roots in distinct_rats(1..=4, 6, 3),
        mults in prop::collection::vec(1u32..=3, 4),
        lc in small_rat(5, 3).prop_filter("nonzero", |r| !r.is_zero()),
    ) {
        let planted: Vec<(Rat, u32)> = roots.iter().cloned().zip(mults.iter().copied()).collect();
        let irreducible = Poly::from_i64s(&[1, 0, 1]);
        let f = (&expand_split(&planted) * &irreducible).scale(&lc);
        let parts = squarefree_decomposition(&f).unwrap();
        let mut product = Poly::constant(lc.clone());
        for part in &parts {
            prop_assert!(part.factor.leading_coeff().unwrap().is_one());
            let d = part.factor.gcd(&part.factor.derivative()).unwrap();
            prop_assert_eq!(d, Poly::one());
            product = &product * &part.factor.pow(part.multiplicity as u32);
        }
        prop_assert_eq!(product, f.clone());
        let sq = squarefree_part(&f).unwrap();
        prop_assert_eq!(sq, (&Poly::from_roots(&roots) * &irreducible).monic());
    }

    #[test]
    fn rational_roots_finds_planted(
        roots in distinct_rats(0..=5, 12, 6),
        mults in prop::collection::vec(1u32..=3, 5),
        with_irrational in any::<bool>(),
    ) {
        let planted: Vec<(Rat, u32)> = roots.iter().cloned().zip(mults.iter().copied()).collect();
        let mut f = &expand_split(&planted) * &Poly::from_i64s(&[1, 0, 1]);
        if with_irrational {
            f = &f * &Poly::from_i64s(&[-2, 0, 1]);
        }
        let found = rational_roots(&f).unwrap();
        let expect: Vec<(Rat, usize)> = planted.iter().map(|(q, m)| (q.clone(), *m as usize)).collect();
        prop_assert_eq!(&found.roots, &expect);
        prop_assert_eq!(
            found.cofactor.degree(),
            Degree::Finite(if with_irrational { 4 } else { 2 })
        );
    }

    #[test]
    fn parse_format_round_trip(p in small_poly(7)) {
        let text = format_poly(&p);
        prop_assert_eq!(parse_poly(&text).unwrap(), p);
    }

    #[test]
    fn rat_text_round_trip(q in small_rat(1000, 1000)) {
        prop_assert_eq!(q.to_string().parse::<Rat>().unwrap(), q);
    }
}

#[test]
fn spec_gcd_examples() {
    let a = Poly::from_i64s(&[1, -2, 1]);
    let b = Poly::from_i64s(&[-2, 2]);
    assert_eq!(a.gcd(&b).unwrap(), Poly::from_i64s(&[-1, 1]));
    let c = Poly::from_i64s(&[-2, 0, 1]);
    let d = Poly::from_i64s(&[-3, 0, 1]);
    assert_eq!(c.gcd(&d).unwrap(), Poly::one());
}

#[test]
fn pow_mod_agrees_with_expansion() {
    let base = Poly::from_i64s(&[3, -1, 2]);
    let modulus = Poly::from_i64s(&[-2, 0, 0, 1]);
    for e in 0u32..12 {
        let direct = base.pow(e).rem(&modulus).unwrap();
        let fast = base.pow_mod(&e.into(), &modulus).unwrap();
        assert_eq!(direct, fast, "exponent {e}");
    }
}
