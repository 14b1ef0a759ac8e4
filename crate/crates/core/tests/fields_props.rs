use brauer_core::fields::{
    rational::fraction_free_rank, Embedding, FiniteField, Field, PrimeField, Rational,
};
use brauer_core::linalg::gauss_rank;
use proptest::prelude::*;

fn small_field() -> impl Strategy<Value = (u64, usize)> {
    prop::sample::select(vec![(2u64, 3usize), (3, 2), (5, 2), (7, 3), (2, 4)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn nonzero_elements_have_order_dividing_q_minus_1(
        (p, d) in small_field(),
        c in prop::collection::vec(0u64..50, 4),
    ) {
        let f = FiniteField::canonical(p, d).unwrap();
        let a = f.from_poly(&c.iter().take(d).map(|x| x % p).collect::<Vec<_>>());
        prop_assume!(!f.is_zero(&a));
        let q = f.order().unwrap();
        prop_assert!(f.is_one(&f.pow(&a, q - 1)));
        let inv = f.inv(&a).unwrap();
        prop_assert!(f.is_one(&f.mul(&a, &inv)));
    }

    #[test]
    fn frobenius_is_a_ring_map(
        (p, d) in small_field(),
        a in prop::collection::vec(0u64..50, 4),
        b in prop::collection::vec(0u64..50, 4),
    ) {
        let f = FiniteField::canonical(p, d).unwrap();
        let red = |v: &Vec<u64>| f.from_poly(&v.iter().take(d).map(|x| x % p).collect::<Vec<_>>());
        let (a, b) = (red(&a), red(&b));
        prop_assert_eq!(f.frobenius(&f.add(&a, &b)), f.add(&f.frobenius(&a), &f.frobenius(&b)));
        prop_assert_eq!(f.frobenius(&f.mul(&a, &b)), f.mul(&f.frobenius(&a), &f.frobenius(&b)));
    }

    #[test]
    fn norm_preimages_round_trip(a in 1u64..5, p in prop::sample::select(vec![3u64, 5, 7])) {
        let a = a % p;
        prop_assume!(a != 0);
        let base = FiniteField::canonical(p, 1).unwrap();
        let ext = FiniteField::canonical(p, 2).unwrap();
        let tower = Embedding::new(&base, &ext).unwrap();
        let x = base.from_prime(a);
        let b = tower.norm_preimage(&x).unwrap();
        prop_assert_eq!(tower.norm(&b), x);
    }

    #[test]
    fn rational_rank_matches_elimination(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 5), 1..=5)) {
        let q = |n: i64| Rational::from_integer(n.into());
        let m: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|x| q(*x)).collect()).collect();
        let ff = fraction_free_rank(&m);
        let gauss = gauss_rank(&brauer_core::fields::Rationals, &m);
        prop_assert_eq!(ff, gauss);
        // appending a combination of existing rows keeps the rank
        let mut more = m.clone();
        let combo: Vec<Rational> = (0..5).map(|j| m.iter().map(|r| r[j].clone()).sum()).collect();
        more.push(combo);
        prop_assert_eq!(fraction_free_rank(&more), ff);
    }

    #[test]
    fn prime_field_inverses(p in prop::sample::select(vec![2u64, 3, 5, 101, 65537]), a in 1u64..1_000_000) {
        let f = PrimeField::new(p).unwrap();
        let x = f.from_i64((a % p) as i64);
        prop_assume!(!f.is_zero(&x));
        prop_assert!(f.is_one(&f.mul(&x, &f.inv(&x).unwrap())));
    }
}
