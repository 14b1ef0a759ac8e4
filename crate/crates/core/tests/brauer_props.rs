use brauer_core::brauer::{
    inv_add, inv_neg, inv_order, padic_invariant, quaternion_local_invariant, real_invariant,
    BrauerInvariant, Place,
};
use brauer_core::crossed::{inflate_cyclic, CyclicAlgebraSpec, GaloisData};
use brauer_core::extfield::{unramified_extension, LocalField};
use brauer_core::fields::{Field, Rational};
use brauer_core::padic::{PadicContext, Qp};
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn frobenius(p: u64, f: usize, n: u32) -> GaloisData<Qp> {
    let ctx = PadicContext::new(p, n).unwrap();
    let (_, _, frob) = unramified_extension(&ctx, f).unwrap();
    GaloisData::new(frob).unwrap()
}

fn all_classes(max_den: u64) -> Vec<BrauerInvariant> {
    let mut out: Vec<_> = (1..=max_den)
        .flat_map(|d| (0..d).map(move |k| BrauerInvariant::new(k as i64, d).unwrap()))
        .collect();
    out.sort();
    out.dedup();
    out
}

#[test]
fn invariants_form_a_group() {
    let xs = all_classes(12);
    for &x in &xs {
        assert_eq!(inv_add(x, BrauerInvariant::ZERO), x);
        assert!(inv_add(x, inv_neg(x)).is_zero());
        let mut acc = BrauerInvariant::ZERO;
        for k in 1..=inv_order(x) {
            acc = inv_add(acc, x);
            assert_eq!(acc.is_zero(), k == inv_order(x), "{x} times {k}");
        }
        for &y in &xs {
            assert_eq!(inv_add(x, y), inv_add(y, x));
            for &z in xs.iter().step_by(5) {
                assert_eq!(inv_add(inv_add(x, y), z), inv_add(x, inv_add(y, z)));
            }
        }
    }
}

#[test]
fn invariants_compare_as_rationals() {
    for x in all_classes(12) {
        let r = x.to_rational();
        assert!(r >= q(0) && r < q(1));
        assert_eq!(*r.denom(), inv_order(x).into());
    }
}

#[test]
fn inflation_preserves_the_invariant() {
    for p in [3u64, 5] {
        for (f, mf) in [(2usize, 4usize), (2, 6), (3, 6)] {
            let small = frobenius(p, f, 8);
            let big = frobenius(p, mf, 8);
            let ctx = small.field().padic_context().clone();
            for r in [ctx.from_i64(p as i64), ctx.from_i64((p * p) as i64), ctx.from_i64(2 * p as i64)] {
                let spec = CyclicAlgebraSpec::new(small.clone(), r).unwrap();
                let big_spec = inflate_cyclic(&spec, &big).unwrap();
                assert_eq!(padic_invariant(&spec).unwrap(), padic_invariant(&big_spec).unwrap());
            }
        }
    }
}

fn nonzero() -> impl Strategy<Value = i64> {
    (-40i64..=40).prop_filter("nonzero", |x| *x != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn real_invariant_is_symmetric(a in nonzero(), b in nonzero()) {
        prop_assert_eq!(real_invariant(&q(a), &q(b)).unwrap(), real_invariant(&q(b), &q(a)).unwrap());
    }

    #[test]
    fn local_invariant_is_symmetric_and_square_invariant(
        a in nonzero(),
        b in nonzero(),
        c in nonzero(),
        p in prop::sample::select(vec![2u64, 3, 5, 7, 13]),
    ) {
        let place = Place::Prime(p);
        let x = quaternion_local_invariant(&q(a), &q(b), place, 16).unwrap();
        prop_assert_eq!(x, quaternion_local_invariant(&q(b), &q(a), place, 16).unwrap());
        let ac2 = q(a) * q(c * c);
        prop_assert_eq!(x, quaternion_local_invariant(&ac2, &q(b), place, 16).unwrap());
        let real = Place::Real;
        prop_assert_eq!(
            quaternion_local_invariant(&ac2, &q(b), real, 16).unwrap(),
            real_invariant(&q(a), &q(b)).unwrap()
        );
    }

    #[test]
    fn one_minus_a_is_a_norm(a in nonzero(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        // (a, 1 - a) is split everywhere
        prop_assume!(a != 1);
        let inv = quaternion_local_invariant(&q(a), &(q(1) - q(a)), Place::Prime(p), 16).unwrap();
        prop_assert!(inv.is_zero());
    }

    #[test]
    fn padic_invariant_is_additive(
        f in 2usize..=3,
        s1 in -4i64..=8,
        s2 in -4i64..=8,
        u1 in 1i64..=24,
        u2 in 1i64..=24,
    ) {
        prop_assume!(u1 % 5 != 0 && u2 % 5 != 0);
        let g = frobenius(5, f, 10);
        let ctx = g.field().padic_context().clone();
        let r1 = ctx.from_i64(u1).mul(&ctx.p_power(s1));
        let r2 = ctx.from_i64(u2).mul(&ctx.p_power(s2));
        let inv = |r| padic_invariant(&CyclicAlgebraSpec::new(g.clone(), r).unwrap()).unwrap();
        let (i1, i2, i12) = (inv(r1.clone()), inv(r2.clone()), inv(r1.mul(&r2)));
        prop_assert_eq!(i12, inv_add(i1, i2));
        prop_assert_eq!(i1, BrauerInvariant::new(s1, f as u64).unwrap());
    }

    #[test]
    fn padic_invariant_is_constant_on_norm_cosets(
        f in 2usize..=3,
        s in 0i64..=5,
        w in prop::collection::vec(0i64..125, 3),
        k in 0i64..=2,
    ) {
        let g = frobenius(5, f, 10);
        let l = g.field();
        let ctx = l.padic_context().clone();
        let mut x: Vec<_> = w.iter().take(f).map(|c| ctx.from_i64(*c)).collect();
        prop_assume!(!l.is_zero(&x));
        x = l.mul(&x, &l.from_base(&ctx.p_power(k)));
        let r = ctx.from_i64(2).mul(&ctx.p_power(s));
        let inv = |r| padic_invariant(&CyclicAlgebraSpec::new(g.clone(), r).unwrap()).unwrap();
        prop_assert_eq!(inv(r.mul(&l.norm(&x))), inv(r));
    }
}
