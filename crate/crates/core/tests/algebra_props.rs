use brauer_core::algebra::{
    field_as_algebra, hamilton, matrix_algebra, quaternion_algebra, StructureConstantAlgebra,
};
use brauer_core::extfield::make_extension;
use brauer_core::fields::{PrimeField, Rational, Rationals};
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn nonzero() -> impl Strategy<Value = i64> {
    (-9i64..=9).prop_filter("nonzero", |x| *x != 0)
}

fn quat(a: i64, b: i64) -> StructureConstantAlgebra<Rationals> {
    quaternion_algebra(Rationals, &q(a), &q(b)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quaternion_algebras_are_central_simple(a in nonzero(), b in nonzero()) {
        let h = quat(a, b);
        prop_assert!(h.check_associativity().is_ok());
        prop_assert!(h.is_central_simple());
        prop_assert_eq!(h.center().dim(), 1);
    }

    #[test]
    fn opposite_is_an_involution(a in nonzero(), b in nonzero()) {
        let h = quat(a, b);
        prop_assert_eq!(h.opposite().opposite(), h.clone());
        prop_assert_eq!(h.opposite().is_central_simple(), h.is_central_simple());
    }

    #[test]
    fn tensor_dimensions_multiply(a in nonzero(), b in nonzero(), n in 1usize..=2) {
        let h = quat(a, b);
        let m = matrix_algebra(Rationals, n).unwrap();
        let t = h.tensor_product(&m).unwrap();
        prop_assert_eq!(t.dim(), 4 * n * n);
        prop_assert!(t.check_associativity().is_ok());
        prop_assert!(t.is_central_simple());
    }

    #[test]
    fn enveloping_rank_over_a_prime_field(p in prop::sample::select(vec![3u64, 5, 7, 11])) {
        let f = PrimeField::new(p).unwrap();
        let m = matrix_algebra(f.clone(), 2).unwrap();
        prop_assert_eq!(m.enveloping_map_rank(), 16);
        let h = hamilton(f);
        // every quaternion algebra over a finite field splits, and is still central simple
        prop_assert!(h.is_central_simple());
    }
}

#[test]
fn field_extension_is_not_central() {
    let l = make_extension(Rationals, vec![q(1), q(0), q(1)]).unwrap();
    let a = field_as_algebra(&l);
    assert_eq!(a.center().dim(), 2);
    assert!(!a.is_central_simple());
    assert!(a.enveloping_map_rank() < 4);
}

#[test]
fn center_of_h_tensor_gaussian_field() {
    let l = make_extension(Rationals, vec![q(1), q(0), q(1)]).unwrap();
    let t = hamilton(Rationals).tensor_product(&field_as_algebra(&l)).unwrap();
    assert_eq!(t.dim(), 8);
    assert_eq!(t.center().dim(), 2);
    assert!(!t.is_central_simple());
}

#[test]
fn opposite_of_commutative_algebra_is_itself() {
    let l = make_extension(Rationals, vec![q(-2), q(0), q(0), q(1)]).unwrap();
    let a = field_as_algebra(&l);
    assert_eq!(a.opposite(), a);
}
