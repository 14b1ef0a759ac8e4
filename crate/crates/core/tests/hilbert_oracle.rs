use brauer_core::brauer::{global_sum_check, quaternion_local_invariant, BrauerInvariant, Place};
use brauer_core::fields::Rational;

/// Closed-form Hilbert symbol (a, b)_p for nonzero integers, as +1 / -1.
fn hilbert(a: i64, b: i64, p: i64) -> i32 {
    let split = |mut x: i64| {
        let mut v = 0;
        while x % p == 0 {
            x /= p;
            v += 1;
        }
        (v, x)
    };
    let (alpha, u) = split(a);
    let (beta, w) = split(b);
    if p == 2 {
        let eps = |x: i64| ((x.rem_euclid(8) - 1) / 2) % 2;
        let omega = |x: i64| ((x.rem_euclid(16) * x.rem_euclid(16) - 1) / 8) % 2;
        let e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u);
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        let legendre = |x: i64| {
            let r = x.rem_euclid(p);
            let mut acc = 1i64;
            for _ in 0..(p - 1) / 2 {
                acc = acc * r % p;
            }
            if acc == 1 {
                1
            } else {
                -1
            }
        };
        let mut s = if (alpha * beta) % 2 == 1 && (p - 1) / 2 % 2 == 1 { -1 } else { 1 };
        if beta % 2 == 1 {
            s *= legendre(u);
        }
        if alpha % 2 == 1 {
            s *= legendre(w);
        }
        s
    }
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[test]
fn local_invariants_match_hilbert_symbols() {
    for p in [2i64, 3, 5, 7, 11] {
        for a in -24i64..=24 {
            for b in -24i64..=24 {
                if a == 0 || b == 0 {
                    continue;
                }
                let got = quaternion_local_invariant(&q(a), &q(b), Place::Prime(p as u64), 12).unwrap();
                let want = if hilbert(a, b, p) == 1 {
                    BrauerInvariant::ZERO
                } else {
                    BrauerInvariant::HALF
                };
                assert_eq!(got, want, "(a, b) = ({a}, {b}) at p = {p}");
            }
        }
    }
}

#[test]
fn fractional_parameters_use_square_classes() {
    // (a/4, b) and (a, b) are the same algebra
    for (a, b) in [(-1, -1), (2, -3), (-2, -7), (3, 5)] {
        for p in [2u64, 3, 5, 7] {
            let x = quaternion_local_invariant(&q(a), &q(b), Place::Prime(p), 12).unwrap();
            let y = quaternion_local_invariant(&Rational::new(a.into(), 4.into()), &q(b * 9), Place::Prime(p), 12)
                .unwrap();
            assert_eq!(x, y);
        }
    }
}

#[test]
fn reciprocity_on_a_grid() {
    for a in -12i64..=12 {
        for b in -12i64..=12 {
            if a == 0 || b == 0 {
                continue;
            }
            let check = global_sum_check(&q(a), &q(b), 12).unwrap();
            assert!(check.holds(), "({a}, {b}): {check:?}");
        }
    }
}
