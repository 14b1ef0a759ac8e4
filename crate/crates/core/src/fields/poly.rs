//! Dense univariate polynomials over any [`Field`].
//!
//! A polynomial is a coefficient vector, lowest degree first. Functions return
//! trimmed vectors (no zero leading coefficient); the zero polynomial is the
//! empty vector.

use super::Field;
use crate::error::{Error, Result};

pub type Poly<E> = Vec<E>;

pub fn trim<F: Field>(f: &F, mut a: Poly<F::Elem>) -> Poly<F::Elem> {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
    a
}

pub fn degree<F: Field>(f: &F, a: &[F::Elem]) -> Option<usize> {
    a.iter().rposition(|c| !f.is_zero(c))
}

pub fn from_i64s<F: Field>(f: &F, coeffs: &[i64]) -> Poly<F::Elem> {
    trim(f, coeffs.iter().map(|&c| f.from_i64(c)).collect())
}

/// `x^n`.
pub fn monomial<F: Field>(f: &F, n: usize) -> Poly<F::Elem> {
    let mut out = vec![f.zero(); n + 1];
    out[n] = f.one();
    out
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let n = a.len().max(b.len());
    let zero = f.zero();
    let out = (0..n)
        .map(|i| f.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(f, out)
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let n = a.len().max(b.len());
    let zero = f.zero();
    let out = (0..n)
        .map(|i| f.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(f, out)
}

pub fn scale<F: Field>(f: &F, a: &[F::Elem], s: &F::Elem) -> Poly<F::Elem> {
    trim(f, a.iter().map(|c| f.mul(c, s)).collect())
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, out)
}

/// Euclidean division `a = q b + r` with `deg r < deg b`.
pub fn div_rem<F: Field>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> Result<(Poly<F::Elem>, Poly<F::Elem>)> {
    let db = degree(f, b).ok_or(Error::DivisionByZero)?;
    let lead_inv = f.inv(&b[db]).ok_or(Error::DivisionByZero)?;
    let mut r = trim(f, a.to_vec());
    let mut q = vec![f.zero(); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(f, &r) {
        if dr < db {
            break;
        }
        let c = f.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        for (i, bc) in b[..=db].iter().enumerate() {
            r[shift + i] = f.sub(&r[shift + i], &f.mul(&c, bc));
        }
        // the leading term cancels by construction
        r[dr] = f.zero();
        q[shift] = c;
        r = trim(f, r);
    }
    Ok((trim(f, q), r))
}

pub fn rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Result<Poly<F::Elem>> {
    div_rem(f, a, b).map(|(_, r)| r)
}

pub fn make_monic<F: Field>(f: &F, a: &[F::Elem]) -> Poly<F::Elem> {
    match degree(f, a) {
        None => Vec::new(),
        Some(d) => {
            let inv = f.inv(&a[d]).expect("leading coefficient is nonzero");
            scale(f, &a[..=d], &inv)
        }
    }
}

/// Extended Euclid: returns `(g, s, t)` with `s a + t b = g`, `g` monic (or
/// zero when both inputs are zero).
pub fn ext_gcd<F: Field>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
    let (mut r0, mut r1) = (trim(f, a.to_vec()), trim(f, b.to_vec()));
    let (mut s0, mut s1) = (vec![f.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![f.one()]);
    while degree(f, &r1).is_some() {
        let (q, r) = div_rem(f, &r0, &r1).expect("divisor is nonzero");
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s2);
        (t0, t1) = (t1, t2);
    }
    match degree(f, &r0) {
        None => (Vec::new(), s0, t0),
        Some(d) => {
            let inv = f.inv(&r0[d]).expect("leading coefficient is nonzero");
            (scale(f, &r0, &inv), scale(f, &s0, &inv), scale(f, &t0, &inv))
        }
    }
}

pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    ext_gcd(f, a, b).0
}

pub fn eval<F: Field>(f: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    a.iter()
        .rev()
        .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

pub fn derivative<F: Field>(f: &F, a: &[F::Elem]) -> Poly<F::Elem> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(&f.from_i64(i as i64), c))
        .collect();
    trim(f, out)
}

pub fn mul_mod<F: Field>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
    m: &[F::Elem],
) -> Poly<F::Elem> {
    rem(f, &mul(f, a, b), m).expect("modulus is nonzero")
}

pub fn pow_mod<F: Field>(f: &F, a: &[F::Elem], mut e: u64, m: &[F::Elem]) -> Poly<F::Elem> {
    let mut base = rem(f, a, m).expect("modulus is nonzero");
    let mut acc = rem(f, &[f.one()], m).expect("modulus is nonzero");
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(f, &acc, &base, m);
        }
        e >>= 1;
        if e > 0 {
            base = mul_mod(f, &base, &base, m);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{PrimeField, Rationals};

    #[test]
    fn division_identity_over_q() {
        let q = Rationals;
        let a = from_i64s(&q, &[-1, 0, 0, 1]);
        let b = from_i64s(&q, &[1, 2]);
        let (quo, r) = div_rem(&q, &a, &b).unwrap();
        assert_eq!(add(&q, &mul(&q, &quo, &b), &r), a);
        assert!(degree(&q, &r).unwrap_or(0) < 1);
    }

    #[test]
    fn ext_gcd_bezout_mod_5() {
        let f = PrimeField::new(5).unwrap();
        let a = from_i64s(&f, &[1, 0, 1]);
        let b = from_i64s(&f, &[-1, 1]);
        let (g, s, t) = ext_gcd(&f, &a, &b);
        assert_eq!(g, vec![1]);
        assert_eq!(add(&f, &mul(&f, &s, &a), &mul(&f, &t, &b)), g);

        let c = from_i64s(&f, &[-1, 0, 1]);
        let (g, _, _) = ext_gcd(&f, &c, &b);
        assert_eq!(g, from_i64s(&f, &[-1, 1]));
    }

    #[test]
    fn derivative_and_eval() {
        let q = Rationals;
        let a = from_i64s(&q, &[3, 0, 2, 1]);
        assert_eq!(derivative(&q, &a), from_i64s(&q, &[0, 4, 3]));
        assert_eq!(eval(&q, &a, &q.from_i64(2)), q.from_i64(19));
    }
}
