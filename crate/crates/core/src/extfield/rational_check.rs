use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ExtensionField, ExtensionKind};
use crate::error::{Error, Result};
use crate::fields::{Rational, Rationals};

/// Q[x]/(g) for monic g. Irreducibility is the caller's claim; it is
/// spot-checked by the rational root test and, in degree 4, by a search for
/// integral quadratic factors. Degrees 2 and 3 are therefore fully certified.
pub fn make_extension(base: Rationals, g: Vec<Rational>) -> Result<ExtensionField<Rationals>> {
    let field = ExtensionField::new_unchecked(base, g)?;
    let h = integral_monic(field.modulus());
    if let Some(r) = integer_root(&h) {
        return Err(Error::ReducibleModulus(format!(
            "modulus has the rational root {}",
            Rational::new(r, scale(field.modulus()))
        )));
    }
    if h.len() == 5 && has_quadratic_factor(&h) {
        return Err(Error::ReducibleModulus(
            "quartic modulus splits into two quadratics".into(),
        ));
    }
    Ok(field.with_kind(ExtensionKind::Rational, None))
}

fn scale(g: &[Rational]) -> BigInt {
    g.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// D^n g(y/D) for D the common denominator: a monic integer polynomial whose
/// roots are D times those of g.
fn integral_monic(g: &[Rational]) -> Vec<BigInt> {
    let d = scale(g);
    let n = g.len() - 1;
    g.iter()
        .enumerate()
        .map(|(i, c)| (c * Rational::from_integer(num_traits::pow(d.clone(), n - i))).to_integer())
        .collect()
}

fn eval(h: &[BigInt], x: &BigInt) -> BigInt {
    h.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let Some(m) = n.to_u64() else {
        // too large to enumerate; the spot check is skipped
        return out;
    };
    let mut d = 1u64;
    while d * d <= m {
        if m % d == 0 {
            out.push(BigInt::from(d));
            if d * d != m {
                out.push(BigInt::from(m / d));
            }
        }
        d += 1;
    }
    out
}

fn integer_root(h: &[BigInt]) -> Option<BigInt> {
    if h[0].is_zero() {
        return Some(BigInt::zero());
    }
    divisors(&h[0])
        .into_iter()
        .flat_map(|d| [d.clone(), -d])
        .find(|r| eval(h, r).is_zero())
}

fn has_quadratic_factor(h: &[BigInt]) -> bool {
    let (a0, a1, a2, a3) = (&h[0], &h[1], &h[2], &h[3]);
    for b in divisors(a0).into_iter().flat_map(|d| [d.clone(), -d]) {
        let d = a0 / &b;
        if d != b {
            let num = a1 - &b * a3;
            let den = &d - &b;
            if !(&num % &den).is_zero() {
                continue;
            }
            let a = num / den;
            let c = a3 - &a;
            if &b + &d + &a * &c == *a2 {
                return true;
            }
        } else {
            if *a1 != &b * a3 {
                continue;
            }
            let disc = a3 * a3 - BigInt::from(4) * (a2 - BigInt::from(2) * &b);
            if disc.is_negative() {
                continue;
            }
            let s = disc.sqrt();
            if &s * &s == disc && (a3 + &s).is_even() {
                return true;
            }
        }
    }
    false
}
