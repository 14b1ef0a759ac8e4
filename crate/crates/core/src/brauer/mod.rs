//! Brauer invariants in Q/Z: the real and p-adic invariant maps and the
//! local invariants of quaternion algebras (a, b) over Q.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::crossed::CyclicAlgebraSpec;
use crate::error::{Error, Result};
use crate::extfield::{residue_of, ExtensionKind, LocalField};
use crate::fields::{is_prime, Field, Rational};
use crate::padic::{rational_unit_part, rational_valuation};
use crate::padic::{sqrt, PadicContext, PadicNumber, Qp};

/// A class in Q/Z, stored as a reduced fraction num/den with 0 <= num < den.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BrauerInvariant {
    num: u64,
    den: u64,
}

impl BrauerInvariant {
    pub const ZERO: Self = Self { num: 0, den: 1 };
    pub const HALF: Self = Self { num: 1, den: 2 };

    /// num/den reduced mod 1.
    pub fn new(num: i64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        let num = num.rem_euclid(den as i64) as u64;
        let g = num.gcd(&den);
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.num.into(), self.den.into())
    }
}

impl fmt::Display for BrauerInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

pub fn inv_add(x: BrauerInvariant, y: BrauerInvariant) -> BrauerInvariant {
    let l = x.den.lcm(&y.den) as u128;
    let n = (x.num as u128 * (l / x.den as u128) + y.num as u128 * (l / y.den as u128)) % l;
    let g = n.gcd(&l);
    BrauerInvariant {
        num: (n / g) as u64,
        den: (l / g) as u64,
    }
}

pub fn inv_neg(x: BrauerInvariant) -> BrauerInvariant {
    if x.num == 0 {
        x
    } else {
        BrauerInvariant {
            num: x.den - x.num,
            den: x.den,
        }
    }
}

/// The order of the class: the reduced denominator.
pub fn inv_order(x: BrauerInvariant) -> u64 {
    x.den
}

/// A place of Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Real,
    Prime(u64),
}

impl Place {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Place::Prime(p))
        } else {
            Err(Error::Precondition(format!("{p} is not prime")))
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "real"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

fn nonzero(a: &Rational, b: &Rational) -> Result<()> {
    if a.is_zero() || b.is_zero() {
        Err(Error::Precondition("quaternion parameters must be nonzero".into()))
    } else {
        Ok(())
    }
}

/// The class of (σ, R(√a), b) at the real place: 1/2 iff a < 0 and b < 0.
pub fn real_invariant(a: &Rational, b: &Rational) -> Result<BrauerInvariant> {
    nonzero(a, b)?;
    Ok(if a.is_negative() && b.is_negative() {
        BrauerInvariant::HALF
    } else {
        BrauerInvariant::ZERO
    })
}

/// (v(r) mod f)/f for (σ, W, r) with W unramified of degree f over Q_p and
/// σ its Frobenius.
pub fn padic_invariant(spec: &CyclicAlgebraSpec<Qp>) -> Result<BrauerInvariant> {
    let w = spec.galois().field();
    if w.kind() != ExtensionKind::Unramified {
        return Err(Error::Unsupported(
            "invariant is defined for unramified cyclic presentations".into(),
        ));
    }
    let (_, f, residue) = LocalField::local_info(w)?;
    let p = w.padic_context().p();
    let image = residue_of(w, spec.galois().sigma().image())?;
    if image != residue.pow(&residue.generator(), p) {
        return Err(Error::Unsupported(
            "automorphism is not the Frobenius".into(),
        ));
    }
    let v = spec.r().valuation().ok_or(Error::DivisionByZero)?;
    BrauerInvariant::new(v.rem_euclid(f as i64), f as u64)
}

/// Precision floor for local quaternion invariants at p.
pub fn required_precision(p: u64) -> u32 {
    if p == 2 {
        4
    } else {
        3
    }
}

/// p^(v mod 2) * unit part, the representative of x modulo squares.
fn square_class(x: &Rational, p: u64) -> (i64, Rational) {
    let v = rational_valuation(x, p).expect("nonzero");
    (v.rem_euclid(2), rational_unit_part(x, p))
}

/// The local invariant of the quaternion algebra (a, b) at a place: 0 when
/// a is a square there, otherwise 1/2 iff b is not a norm from k_v(√a).
pub fn quaternion_local_invariant(
    a: &Rational,
    b: &Rational,
    place: Place,
    precision: u32,
) -> Result<BrauerInvariant> {
    nonzero(a, b)?;
    let p = match place {
        Place::Real => return real_invariant(a, b),
        Place::Prime(p) => p,
    };
    let need = required_precision(p);
    if precision < need {
        return Err(Error::InsufficientPrecision {
            required: need,
            available: precision,
        });
    }
    let isotropic = if p == 2 {
        isotropic_at_two(a, b)
    } else {
        let ctx = PadicContext::new(p, precision)?;
        norm_witness(a, b, &ctx)?.is_some()
    };
    Ok(if isotropic {
        BrauerInvariant::ZERO
    } else {
        BrauerInvariant::HALF
    })
}

/// At odd p, for the square-class representatives a', b': a pair (x, y)
/// with x^2 - a' y^2 = b', or `None` when b' is not a norm from Q_p(√a').
///
/// The candidates are complete: with a', b' of valuation 0 or 1 a solution
/// exists iff one exists with y a unit residue or 0 (both units), with y = 0
/// (a' ramified, b' a unit), or with x = 0 (both ramified).
pub fn norm_witness(
    a: &Rational,
    b: &Rational,
    ctx: &PadicContext,
) -> Result<Option<(PadicNumber, PadicNumber)>> {
    let p = ctx.p();
    if p == 2 {
        return Err(Error::Unsupported("use the residue search at p = 2".into()));
    }
    let lift = |(v, u): (i64, Rational)| ctx.from_rational(&u).mul(&ctx.p_power(v));
    let a = lift(square_class(a, p));
    let b = lift(square_class(b, p));
    if let Some(s) = sqrt(&a)? {
        // (x - s y)(x + s y) = 1 * b
        let half = ctx.from_i64(2).inv()?;
        let x = ctx.one().add(&b).mul(&half);
        let y = b.sub(&ctx.one()).mul(&half).div(&s)?;
        return Ok(Some((x, y)));
    }
    let mut candidates = vec![ctx.zero()];
    for j in 0..=2 {
        for s in 1..p {
            candidates.push(ctx.from_i64(s as i64).mul(&ctx.p_power(j)));
        }
    }
    let qp = Qp::new(ctx);
    let check = |x: &PadicNumber, y: &PadicNumber| {
        let r = x.mul(x).sub(&a.mul(y).mul(y)).sub(&b);
        qp.equal(&r, &ctx.zero())
    };
    for y in &candidates {
        let t = b.add(&a.mul(y).mul(y));
        if let Some(x) = sqrt(&t)? {
            if check(&x, y) {
                return Ok(Some((x, y.clone())));
            }
        }
    }
    for x in &candidates {
        let t = x.mul(x).sub(&b).div(&a)?;
        if let Some(y) = sqrt(&t)? {
            if check(x, &y) {
                return Ok(Some((x.clone(), y)));
            }
        }
    }
    Ok(None)
}

fn v2(n: i64) -> u32 {
    if n == 0 {
        u32::MAX
    } else {
        n.trailing_zeros()
    }
}

/// x^2 - a y^2 - b z^2 has a nontrivial 2-adic zero iff some primitive
/// (x, y, z) mod 32 satisfies Q ≡ 0 mod 2^(2t+1), t the 2-adic valuation
/// of the gradient. For square-class representatives t <= 2 on every
/// primitive zero, so the search is complete, and Hensel makes it sound.
fn isotropic_at_two(a: &Rational, b: &Rational) -> bool {
    let rep = |x: &Rational| -> i64 {
        let (v, u) = square_class(x, 2);
        let m = BigInt::from(64);
        let inv = u
            .denom()
            .mod_floor(&m)
            .extended_gcd(&m)
            .x
            .mod_floor(&m);
        let unit = (u.numer().mod_floor(&m) * inv).mod_floor(&m);
        unit.to_i64().expect("below 64") << v
    };
    let (a, b) = (rep(a), rep(b));
    for x in 0..32i64 {
        for y in 0..32i64 {
            for z in 0..32i64 {
                if x % 2 == 0 && y % 2 == 0 && z % 2 == 0 {
                    continue;
                }
                let q = x * x - a * y * y - b * z * z;
                let t = v2(2 * x).min(v2(2 * a * y)).min(v2(2 * b * z));
                if t <= 2 && q.rem_euclid(1 << (2 * t + 1)) == 0 {
                    return true;
                }
            }
        }
    }
    false
}

/// Prime divisors of a nonzero integer that fits in u64.
fn prime_factors(n: &BigInt) -> Result<Vec<u64>> {
    let mut m = n
        .abs()
        .to_u64()
        .ok_or_else(|| Error::Unsupported("integer too large to factor".into()))?;
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    Ok(out)
}

/// Local invariants of (a, b) at every place where they can be nonzero, the
/// spot checks at places outside that set, and their sum.
#[derive(Debug, Clone, PartialEq)]
pub struct GlobalCheck {
    pub invariants: Vec<(Place, BrauerInvariant)>,
    pub spot_checks: Vec<(Place, BrauerInvariant)>,
    pub sum: BrauerInvariant,
}

impl GlobalCheck {
    /// Sum zero mod 1 and every spot-checked place trivial.
    pub fn holds(&self) -> bool {
        self.sum.is_zero() && self.spot_checks.iter().all(|(_, x)| x.is_zero())
    }
}

/// Number of primes outside the bad set that are checked explicitly.
pub const SPOT_CHECKS: usize = 3;

/// Invariants at the real place and at every prime dividing
/// 2 num(a) den(a) num(b) den(b); asserts triviality at the next
/// [`SPOT_CHECKS`] primes.
pub fn global_sum_check(a: &Rational, b: &Rational, precision: u32) -> Result<GlobalCheck> {
    nonzero(a, b)?;
    let mut primes = vec![2u64];
    for n in [a.numer(), a.denom(), b.numer(), b.denom()] {
        primes.extend(prime_factors(n)?);
    }
    primes.sort_unstable();
    primes.dedup();
    let mut places = vec![Place::Real];
    places.extend(primes.iter().map(|&p| Place::Prime(p)));
    let invariants = places
        .into_iter()
        .map(|v| Ok((v, quaternion_local_invariant(a, b, v, precision)?)))
        .collect::<Result<Vec<_>>>()?;
    let spot_checks = (3u64..)
        .filter(|&q| is_prime(q) && !primes.contains(&q))
        .take(SPOT_CHECKS)
        .map(|q| Ok((Place::Prime(q), quaternion_local_invariant(a, b, Place::Prime(q), precision)?)))
        .collect::<Result<Vec<_>>>()?;
    let sum = invariants
        .iter()
        .fold(BrauerInvariant::ZERO, |acc, (_, x)| inv_add(acc, *x));
    Ok(GlobalCheck {
        invariants,
        spot_checks,
        sum,
    })
}
