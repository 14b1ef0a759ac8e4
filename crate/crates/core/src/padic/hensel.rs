use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::number::{PadicContext, PadicNumber};
use crate::error::{Error, Result};
use crate::fields::{poly, PrimeField};

fn eval(f: &[PadicNumber], x: &PadicNumber) -> PadicNumber {
    let ctx = x.context();
    f.iter().rev().fold(ctx.zero(), |acc, c| acc.mul(x).add(c))
}

fn derivative(f: &[PadicNumber]) -> Vec<PadicNumber> {
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.mul(&c.context().from_i64(i as i64)))
        .collect()
}

fn iteration_cap(ctx: &PadicContext) -> usize {
    let n = ctx.precision().max(1);
    2 * (32 - (n - 1).leading_zeros()) as usize + 4
}

/// Newton iteration r <- r - f(r)/f'(r) from a start with
/// v(f(r0)) > 2 v(f'(r0)); stops once v(f(r)) >= N.
pub fn newton_lift(f: &[PadicNumber], r0: &PadicNumber) -> Result<PadicNumber> {
    let ctx = r0.context().clone();
    let n = ctx.precision() as i64;
    let df = derivative(f);
    let t = eval(&df, r0)
        .valuation()
        .ok_or_else(|| Error::Precondition("derivative vanishes at the start point".into()))?;
    if let Some(v) = eval(f, r0).valuation() {
        if v <= 2 * t {
            return Err(Error::Precondition(format!(
                "start point not close enough: v(f) = {v}, v(f') = {t}"
            )));
        }
    }
    let mut r = r0.clone();
    for _ in 0..iteration_cap(&ctx) {
        let fr = eval(f, &r);
        if fr.valuation().map_or(true, |v| v >= n) {
            return Ok(r);
        }
        let step = fr.div(&eval(&df, &r))?;
        r = r.sub(&step);
    }
    let fr = eval(f, &r);
    if fr.valuation().map_or(true, |v| v >= n) {
        Ok(r)
    } else {
        Err(Error::PrecisionLoss(
            "Newton iteration did not reach the working precision".into(),
        ))
    }
}

fn check_monic_integral(f: &[PadicNumber]) -> Result<()> {
    let Some(lead) = f.last() else {
        return Err(Error::Precondition("zero polynomial".into()));
    };
    let ctx = lead.context();
    if !lead.eq_mod(&ctx.one(), ctx.precision() as i64) {
        return Err(Error::Precondition("polynomial is not monic".into()));
    }
    if !f.iter().all(PadicNumber::is_integral) {
        return Err(Error::Precondition(
            "polynomial has non-integral coefficients".into(),
        ));
    }
    Ok(())
}

/// Lifts a simple root of f mod p to a root in Z_p at the working precision.
pub fn hensel_lift_root(f: &[PadicNumber], a0: &PadicNumber) -> Result<PadicNumber> {
    check_monic_integral(f)?;
    if !a0.is_integral() {
        return Err(Error::Precondition("start value is not integral".into()));
    }
    if eval(f, a0).valuation().map_or(false, |v| v < 1) {
        return Err(Error::Precondition("start value is not a root mod p".into()));
    }
    if !eval(&derivative(f), a0).is_unit() {
        return Err(Error::Precondition("root is not simple mod p".into()));
    }
    newton_lift(f, a0)
}

type ZPoly = Vec<BigInt>;

fn ztrim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn zreduce(a: &[BigInt], m: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zadd(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let out: ZPoly = (0..n)
        .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
        .collect();
    zreduce(&out, m)
}

fn zsub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let neg: ZPoly = b.iter().map(|c| -c).collect();
    zadd(a, &neg, m)
}

fn zmul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zreduce(&out, m)
}

/// Division by a monic polynomial over Z/m.
fn zdivrem(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let db = b.len() - 1;
    let mut r = zreduce(a, m);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr].clone();
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = (&r[shift + i] - &c * bc).mod_floor(m);
        }
        q[shift] = c;
        r = ztrim(r);
    }
    (ztrim(q), r)
}

/// Quadratic Hensel lifting of a coprime factorization f = g0 h0 mod p to
/// monic g, h with f = g h mod p^N.
pub fn hensel_factor(
    f: &[PadicNumber],
    g0: &[u64],
    h0: &[u64],
    ctx: &PadicContext,
) -> Result<(Vec<PadicNumber>, Vec<PadicNumber>)> {
    check_monic_integral(f)?;
    let fp = PrimeField::new(ctx.p())?;
    let g0 = poly::trim(&fp, g0.iter().map(|c| c % ctx.p()).collect());
    let h0 = poly::trim(&fp, h0.iter().map(|c| c % ctx.p()).collect());
    if g0.last() != Some(&1) || h0.last() != Some(&1) {
        return Err(Error::Precondition("residue factors must be monic".into()));
    }
    let n = ctx.precision();
    let fz: ZPoly = f
        .iter()
        .map(|c| c.to_integer_mod(n))
        .collect::<Result<_>>()?;
    let f_res: Vec<u64> = fz
        .iter()
        .map(|c| (c % BigInt::from(ctx.p())).try_into().unwrap())
        .collect();
    if poly::trim(&fp, f_res) != poly::mul(&fp, &g0, &h0) {
        return Err(Error::Precondition(
            "residue factors do not multiply to f mod p".into(),
        ));
    }
    let (gcd, s0, t0) = poly::ext_gcd(&fp, &g0, &h0);
    if gcd != vec![1] {
        return Err(Error::Precondition("residue factors are not coprime".into()));
    }
    let lift = |a: &[u64]| -> ZPoly { a.iter().map(|&c| BigInt::from(c)).collect() };
    let (mut g, mut h, mut s, mut t) = (lift(&g0), lift(&h0), lift(&s0), lift(&t0));
    let mut k = 1;
    while k < n {
        k = (2 * k).min(n);
        let m = ctx.p_pow(k);
        let e = zsub(&fz, &zmul(&g, &h, &m), &m);
        let (q, r) = zdivrem(&zmul(&s, &e, &m), &h, &m);
        let g_new = zadd(&zadd(&g, &zmul(&t, &e, &m), &m), &zmul(&q, &g, &m), &m);
        let h_new = zadd(&h, &r, &m);
        let b = zsub(
            &zadd(&zmul(&s, &g_new, &m), &zmul(&t, &h_new, &m), &m),
            &[BigInt::one()],
            &m,
        );
        let (c, d) = zdivrem(&zmul(&s, &b, &m), &h_new, &m);
        s = zsub(&s, &d, &m);
        t = zsub(&zsub(&t, &zmul(&t, &b, &m), &m), &zmul(&c, &g_new, &m), &m);
        g = g_new;
        h = h_new;
    }
    let to_padic = |a: &ZPoly| -> Vec<PadicNumber> { a.iter().map(|c| ctx.from_bigint(c)).collect() };
    Ok((to_padic(&g), to_padic(&h)))
}
