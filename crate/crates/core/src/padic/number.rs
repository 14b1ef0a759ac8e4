use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fields::{is_prime, Rational};

/// Default number of significant base-p digits.
pub const DEFAULT_PRECISION: u32 = 32;

#[derive(Debug)]
struct ContextInner {
    p: u64,
    precision: u32,
    /// p^0, p^1, ..., p^precision
    powers: Vec<BigInt>,
}

/// A prime together with a working precision N: every nonzero number carries
/// exactly N base-p digits in its unit part.
#[derive(Debug, Clone)]
pub struct PadicContext(Arc<ContextInner>);

impl PartialEq for PadicContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.precision == other.0.precision)
    }
}

impl Eq for PadicContext {}

impl PadicContext {
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        if precision == 0 {
            return Err(Error::Precondition("precision must be at least 1".into()));
        }
        let pb = BigInt::from(p);
        let mut powers = vec![BigInt::one()];
        for i in 0..precision as usize {
            let next = &powers[i] * &pb;
            powers.push(next);
        }
        Ok(Self(Arc::new(ContextInner {
            p,
            precision,
            powers,
        })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn precision(&self) -> u32 {
        self.0.precision
    }

    /// p^N, the modulus of the unit part.
    pub fn modulus(&self) -> &BigInt {
        &self.0.powers[self.0.precision as usize]
    }

    pub(crate) fn p_pow(&self, k: u32) -> BigInt {
        match self.0.powers.get(k as usize) {
            Some(x) => x.clone(),
            None => num_traits::pow(BigInt::from(self.0.p), k as usize),
        }
    }

    /// Valuation from which values are treated as numerically zero by the
    /// field-level API (pivoting and equality). Half the working precision.
    pub fn negligible_valuation(&self) -> i64 {
        (self.0.precision as i64 / 2).max(1)
    }

    pub fn zero(&self) -> PadicNumber {
        PadicNumber {
            ctx: self.clone(),
            repr: None,
        }
    }

    pub fn one(&self) -> PadicNumber {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> PadicNumber {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> PadicNumber {
        PadicNumber::from_parts(self, 0, n.clone())
    }

    pub fn from_rational(&self, x: &Rational) -> PadicNumber {
        if x.is_zero() {
            return self.zero();
        }
        let (vn, un) = split_p(x.numer(), self.p());
        let (vd, ud) = split_p(x.denom(), self.p());
        let m = self.modulus();
        let inv = mod_inverse(&ud, m).expect("denominator is prime to p");
        PadicNumber::from_parts(self, vn - vd, (un * inv).mod_floor(m))
    }

    /// `p^k`.
    pub fn p_power(&self, k: i64) -> PadicNumber {
        PadicNumber {
            ctx: self.clone(),
            repr: Some((k, BigInt::one())),
        }
    }
}

/// Splits off the p-part of a nonzero integer: n = p^v * u.
fn split_p(n: &BigInt, p: u64) -> (i64, BigInt) {
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut u = n.clone();
    loop {
        let (q, r) = u.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        u = q;
        v += 1;
    }
    (v, u)
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// An element of Q_p stored as p^v * u with u a unit modulo p^N, or zero.
#[derive(Clone, PartialEq)]
pub struct PadicNumber {
    ctx: PadicContext,
    repr: Option<(i64, BigInt)>,
}

impl PadicNumber {
    /// Normalizes `p^v * n` for an arbitrary integer n.
    fn from_parts(ctx: &PadicContext, v: i64, n: BigInt) -> Self {
        if n.is_zero() {
            return ctx.zero();
        }
        let (k, u) = split_p(&n, ctx.p());
        Self {
            ctx: ctx.clone(),
            repr: Some((v + k, u.mod_floor(ctx.modulus()))),
        }
    }

    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_none()
    }

    /// The valuation, `None` for zero (infinite valuation).
    pub fn valuation(&self) -> Option<i64> {
        self.repr.as_ref().map(|(v, _)| *v)
    }

    /// The unit part in `[0, p^N)`.
    pub fn unit(&self) -> Option<&BigInt> {
        self.repr.as_ref().map(|(_, u)| u)
    }

    /// |x|_p = p^{-v(x)}.
    pub fn abs(&self) -> f64 {
        match self.valuation() {
            None => 0.0,
            Some(v) => (self.ctx.p() as f64).powi(-(v as i32)),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.valuation().map_or(true, |v| v >= 0)
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Some(0)
    }

    pub fn neg(&self) -> Self {
        match &self.repr {
            None => self.clone(),
            Some((v, u)) => Self {
                ctx: self.ctx.clone(),
                repr: Some((*v, (self.ctx.modulus() - u).mod_floor(self.ctx.modulus()))),
            },
        }
    }

    fn add_impl(&self, other: &Self) -> std::result::Result<Self, Self> {
        let (Some((vx, ux)), Some((vy, uy))) = (&self.repr, &other.repr) else {
            return Ok(if self.is_zero() { other.clone() } else { self.clone() });
        };
        let n = self.ctx.precision() as i64;
        let (vlow, ulow, uhigh, d) = if vx <= vy {
            (*vx, ux, uy, vy - vx)
        } else {
            (*vy, uy, ux, vx - vy)
        };
        if d >= n {
            return Ok(if vx <= vy { self.clone() } else { other.clone() });
        }
        let m = self.ctx.modulus();
        let s = (ulow + uhigh * self.ctx.p_pow(d as u32)).mod_floor(m);
        if s.is_zero() {
            return Err(self.ctx.zero());
        }
        Ok(Self::from_parts(&self.ctx, vlow, s))
    }

    /// Sum at working precision. When the operands cancel in all N digits the
    /// result is zero, which is exactly what `x + (-x)` produces.
    pub fn add(&self, other: &Self) -> Self {
        self.add_impl(other).unwrap_or_else(|z| z)
    }

    /// Like [`add`](Self::add) but reports total cancellation of two nonzero
    /// operands as a precision-loss error instead of returning zero.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.add_impl(other).map_err(|_| {
            Error::PrecisionLoss("addition cancelled every significant digit".into())
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (&self.repr, &other.repr) {
            (Some((vx, ux)), Some((vy, uy))) => Self {
                ctx: self.ctx.clone(),
                repr: Some((vx + vy, (ux * uy).mod_floor(self.ctx.modulus()))),
            },
            _ => self.ctx.zero(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let (v, u) = self.repr.as_ref().ok_or(Error::DivisionByZero)?;
        let inv = mod_inverse(u, self.ctx.modulus()).expect("unit part is a unit");
        Ok(Self {
            ctx: self.ctx.clone(),
            repr: Some((-v, inv)),
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u64) -> Self {
        match &self.repr {
            None if e == 0 => self.ctx.one(),
            None => self.clone(),
            Some((v, u)) => Self {
                ctx: self.ctx.clone(),
                repr: Some((v * e as i64, u.modpow(&BigInt::from(e), self.ctx.modulus()))),
            },
        }
    }

    /// Whether `self = other mod p^k` (absolute precision k).
    pub fn eq_mod(&self, other: &Self, k: i64) -> bool {
        self.sub(other).valuation().map_or(true, |v| v >= k)
    }

    /// The represented value p^v * u as an exact rational.
    pub fn to_rational(&self) -> Rational {
        match &self.repr {
            None => Rational::zero(),
            Some((v, u)) => {
                let pv = self.ctx.p_pow(v.unsigned_abs() as u32);
                if *v >= 0 {
                    Rational::from_integer(u * pv)
                } else {
                    Rational::new(u.clone(), pv)
                }
            }
        }
    }

    /// For integral x, the representative of x mod p^k in `[0, p^k)`.
    pub fn to_integer_mod(&self, k: u32) -> Result<BigInt> {
        let m = self.ctx.p_pow(k);
        match &self.repr {
            None => Ok(BigInt::zero()),
            Some((v, _)) if *v < 0 => Err(Error::Precondition(format!(
                "{self} is not a p-adic integer"
            ))),
            Some((v, u)) => {
                if *v >= k as i64 {
                    Ok(BigInt::zero())
                } else {
                    Ok((u * self.ctx.p_pow(*v as u32)).mod_floor(&m))
                }
            }
        }
    }

    /// Residue class mod p of an integral element.
    pub fn residue(&self) -> Result<u64> {
        Ok(self.to_integer_mod(1)?.to_u64().expect("residue is below p"))
    }

    /// Base-p digits of the unit part, least significant first (N digits).
    pub fn unit_digits(&self) -> Vec<u64> {
        let p = BigInt::from(self.ctx.p());
        let mut u = self.unit().cloned().unwrap_or_default();
        (0..self.ctx.precision())
            .map(|_| {
                let (q, r) = u.div_rem(&p);
                u = q;
                r.to_u64().unwrap()
            })
            .collect()
    }

    /// Truncated digit expansion `a_0 + a_1·p + a_2·p² + … + O(p^k)`.
    pub fn expansion(&self) -> String {
        let p = self.ctx.p();
        let n = self.ctx.precision() as i64;
        let Some(v) = self.valuation() else {
            return format!("O({})", power_str(p, n));
        };
        let mut terms: Vec<String> = self
            .unit_digits()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(i, &d)| {
                let e = v + i as i64;
                if e == 0 {
                    d.to_string()
                } else {
                    format!("{d}·{}", power_str(p, e))
                }
            })
            .collect();
        terms.push(format!("O({})", power_str(p, v + n)));
        terms.join(" + ")
    }
}

fn superscript(n: i64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut s: String = n
        .unsigned_abs()
        .to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect();
    if n < 0 {
        s.insert(0, '⁻');
    }
    s
}

fn power_str(p: u64, e: i64) -> String {
    if e == 1 {
        p.to_string()
    } else {
        format!("{p}{}", superscript(e))
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.expansion())
    }
}

impl fmt::Debug for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            None => write!(f, "0 (Q_{})", self.ctx.p()),
            Some((v, u)) => write!(f, "{}^{} * {} (Q_{}, N={})", self.ctx.p(), v, u, self.ctx.p(), self.ctx.precision()),
        }
    }
}

/// v_p of a nonzero rational.
pub fn rational_valuation(x: &Rational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(split_p(x.numer(), p).0 - split_p(x.denom(), p).0)
}

/// The unit part x / p^{v_p(x)} of a nonzero rational, still as a rational.
pub fn rational_unit_part(x: &Rational, p: u64) -> Rational {
    let (_, un) = split_p(x.numer(), p);
    let (_, ud) = split_p(x.denom(), p);
    Rational::new(un, ud)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_of_fifty() {
        let ctx = PadicContext::new(5, 4).unwrap();
        let x = ctx.from_i64(50);
        assert_eq!(x.valuation(), Some(2));
        assert_eq!(x.unit(), Some(&BigInt::from(2)));
    }

    #[test]
    fn one_third_in_q5() {
        let ctx = PadicContext::new(5, 3).unwrap();
        let x = ctx.from_rational(&Rational::new(1.into(), 3.into()));
        assert_eq!(x.valuation(), Some(0));
        assert_eq!(x.unit(), Some(&BigInt::from(42)));
        assert_eq!(ctx.from_i64(3).inv().unwrap(), x);
    }

    #[test]
    fn cancellation() {
        let ctx = PadicContext::new(7, 6).unwrap();
        let x = ctx.from_rational(&Rational::new(22.into(), 7.into()));
        assert!(x.add(&x.neg()).is_zero());
        assert!(matches!(
            x.checked_add(&x.neg()),
            Err(Error::PrecisionLoss(_))
        ));
        assert_eq!(x.checked_add(&ctx.zero()).unwrap(), x);
        // partial cancellation raises the valuation
        let y = ctx.from_i64(1).sub(&ctx.from_i64(50));
        assert_eq!(y.valuation(), Some(2));
    }

    #[test]
    fn inverse_of_zero() {
        let ctx = PadicContext::new(3, 5).unwrap();
        assert_eq!(ctx.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn rational_round_trip() {
        let ctx = PadicContext::new(3, 10).unwrap();
        for (n, d) in [(5, 9), (-7, 2), (18, 1), (-1, 1)] {
            let r = Rational::new(n.into(), d.into());
            let x = ctx.from_rational(&r);
            let back = ctx.from_rational(&x.to_rational());
            assert_eq!(back, x);
        }
    }

    #[test]
    fn expansion_format() {
        let ctx = PadicContext::new(7, 3).unwrap();
        assert_eq!(ctx.from_i64(108).expansion(), "3 + 1·7 + 2·7² + O(7³)");
        assert_eq!(ctx.from_i64(49).expansion(), "1·7² + O(7⁵)");
        assert_eq!(ctx.zero().expansion(), "O(7³)");
        let x = ctx.from_rational(&Rational::new(1.into(), 7.into()));
        assert_eq!(x.expansion(), "1·7⁻¹ + O(7²)");
    }

    #[test]
    fn helpers_on_rationals() {
        let x = Rational::new((-75).into(), 4.into());
        assert_eq!(rational_valuation(&x, 5), Some(2));
        assert_eq!(rational_valuation(&x, 2), Some(-2));
        assert_eq!(rational_unit_part(&x, 5), Rational::new((-3).into(), 4.into()));
    }
}
