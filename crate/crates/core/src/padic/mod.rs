//! Q_p at fixed working precision: numbers, the [`Qp`] field, Teichmüller
//! representatives, Hensel lifting and square tests.
//!
//! Valuations are additive, normalized so v(p) = 1; the absolute value is
//! |x| = p^{-v(x)}.

mod hensel;
mod number;

use num_bigint::BigInt;

pub use hensel::{hensel_factor, hensel_lift_root, newton_lift};
pub use number::{
    rational_unit_part, rational_valuation, PadicContext, PadicNumber, DEFAULT_PRECISION,
};

use crate::error::{Error, Result};
use crate::fields::{Field, PrimeField};

/// Q_p viewed as a [`Field`]. Exact zero is structural; values of valuation at
/// least [`PadicContext::negligible_valuation`] are treated as zero for pivoting
/// and equality.
#[derive(Debug, Clone, PartialEq)]
pub struct Qp {
    ctx: PadicContext,
}

impl Qp {
    pub fn new(ctx: &PadicContext) -> Self {
        Self { ctx: ctx.clone() }
    }

    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    fn negligible(&self, a: &PadicNumber) -> bool {
        a.valuation()
            .map_or(true, |v| v >= self.ctx.negligible_valuation())
    }
}

impl Field for Qp {
    type Elem = PadicNumber;

    fn zero(&self) -> PadicNumber {
        self.ctx.zero()
    }

    fn one(&self) -> PadicNumber {
        self.ctx.one()
    }

    fn from_i64(&self, n: i64) -> PadicNumber {
        self.ctx.from_i64(n)
    }

    fn add(&self, a: &PadicNumber, b: &PadicNumber) -> PadicNumber {
        a.add(b)
    }

    fn neg(&self, a: &PadicNumber) -> PadicNumber {
        a.neg()
    }

    fn sub(&self, a: &PadicNumber, b: &PadicNumber) -> PadicNumber {
        a.sub(b)
    }

    fn mul(&self, a: &PadicNumber, b: &PadicNumber) -> PadicNumber {
        a.mul(b)
    }

    fn inv(&self, a: &PadicNumber) -> Option<PadicNumber> {
        a.inv().ok()
    }

    fn is_zero(&self, a: &PadicNumber) -> bool {
        a.is_zero()
    }

    fn equal(&self, a: &PadicNumber, b: &PadicNumber) -> bool {
        self.negligible(&a.sub(b))
    }

    fn pow(&self, a: &PadicNumber, e: u64) -> PadicNumber {
        a.pow(e)
    }

    fn pivot_weight(&self, a: &PadicNumber) -> Option<i64> {
        if self.negligible(a) {
            None
        } else {
            a.valuation()
        }
    }

    fn is_exact(&self) -> bool {
        false
    }

    fn name(&self) -> String {
        format!("Q_{}", self.ctx.p())
    }
}

/// The p Teichmüller representatives, indexed by residue.
#[derive(Debug, Clone)]
pub struct TeichmullerSet {
    ctx: PadicContext,
    values: Vec<PadicNumber>,
}

impl TeichmullerSet {
    pub fn new(ctx: &PadicContext) -> Self {
        let values = (0..ctx.p())
            .map(|a| teichmuller(a, ctx).expect("residue in range"))
            .collect();
        Self {
            ctx: ctx.clone(),
            values,
        }
    }

    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn get(&self, residue: u64) -> &PadicNumber {
        &self.values[residue as usize]
    }

    pub fn values(&self) -> &[PadicNumber] {
        &self.values
    }
}

/// The Teichmüller lift of a residue: the unique ω = a mod p with ω^p = ω,
/// found as the limit of x -> x^p started at a.
pub fn teichmuller(a: u64, ctx: &PadicContext) -> Result<PadicNumber> {
    if a >= ctx.p() {
        return Err(Error::Precondition(format!(
            "residue {a} is not in 0..{}",
            ctx.p()
        )));
    }
    let n = ctx.precision() as i64;
    let mut x = ctx.from_i64(a as i64);
    // each step fixes at least one more digit
    for _ in 0..=n {
        let next = x.pow(ctx.p());
        if next.eq_mod(&x, n) {
            return Ok(next);
        }
        x = next;
    }
    Ok(x)
}

/// Whether a nonzero p-adic number is a square in Q_p.
pub fn is_square(x: &PadicNumber) -> Result<bool> {
    let ctx = x.context();
    let (v, u) = match (x.valuation(), x.unit()) {
        (Some(v), Some(u)) => (v, u),
        _ => return Err(Error::Precondition("square test of zero".into())),
    };
    if ctx.p() == 2 {
        if ctx.precision() < 3 {
            return Err(Error::InsufficientPrecision {
                required: 3,
                available: ctx.precision(),
            });
        }
        return Ok(v % 2 == 0 && u % BigInt::from(8) == BigInt::from(1));
    }
    let fp = PrimeField::new(ctx.p())?;
    let r = (u % BigInt::from(ctx.p())).try_into().expect("residue fits u64");
    Ok(v % 2 == 0 && fp.is_square(r))
}

/// A square root of x in Q_p if one exists. At p = 2 the root is accurate to
/// one digit less than the working precision.
pub fn sqrt(x: &PadicNumber) -> Result<Option<PadicNumber>> {
    if x.is_zero() {
        return Ok(Some(x.clone()));
    }
    if !is_square(x)? {
        return Ok(None);
    }
    let ctx = x.context();
    let v = x.valuation().unwrap();
    let u = x.div(&ctx.p_power(v))?;
    let f = [u.neg(), ctx.zero(), ctx.one()];
    let root = if ctx.p() == 2 {
        newton_lift(&f, &ctx.one())?
    } else {
        let fp = PrimeField::new(ctx.p())?;
        let target = u.residue()?;
        let r0 = (1..ctx.p())
            .find(|&r| fp.mul(&r, &r) == target)
            .expect("unit residue is a quadratic residue");
        hensel_lift_root(&f, &ctx.from_i64(r0 as i64))?
    };
    Ok(Some(root.mul(&ctx.p_power(v / 2))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Rational;

    #[test]
    fn teichmuller_examples() {
        let ctx = PadicContext::new(5, 4).unwrap();
        assert!(teichmuller(0, &ctx).unwrap().is_zero());
        assert_eq!(teichmuller(1, &ctx).unwrap(), ctx.one());
        let w = teichmuller(2, &ctx).unwrap();
        assert_eq!(w.residue().unwrap(), 2);
        assert!(w.pow(5).eq_mod(&w, 4));
        // independent oracle: iterate x -> x^5 on plain integers mod 625
        let mut x: u64 = 2;
        for _ in 0..8 {
            x = (0..5).fold(1, |acc, _| acc * x % 625);
        }
        assert_eq!(w.to_integer_mod(4).unwrap(), BigInt::from(x));
        assert!(teichmuller(5, &ctx).is_err());
    }

    #[test]
    fn square_tests() {
        let q7 = PadicContext::new(7, 10).unwrap();
        assert!(is_square(&q7.one()).unwrap());
        assert!(is_square(&q7.from_i64(2)).unwrap());
        assert!(!is_square(&q7.from_i64(3)).unwrap());
        let q5 = PadicContext::new(5, 10).unwrap();
        assert!(!is_square(&q5.from_i64(5)).unwrap());
        assert!(is_square(&q5.from_i64(25 * 4)).unwrap());
        let q2 = PadicContext::new(2, 10).unwrap();
        assert!(is_square(&q2.from_i64(17)).unwrap());
        assert!(!is_square(&q2.from_i64(-1)).unwrap());
        assert!(!is_square(&q2.from_i64(2)).unwrap());
        let low = PadicContext::new(2, 2).unwrap();
        assert!(matches!(
            is_square(&low.one()),
            Err(Error::InsufficientPrecision { .. })
        ));
        assert!(is_square(&q7.zero()).is_err());
    }

    #[test]
    fn square_roots() {
        for (p, n) in [(7u64, 2i64), (2, 17), (2, -7), (3, 9 * 7), (5, -1)] {
            let ctx = PadicContext::new(p, 20).unwrap();
            let x = ctx.from_i64(n);
            let r = sqrt(&x).unwrap().unwrap();
            let k = x.valuation().unwrap() + 19;
            assert!(r.mul(&r).eq_mod(&x, k), "p={p} n={n}");
        }
        let ctx = PadicContext::new(3, 10).unwrap();
        assert!(sqrt(&ctx.from_i64(2)).unwrap().is_none());
        let q = ctx.from_rational(&Rational::new(4.into(), 9.into()));
        let r = sqrt(&q).unwrap().unwrap();
        assert_eq!(r.valuation(), Some(-1));
    }

    #[test]
    fn field_level_negligibility() {
        let ctx = PadicContext::new(5, 8).unwrap();
        let qp = Qp::new(&ctx);
        let tiny = ctx.p_power(4);
        assert!(qp.equal(&tiny, &ctx.zero()));
        assert_eq!(qp.pivot_weight(&tiny), None);
        assert_eq!(qp.pivot_weight(&ctx.p_power(3)), Some(3));
        assert!(!qp.is_zero(&tiny));
    }
}
