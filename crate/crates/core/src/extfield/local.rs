use num_bigint::BigInt;

use super::{Automorphism, ExtensionField, ExtensionKind, LocalInfo};
use crate::error::{Error, Result};
use crate::fields::{find_irreducible, poly, Field, FiniteField, Rational};
use crate::padic::{PadicContext, PadicNumber, Qp};

/// Q_p and certified towers of simple extensions over it. Valuations are
/// normalized so that v(p) = 1.
pub trait LocalField: Field {
    fn padic_context(&self) -> &PadicContext;

    /// [K : Q_p].
    fn absolute_degree(&self) -> usize;

    /// N_{K/Q_p}.
    fn norm_to_qp(&self, a: &Self::Elem) -> PadicNumber;

    /// Least valuation among the Q_p-coordinates of `a`, `None` for zero.
    fn min_coordinate_valuation(&self, a: &Self::Elem) -> Option<i64>;

    /// p^k as an element.
    fn p_power(&self, k: i64) -> Self::Elem;

    /// Absolute (e, f) and residue field; only for certified constructions.
    fn local_info(&self) -> Result<(usize, usize, FiniteField)>;

    fn uniformizer(&self) -> Result<Self::Elem>;

    /// The unique extension of v_p: v(a) = v_p(N(a)) / [K : Q_p]. `None`
    /// signals the infinite valuation of zero.
    fn valuation(&self, a: &Self::Elem) -> Result<Option<Rational>> {
        if self.is_zero(a) {
            return Ok(None);
        }
        let m = self.min_coordinate_valuation(a).expect("nonzero element");
        let primitive = self.mul(a, &self.p_power(-m));
        let ctx = self.padic_context();
        match self.norm_to_qp(&primitive).valuation() {
            Some(v) if v < ctx.precision() as i64 => {
                let n = self.absolute_degree() as i64;
                Ok(Some(Rational::new(v.into(), n.into()) + Rational::from_integer(m.into())))
            }
            _ => Err(Error::PrecisionLoss(
                "norm has no significant digits at the working precision".into(),
            )),
        }
    }
}

impl LocalField for Qp {
    fn padic_context(&self) -> &PadicContext {
        self.context()
    }

    fn absolute_degree(&self) -> usize {
        1
    }

    fn norm_to_qp(&self, a: &PadicNumber) -> PadicNumber {
        a.clone()
    }

    fn min_coordinate_valuation(&self, a: &PadicNumber) -> Option<i64> {
        a.valuation()
    }

    fn p_power(&self, k: i64) -> PadicNumber {
        self.context().p_power(k)
    }

    fn local_info(&self) -> Result<(usize, usize, FiniteField)> {
        Ok((1, 1, FiniteField::canonical(self.context().p(), 1)?))
    }

    fn uniformizer(&self) -> Result<PadicNumber> {
        Ok(self.context().p_power(1))
    }

    fn valuation(&self, a: &PadicNumber) -> Result<Option<Rational>> {
        Ok(a.valuation().map(|v| Rational::from_integer(v.into())))
    }
}

impl<F: LocalField> LocalField for ExtensionField<F> {
    fn padic_context(&self) -> &PadicContext {
        self.base().padic_context()
    }

    fn absolute_degree(&self) -> usize {
        self.degree() * self.base().absolute_degree()
    }

    fn norm_to_qp(&self, a: &Self::Elem) -> PadicNumber {
        self.base().norm_to_qp(&self.norm(a))
    }

    fn min_coordinate_valuation(&self, a: &Self::Elem) -> Option<i64> {
        a.iter()
            .filter_map(|c| self.base().min_coordinate_valuation(c))
            .min()
    }

    fn p_power(&self, k: i64) -> Self::Elem {
        self.from_base(&self.base().p_power(k))
    }

    fn local_info(&self) -> Result<(usize, usize, FiniteField)> {
        self.local_record()
            .map(|l| (l.e, l.f, l.residue.clone()))
            .ok_or_else(|| {
                Error::Unsupported("extension was not built by a certified local route".into())
            })
    }

    fn uniformizer(&self) -> Result<Self::Elem> {
        match self.kind() {
            ExtensionKind::Unramified => Ok(self.from_base(&self.base().uniformizer()?)),
            ExtensionKind::Eisenstein => Ok(self.generator()),
            _ => Err(Error::Unsupported(
                "extension was not built by a certified local route".into(),
            )),
        }
    }
}

/// The local invariants of a certified extension.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalExtensionData<E> {
    /// Ramification index over Q_p.
    pub e: usize,
    /// Residue degree over Q_p.
    pub f: usize,
    /// An element of valuation 1/e.
    pub uniformizer: E,
    pub residue_field: FiniteField,
}

/// Newton iteration for a root of `g` (base coefficients) inside `host`,
/// started from `start`, until every coordinate of g(θ) has valuation >= N.
pub fn lift_root<F: LocalField>(
    host: &ExtensionField<F>,
    g: &[F::Elem],
    start: Vec<F::Elem>,
) -> Result<Vec<F::Elem>> {
    let ctx = host.padic_context();
    let n = ctx.precision() as i64;
    let dg = poly::derivative(host.base(), g);
    let cap = 2 * (32 - (ctx.precision().max(1) - 1).leading_zeros()) as usize + 4;
    let mut theta = start;
    for _ in 0..=cap {
        let r = host.eval_base_poly(g, &theta);
        if host.min_coordinate_valuation(&r).map_or(true, |v| v >= n) {
            return Ok(theta);
        }
        let d = host.eval_base_poly(&dg, &theta);
        let d_inv = host
            .inv(&d)
            .ok_or_else(|| Error::Precondition("root is not simple mod p".into()))?;
        theta = host.sub(&theta, &host.mul(&r, &d_inv));
    }
    Err(Error::PrecisionLoss(
        "Newton iteration did not reach the working precision".into(),
    ))
}

/// The unramified extension of degree f: Q_p[x]/(g) with g the canonical
/// irreducible of degree f mod p lifted coefficientwise. Returns the field,
/// its local data and the Frobenius automorphism, i.e. the automorphism
/// sending the generator α to the root of g congruent to α^p.
pub fn unramified_extension(
    ctx: &PadicContext,
    f: usize,
) -> Result<(ExtensionField<Qp>, LocalExtensionData<Vec<PadicNumber>>, Automorphism<Qp>)> {
    let p = ctx.p();
    let residue_modulus = find_irreducible(p, f)?;
    let residue_field = FiniteField::new(p, residue_modulus.clone())?;
    let qp = Qp::new(ctx);
    let g: Vec<PadicNumber> = residue_modulus
        .iter()
        .map(|&c| ctx.from_bigint(&BigInt::from(c)))
        .collect();
    let w = ExtensionField::new_unchecked(qp, g.clone())?.with_kind(
        ExtensionKind::Unramified,
        Some(LocalInfo {
            e: 1,
            f,
            residue: residue_field.clone(),
        }),
    );
    let start = w.pow(&w.generator(), p);
    let theta = lift_root(&w, &g, start)?;
    let frobenius = Automorphism::new(&w, theta)?;
    let data = LocalExtensionData {
        e: 1,
        f,
        uniformizer: w.p_power(1),
        residue_field,
    };
    Ok((w, data, frobenius))
}

/// Coordinatewise reduction mod p of an integral element of an unramified
/// extension, as an element of its residue field.
pub fn residue_of(w: &ExtensionField<Qp>, a: &[PadicNumber]) -> Result<Vec<u64>> {
    a.iter().map(PadicNumber::residue).collect::<Result<Vec<u64>>>().map(|mut r| {
        r.resize(w.degree(), 0);
        r
    })
}

/// A root in `big` of the modulus of `small`, both unramified over the same
/// Q_p: a residue root is found by enumeration and lifted by Newton.
pub fn embed_unramified(
    small: &ExtensionField<Qp>,
    big: &ExtensionField<Qp>,
) -> Result<Vec<PadicNumber>> {
    let (_, f_small, _) = LocalField::local_info(small)?;
    let (_, f_big, residue) = LocalField::local_info(big)?;
    if small.kind() != ExtensionKind::Unramified || big.kind() != ExtensionKind::Unramified {
        return Err(Error::Unsupported("embedding requires unramified extensions".into()));
    }
    if small.padic_context() != big.padic_context() {
        return Err(Error::IncompatibleTower("extensions over different Q_p".into()));
    }
    if f_big % f_small != 0 {
        return Err(Error::IncompatibleTower(format!(
            "degree {f_small} does not divide {f_big}"
        )));
    }
    let g_res: Vec<u64> = small
        .modulus()
        .iter()
        .map(PadicNumber::residue)
        .collect::<Result<_>>()?;
    let root = residue
        .elements()
        .find(|x| {
            let val = g_res.iter().rev().fold(residue.zero(), |acc, &c| {
                residue.add(&residue.mul(&acc, x), &residue.from_prime(c))
            });
            residue.is_zero(&val)
        })
        .ok_or_else(|| Error::IncompatibleTower("no residue root found".into()))?;
    let ctx = big.padic_context();
    let start: Vec<PadicNumber> = root.iter().map(|&c| ctx.from_i64(c as i64)).collect();
    lift_root(big, small.modulus(), start)
}

/// Monic, integral, every lower coefficient in the maximal ideal and the
/// constant term of minimal positive valuation (a uniformizer of the base).
pub fn is_eisenstein<F: LocalField>(base: &F, g: &[F::Elem]) -> bool {
    let Some(lead) = g.last() else {
        return false;
    };
    if g.len() < 2 || !base.is_one(lead) {
        return false;
    }
    let Ok((e, _, _)) = base.local_info() else {
        return false;
    };
    let unit_step = Rational::new(1.into(), (e as i64).into());
    let zero = Rational::from_integer(0.into());
    for (i, c) in g[..g.len() - 1].iter().enumerate() {
        match base.valuation(c) {
            Ok(None) if i > 0 => {}
            Ok(Some(v)) if i == 0 && v == unit_step => {}
            Ok(Some(v)) if i > 0 && v > zero => {}
            _ => return false,
        }
    }
    true
}

/// L = base[x]/(g) for an Eisenstein g: totally ramified of degree deg g over
/// the base, with the generator as uniformizer.
pub fn ramified_extension<F: LocalField>(
    base: &F,
    g: Vec<F::Elem>,
) -> Result<(ExtensionField<F>, LocalExtensionData<Vec<F::Elem>>)> {
    if !is_eisenstein(base, &g) {
        return Err(Error::Precondition("modulus is not Eisenstein".into()));
    }
    let (e, f, residue) = base.local_info()?;
    let l = ExtensionField::new_unchecked(base.clone(), g)?;
    let e = e * l.degree();
    let l = l.with_kind(
        ExtensionKind::Eisenstein,
        Some(LocalInfo {
            e,
            f,
            residue: residue.clone(),
        }),
    );
    let data = LocalExtensionData {
        e,
        f,
        uniformizer: l.generator(),
        residue_field: residue,
    };
    Ok((l, data))
}

/// The stored absolute (e, f) of a certified extension; e f = [L : Q_p].
pub fn ramification_data<F: LocalField>(l: &ExtensionField<F>) -> Result<(usize, usize)> {
    let (e, f, _) = LocalField::local_info(l)?;
    debug_assert_eq!(e * f, l.absolute_degree());
    Ok((e, f))
}

/// v(a) for the unique extension of v_p to a certified local field.
pub fn extended_valuation<F: LocalField>(field: &F, a: &F::Elem) -> Result<Option<Rational>> {
    field.valuation(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn unramified_degree_two_over_q5() {
        let ctx = PadicContext::new(5, 16).unwrap();
        let (w, data, frob) = unramified_extension(&ctx, 2).unwrap();
        let residues: Vec<u64> = w.modulus().iter().map(|c| c.residue().unwrap()).collect();
        assert_eq!(residues, vec![2, 0, 1]);
        assert_eq!((data.e, data.f), (1, 2));
        // residue action is x -> x^5
        let alpha = w.generator();
        let lhs = residue_of(&w, &frob.apply(&alpha)).unwrap();
        let rhs = data.residue_field.pow(&data.residue_field.generator(), 5);
        assert_eq!(lhs, rhs);
        assert_eq!(frob.order(), Some(2));
        assert_eq!(frob.fixed_dimension(), 1);
    }

    #[test]
    fn degree_one_is_qp() {
        let ctx = PadicContext::new(7, 8).unwrap();
        let (w, data, frob) = unramified_extension(&ctx, 1).unwrap();
        assert_eq!(w.degree(), 1);
        assert!(frob.is_identity());
        assert_eq!((data.e, data.f), (1, 1));
    }

    #[test]
    fn eisenstein_recognition() {
        let ctx = PadicContext::new(5, 10).unwrap();
        let qp = Qp::new(&ctx);
        let zp = |c: &[i64]| -> Vec<PadicNumber> { c.iter().map(|&x| ctx.from_i64(x)).collect() };
        assert!(is_eisenstein(&qp, &zp(&[-5, 0, 1])));
        assert!(!is_eisenstein(&qp, &zp(&[-1, 0, 1])));
        assert!(is_eisenstein(&qp, &zp(&[5, 25, 0, 1])));
        assert!(!is_eisenstein(&qp, &zp(&[25, 25, 0, 1])));
        assert!(!is_eisenstein(&qp, &zp(&[5, 1, 1])));
        assert!(!is_eisenstein(&qp, &zp(&[-5, 0, 2])));
    }

    #[test]
    fn ramified_sqrt_five() {
        let ctx = PadicContext::new(5, 16).unwrap();
        let qp = Qp::new(&ctx);
        let g = vec![ctx.from_i64(-5), ctx.zero(), ctx.one()];
        let (l, data) = ramified_extension(&qp, g).unwrap();
        assert_eq!((data.e, data.f), (2, 1));
        assert_eq!(ramification_data(&l).unwrap(), (2, 1));
        assert_eq!(extended_valuation(&l, &data.uniformizer).unwrap(), Some(q(1, 2)));
        assert_eq!(extended_valuation(&l, &l.zero()).unwrap(), None);
        let bad = vec![ctx.from_i64(-25), ctx.zero(), ctx.one()];
        assert!(ramified_extension(&qp, bad).is_err());
    }

    #[test]
    fn uncertified_extension_has_no_ramification_data() {
        let ctx = PadicContext::new(5, 8).unwrap();
        let l = ExtensionField::new_unchecked(
            Qp::new(&ctx),
            vec![ctx.from_i64(2), ctx.zero(), ctx.one()],
        )
        .unwrap();
        assert!(matches!(ramification_data(&l), Err(Error::Unsupported(_))));
    }
}
