//! Simple extensions base[x]/(g), their regular representation and norm,
//! automorphisms, and the certified local constructions over Q_p.

mod automorphism;
mod local;
mod rational_check;

pub use automorphism::Automorphism;
pub use local::{
    embed_unramified, extended_valuation, is_eisenstein, lift_root, ramification_data, ramified_extension, residue_of,
    unramified_extension, LocalExtensionData, LocalField,
};
pub use rational_check::make_extension;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fields::{poly, FiniteField, Field};
use crate::linalg::{self, Matrix};

/// How an extension was built; only certified routes carry local data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionKind {
    /// Over Q, with the modulus spot-checked for irreducibility.
    Rational,
    /// Over a p-adic base, modulus irreducible mod p.
    Unramified,
    /// Over a p-adic base, Eisenstein modulus.
    Eisenstein,
    /// No irreducibility certificate.
    Unchecked,
}

impl ExtensionKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Rational => "rational",
            Self::Unramified => "unramified",
            Self::Eisenstein => "eisenstein",
            Self::Unchecked => "unchecked",
        }
    }
}

/// Absolute ramification data over Q_p, recorded at construction.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct LocalInfo {
    pub e: usize,
    pub f: usize,
    pub residue: FiniteField,
}

/// The field base[x]/(g) for a monic g. Elements are coordinate vectors of
/// length n = deg g in the power basis 1, x, ..., x^{n-1}.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionField<F: Field> {
    base: F,
    modulus: Vec<F::Elem>,
    kind: ExtensionKind,
    local: Option<LocalInfo>,
}

impl<F: Field> ExtensionField<F> {
    /// An extension with no irreducibility check. Arithmetic is only a field
    /// if the caller knows g to be irreducible.
    pub fn new_unchecked(base: F, modulus: Vec<F::Elem>) -> Result<Self> {
        let modulus = poly::trim(&base, modulus);
        match modulus.last() {
            Some(lead) if modulus.len() >= 2 && base.is_one(lead) => {}
            _ => {
                return Err(Error::Precondition(
                    "extension modulus must be monic of degree >= 1".into(),
                ))
            }
        }
        Ok(Self {
            base,
            modulus,
            kind: ExtensionKind::Unchecked,
            local: None,
        })
    }

    pub(crate) fn with_kind(mut self, kind: ExtensionKind, local: Option<LocalInfo>) -> Self {
        self.kind = kind;
        self.local = local;
        self
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn modulus(&self) -> &[F::Elem] {
        &self.modulus
    }

    pub fn kind(&self) -> ExtensionKind {
        self.kind
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub(crate) fn local_record(&self) -> Option<&LocalInfo> {
        self.local.as_ref()
    }

    /// The class of x.
    pub fn generator(&self) -> Vec<F::Elem> {
        if self.degree() == 1 {
            // x = -g_0 in a degree-one extension
            return vec![self.base.neg(&self.modulus[0])];
        }
        let mut out = self.zero();
        out[1] = self.base.one();
        out
    }

    pub fn from_base(&self, a: &F::Elem) -> Vec<F::Elem> {
        let mut out = self.zero();
        out[0] = a.clone();
        out
    }

    /// Reduces an arbitrary polynomial in x into the field.
    pub fn from_poly(&self, a: &[F::Elem]) -> Vec<F::Elem> {
        self.reduce(a.to_vec())
    }

    fn reduce(&self, mut a: Vec<F::Elem>) -> Vec<F::Elem> {
        let n = self.degree();
        let b = &self.base;
        // the modulus is monic, so reduction uses ring operations only
        for top in (n..a.len()).rev() {
            let c = a[top].clone();
            if b.is_zero(&c) {
                continue;
            }
            for (i, m) in self.modulus[..n].iter().enumerate() {
                a[top - n + i] = b.sub(&a[top - n + i], &b.mul(&c, m));
            }
        }
        a.truncate(n);
        a.resize(n, b.zero());
        a
    }

    /// Evaluates a polynomial with base coefficients at an element.
    pub fn eval_base_poly(&self, g: &[F::Elem], x: &[F::Elem]) -> Vec<F::Elem> {
        let x = x.to_vec();
        g.iter()
            .rev()
            .fold(self.zero(), |acc, c| self.add(&self.mul(&acc, &x), &self.from_base(c)))
    }

    /// Matrix of y -> a y in the power basis: column j holds the
    /// coordinates of a x^j.
    pub fn regular_rep(&self, a: &[F::Elem]) -> Matrix<F::Elem> {
        let n = self.degree();
        let mut cols = Vec::with_capacity(n);
        let mut cur = a.to_vec();
        let x = self.generator();
        for _ in 0..n {
            cols.push(cur.clone());
            cur = self.mul(&cur, &x);
        }
        linalg::transpose(&cols)
    }

    /// N_{L/base}(a) = det of the regular representation.
    pub fn norm(&self, a: &[F::Elem]) -> F::Elem {
        linalg::det(&self.base, &self.regular_rep(a))
    }

    pub fn trace(&self, a: &[F::Elem]) -> F::Elem {
        let m = self.regular_rep(a);
        (0..self.degree()).fold(self.base.zero(), |acc, i| self.base.add(&acc, &m[i][i]))
    }

    /// Nested record `{base, modulus, kind}`; coefficients are rendered by
    /// `coeff`.
    pub fn describe_with(&self, base: Value, coeff: impl Fn(&F::Elem) -> Value) -> Value {
        json!({
            "base": base,
            "modulus": self.modulus.iter().map(coeff).collect::<Vec<_>>(),
            "kind": self.kind.as_str(),
        })
    }
}

impl<F: Field> Field for ExtensionField<F> {
    type Elem = Vec<F::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.degree()]
    }

    fn one(&self) -> Self::Elem {
        self.from_base(&self.base.one())
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_base(&self.base.from_i64(n))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = self.degree();
        let f = &self.base;
        let mut prod = vec![f.zero(); 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !f.is_zero(y) {
                    prod[i + j] = f.add(&prod[i + j], &f.mul(x, y));
                }
            }
        }
        self.reduce(prod)
    }

    /// Extended Euclid against the modulus over exact bases; over p-adic
    /// bases a linear solve with valuation pivoting instead, which stays
    /// well conditioned when a coordinate is tiny but nonzero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.base.is_exact() {
            if self.is_zero(a) {
                return None;
            }
            let (g, s, _) = poly::ext_gcd(&self.base, a, &self.modulus);
            if g.len() != 1 {
                return None;
            }
            let mut s = s;
            s.resize(self.degree(), self.base.zero());
            Some(s)
        } else {
            if a.iter().all(|c| self.base.pivot_weight(c).is_none()) {
                return None;
            }
            let rep = self.regular_rep(a);
            let x = linalg::solve(&self.base, &rep, &self.one())?;
            Some(x)
        }
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|x| self.base.is_zero(x))
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a.iter().zip(b).all(|(x, y)| self.base.equal(x, y))
    }

    fn pivot_weight(&self, a: &Self::Elem) -> Option<i64> {
        a.iter().filter_map(|x| self.base.pivot_weight(x)).min()
    }

    fn is_exact(&self) -> bool {
        self.base.is_exact()
    }

    fn name(&self) -> String {
        format!("{}[x]/(deg {})", self.base.name(), self.degree())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{Rational, Rationals};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn gaussian() -> ExtensionField<Rationals> {
        make_extension(Rationals, vec![q(1, 1), q(0, 1), q(1, 1)]).unwrap()
    }

    #[test]
    fn gaussian_arithmetic() {
        let l = gaussian();
        let i = l.generator();
        assert_eq!(l.mul(&i, &i), l.from_i64(-1));
        let a = vec![q(1, 1), q(1, 1)];
        assert_eq!(l.inv(&a).unwrap(), vec![q(1, 2), q(-1, 2)]);
        assert_eq!(l.inv(&l.zero()), None);
    }

    #[test]
    fn root_two() {
        let l = make_extension(Rationals, vec![q(-2, 1), q(0, 1), q(1, 1)]).unwrap();
        let s = l.generator();
        assert_eq!(l.mul(&s, &s), l.from_i64(2));
    }

    #[test]
    fn regular_rep_and_norm() {
        let l = gaussian();
        let a = vec![q(2, 1), q(1, 1)];
        assert_eq!(
            l.regular_rep(&a),
            vec![vec![q(2, 1), q(-1, 1)], vec![q(1, 1), q(2, 1)]]
        );
        assert_eq!(l.norm(&a), q(5, 1));
        assert_eq!(l.norm(&l.one()), q(1, 1));
        assert_eq!(l.regular_rep(&l.one()), linalg::identity(&Rationals, 2));
        assert_eq!(l.trace(&a), q(4, 1));
    }

    #[test]
    fn unchecked_requires_monic() {
        assert!(ExtensionField::new_unchecked(Rationals, vec![q(1, 1), q(2, 1)]).is_err());
        assert!(ExtensionField::new_unchecked(Rationals, vec![q(1, 1)]).is_err());
    }

    #[test]
    fn describe_record() {
        let l = gaussian();
        let v = l.describe_with(json!("Q"), |c| json!(crate::fields::format_rational(c)));
        assert_eq!(
            v.to_string(),
            r#"{"base":"Q","kind":"rational","modulus":["1/1","0/1","1/1"]}"#
        );
    }
}
