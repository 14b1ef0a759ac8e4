//! Exact base fields and the [`Field`] abstraction the rest of the crate is
//! generic over.
//!
//! A field is a value (carrying runtime parameters such as `p` or a modulus)
//! that performs arithmetic on plain element values. This keeps elements small
//! and lets one element type serve many fields of the same shape.

use std::fmt::Debug;

pub mod finite;
pub mod poly;
pub mod prime;
pub mod rational;

pub use finite::{find_irreducible, Embedding, FiniteField};
pub use prime::{is_prime, PrimeField};
pub use rational::{format_rational, parse_rational, Rational, Rationals, Reals};

pub trait Field: Clone + Debug + PartialEq {
    type Elem: Clone + Debug + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Multiplicative inverse; `None` for (numerically) zero input.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// True when `a` is zero at the working precision of the field. Exact
    /// fields answer exactly.
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.equal(a, &self.one())
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Pivot preference for elimination: lower is better, `None` means the
    /// entry must not be used as a pivot. Valued fields return the valuation so
    /// that elimination divides by the entry of least valuation.
    fn pivot_weight(&self, a: &Self::Elem) -> Option<i64> {
        if self.is_zero(a) {
            None
        } else {
            Some(0)
        }
    }

    /// False for fields computed at finite precision (p-adic), where exact
    /// zero tests on derived quantities are unreliable.
    fn is_exact(&self) -> bool {
        true
    }

    /// Rank of a dense row-major matrix.
    fn rank(&self, rows: &[Vec<Self::Elem>]) -> usize {
        crate::linalg::gauss_rank(self, rows)
    }

    /// Short human-readable name, used in error messages and serialization.
    fn name(&self) -> String;
}
