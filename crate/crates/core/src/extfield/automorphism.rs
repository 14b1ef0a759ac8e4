use super::ExtensionField;
use crate::error::{Error, Result};
use crate::fields::Field;
use crate::linalg::{self, Matrix};

/// A base-linear automorphism of a simple extension, determined by the
/// image of the generator. Application uses the cached matrix whose column
/// j holds the coordinates of σ(x^j).
#[derive(Debug, Clone, PartialEq)]
pub struct Automorphism<F: Field> {
    host: ExtensionField<F>,
    image: Vec<F::Elem>,
    matrix: Matrix<F::Elem>,
}

impl<F: Field> Automorphism<F> {
    /// Validates that `image` is a root of the modulus and that the induced
    /// map is multiplicative on products of basis elements.
    pub fn new(host: &ExtensionField<F>, image: Vec<F::Elem>) -> Result<Self> {
        let residual = host.eval_base_poly(host.modulus(), &image);
        if !host.equal(&residual, &host.zero()) {
            return Err(Error::Precondition(
                "generator image is not a root of the modulus".into(),
            ));
        }
        let sigma = Self::from_image(host, image);
        let n = host.degree();
        let basis: Vec<Vec<F::Elem>> = (0..n).map(|j| basis_vector(host, j)).collect();
        for a in &basis {
            for b in &basis {
                let lhs = sigma.apply(&host.mul(a, b));
                let rhs = host.mul(&sigma.apply(a), &sigma.apply(b));
                if !host.equal(&lhs, &rhs) {
                    return Err(Error::Precondition(
                        "generator image does not induce a multiplicative map".into(),
                    ));
                }
            }
        }
        Ok(sigma)
    }

    fn from_image(host: &ExtensionField<F>, image: Vec<F::Elem>) -> Self {
        let n = host.degree();
        let mut cols = Vec::with_capacity(n);
        let mut cur = host.one();
        for _ in 0..n {
            cols.push(cur.clone());
            cur = host.mul(&cur, &image);
        }
        Self {
            host: host.clone(),
            image,
            matrix: linalg::transpose(&cols),
        }
    }

    pub fn identity(host: &ExtensionField<F>) -> Self {
        Self::from_image(host, host.generator())
    }

    pub fn host(&self) -> &ExtensionField<F> {
        &self.host
    }

    pub fn image(&self) -> &[F::Elem] {
        &self.image
    }

    pub fn matrix(&self) -> &Matrix<F::Elem> {
        &self.matrix
    }

    pub fn apply(&self, a: &[F::Elem]) -> Vec<F::Elem> {
        linalg::mat_vec(self.host.base(), &self.matrix, a)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self::from_image(&self.host, self.apply(&other.image))
    }

    pub fn power(&self, k: usize) -> Self {
        (0..k).fold(Self::identity(&self.host), |acc, _| self.compose(&acc))
    }

    pub fn is_identity(&self) -> bool {
        self.host.equal(&self.image, &self.host.generator())
    }

    /// The order of the automorphism, searched up to the degree.
    pub fn order(&self) -> Option<usize> {
        let mut cur = self.clone();
        for d in 1..=self.host.degree() {
            if cur.is_identity() {
                return Some(d);
            }
            cur = self.compose(&cur);
        }
        None
    }

    /// Dimension over the base of the fixed space {x : σ(x) = x}.
    pub fn fixed_dimension(&self) -> usize {
        let b = self.host.base();
        let n = self.host.degree();
        let diff: Matrix<F::Elem> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            b.sub(&self.matrix[i][j], &b.one())
                        } else {
                            self.matrix[i][j].clone()
                        }
                    })
                    .collect()
            })
            .collect();
        n - b.rank(&diff)
    }
}

fn basis_vector<F: Field>(host: &ExtensionField<F>, j: usize) -> Vec<F::Elem> {
    let mut v = host.zero();
    v[j] = host.base().one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extfield::make_extension;
    use crate::fields::{Rational, Rationals};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn complex_conjugation() {
        let l = make_extension(Rationals, vec![q(1), q(0), q(1)]).unwrap();
        let conj = Automorphism::new(&l, vec![q(0), q(-1)]).unwrap();
        assert_eq!(conj.apply(&[q(2), q(1)]), vec![q(2), q(-1)]);
        assert_eq!(conj.order(), Some(2));
        assert_eq!(conj.fixed_dimension(), 1);
        assert!(conj.power(2).is_identity());
        assert_eq!(Automorphism::identity(&l).fixed_dimension(), 2);
        assert!(Automorphism::new(&l, vec![q(1), q(1)]).is_err());
    }
}
