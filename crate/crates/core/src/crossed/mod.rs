//! Factor sets on cyclic Galois groups, crossed products and cyclic algebras.
//!
//! The group is ⟨σ⟩ of order n; index i stands for σ^i. The crossed product
//! has k-basis α^s u_i (s, i < n) at index s n + i, where α generates L.

use crate::algebra::StructureConstantAlgebra;
use crate::error::{Error, Result};
use crate::extfield::{embed_unramified, Automorphism, ExtensionField, ExtensionKind};
use crate::fields::{Field, Rationals, Reals};
use crate::padic::Qp;

/// A cyclic extension L/k with a generator σ of its Galois group.
#[derive(Debug, Clone, PartialEq)]
pub struct GaloisData<F: Field> {
    sigma: Automorphism<F>,
    powers: Vec<Automorphism<F>>,
}

impl<F: Field> GaloisData<F> {
    /// Checks that σ has order [L : k] and that its fixed field is k.
    pub fn new(sigma: Automorphism<F>) -> Result<Self> {
        let n = sigma.host().degree();
        if sigma.order() != Some(n) {
            return Err(Error::Precondition(format!(
                "automorphism does not have order {n}"
            )));
        }
        if sigma.fixed_dimension() != 1 {
            return Err(Error::Precondition("fixed field is larger than the base".into()));
        }
        let powers = (0..n).map(|i| sigma.power(i)).collect();
        Ok(Self { sigma, powers })
    }

    pub fn field(&self) -> &ExtensionField<F> {
        self.sigma.host()
    }

    pub fn sigma(&self) -> &Automorphism<F> {
        &self.sigma
    }

    pub fn order(&self) -> usize {
        self.powers.len()
    }

    /// σ^i for 0 <= i < n.
    pub fn power(&self, i: usize) -> &Automorphism<F> {
        &self.powers[i % self.order()]
    }

    /// N_{L/k} as the product of the Galois conjugates, returned in L.
    pub fn conjugate_product(&self, a: &[F::Elem]) -> Vec<F::Elem> {
        let l = self.field();
        self.powers
            .iter()
            .fold(l.one(), |acc, s| l.mul(&acc, &s.apply(a)))
    }
}

/// Candidate values γ[i][j] ∈ L^× for the pair (σ^i, σ^j).
#[derive(Debug, Clone, PartialEq)]
pub struct FactorSet<F: Field> {
    galois: GaloisData<F>,
    values: Vec<Vec<Vec<F::Elem>>>,
}

impl<F: Field> FactorSet<F> {
    /// Checks shape and that all values are nonzero; the cocycle identity is
    /// left to [`verify_cocycle`].
    pub fn new(galois: GaloisData<F>, values: Vec<Vec<Vec<F::Elem>>>) -> Result<Self> {
        let n = galois.order();
        let l = galois.field();
        if values.len() != n
            || values
                .iter()
                .any(|row| row.len() != n || row.iter().any(|v| v.len() != n))
        {
            return Err(Error::Malformed(format!("factor set must be {n}x{n}")));
        }
        if values.iter().flatten().any(|v| l.is_zero(v)) {
            return Err(Error::DivisionByZero);
        }
        Ok(Self { galois, values })
    }

    pub fn galois(&self) -> &GaloisData<F> {
        &self.galois
    }

    pub fn values(&self) -> &[Vec<Vec<F::Elem>>] {
        &self.values
    }

    pub fn value(&self, i: usize, j: usize) -> &[F::Elem] {
        &self.values[i][j]
    }

    /// Pointwise product; cocycles form a group under it.
    pub fn pointwise_mul(&self, other: &Self) -> Result<Self> {
        if self.galois != other.galois {
            return Err(Error::Precondition("factor sets over different data".into()));
        }
        let l = self.galois.field();
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| l.mul(x, y)).collect())
            .collect();
        Self::new(self.galois.clone(), values)
    }

    /// A copy with entry (i, j) multiplied by `c`.
    pub fn perturbed(&self, i: usize, j: usize, c: &[F::Elem]) -> Result<Self> {
        let mut values = self.values.clone();
        values[i][j] = self.galois.field().mul(&values[i][j], &c.to_vec());
        Self::new(self.galois.clone(), values)
    }
}

/// γ_{i,j} γ_{i+j,l} = σ^i(γ_{j,l}) γ_{i,j+l} for all n^3 triples.
pub fn verify_cocycle<F: Field>(gamma: &FactorSet<F>) -> bool {
    let g = &gamma.galois;
    let l = g.field();
    let n = g.order();
    let v = &gamma.values;
    for i in 0..n {
        let s = g.power(i);
        for j in 0..n {
            for k in 0..n {
                let lhs = l.mul(&v[i][j], &v[(i + j) % n][k]);
                let rhs = l.mul(&s.apply(&v[j][k]), &v[i][(j + k) % n]);
                if !l.equal(&lhs, &rhs) {
                    return false;
                }
            }
        }
    }
    true
}

/// δ_{i,j} = μ_i σ^i(μ_j) μ_{i+j}^{-1}, with μ_0 required to be 1.
pub fn coboundary_from<F: Field>(
    galois: &GaloisData<F>,
    mu: &[Vec<F::Elem>],
) -> Result<FactorSet<F>> {
    let n = galois.order();
    let l = galois.field();
    if mu.len() != n {
        return Err(Error::Malformed(format!("expected {n} values of mu")));
    }
    if !l.is_one(&mu[0]) {
        return Err(Error::Precondition("mu at the identity must be 1".into()));
    }
    let inverses: Vec<Vec<F::Elem>> = mu
        .iter()
        .map(|m| l.inv(m).ok_or(Error::DivisionByZero))
        .collect::<Result<_>>()?;
    let values = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let t = l.mul(&mu[i], &galois.power(i).apply(&mu[j]));
                    l.mul(&t, &inverses[(i + j) % n])
                })
                .collect()
        })
        .collect();
    FactorSet::new(galois.clone(), values)
}

/// γ_{i,j} = 1 if i + j < n, else r.
pub fn cyclic_factor_set<F: Field>(r: &F::Elem, galois: &GaloisData<F>) -> Result<FactorSet<F>> {
    let l = galois.field();
    if l.base().is_zero(r) {
        return Err(Error::DivisionByZero);
    }
    let n = galois.order();
    let r = l.from_base(r);
    let values = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i + j < n { l.one() } else { r.clone() })
                .collect()
        })
        .collect();
    FactorSet::new(galois.clone(), values)
}

/// The algebra ⊕ L u_i with u_i a = σ^i(a) u_i and u_i u_j = γ_{i,j} u_{i+j},
/// of dimension n^2 over k.
pub fn crossed_product<F: Field>(gamma: &FactorSet<F>) -> Result<StructureConstantAlgebra<F>> {
    if !verify_cocycle(gamma) {
        return Err(Error::Precondition(
            "factor set violates the cocycle identity".into(),
        ));
    }
    let g = &gamma.galois;
    let l = g.field();
    let k = l.base();
    let n = g.order();
    let d = n * n;
    let alpha_pow = |s: usize| -> Vec<F::Elem> {
        let mut v = l.zero();
        v[s] = k.one();
        v
    };
    // σ^i(α^t) γ_{i,j} is shared by every s
    let mut table = vec![vec![vec![k.zero(); d]; d]; d];
    for i in 0..n {
        for t in 0..n {
            let moved = g.power(i).apply(&alpha_pow(t));
            for j in 0..n {
                let tail = l.mul(&moved, &gamma.values[i][j]);
                let slot = (i + j) % n;
                for s in 0..n {
                    let c = l.mul(&alpha_pow(s), &tail);
                    let cell = &mut table[s * n + i][t * n + j];
                    for (r, cr) in c.into_iter().enumerate() {
                        cell[r * n + slot] = cr;
                    }
                }
            }
        }
    }
    let inv00 = l.inv(&gamma.values[0][0]).ok_or(Error::DivisionByZero)?;
    let mut one = vec![k.zero(); d];
    for (r, c) in inv00.into_iter().enumerate() {
        one[r * n] = c;
    }
    Ok(StructureConstantAlgebra::from_parts(k.clone(), table, one))
}

/// The triple (σ, L, r).
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicAlgebraSpec<F: Field> {
    galois: GaloisData<F>,
    r: F::Elem,
}

impl<F: Field> CyclicAlgebraSpec<F> {
    pub fn new(galois: GaloisData<F>, r: F::Elem) -> Result<Self> {
        if galois.field().base().is_zero(&r) {
            return Err(Error::DivisionByZero);
        }
        Ok(Self { galois, r })
    }

    pub fn galois(&self) -> &GaloisData<F> {
        &self.galois
    }

    pub fn r(&self) -> &F::Elem {
        &self.r
    }
}

/// u a = σ(a) u, u^n = r.
pub fn cyclic_algebra<F: Field>(spec: &CyclicAlgebraSpec<F>) -> Result<StructureConstantAlgebra<F>> {
    crossed_product(&cyclic_factor_set(&spec.r, &spec.galois)?)
}

/// Base fields with a decision procedure for membership in N(L^×).
pub trait NormOracle: Field {
    fn is_norm(galois: &GaloisData<Self>, x: &Self::Elem) -> Result<bool>;
}

impl NormOracle for Reals {
    /// The only proper finite extension of R is C, whose norms are the
    /// positive reals.
    fn is_norm(galois: &GaloisData<Self>, x: &Self::Elem) -> Result<bool> {
        let l = galois.field();
        let g = l.modulus();
        if l.degree() != 2 {
            return Err(Error::Unsupported("R has no cyclic extension of this degree".into()));
        }
        let disc = &g[1] * &g[1] - &g[0] * Self::Elem::from_integer(4.into());
        if disc >= Self::Elem::from_integer(0.into()) {
            return Err(Error::Unsupported("modulus splits over R".into()));
        }
        Ok(*x > Self::Elem::from_integer(0.into()))
    }
}

impl NormOracle for Qp {
    /// For unramified L of degree n, N(L^×) = {x : v(x) ≡ 0 mod n}.
    fn is_norm(galois: &GaloisData<Self>, x: &Self::Elem) -> Result<bool> {
        let l = galois.field();
        if l.kind() != ExtensionKind::Unramified {
            return Err(Error::Unsupported(
                "norm membership is decided only for unramified extensions".into(),
            ));
        }
        let v = x.valuation().ok_or(Error::DivisionByZero)?;
        Ok(v.rem_euclid(l.degree() as i64) == 0)
    }
}

impl NormOracle for Rationals {
    fn is_norm(_: &GaloisData<Self>, _: &Self::Elem) -> Result<bool> {
        Err(Error::Unsupported(
            "norm membership over Q is not decided; use a completion".into(),
        ))
    }
}

/// Whether (σ, L, r1) and (σ, L, r2) are similar, i.e. r1/r2 ∈ N(L^×).
pub fn cyclic_equivalent<F: NormOracle>(
    r1: &F::Elem,
    r2: &F::Elem,
    galois: &GaloisData<F>,
) -> Result<bool> {
    let k = galois.field().base();
    let q = k.div(r1, r2).ok_or(Error::DivisionByZero)?;
    if k.is_zero(&q) {
        return Err(Error::DivisionByZero);
    }
    F::is_norm(galois, &q)
}

/// (σ̄, L, r) ↦ (σ, E, r^m) with m = [E : L], for unramified L ⊆ E over Q_p
/// where σ restricts to σ̄.
pub fn inflate_cyclic(
    spec: &CyclicAlgebraSpec<Qp>,
    big: &GaloisData<Qp>,
) -> Result<CyclicAlgebraSpec<Qp>> {
    let small = spec.galois.field();
    let e = big.field();
    let (n, nb) = (small.degree(), e.degree());
    if nb % n != 0 {
        return Err(Error::Precondition(format!(
            "degree {n} does not divide {nb}"
        )));
    }
    let m = nb / n;
    let theta = embed_unramified(small, e)?;
    // σ(θ) must be the image of σ̄(α)
    let expected = e.eval_base_poly(spec.galois.sigma().image(), &theta);
    if !e.equal(&big.sigma().apply(&theta), &expected) {
        return Err(Error::Precondition(
            "the automorphism of the larger field does not restrict to the given one".into(),
        ));
    }
    CyclicAlgebraSpec::new(big.clone(), spec.r.pow(m as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::hamilton;
    use crate::extfield::{make_extension, unramified_extension};
    use crate::fields::Rational;
    use crate::padic::PadicContext;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn gaussian() -> GaloisData<Rationals> {
        let l = make_extension(Rationals, vec![q(1), q(0), q(1)]).unwrap();
        GaloisData::new(Automorphism::new(&l, vec![q(0), q(-1)]).unwrap()).unwrap()
    }

    #[test]
    fn galois_data_checks() {
        let l = make_extension(Rationals, vec![q(1), q(0), q(1)]).unwrap();
        assert!(GaloisData::new(Automorphism::identity(&l)).is_err());
        assert_eq!(gaussian().order(), 2);
    }

    #[test]
    fn quaternions_from_gaussian_integers() {
        let g = gaussian();
        let gamma = cyclic_factor_set(&q(-1), &g).unwrap();
        assert_eq!(gamma.values()[1][1], vec![q(-1), q(0)]);
        assert!(verify_cocycle(&gamma));
        let a = crossed_product(&gamma).unwrap();
        assert_eq!(a.permute_basis(&[0, 2, 1, 3]).unwrap(), hamilton(Rationals));
        assert!(a.is_central_simple());
    }

    #[test]
    fn trivial_and_coboundary() {
        let g = gaussian();
        let one = cyclic_factor_set(&q(1), &g).unwrap();
        assert!(verify_cocycle(&one));
        let mu = vec![vec![q(1), q(0)], vec![q(2), q(3)]];
        let delta = coboundary_from(&g, &mu).unwrap();
        assert!(verify_cocycle(&delta));
        let gamma = cyclic_factor_set(&q(-1), &g).unwrap();
        assert!(verify_cocycle(&gamma.pointwise_mul(&delta).unwrap()));
        let bad_mu = vec![vec![q(2), q(0)], vec![q(1), q(0)]];
        assert!(coboundary_from(&g, &bad_mu).is_err());
        let zero_mu = vec![vec![q(1), q(0)], vec![q(0), q(0)]];
        assert!(matches!(coboundary_from(&g, &zero_mu), Err(Error::DivisionByZero)));
    }

    #[test]
    fn perturbation_breaks_cocycle() {
        let g = gaussian();
        let gamma = cyclic_factor_set(&q(-1), &g).unwrap();
        let bad = gamma.perturbed(1, 1, &[q(1), q(1)]).unwrap();
        assert!(!verify_cocycle(&bad));
        assert!(crossed_product(&bad).is_err());
    }

    #[test]
    fn centralizer_of_l_is_l() {
        let g = gaussian();
        let a = crossed_product(&cyclic_factor_set(&q(3), &g).unwrap()).unwrap();
        let l_basis: Vec<Vec<Rational>> = (0..2).map(|s| a.basis_element(s * 2)).collect();
        let c = a.centralizer(&l_basis);
        assert_eq!(c.dim(), 2);
        for b in &l_basis {
            assert!(c.contains(&Rationals, b));
        }
    }

    #[test]
    fn real_norms() {
        let c = ExtensionField::new_unchecked(Reals, vec![q(1), q(0), q(1)]).unwrap();
        let g = GaloisData::new(Automorphism::new(&c, vec![q(0), q(-1)]).unwrap()).unwrap();
        assert!(!cyclic_equivalent(&q(-1), &q(1), &g).unwrap());
        assert!(cyclic_equivalent(&q(7), &q(1), &g).unwrap());
        assert!(cyclic_equivalent(&q(-3), &q(-3), &g).unwrap());
        assert!(matches!(
            cyclic_equivalent(&q(2), &q(1), &gaussian()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn unramified_norms_and_inflation() {
        let ctx = PadicContext::new(5, 12).unwrap();
        let (w, _, frob) = unramified_extension(&ctx, 2).unwrap();
        let g = GaloisData::new(frob).unwrap();
        assert_eq!(g.field(), &w);
        assert!(!cyclic_equivalent(&ctx.from_i64(5), &ctx.one(), &g).unwrap());
        assert!(cyclic_equivalent(&ctx.from_i64(25), &ctx.one(), &g).unwrap());

        let (_, _, frob4) = unramified_extension(&ctx, 4).unwrap();
        let big = GaloisData::new(frob4).unwrap();
        let spec = CyclicAlgebraSpec::new(g.clone(), ctx.from_i64(5)).unwrap();
        let inflated = inflate_cyclic(&spec, &big).unwrap();
        assert!(inflated.r().eq_mod(&ctx.from_i64(25), 12));
        assert_eq!(inflate_cyclic(&spec, &g).unwrap(), spec);

        let (_, _, frob3) = unramified_extension(&ctx, 3).unwrap();
        let odd = GaloisData::new(frob3).unwrap();
        assert!(inflate_cyclic(&spec, &odd).is_err());
    }

    #[test]
    fn padic_crossed_product_is_central_simple() {
        let ctx = PadicContext::new(3, 10).unwrap();
        let (w, _, frob) = unramified_extension(&ctx, 2).unwrap();
        let g = GaloisData::new(frob).unwrap();
        let mu = vec![w.one(), vec![ctx.from_i64(2), ctx.from_i64(1)]];
        let delta = coboundary_from(&g, &mu).unwrap();
        let gamma = cyclic_factor_set(&ctx.from_i64(3), &g).unwrap();
        let a = crossed_product(&gamma.pointwise_mul(&delta).unwrap()).unwrap();
        assert_eq!(a.dim(), 4);
        a.check_associativity().unwrap();
        assert!(a.is_central_simple());
    }
}
