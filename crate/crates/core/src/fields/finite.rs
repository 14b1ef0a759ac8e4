use serde_json::json;

use super::poly::{self, Poly};
use super::{Field, PrimeField};
use crate::error::{Error, Result};
use crate::linalg;

/// F_{p^d} realized as F_p[x]/(m) for a monic irreducible m of degree d.
/// Elements are coefficient vectors of length exactly d, constant term first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    prime: PrimeField,
    modulus: Vec<u64>,
}

impl FiniteField {
    pub fn new(p: u64, modulus: Vec<u64>) -> Result<Self> {
        let prime = PrimeField::new(p)?;
        let modulus = poly::trim(&prime, modulus.into_iter().map(|c| c % p).collect());
        if modulus.last() != Some(&1) || modulus.len() < 2 {
            return Err(Error::Precondition(
                "finite field modulus must be monic of degree >= 1".into(),
            ));
        }
        if !is_irreducible(&prime, &modulus) {
            return Err(Error::ReducibleModulus(format!("{modulus:?} over F_{p}")));
        }
        Ok(Self { prime, modulus })
    }

    /// F_{p^d} with the canonical modulus from [`find_irreducible`].
    pub fn canonical(p: u64, d: usize) -> Result<Self> {
        let modulus = find_irreducible(p, d)?;
        Self::new(p, modulus)
    }

    pub fn p(&self) -> u64 {
        self.prime.p()
    }

    pub fn prime_field(&self) -> &PrimeField {
        &self.prime
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Number of elements, if it fits in a u64.
    pub fn order(&self) -> Option<u64> {
        self.p().checked_pow(self.degree() as u32)
    }

    /// The class of x.
    pub fn generator(&self) -> Vec<u64> {
        let x = poly::rem(&self.prime, &[0, 1], &self.modulus).unwrap();
        self.pad(x)
    }

    pub fn from_prime(&self, a: u64) -> Vec<u64> {
        self.pad(vec![a % self.p()])
    }

    fn pad(&self, mut a: Poly<u64>) -> Vec<u64> {
        a.resize(self.degree(), 0);
        a
    }

    /// Reduces an arbitrary polynomial over F_p into the field.
    pub fn from_poly(&self, a: &[u64]) -> Vec<u64> {
        let a: Vec<u64> = a.iter().map(|c| c % self.p()).collect();
        self.pad(poly::rem(&self.prime, &a, &self.modulus).unwrap())
    }

    /// All elements, in the order of the integer `sum c_i p^i`.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        let q = self.order().expect("field too large to enumerate");
        let (p, d) = (self.p(), self.degree());
        (0..q).map(move |mut m| {
            (0..d)
                .map(|_| {
                    let c = m % p;
                    m /= p;
                    c
                })
                .collect()
        })
    }

    /// The Frobenius map a -> a^p.
    pub fn frobenius(&self, a: &[u64]) -> Vec<u64> {
        self.pow(&a.to_vec(), self.p())
    }

    /// Whether `a` lies in the subfield F_{p^k} (k must divide the degree).
    pub fn in_subfield(&self, a: &[u64], k: usize) -> bool {
        let mut x = a.to_vec();
        for _ in 0..k {
            x = self.frobenius(&x);
        }
        x == a
    }

    /// Machine-readable form: `{"p": .., "modulus": [..], "coeffs": [..]}`.
    pub fn element_to_json(&self, a: &[u64]) -> serde_json::Value {
        json!({ "p": self.p(), "modulus": self.modulus, "coeffs": a })
    }
}

impl Field for FiniteField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }

    fn one(&self) -> Vec<u64> {
        self.from_prime(1)
    }

    fn from_i64(&self, n: i64) -> Vec<u64> {
        self.from_prime(self.prime.reduce_i64(n))
    }

    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.prime.add(x, y)).collect()
    }

    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.prime.neg(x)).collect()
    }

    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let prod = poly::mul(&self.prime, &poly::trim(&self.prime, a.clone()), b);
        self.pad(poly::rem(&self.prime, &prod, &self.modulus).unwrap())
    }

    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            return None;
        }
        let (g, s, _) = poly::ext_gcd(&self.prime, a, &self.modulus);
        debug_assert_eq!(g, vec![1]);
        Some(self.pad(s))
    }

    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }

    fn equal(&self, a: &Vec<u64>, b: &Vec<u64>) -> bool {
        a == b
    }

    fn name(&self) -> String {
        format!("F_{}^{}", self.p(), self.degree())
    }
}

/// Rabin's test: f of degree d is irreducible over F_p iff
/// x^{p^d} = x mod f and gcd(x^{p^{d/l}} - x, f) = 1 for every prime l | d.
pub fn is_irreducible(fp: &PrimeField, f: &[u64]) -> bool {
    let Some(d) = poly::degree(fp, f) else {
        return false;
    };
    if d == 0 {
        return false;
    }
    let f = poly::make_monic(fp, f);
    let x = vec![0, 1];
    // x^{p^k} mod f for k = 0..=d
    let mut powers = vec![poly::rem(fp, &x, &f).unwrap()];
    for k in 0..d {
        let next = poly::pow_mod(fp, &powers[k], fp.p(), &f);
        powers.push(next);
    }
    if poly::sub(fp, &powers[d], &powers[0]).iter().any(|&c| c != 0) {
        return false;
    }
    prime_divisors(d as u64).into_iter().all(|l| {
        let diff = poly::sub(fp, &powers[d / l as usize], &x);
        poly::gcd(fp, &diff, &f) == vec![1]
    })
}

pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The smallest monic irreducible polynomial of degree `d` over F_p, where
/// candidates `x^d + c_{d-1} x^{d-1} + ... + c_0` are ordered by the integer
/// `c_0 + c_1 p + ... + c_{d-1} p^{d-1}`. Returned lowest degree first.
pub fn find_irreducible(p: u64, d: usize) -> Result<Vec<u64>> {
    let fp = PrimeField::new(p)?;
    if d == 0 {
        return Err(Error::Precondition("degree must be positive".into()));
    }
    let count = p
        .checked_pow(d as u32)
        .ok_or_else(|| Error::Unsupported(format!("search space p^d = {p}^{d} too large")))?;
    for mut m in 0..count {
        let mut f: Vec<u64> = (0..d)
            .map(|_| {
                let c = m % p;
                m /= p;
                c
            })
            .collect();
        f.push(1);
        if is_irreducible(&fp, &f) {
            return Ok(f);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// A concrete embedding F_q -> F_{q^n}, fixed by sending the generator of the
/// smaller field to a root of its modulus inside the larger one.
#[derive(Debug, Clone)]
pub struct Embedding {
    base: FiniteField,
    ext: FiniteField,
    root: Vec<u64>,
    /// Images of the base power basis, used to restrict elements back.
    basis_images: Vec<Vec<u64>>,
}

impl Embedding {
    pub fn new(base: &FiniteField, ext: &FiniteField) -> Result<Self> {
        if base.p() != ext.p() || ext.degree() % base.degree() != 0 {
            return Err(Error::IncompatibleTower(format!(
                "{} is not a subfield of {}",
                base.name(),
                ext.name()
            )));
        }
        let ext_prime_coeffs: Vec<Vec<u64>> =
            base.modulus().iter().map(|&c| ext.from_prime(c)).collect();
        let root = if base.degree() == 1 {
            ext.neg(&ext.from_prime(base.modulus()[0]))
        } else {
            ext.elements()
                .find(|x| ext.is_zero(&poly::eval(ext, &ext_prime_coeffs, x)))
                .expect("a field of order q^n contains every field of order q")
        };
        let mut basis_images = vec![ext.one()];
        for i in 1..base.degree() {
            let next = ext.mul(&basis_images[i - 1], &root);
            basis_images.push(next);
        }
        Ok(Self {
            base: base.clone(),
            ext: ext.clone(),
            root,
            basis_images,
        })
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    pub fn ext(&self) -> &FiniteField {
        &self.ext
    }

    /// The relative degree n = [F_{q^n} : F_q].
    pub fn relative_degree(&self) -> usize {
        self.ext.degree() / self.base.degree()
    }

    pub fn embed(&self, a: &[u64]) -> Vec<u64> {
        let coeffs: Vec<Vec<u64>> = a.iter().map(|&c| self.ext.from_prime(c)).collect();
        poly::eval(&self.ext, &coeffs, &self.root)
    }

    /// The preimage of `c` under the embedding, if `c` lies in the image.
    pub fn restrict(&self, c: &[u64]) -> Option<Vec<u64>> {
        let fp = self.base.prime_field();
        let rows: Vec<Vec<u64>> = (0..self.ext.degree())
            .map(|r| self.basis_images.iter().map(|col| col[r]).collect())
            .collect();
        linalg::solve(fp, &rows, c)
    }

    /// N_{F_{q^n}/F_q}(b) = b^{(q^n - 1)/(q - 1)}, with N(0) = 0.
    pub fn norm(&self, b: &[u64]) -> Vec<u64> {
        if self.ext.is_zero(&b.to_vec()) {
            return self.base.zero();
        }
        let q = self.base.order().expect("base field order fits in u64");
        let qn = self.ext.order().expect("extension field order fits in u64");
        let c = self.ext.pow(&b.to_vec(), (qn - 1) / (q - 1));
        self.restrict(&c)
            .expect("the norm of an element lies in the base field")
    }

    /// An element of F_{q^n} of norm `a` lying in no proper subfield
    /// containing F_q. Deterministic: the first such element in enumeration
    /// order.
    pub fn norm_preimage(&self, a: &[u64]) -> Result<Vec<u64>> {
        if self.base.is_zero(&a.to_vec()) {
            return Err(Error::Precondition("norm preimage of zero requested".into()));
        }
        let n = self.relative_degree();
        if n == 1 {
            return Ok(self.embed(a));
        }
        let k = self.base.degree();
        let proper: Vec<usize> = (1..n).filter(|m| n % m == 0).collect();
        self.ext
            .elements()
            .find(|b| {
                !self.ext.is_zero(b)
                    && proper.iter().all(|m| !self.ext.in_subfield(b, m * k))
                    && self.norm(b) == a
            })
            .ok_or_else(|| Error::Precondition("no norm preimage found".into()))
    }
}

/// Convenience wrapper: the norm of `b in ext` down to `base`.
pub fn residue_norm(ext: &FiniteField, b: &[u64], base: &FiniteField) -> Result<Vec<u64>> {
    Ok(Embedding::new(base, ext)?.norm(b))
}
