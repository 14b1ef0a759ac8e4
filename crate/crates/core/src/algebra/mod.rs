//! Finite-dimensional associative algebras given by structure constants.

mod json;

pub use json::{parse_algebra, AnyAlgebra, FieldTag};

use crate::error::{Error, Result};
use crate::fields::Field;
use crate::linalg::{self, Matrix};

/// `table[i][j]` holds the coordinates of `b_i b_j`.
pub type Table<E> = Vec<Vec<Vec<E>>>;

#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstantAlgebra<F: Field> {
    field: F,
    dim: usize,
    table: Table<F::Elem>,
    one: Vec<F::Elem>,
}

/// A subspace of an algebra, by a basis of coordinate rows.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSubspace<E> {
    basis: Vec<Vec<E>>,
}

impl<E: Clone> LinearSubspace<E> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<E>] {
        &self.basis
    }
}

impl<E> LinearSubspace<E> {
    /// Whether `v` lies in the span.
    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool
    where
        E: Clone,
    {
        let mut rows = self.basis.clone();
        let r = f.rank(&rows);
        rows.push(v.to_vec());
        f.rank(&rows) == r
    }
}

/// Validates shape, associativity on basis triples and the identity.
pub fn make_algebra<F: Field>(
    field: F,
    n: usize,
    table: Table<F::Elem>,
    one: Vec<F::Elem>,
) -> Result<StructureConstantAlgebra<F>> {
    if n == 0 {
        return Err(Error::Malformed("dimension must be positive".into()));
    }
    let shape_ok = table.len() == n
        && table
            .iter()
            .all(|row| row.len() == n && row.iter().all(|c| c.len() == n));
    if !shape_ok {
        return Err(Error::Malformed(format!("table must have shape {n}x{n}x{n}")));
    }
    if one.len() != n {
        return Err(Error::Malformed(format!("identity must have length {n}")));
    }
    let a = StructureConstantAlgebra::from_parts(field, table, one);
    a.check_identity()?;
    a.check_associativity()?;
    Ok(a)
}

impl<F: Field> StructureConstantAlgebra<F> {
    /// No validation; for constructions that are associative by design.
    pub(crate) fn from_parts(field: F, table: Table<F::Elem>, one: Vec<F::Elem>) -> Self {
        Self {
            field,
            dim: one.len(),
            table,
            one,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn table(&self) -> &Table<F::Elem> {
        &self.table
    }

    pub fn one(&self) -> &[F::Elem] {
        &self.one
    }

    pub fn basis_element(&self, i: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    pub fn zero(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim]
    }

    pub fn add(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        a.iter().zip(b).map(|(x, y)| self.field.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        a.iter().zip(b).map(|(x, y)| self.field.sub(x, y)).collect()
    }

    pub fn scale(&self, c: &F::Elem, a: &[F::Elem]) -> Vec<F::Elem> {
        a.iter().map(|x| self.field.mul(c, x)).collect()
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if f.is_zero(y) {
                    continue;
                }
                let xy = f.mul(x, y);
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !f.is_zero(c) {
                        out[k] = f.add(&out[k], &f.mul(&xy, c));
                    }
                }
            }
        }
        out
    }

    pub fn equal(&self, a: &[F::Elem], b: &[F::Elem]) -> bool {
        a.iter().zip(b).all(|(x, y)| self.field.equal(x, y))
    }

    pub fn check_identity(&self) -> Result<()> {
        for i in 0..self.dim {
            let b = self.basis_element(i);
            if !self.equal(&self.mul(&self.one, &b), &b) || !self.equal(&self.mul(&b, &self.one), &b) {
                return Err(Error::Identity(i));
            }
        }
        Ok(())
    }

    /// Reports the first triple (i, j, k) with (b_i b_j) b_k != b_i (b_j b_k).
    pub fn check_associativity(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let ij = &self.table[i][j];
                for k in 0..n {
                    let lhs = self.mul(ij, &self.basis_element(k));
                    let rhs = self.mul(&self.basis_element(i), &self.table[j][k]);
                    if !self.equal(&lhs, &rhs) {
                        return Err(Error::Associativity(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// a * b := b a.
    pub fn opposite(&self) -> Self {
        let n = self.dim;
        let table = (0..n)
            .map(|i| (0..n).map(|j| self.table[j][i].clone()).collect())
            .collect();
        Self::from_parts(self.field.clone(), table, self.one.clone())
    }

    /// A ⊗ B with basis pairs (i, j) at index i * dim B + j.
    pub fn tensor_product(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::MixedBaseFields);
        }
        let f = &self.field;
        let (na, nb) = (self.dim, other.dim);
        let n = na * nb;
        let mut table = vec![vec![vec![f.zero(); n]; n]; n];
        for i1 in 0..na {
            for i2 in 0..na {
                let a = &self.table[i1][i2];
                for j1 in 0..nb {
                    for j2 in 0..nb {
                        let b = &other.table[j1][j2];
                        let cell = &mut table[i1 * nb + j1][i2 * nb + j2];
                        for (ka, ca) in a.iter().enumerate() {
                            if f.is_zero(ca) {
                                continue;
                            }
                            for (kb, cb) in b.iter().enumerate() {
                                if !f.is_zero(cb) {
                                    cell[ka * nb + kb] = f.mul(ca, cb);
                                }
                            }
                        }
                    }
                }
            }
        }
        let mut one = vec![f.zero(); n];
        for (ka, ca) in self.one.iter().enumerate() {
            for (kb, cb) in other.one.iter().enumerate() {
                one[ka * nb + kb] = f.mul(ca, cb);
            }
        }
        Ok(Self::from_parts(f.clone(), table, one))
    }

    /// Relabels the basis: new basis element k is old basis element perm[k].
    pub fn permute_basis(&self, perm: &[usize]) -> Result<Self> {
        let n = self.dim;
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Precondition("not a permutation of the basis".into()));
        }
        let relabel = |v: &[F::Elem]| -> Vec<F::Elem> { perm.iter().map(|&p| v[p].clone()).collect() };
        let table = (0..n)
            .map(|i| (0..n).map(|j| relabel(&self.table[perm[i]][perm[j]])).collect())
            .collect();
        Ok(Self::from_parts(self.field.clone(), table, relabel(&self.one)))
    }

    /// Matrix (rows = output coordinates) of x -> s x - x s.
    fn commutator_rows(&self, s: &[F::Elem]) -> Matrix<F::Elem> {
        let cols: Vec<Vec<F::Elem>> = (0..self.dim)
            .map(|l| {
                let b = self.basis_element(l);
                self.sub(&self.mul(s, &b), &self.mul(&b, s))
            })
            .collect();
        linalg::transpose(&cols)
    }

    /// {x : x s = s x for all s in S}.
    pub fn centralizer(&self, set: &[Vec<F::Elem>]) -> LinearSubspace<F::Elem> {
        let rows: Matrix<F::Elem> = set.iter().flat_map(|s| self.commutator_rows(s)).collect();
        if rows.is_empty() {
            return LinearSubspace {
                basis: (0..self.dim).map(|i| self.basis_element(i)).collect(),
            };
        }
        LinearSubspace {
            basis: linalg::kernel(&self.field, &rows, self.dim),
        }
    }

    pub fn center(&self) -> LinearSubspace<F::Elem> {
        let basis: Vec<Vec<F::Elem>> = (0..self.dim).map(|i| self.basis_element(i)).collect();
        self.centralizer(&basis)
    }

    /// Rank of A ⊗ A^op -> End(A), (a ⊗ b) x = a x b, on the n^2 basis pairs.
    pub fn enveloping_map_rank(&self) -> usize {
        let n = self.dim;
        // b_l b_j for all l, j, reused across i
        let right: Vec<Vec<Vec<F::Elem>>> = (0..n)
            .map(|l| (0..n).map(|j| self.table[l][j].clone()).collect())
            .collect();
        let mut rows = Vec::with_capacity(n * n);
        for i in 0..n {
            let bi = self.basis_element(i);
            for j in 0..n {
                let mut row = Vec::with_capacity(n * n);
                for l in 0..n {
                    let img = self.mul(&bi, &right[l][j]);
                    row.extend(img);
                }
                rows.push(row);
            }
        }
        self.field.rank(&rows)
    }

    pub fn is_central_simple(&self) -> bool {
        self.enveloping_map_rank() == self.dim * self.dim
    }
}

/// M_n over the field, basis e_{ij} at index i n + j.
pub fn matrix_algebra<F: Field>(field: F, n: usize) -> Result<StructureConstantAlgebra<F>> {
    if n == 0 {
        return Err(Error::Precondition("matrix size must be positive".into()));
    }
    let d = n * n;
    let mut table = vec![vec![vec![field.zero(); d]; d]; d];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                table[i * n + j][j * n + l][i * n + l] = field.one();
            }
        }
    }
    let mut one = vec![field.zero(); d];
    for i in 0..n {
        one[i * n + i] = field.one();
    }
    Ok(StructureConstantAlgebra::from_parts(field, table, one))
}

/// (a, b) with basis 1, i, j, k: i^2 = a, j^2 = b, ij = k = -ji.
pub fn quaternion_algebra<F: Field>(
    field: F,
    a: &F::Elem,
    b: &F::Elem,
) -> Result<StructureConstantAlgebra<F>> {
    if field.is_zero(a) || field.is_zero(b) {
        return Err(Error::Precondition("quaternion parameters must be nonzero".into()));
    }
    let z = field.zero();
    let o = field.one();
    let ab = field.mul(a, b);
    let e = |k: usize, c: F::Elem| -> Vec<F::Elem> {
        let mut v = vec![z.clone(); 4];
        v[k] = c;
        v
    };
    let neg = |x: &F::Elem| field.neg(x);
    let table = vec![
        vec![e(0, o.clone()), e(1, o.clone()), e(2, o.clone()), e(3, o.clone())],
        vec![e(1, o.clone()), e(0, a.clone()), e(3, o.clone()), e(2, a.clone())],
        vec![e(2, o.clone()), e(3, neg(&o)), e(0, b.clone()), e(1, neg(b))],
        vec![e(3, o.clone()), e(2, neg(a)), e(1, b.clone()), e(0, neg(&ab))],
    ];
    Ok(StructureConstantAlgebra::from_parts(field.clone(), table, e(0, o.clone())))
}

/// Hamilton's quaternions (-1, -1).
pub fn hamilton<F: Field>(field: F) -> StructureConstantAlgebra<F> {
    let m1 = field.from_i64(-1);
    quaternion_algebra(field, &m1, &m1).expect("-1 is nonzero")
}

/// A field extension base[x]/(g) as a commutative algebra of dimension deg g.
pub fn field_as_algebra<F: Field>(
    l: &crate::extfield::ExtensionField<F>,
) -> StructureConstantAlgebra<F> {
    let n = l.degree();
    let basis: Vec<Vec<F::Elem>> = (0..n)
        .map(|i| {
            let mut v = l.zero();
            v[i] = l.base().one();
            v
        })
        .collect();
    let table = basis
        .iter()
        .map(|a| basis.iter().map(|b| l.mul(a, b)).collect())
        .collect();
    StructureConstantAlgebra::from_parts(l.base().clone(), table, l.one())
}
