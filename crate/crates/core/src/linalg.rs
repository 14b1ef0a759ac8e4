//! Dense linear algebra over a [`Field`]: rank, kernels, linear solves and a
//! division-free determinant.
//!
//! Matrices are row-major `Vec<Vec<E>>`. Elimination pivots on the entry with
//! the smallest [`Field::pivot_weight`], which for p-adic fields is the entry
//! of least valuation; entries the field considers zero are never pivots.

use crate::fields::Field;

pub type Matrix<E> = Vec<Vec<E>>;

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect())
        .collect()
}

pub fn mat_mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(f.zero(), |acc, k| {
                        if f.is_zero(&row[k]) {
                            acc
                        } else {
                            f.add(&acc, &f.mul(&row[k], &b[k][j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<F: Field>(f: &F, a: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)))
        })
        .collect()
}

pub fn transpose<E: Clone>(a: &Matrix<E>) -> Matrix<E> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref<F: Field>(f: &F, m: &mut Matrix<F::Elem>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let best = (row..m.len())
            .filter_map(|r| f.pivot_weight(&m[r][col]).map(|w| (w, r)))
            .min();
        let Some((_, pr)) = best else {
            continue;
        };
        m.swap(row, pr);
        let inv = f.inv(&m[row][col]).expect("pivot is nonzero");
        let scaled: Vec<F::Elem> = m[row].iter().map(|x| f.mul(x, &inv)).collect();
        m[row] = scaled;
        m[row][col] = f.one();
        for r in 0..m.len() {
            if r == row || f.is_zero(&m[r][col]) {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..m[r].len() {
                if !f.is_zero(&m[row][c]) {
                    let t = f.mul(&factor, &m[row][c]);
                    m[r][c] = f.sub(&m[r][c], &t);
                }
            }
            m[r][col] = f.zero();
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Rank by Gaussian elimination with weighted pivoting. Only the forward pass
/// is performed.
pub fn gauss_rank<F: Field>(f: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut m: Matrix<F::Elem> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == m.len() {
            break;
        }
        let best = (rank..m.len())
            .filter_map(|r| f.pivot_weight(&m[r][col]).map(|w| (w, r)))
            .min();
        let Some((_, pr)) = best else {
            continue;
        };
        m.swap(rank, pr);
        let inv = f.inv(&m[rank][col]).expect("pivot is nonzero");
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot = &head[rank];
        for row in tail.iter_mut() {
            if f.is_zero(&row[col]) {
                continue;
            }
            let factor = f.mul(&row[col], &inv);
            for c in col + 1..ncols {
                if !f.is_zero(&pivot[c]) {
                    let t = f.mul(&factor, &pivot[c]);
                    row[c] = f.sub(&row[c], &t);
                }
            }
            row[col] = f.zero();
        }
        rank += 1;
    }
    rank
}

/// A basis of the right kernel `{x : A x = 0}` of an `m x ncols` matrix.
pub fn kernel<F: Field>(f: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut m: Matrix<F::Elem> = rows.to_vec();
    let pivots = rref(f, &mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); ncols];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&m[r][fc]);
            }
            v
        })
        .collect()
}

/// Some solution of `A x = b`, or `None` if the system is inconsistent.
pub fn solve<F: Field>(f: &F, rows: &[Vec<F::Elem>], b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m: Matrix<F::Elem> = rows
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(f, &mut m, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![f.zero(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = m[r][ncols].clone();
    }
    Some(x)
}

/// Coefficients of det(tI - A), highest degree first, by Berkowitz's
/// algorithm. Uses ring operations only.
pub fn char_poly<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Vec<F::Elem> {
    let n = a.len();
    let mut vect = vec![f.one()];
    for k in 0..n {
        // A_{k+1} = [[M, C], [R, a_kk]] with M the leading k x k block
        let mut toeplitz = vec![f.one(), f.neg(&a[k][k])];
        let mut col: Vec<F::Elem> = (0..k).map(|i| a[i][k].clone()).collect();
        for _ in 0..k {
            let rc = (0..k).fold(f.zero(), |acc, j| f.add(&acc, &f.mul(&a[k][j], &col[j])));
            toeplitz.push(f.neg(&rc));
            col = (0..k)
                .map(|i| (0..k).fold(f.zero(), |acc, j| f.add(&acc, &f.mul(&a[i][j], &col[j]))))
                .collect();
        }
        vect = (0..k + 2)
            .map(|i| {
                (0..=i.min(k)).fold(f.zero(), |acc, j| {
                    f.add(&acc, &f.mul(&toeplitz[i - j], &vect[j]))
                })
            })
            .collect();
    }
    vect
}

/// Determinant without divisions, so results over a truncated p-adic field
/// stay accurate to the working precision for integral input.
pub fn det<F: Field>(f: &F, a: &Matrix<F::Elem>) -> F::Elem {
    let n = a.len();
    let cp = char_poly(f, a);
    if n % 2 == 0 {
        cp[n].clone()
    } else {
        f.neg(&cp[n])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{PrimeField, Rational, Rationals};

    fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Rationals.from_i64(x)).collect())
            .collect()
    }

    /// Cofactor expansion, used as an independent oracle.
    fn laplace(a: &Matrix<Rational>) -> Rational {
        let n = a.len();
        if n == 0 {
            return Rationals.one();
        }
        (0..n)
            .map(|j| {
                let minor: Matrix<Rational> = a[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &a[0][j] * laplace(&minor);
                if j % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum()
    }

    #[test]
    fn berkowitz_matches_cofactor_expansion() {
        let cases = [
            qm(&[&[2, -1], &[1, 2]]),
            qm(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]),
            qm(&[&[0, 1, 0, 3], &[2, 0, 5, 1], &[1, 1, 1, 1], &[-3, 4, 0, 2]]),
            qm(&[&[0, 0], &[0, 0]]),
        ];
        for a in &cases {
            assert_eq!(det(&Rationals, a), laplace(a));
        }
        assert_eq!(det(&Rationals, &qm(&[&[2, -1], &[1, 2]])), Rationals.from_i64(5));
    }

    #[test]
    fn rank_kernel_solve() {
        let a = qm(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(gauss_rank(&Rationals, &a), 2);
        assert_eq!(Rationals.rank(&a), 2);
        let k = kernel(&Rationals, &a, 3);
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&Rationals, &a, &k[0]).iter().all(|x| x == &Rationals.zero()));

        let b: Vec<Rational> = [6, 12, 2].iter().map(|&x| Rationals.from_i64(x)).collect();
        let x = solve(&Rationals, &a, &b).unwrap();
        assert_eq!(mat_vec(&Rationals, &a, &x), b);
        let bad: Vec<Rational> = [1, 0, 0].iter().map(|&x| Rationals.from_i64(x)).collect();
        assert!(solve(&Rationals, &a, &bad).is_none());
    }

    #[test]
    fn rank_mod_p() {
        let f = PrimeField::new(3).unwrap();
        let a = vec![vec![1, 2], vec![2, 1]];
        // det = 1 - 4 = -3 = 0 mod 3
        assert_eq!(gauss_rank(&f, &a), 1);
        assert_eq!(det(&f, &a), 0);
    }
}
