use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Field;
use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn one(&self) -> Rational {
        Rational::one()
    }

    fn from_i64(&self, n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }

    fn neg(&self, a: &Rational) -> Rational {
        -a
    }

    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn inv(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }

    fn equal(&self, a: &Rational, b: &Rational) -> bool {
        a == b
    }

    fn rank(&self, rows: &[Vec<Rational>]) -> usize {
        fraction_free_rank(rows)
    }

    fn name(&self) -> String {
        "Q".to_string()
    }
}

/// Rank over Q by integer elimination: each row is scaled to a primitive
/// integer vector and updated as `pivot * row - lead * pivot_row`, then divided
/// by its content, so no fractions are ever formed.
pub fn fraction_free_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| primitive_row(r)).collect();
    let ncols = m.first().map_or(0, Vec::len);
    // rank mod a prime never exceeds the rank over Q, so a full modular rank
    // settles the question without integer growth
    if modular_rank(&m) == m.len().min(ncols) {
        return m.len().min(ncols);
    }
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot_row) = (rank..m.len())
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| m[r].iter().filter(|x| !x.is_zero()).count())
        else {
            continue;
        };
        m.swap(rank, pivot_row);
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot = &head[rank];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let g = pivot[col].gcd(&row[col]);
            let a = &pivot[col] / &g;
            let b = &row[col] / &g;
            for (x, y) in row.iter_mut().zip(pivot.iter()).skip(col) {
                if y.is_zero() {
                    if !x.is_zero() {
                        *x = &*x * &a;
                    }
                } else {
                    *x = &*x * &a - y * &b;
                }
            }
            remove_content(row);
        }
        rank += 1;
    }
    rank
}

const RANK_PRIME: u64 = (1 << 61) - 1;

fn modular_rank(rows: &[Vec<BigInt>]) -> usize {
    let q = BigInt::from(RANK_PRIME);
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| u64::try_from(x.mod_floor(&q)).expect("reduced below the prime"))
                .collect()
        })
        .collect();
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % RANK_PRIME as u128) as u64;
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][col], RANK_PRIME - 2);
        let pivot_row: Vec<u64> = m[rank].iter().map(|&x| mulmod(x, inv)).collect();
        for row in m[rank + 1..].iter_mut() {
            let c = row[col];
            if c == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(col) {
                if y != 0 {
                    *x = (*x + RANK_PRIME - mulmod(c, y)) % RANK_PRIME;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * a as u128) % RANK_PRIME as u128) as u64;
        }
        a = ((a as u128 * a as u128) % RANK_PRIME as u128) as u64;
        e >>= 1;
    }
    acc
}

fn primitive_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = row
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    remove_content(&mut out);
    out
}

fn remove_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Renders a rational as `"num/den"`, always with an explicit denominator.
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `"num/den"` or a plain integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Malformed(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Q regarded inside R. Arithmetic is that of Q; the type records that
/// norm and positivity questions are asked at the real place.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Reals;

impl Field for Reals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn one(&self) -> Rational {
        Rational::one()
    }

    fn from_i64(&self, n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }

    fn neg(&self, a: &Rational) -> Rational {
        -a
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn inv(&self, a: &Rational) -> Option<Rational> {
        Rationals.inv(a)
    }

    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }

    fn rank(&self, rows: &[Vec<Rational>]) -> usize {
        fraction_free_rank(rows)
    }

    fn name(&self) -> String {
        "R".to_string()
    }
}
