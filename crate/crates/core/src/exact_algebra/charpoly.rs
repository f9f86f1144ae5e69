//! Exact characteristic polynomials.
//!
//! Integer matrices go through a Hessenberg reduction modulo several 62-bit primes and are
//! lifted by Chinese remaindering; the prime count is chosen from the a priori coefficient
//! bound `(G + 1)^n` with `G` the largest absolute row sum. Rational matrices use the same
//! reduction directly over `Q`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::matrix::IntMatrix;
use super::poly::IntPoly;
use crate::error::{Error, Result};

/// Minimal field interface for the Hessenberg routine.
pub trait Field {
    type E: Clone;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// Inverse of a nonzero element.
    fn inv(&self, a: &Self::E) -> Self::E;
}

/// The prime field `Z/pZ` for `p < 2^63`.
#[derive(Clone, Copy, Debug)]
pub struct ModPrime(pub u64);

impl ModPrime {
    fn reduce(&self, x: &BigInt) -> u64 {
        let p = BigInt::from(self.0);
        let r = ((x % &p) + &p) % &p;
        r.to_u64().expect("residue fits in u64")
    }
}

impl Field for ModPrime {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.0)
    }
    fn inv(&self, a: &u64) -> u64 {
        powmod(*a, self.0 - 2, self.0)
    }
}

/// The rationals.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes just below `2^62`, in decreasing order.
fn primes() -> impl Iterator<Item = u64> {
    ((1u64 << 61)..(1u64 << 62)).rev().filter(|&n| is_prime_u64(n))
}

/// Characteristic polynomial of a square matrix over any field, lowest degree first,
/// monic of degree `n`. Reduces to upper Hessenberg form by similarity, then runs the
/// standard three-term recurrence.
pub fn hessenberg_charpoly<F: Field>(f: &F, mut a: Vec<Vec<F::E>>) -> Vec<F::E> {
    let n = a.len();
    for m in 1..n.saturating_sub(1) {
        let Some(piv) = (m..n).find(|&i| !f.is_zero(&a[i][m - 1])) else {
            continue;
        };
        if piv != m {
            a.swap(piv, m);
            for row in a.iter_mut() {
                row.swap(piv, m);
            }
        }
        let inv = f.inv(&a[m][m - 1]);
        for i in m + 1..n {
            if f.is_zero(&a[i][m - 1]) {
                continue;
            }
            let u = f.mul(&a[i][m - 1], &inv);
            // row_i -= u * row_m
            for j in 0..n {
                let t = f.mul(&u, &a[m][j]);
                a[i][j] = f.sub(&a[i][j], &t);
            }
            // col_m += u * col_i
            for row in a.iter_mut() {
                let t = f.mul(&u, &row[i]);
                row[m] = f.add(&row[m], &t);
            }
        }
    }

    // p[k] is the char poly of the leading k x k block.
    let mut p: Vec<Vec<F::E>> = vec![vec![f.one()]];
    for k in 1..=n {
        let h = &a;
        // (y - h_kk) p_{k-1}
        let prev = &p[k - 1];
        let mut cur = vec![f.zero(); k + 1];
        for (i, c) in prev.iter().enumerate() {
            cur[i + 1] = f.add(&cur[i + 1], c);
            let t = f.mul(&h[k - 1][k - 1], c);
            cur[i] = f.sub(&cur[i], &t);
        }
        let mut prod = f.one();
        for i in (1..k).rev() {
            prod = f.mul(&prod, &h[i][i - 1]);
            if f.is_zero(&prod) {
                break;
            }
            let coef = f.mul(&prod, &h[i - 1][k - 1]);
            for (j, c) in p[i - 1].iter().enumerate() {
                let t = f.mul(&coef, c);
                cur[j] = f.sub(&cur[j], &t);
            }
        }
        p.push(cur);
    }
    p.pop().unwrap()
}

/// Exact characteristic polynomial `det(yI - m)`.
pub fn char_poly(m: &IntMatrix) -> Result<IntPoly> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(IntPoly::one());
    }
    let g: BigUint = (m.max_abs_row_sum() + 1u32)
        .to_biguint()
        .expect("row sums are nonnegative");
    // coefficients are bounded by (G+1)^n; recover residues modulo something exceeding twice that
    let bound_bits = g.bits() * n as u64 + 2;
    let count = (bound_bits / 61 + 1) as usize;
    let ps: Vec<u64> = primes().take(count).collect();

    let rows = m.to_rows();
    let residues: Vec<Vec<u64>> = ps
        .par_iter()
        .map(|&p| {
            let f = ModPrime(p);
            let a = rows
                .iter()
                .map(|r| r.iter().map(|x| f.reduce(x)).collect())
                .collect();
            hessenberg_charpoly(&f, a)
        })
        .collect();

    let mut coeffs = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut x = BigInt::zero();
        let mut modulus = BigInt::one();
        for (pi, &p) in ps.iter().enumerate() {
            let f = ModPrime(p);
            let r = residues[pi][k];
            let x_mod = f.reduce(&x);
            let m_mod = f.reduce(&modulus);
            let t = f.mul(&f.sub(&r, &x_mod), &f.inv(&m_mod));
            x += &modulus * BigInt::from(t);
            modulus *= BigInt::from(p);
        }
        let half = &modulus >> 1u32;
        if x > half {
            x -= &modulus;
        }
        coeffs.push(x);
    }
    Ok(IntPoly::from_coeffs(coeffs))
}

/// Characteristic polynomial of a rational matrix, lowest degree first.
pub fn char_poly_rational(m: &[Vec<BigRational>]) -> Result<Vec<BigRational>> {
    let n = m.len();
    if let Some(r) = m.iter().find(|r| r.len() != n) {
        return Err(Error::NotSquare {
            rows: n,
            cols: r.len(),
        });
    }
    Ok(hessenberg_charpoly(&Rationals, m.to_vec()))
}

/// Product of the nonzero eigenvalues with multiplicity, read off the lowest nonzero
/// coefficient of a characteristic polynomial: that coefficient is `(-1)^r` times the product,
/// where `r` is the number of nonzero roots.
pub fn nonzero_eigen_product(chi: &IntPoly) -> BigInt {
    let deg = chi.degree().unwrap_or(0);
    match chi.lowest_nonzero() {
        None => BigInt::one(),
        Some((k, c)) => {
            let r = deg - k;
            if r % 2 == 0 {
                c.clone()
            } else {
                -c
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let m = IntMatrix::from_i64(&[&[1, -1], &[-1, 1]]);
        assert_eq!(char_poly(&m).unwrap(), IntPoly::from_i64(&[0, -2, 1]));
        assert_eq!(char_poly(&IntMatrix::from_i64(&[&[2]])).unwrap(), IntPoly::from_i64(&[-2, 1]));
        assert_eq!(char_poly(&IntMatrix::zeros(3, 3)).unwrap(), IntPoly::monomial(3));
    }

    #[test]
    fn nonsymmetric_and_large_entries() {
        // companion-like matrix of y^3 - 6y^2 + 11y - 6
        let m = IntMatrix::from_i64(&[&[0, 0, 6], &[1, 0, -11], &[0, 1, 6]]);
        assert_eq!(char_poly(&m).unwrap(), IntPoly::from_i64(&[-6, 11, -6, 1]));
        let big = 1_000_000_007i64;
        let m = IntMatrix::from_i64(&[&[big, 1], &[1, big]]);
        let expect = IntPoly::from_coeffs(vec![
            BigInt::from(big) * big - 1,
            BigInt::from(-2 * big),
            BigInt::one(),
        ]);
        assert_eq!(char_poly(&m).unwrap(), expect);
    }

    #[test]
    fn nonzero_product() {
        // spectrum {0, 2, 2, 4} of the 4-cycle
        let c4 = IntMatrix::from_i64(&[
            &[2, -1, 0, -1],
            &[-1, 2, -1, 0],
            &[0, -1, 2, -1],
            &[-1, 0, -1, 2],
        ]);
        assert_eq!(nonzero_eigen_product(&char_poly(&c4).unwrap()), BigInt::from(16));
    }

    #[test]
    fn prime_sieve() {
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(3_215_031_751));
        let p: Vec<u64> = primes().take(2).collect();
        assert!(p[0] < 1 << 62 && p[0] > p[1]);
    }
}
