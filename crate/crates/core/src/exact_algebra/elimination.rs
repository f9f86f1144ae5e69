//! Fraction-free elimination kernels: determinant, rank and Smith normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Exact determinant by Bareiss elimination. Every intermediate division is exact.
pub fn det_exact(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.to_rows();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign < 0 { -d } else { d })
}

/// Rank over the rationals, via fraction-free row reduction.
pub fn rank(m: &IntMatrix) -> usize {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[i][j] * &a[r][c] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Invariant factors `d_1 | d_2 | ... | d_r` of the Smith normal form; `r` is the rank.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows(), m.cols());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if x.is_zero() {
                    continue;
                }
                if best.map_or(true, |(bi, bj)| x.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        loop {
            let mut dirty = false;
            // clear column t
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &a[t][j] * &q;
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            // clear row t
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                move_smallest_to_pivot(&mut a, t);
                continue;
            }
            // pivot must divide the rest of the block
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
            match offender {
                Some((i, _)) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

fn move_smallest_to_pivot(a: &mut [Vec<BigInt>], t: usize) {
    let mut best = (t, t);
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    for i in t..rows {
        if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
            best = (i, t);
        }
    }
    for j in t..cols {
        if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
            best = (t, j);
        }
    }
    a.swap(t, best.0);
    for row in a.iter_mut() {
        row.swap(t, best.1);
    }
}

/// Product of the invariant factors greater than one: the order of the torsion of the cokernel.
pub fn torsion_order(invariant_factors: &[BigInt]) -> BigInt {
    invariant_factors.iter().filter(|d| !d.is_one()).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_examples() {
        assert_eq!(smith_normal_form(&IntMatrix::from_i64(&[&[2, 4], &[6, 8]])), big(&[2, 4]));
        assert_eq!(smith_normal_form(&IntMatrix::identity(2)), big(&[1, 1]));
        assert_eq!(smith_normal_form(&IntMatrix::from_i64(&[&[2]])), big(&[2]));
    }

    #[test]
    fn snf_rank_deficient_and_rectangular() {
        let m = IntMatrix::from_i64(&[&[2, 4, 6], &[1, 2, 3]]);
        assert_eq!(smith_normal_form(&m), big(&[1]));
        assert_eq!(rank(&m), 1);
        let z = IntMatrix::zeros(3, 2);
        assert!(smith_normal_form(&z).is_empty());
        // divisibility chain must be enforced: diag(2,3) -> (1,6)
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        assert_eq!(smith_normal_form(&m), big(&[1, 6]));
    }

    #[test]
    fn det_examples() {
        assert_eq!(det_exact(&IntMatrix::from_i64(&[&[1, 2], &[3, 4]])).unwrap(), BigInt::from(-2));
        assert_eq!(det_exact(&IntMatrix::from_i64(&[&[4]])).unwrap(), BigInt::from(4));
        // reduced Laplacian of K4
        let k4 = IntMatrix::from_i64(&[&[3, -1, -1], &[-1, 3, -1], &[-1, -1, 3]]);
        assert_eq!(det_exact(&k4).unwrap(), BigInt::from(16));
        assert!(matches!(
            det_exact(&IntMatrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn det_needs_pivoting() {
        let m = IntMatrix::from_i64(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        // cofactor expansion: 0*(0+9) - 1*(8-12) + 2*(-3-0) = 4 - 6 = -2
        assert_eq!(det_exact(&m).unwrap(), BigInt::from(-2));
    }
}
