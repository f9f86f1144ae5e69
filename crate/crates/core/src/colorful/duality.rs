//! The cross-polytope `X(2, …, 2)` and the cube `Q_n` as dual complexes.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{colorful_complex, vertex_label};
use crate::chain_complex::{find_sign_conjugation, map_by_labels, ChainComplex, Family, EMPTY_LABEL};
use crate::cubical::{cube_with_cap, Face, Sym};
use crate::error::{Error, Result};
use crate::exact_algebra::char_poly_rational;
use crate::spanning_trees::{is_cst, tree_size};

/// Label, in the dual of the cross-polytope, of the cell paired with a cube face: the simplex
/// on `v_{i, 1 + f_i}` over the non-star coordinates.
pub fn cube_to_cross_label(f: &Face) -> String {
    let verts: Vec<String> = f
        .syms()
        .iter()
        .enumerate()
        .filter_map(|(p, s)| match s {
            Sym::Zero => Some(vertex_label(p + 1, 1)),
            Sym::One => Some(vertex_label(p + 1, 2)),
            Sym::Star => None,
        })
        .collect();
    if verts.is_empty() {
        format!("{EMPTY_LABEL}^")
    } else {
        format!("[{}]^", verts.join(","))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub n: usize,
    /// `E^tot_k(Q_n) = E^tot_{n−1−k}(X)` for every `k`.
    pub spectra_match: bool,
    /// The cube boundaries equal the transposed cross-polytope boundaries up to a diagonal
    /// `±1` conjugation along the face pairing.
    pub boundaries_conjugate: bool,
    pub complement_cases: usize,
    pub complement_failures: usize,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.spectra_match && self.boundaries_conjugate && self.complement_failures == 0
    }
}

/// Subsets to test: all of them when `exhaustive`, otherwise `samples` random tree-sized ones.
fn complement_subsets(
    x: &ChainComplex,
    exhaustive: bool,
    samples: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<(usize, Vec<usize>)> {
    let d = x.dim() as usize;
    if exhaustive {
        (0..=d)
            .flat_map(|i| {
                let m = x.num_cells(i as isize);
                (0u64..1 << m).map(move |mask| (i, (0..m).filter(|b| mask >> b & 1 == 1).collect()))
            })
            .collect()
    } else {
        (0..samples)
            .map(|_| {
                let i = rng.gen_range(0..=d);
                let m = x.num_cells(i as isize);
                let mut t = sample(rng, m, tree_size(x, i)).into_vec();
                t.sort_unstable();
                (i, t)
            })
            .collect()
    }
}

/// Compares the cube with the cross-polytope: spectra, boundary conjugacy, and tree
/// complementation (`T` is an `i`-tree of `X` iff the duals of `X_i \ T` form a `(d−i)`-tree
/// of `Q_n`, `d = n − 1`). Exhaustive for `n <= 2`, otherwise `samples` seeded random subsets.
pub fn cross_polytope_cube_duality(n: usize, samples: usize, seed: u64, cap: usize) -> Result<DualityReport> {
    if n == 0 {
        return Err(Error::Range("need n >= 1".into()));
    }
    let q = cube_with_cap(n, cap)?;
    let qc = q.to_chain();
    let x = colorful_complex(&vec![2; n])?;
    let d = n as isize - 1;

    let mut spectra_match = true;
    for k in 0..=n as isize {
        let a = qc.spectrum(k, Family::Tot)?;
        let b = x.spectrum(d - k, Family::Tot)?;
        spectra_match &= a.eigenvalues() == b.eigenvalues() && a.is_integral();
    }

    let y = x.dual();
    let translate = |l: &str| cube_to_cross_label(&l.parse::<Face>().expect("cube labels parse"));
    let map = map_by_labels(&qc, &y, &translate);
    let boundaries_conjugate = find_sign_conjugation(&qc, &y, &map).is_some();

    // cross-polytope cell label -> index among cube faces of the paired dimension
    let mut to_cube: HashMap<String, usize> = HashMap::new();
    for k in 0..=n {
        for (j, l) in qc.cells(k as isize).iter().enumerate() {
            let key = translate(l);
            to_cube.insert(key.trim_end_matches('^').to_string(), j);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases = complement_subsets(&x, n <= 2, samples, &mut rng);
    let mut failures = 0;
    for (i, t) in &cases {
        let labels = x.cells(*i as isize);
        let u: Vec<usize> = {
            let mut u: Vec<usize> = (0..labels.len())
                .filter(|j| !t.contains(j))
                .map(|j| to_cube[&labels[j]])
                .collect();
            u.sort_unstable();
            u
        };
        let lhs = is_cst(&x, *i, t)?.is_tree();
        let rhs = is_cst(&qc, (d - *i as isize) as usize, &u)?.is_tree();
        if lhs != rhs {
            failures += 1;
        }
    }
    Ok(DualityReport {
        n,
        spectra_match,
        boundaries_conjugate,
        complement_cases: cases.len(),
        complement_failures: failures,
    })
}

type RatMatrix = Vec<Vec<BigRational>>;

fn rat_mul(a: &RatMatrix, b: &RatMatrix, inner: usize, cols: usize) -> RatMatrix {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigRational::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn rat_transpose(a: &RatMatrix, rows: usize, cols: usize) -> RatMatrix {
    (0..cols).map(|j| (0..rows).map(|i| a[i][j].clone()).collect()).collect()
}

/// `∂̂_i[f, g] = ∂_i[f, g] ξ_g / ξ_f`.
fn weighted_boundary(c: &ChainComplex, i: isize, xi: &dyn Fn(isize, usize) -> BigRational) -> RatMatrix {
    let b = c.boundary(i);
    (0..b.rows())
        .map(|r| {
            (0..b.cols())
                .map(|s| BigRational::from_integer(b.get(r, s).clone()) * xi(i, s) / xi(i - 1, r))
                .collect()
        })
        .collect()
}

fn weighted_tot(c: &ChainComplex, i: isize, xi: &dyn Fn(isize, usize) -> BigRational) -> RatMatrix {
    let n = c.num_cells(i);
    let up = weighted_boundary(c, i + 1, xi);
    let up_cols = c.num_cells(i + 1);
    let down = weighted_boundary(c, i, xi);
    let down_rows = c.num_cells(i - 1);
    let ud = rat_mul(&up, &rat_transpose(&up, n, up_cols), up_cols, n);
    let du = rat_mul(&rat_transpose(&down, down_rows, n), &down, down_rows, n);
    (0..n)
        .map(|r| (0..n).map(|s| &ud[r][s] + &du[r][s]).collect())
        .collect()
}

/// Weighted duality on `X(2, …, 2)` and `Q_n`: random rational weights `ξ` on the
/// cross-polytope (empty cell included) and `1/ξ` on the paired cube faces give equal
/// characteristic polynomials of `L̂^tot_i(X)` and `L̂^tot_{d−i}(Q_n)`, at each of `points` seeds.
pub fn weighted_duality_check(n: usize, points: usize, seed: u64) -> Result<bool> {
    let q = cube_with_cap(n, n.max(1))?;
    let qc = q.to_chain();
    let x = colorful_complex(&vec![2; n])?;
    let d = n as isize - 1;
    // cube (dim, index) -> cross (dim, index)
    let mut pair: HashMap<(isize, usize), (isize, usize)> = HashMap::new();
    let mut cross_index: HashMap<String, (isize, usize)> = HashMap::new();
    for i in -1..=d {
        for (j, l) in x.cells(i).into_iter().enumerate() {
            cross_index.insert(l, (i, j));
        }
    }
    for k in 0..=n as isize {
        for (j, l) in qc.cells(k).iter().enumerate() {
            let key = cube_to_cross_label(&l.parse::<Face>()?);
            pair.insert((k, j), cross_index[key.trim_end_matches('^')]);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..points {
        let mut w: HashMap<(isize, usize), BigRational> = HashMap::new();
        for i in -1..=d {
            for j in 0..x.num_cells(i) {
                let num: i64 = rng.gen_range(1..=50);
                let den: i64 = rng.gen_range(1..=50);
                w.insert((i, j), BigRational::new(BigInt::from(num), BigInt::from(den)));
            }
        }
        let xi_x = |i: isize, j: usize| w[&(i, j)].clone();
        let xi_q = |k: isize, j: usize| BigRational::one() / &w[&pair[&(k, j)]];
        for i in -1..=d {
            let lx = weighted_tot(&x, i, &xi_x);
            let lq = weighted_tot(&qc, d - i, &xi_q);
            if char_poly_rational(&lx)? != char_poly_rational(&lq)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels() {
        assert_eq!(cube_to_cross_label(&"0*1".parse().unwrap()), "[v1_1,v3_2]^");
        assert_eq!(cube_to_cross_label(&"**".parse().unwrap()), "∅^");
    }

    #[test]
    fn small_duality() {
        for n in 1..=3 {
            let r = cross_polytope_cube_duality(n, 50, 0, 6).unwrap();
            assert!(r.holds(), "{r:?}");
        }
        let r = cross_polytope_cube_duality(2, 0, 0, 6).unwrap();
        assert_eq!(r.complement_cases, 16 + 16);
    }

    #[test]
    fn weighted() {
        assert!(weighted_duality_check(2, 3, 7).unwrap());
    }
}
