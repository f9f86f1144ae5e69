//! Determinant and eigenvalue routes to `τ_k`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{check_k, TauValue, TreeReport};
use crate::chain_complex::{ChainComplex, Family};
use crate::cubical::{combinatorial_laplacian, CubicalComplex};
use crate::error::{Error, Result};
use crate::exact_algebra::{det_exact, gen_binom, rank, smith_normal_form, torsion_order, IntMatrix, LaurentPoly};

/// Greedy maximal set of linearly independent columns, scanning in order.
pub fn greedy_independent_columns(m: &IntMatrix) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for c in 0..m.cols() {
        let mut trial = chosen.clone();
        trial.push(c);
        if rank(&m.select_columns(&trial)) == trial.len() {
            chosen = trial;
        }
    }
    chosen
}

fn require_apc(x: &ChainComplex, k: usize) -> Result<()> {
    let sk = x.skeleton(k as isize);
    for j in -1..k as isize {
        let b = sk.reduced_betti(j);
        if b != 0 {
            return Err(Error::NotApc { dim: j, betti: b });
        }
    }
    Ok(())
}

/// The reduced set `U` and the factor `|H̃_{k−2}(X)|² / |H̃_{k−2}(X_U)|²` as a fraction.
fn reduction(x: &ChainComplex, k: usize) -> (Vec<usize>, BigInt, BigInt) {
    let below = x.reduced_boundary(k as isize - 1);
    let u = greedy_independent_columns(&below);
    let t_x = x.torsion(k as isize - 2);
    let t_u = torsion_order(&smith_normal_form(&below.select_columns(&u)));
    (u, &t_x * &t_x, &t_u * &t_u)
}

fn complement(n: usize, u: &[usize]) -> Vec<usize> {
    (0..n).filter(|i| !u.contains(i)).collect()
}

fn exact_div(num: BigInt, den: &BigInt) -> Result<BigInt> {
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::InexactDivision(format!("{num} / {den}")));
    }
    Ok(q)
}

/// `τ_k = |H̃_{k−2}(X)|² / |H̃_{k−2}(X_U)|² · det L_U`, with `U` the greedily chosen facets of
/// a `(k−1)`-tree and `L_U` the reduced `L^ud_{k−1}`.
pub fn tau_matrix_tree(x: &ChainComplex, k: usize) -> Result<TreeReport> {
    check_k(x, k)?;
    if k == 0 {
        return Err(Error::Range("the Matrix-Tree engine needs k >= 1".into()));
    }
    require_apc(x, k)?;
    let (u, num, den) = reduction(x, k);
    let l = x.laplacian(k as isize - 1, Family::Ud)?;
    let keep = complement(l.rows(), &u);
    let det = det_exact(&l.select(&keep, &keep))?;
    let tau = exact_div(det * num, &den)?;
    let labels = x.cells(k as isize - 1);
    Ok(TreeReport {
        tau: TauValue::Int(tau),
        method: "matrix-tree".into(),
        trees: None,
        u: Some(u.iter().map(|&i| labels[i].clone()).collect()),
        per_tree: Vec::new(),
    })
}

/// `τ_k = ∏_{i=0}^k π_i^{(−1)^{k−i}}`; requires `H̃_i(X; ℤ) = 0` for all `i < k`.
pub fn tau_alternating(x: &ChainComplex, k: usize) -> Result<BigInt> {
    check_k(x, k)?;
    if !x.integrally_acyclic_below(k as isize) {
        return Err(Error::Hypothesis(format!(
            "integral reduced homology must vanish below dimension {k}"
        )));
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..=k {
        let p = x.pi(i as isize)?;
        if (k - i) % 2 == 0 {
            num *= p;
        } else {
            den *= p;
        }
    }
    exact_div(num, &den)
}

/// `τ_k(Q_n) = ∏_{j=k+1}^n (2j)^{C(n,j) C(j−2,k−1)}`.
pub fn tau_cube_closed_form(n: usize, k: usize) -> Result<BigInt> {
    if k < 1 || k > n {
        return Err(Error::Range(format!("closed form needs 1 <= k <= n, got n={n}, k={k}")));
    }
    let mut out = BigInt::one();
    for j in k + 1..=n {
        let e = gen_binom(n as i64, j as i64) * gen_binom(j as i64 - 2, k as i64 - 1);
        let e: u32 = e.try_into().map_err(|_| Error::Range("exponent out of range".into()))?;
        out *= BigInt::from(2 * j).pow(e);
    }
    Ok(out)
}

/// Weighted enumerator `Σ_T |H̃_{k−1}(X_T)|² ∏_{g∈T} ξ_g` from the determinant of the reduced
/// combinatorially weighted Laplacian `∂_k diag(ξ) ∂_kᵀ`.
pub fn weighted_tau_matrix_tree(x: &CubicalComplex, k: usize) -> Result<TreeReport> {
    let c = x.to_chain();
    check_k(&c, k)?;
    if k == 0 {
        return Err(Error::Range("the Matrix-Tree engine needs k >= 1".into()));
    }
    require_apc(&c, k)?;
    let (u, num, den) = reduction(&c, k);
    let l = combinatorial_laplacian(x, k)?;
    let keep = complement(l.nrows(), &u);
    let det: LaurentPoly = l.select(&keep, &keep).det()?;
    let tau = det.scale(&num).div_scalar(&den)?;
    let labels = c.cells(k as isize - 1);
    Ok(TreeReport {
        tau: TauValue::Poly(tau),
        method: "matrix-tree".into(),
        trees: None,
        u: Some(u.iter().map(|&i| labels[i].clone()).collect()),
        per_tree: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::cube;

    fn int(r: &TreeReport) -> BigInt {
        r.tau.as_int().unwrap().clone()
    }

    #[test]
    fn matrix_tree_examples() {
        assert_eq!(int(&tau_matrix_tree(&cube(3).unwrap().to_chain(), 1).unwrap()), BigInt::from(384));
        assert_eq!(int(&tau_matrix_tree(&cube(4).unwrap().to_chain(), 2).unwrap()), BigInt::from(82944));
        let rp2 = ChainComplex::new(
            vec![vec!["v".into()], vec!["e".into()], vec!["f".into()]],
            vec![IntMatrix::from_i64(&[&[0]]), IntMatrix::from_i64(&[&[2]])],
            false,
        )
        .unwrap();
        let r = tau_matrix_tree(&rp2, 2).unwrap();
        assert_eq!(int(&r), BigInt::from(4));
        assert_eq!(r.u, Some(vec![]));
        assert!(tau_alternating(&rp2, 2).is_err());
    }

    #[test]
    fn alternating_examples() {
        assert_eq!(tau_alternating(&cube(2).unwrap().to_chain(), 1).unwrap(), BigInt::from(4));
        assert_eq!(tau_alternating(&cube(3).unwrap().to_chain(), 2).unwrap(), BigInt::from(6));
        assert_eq!(tau_alternating(&cube(0).unwrap().to_chain(), 0).unwrap(), BigInt::one());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(tau_cube_closed_form(3, 1).unwrap(), BigInt::from(384));
        assert_eq!(tau_cube_closed_form(4, 2).unwrap(), BigInt::from(82944));
        assert_eq!(tau_cube_closed_form(4, 3).unwrap(), BigInt::from(8));
        assert_eq!(tau_cube_closed_form(3, 3).unwrap(), BigInt::one());
        assert!(tau_cube_closed_form(2, 0).is_err());
    }

    #[test]
    fn weighted_examples() {
        let q2 = cube(2).unwrap();
        let r = weighted_tau_matrix_tree(&q2, 2).unwrap();
        assert_eq!(r.tau.as_poly().unwrap().to_string(), "q1*q2");
        let r = weighted_tau_matrix_tree(&q2, 1).unwrap();
        assert_eq!(r.tau.as_poly().unwrap().eval_ones(), BigInt::from(4));
        let non_apc = crate::cubical::CubicalComplex::build_from_strs(vec![1, 2, 3], &["**0", "**1", "*0*", "*1*"]).unwrap();
        assert!(matches!(weighted_tau_matrix_tree(&non_apc, 2), Err(Error::NotApc { dim: 1, betti: 1 })));
    }
}
