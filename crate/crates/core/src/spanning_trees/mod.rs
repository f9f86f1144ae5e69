//! Cellular spanning trees: the tree predicate, brute-force enumeration, the Matrix-Tree
//! engines and the cube closed forms.

mod conjecture;
mod engines;

use itertools::Itertools;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::chain_complex::ChainComplex;
use crate::error::{Error, Result};
use crate::exact_algebra::{gen_binom, rank, smith_normal_form, torsion_order, LaurentPoly};

pub use conjecture::{conjecture_rhs, f_poly, f_recurrence_check, verify_conjecture, ConjectureReport, FRecurrenceReport};
pub use engines::{
    greedy_independent_columns, tau_alternating, tau_cube_closed_form, tau_matrix_tree, weighted_tau_matrix_tree,
};

/// Default number of candidate subsets a brute-force scan may visit.
pub const DEFAULT_BRUTE_CAP: u64 = 1_000_000;

/// Which of the three tree conditions hold for `Y = T ∪ X_(k−1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CstCertificate {
    /// `H̃_k(Y) = 0`.
    pub acyclic: bool,
    /// `H̃_{k−1}(Y)` is finite.
    pub finite: bool,
    /// `|T| = |X_k| − b̃_k + b̃_{k−1}`.
    pub right_size: bool,
    #[serde(serialize_with = "crate::serde_big::ser")]
    pub torsion: BigInt,
}

impl CstCertificate {
    pub fn is_tree(&self) -> bool {
        self.acyclic && self.finite && self.right_size
    }
}

/// Number of top cells of a `k`-tree: `|X_k| − b̃_k(X_(k)) + b̃_{k−1}(X)`.
pub fn tree_size(x: &ChainComplex, k: usize) -> usize {
    let sk = x.skeleton(k as isize);
    x.num_cells(k as isize) + sk.reduced_betti(k as isize - 1) - sk.reduced_betti(k as isize)
}

fn check_k(x: &ChainComplex, k: usize) -> Result<()> {
    if k as isize > x.dim() {
        return Err(Error::DimensionOutOfRange {
            dim: k as isize,
            lo: 0,
            hi: x.dim(),
        });
    }
    Ok(())
}

/// Tests whether the `k`-cells with indices `t` (plus the whole `(k−1)`-skeleton) form a
/// cellular spanning `k`-tree.
pub fn is_cst(x: &ChainComplex, k: usize, t: &[usize]) -> Result<CstCertificate> {
    check_k(x, k)?;
    let n = x.num_cells(k as isize);
    if let Some(&bad) = t.iter().find(|&&j| j >= n) {
        return Err(Error::Range(format!("cell index {bad} out of range for {n} cells of dimension {k}")));
    }
    let bd = x.reduced_boundary(k as isize).select_columns(t);
    let r = rank(&bd);
    let acyclic = r == t.len();
    // b̃_{k−1}(Y) = |Y_{k−1}| − rank ∂̃_{k−1} − rank ∂_k|T
    let below = x.reduced_boundary(k as isize - 1);
    let cells_below = if k == 0 { 1 } else { x.num_cells(k as isize - 1) };
    let r_below = if k == 0 { 0 } else { rank(&below) };
    let finite = cells_below - r_below == r;
    Ok(CstCertificate {
        acyclic,
        finite,
        right_size: t.len() == tree_size(x, k),
        torsion: torsion_order(&smith_normal_form(&bd)),
    })
}

/// `τ_k` as an integer or, with face weights, a Laurent polynomial.
#[derive(Clone, Debug, PartialEq)]
pub enum TauValue {
    Int(BigInt),
    Poly(LaurentPoly),
}

impl TauValue {
    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            TauValue::Int(v) => Some(v),
            TauValue::Poly(_) => None,
        }
    }

    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        match self {
            TauValue::Poly(p) => Some(p),
            TauValue::Int(_) => None,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            TauValue::Int(v) => Value::String(v.to_string()),
            TauValue::Poly(p) => serde_json::to_value(p.to_json()).expect("serializable"),
        }
    }
}

impl std::fmt::Display for TauValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TauValue::Int(v) => write!(f, "{v}"),
            TauValue::Poly(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeRecord {
    pub cells: Vec<String>,
    pub torsion: BigInt,
}

/// Result of a tree computation.
#[derive(Clone, Debug, PartialEq)]
pub struct TreeReport {
    pub tau: TauValue,
    pub method: String,
    /// Number of trees found (brute force only).
    pub trees: Option<usize>,
    /// Deleted `(k−1)`-cells (Matrix-Tree engines only).
    pub u: Option<Vec<String>>,
    pub per_tree: Vec<TreeRecord>,
}

impl TreeReport {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "tau": self.tau.to_json(),
            "method": self.method,
        });
        let m = v.as_object_mut().expect("object");
        if let Some(t) = self.trees {
            m.insert("trees".into(), json!(t));
        }
        if let Some(u) = &self.u {
            m.insert("U".into(), json!(u));
        }
        if !self.per_tree.is_empty() {
            m.insert(
                "per_tree".into(),
                Value::Array(
                    self.per_tree
                        .iter()
                        .map(|r| json!({"cells": r.cells, "torsion": r.torsion.to_string()}))
                        .collect(),
                ),
            );
        }
        v
    }
}

fn binom_big(n: usize, r: usize) -> BigInt {
    gen_binom(n as i64, r as i64)
}

/// Brute-force enumeration of all `k`-trees, each contributing `|H̃_{k−1}(Y)|²`, times the
/// product of its cell weights when `weights` (one per `k`-cell) is given.
pub fn enumerate_trees(
    x: &ChainComplex,
    k: usize,
    cap: u64,
    weights: Option<&[LaurentPoly]>,
) -> Result<TreeReport> {
    check_k(x, k)?;
    let n = x.num_cells(k as isize);
    if let Some(w) = weights {
        if w.len() != n {
            return Err(Error::Shape(format!("{} weights for {n} cells", w.len())));
        }
    }
    let size = tree_size(x, k);
    let count = binom_big(n, size);
    if count > BigInt::from(cap) {
        return Err(Error::CapExceeded {
            required: format!("{count} candidate subsets"),
            cap,
        });
    }
    let bd = x.reduced_boundary(k as isize);
    let cells_below = if k == 0 { 1 } else { x.num_cells(k as isize - 1) };
    let r_below = if k == 0 { 0 } else { rank(&x.reduced_boundary(k as isize - 1)) };
    // with the right size, acyclicity alone certifies a tree; finiteness must then follow
    let full_rank_needed = cells_below - r_below;
    let subsets: Vec<Vec<usize>> = (0..n).combinations(size).collect();
    let found: Vec<(Vec<usize>, BigInt)> = subsets
        .into_par_iter()
        .filter_map(|t| {
            let sub = bd.select_columns(&t);
            if rank(&sub) != t.len() {
                return None;
            }
            debug_assert_eq!(t.len(), full_rank_needed);
            Some((t, torsion_order(&smith_normal_form(&sub))))
        })
        .collect();
    let labels = x.cells(k as isize);
    let tau = match weights {
        None => TauValue::Int(found.iter().map(|(_, tor)| tor * tor).sum()),
        Some(w) => {
            let vars = w.first().map(|p| p.vars().clone()).unwrap_or_else(|| LaurentPoly::table::<&str>(&[]));
            let mut acc = LaurentPoly::zero(vars.clone());
            for (t, tor) in &found {
                let mono = t.iter().fold(LaurentPoly::one(vars.clone()), |m, &j| &m * &w[j]);
                acc = &acc + &mono.scale(&(tor * tor));
            }
            TauValue::Poly(acc)
        }
    };
    Ok(TreeReport {
        tau,
        method: "brute".into(),
        trees: Some(found.len()),
        u: None,
        per_tree: found
            .into_iter()
            .map(|(t, torsion)| TreeRecord {
                cells: t.iter().map(|&j| labels[j].clone()).collect(),
                torsion,
            })
            .collect(),
    })
}

/// `true` iff `b̃_j = 0` for every `j` below the top dimension.
pub fn is_apc(x: &ChainComplex) -> bool {
    x.is_apc()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::cube;
    use crate::exact_algebra::IntMatrix;

    fn rp2() -> ChainComplex {
        ChainComplex::new(
            vec![vec!["v".into()], vec!["e".into()], vec!["f".into()]],
            vec![IntMatrix::from_i64(&[&[0]]), IntMatrix::from_i64(&[&[2]])],
            false,
        )
        .unwrap()
    }

    #[test]
    fn cst_examples() {
        let sq = cube(2).unwrap().to_chain().skeleton(1);
        assert!(is_cst(&sq, 1, &[0, 1, 2]).unwrap().is_tree());
        let all = is_cst(&sq, 1, &[0, 1, 2, 3]).unwrap();
        assert!(!all.right_size && !all.is_tree());
        let c = is_cst(&rp2(), 2, &[0]).unwrap();
        assert!(c.is_tree());
        assert_eq!(c.torsion, BigInt::from(2));
    }

    #[test]
    fn brute_examples() {
        let q2 = cube(2).unwrap().to_chain();
        let r = enumerate_trees(&q2, 1, DEFAULT_BRUTE_CAP, None).unwrap();
        assert_eq!((r.trees, r.tau.as_int().cloned()), (Some(4), Some(BigInt::from(4))));
        let q3 = cube(3).unwrap().to_chain();
        let r = enumerate_trees(&q3, 2, DEFAULT_BRUTE_CAP, None).unwrap();
        assert_eq!((r.trees, r.tau.as_int().cloned()), (Some(6), Some(BigInt::from(6))));
        let r = enumerate_trees(&rp2(), 2, DEFAULT_BRUTE_CAP, None).unwrap();
        assert_eq!((r.trees, r.tau.as_int().cloned()), (Some(1), Some(BigInt::from(4))));
        assert!(matches!(enumerate_trees(&q3, 1, 10, None), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn report_json() {
        let q2 = cube(2).unwrap().to_chain();
        let r = enumerate_trees(&q2, 2, DEFAULT_BRUTE_CAP, None).unwrap();
        assert_eq!(
            r.to_json().to_string(),
            r#"{"method":"brute","per_tree":[{"cells":["**"],"torsion":"1"}],"tau":"1","trees":1}"#
        );
    }
}
