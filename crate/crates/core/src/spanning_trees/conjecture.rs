//! The conjectured product formula for the weighted enumerator `τ̂_k(Q_n)` and the
//! recurrence for its `q`-free part `F(n, k)`.

use num_bigint::BigInt;
use serde::Serialize;

use super::{enumerate_trees, TauValue};
use crate::cubical::{cube_with_cap, WeightVars};
use crate::error::{Error, Result};
use crate::exact_algebra::{binom_usize, gen_binom, LaurentPoly};

fn check_range(n: usize, k: usize) -> Result<()> {
    if k < 1 || k > n {
        return Err(Error::Range(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    Ok(())
}

fn subsets_of(s: &[u32]) -> impl Iterator<Item = Vec<u32>> + '_ {
    (0u32..1 << s.len()).map(move |m| {
        s.iter()
            .enumerate()
            .filter(|(p, _)| m >> p & 1 == 1)
            .map(|(_, &d)| d)
            .collect()
    })
}

/// `Σ_{i∈A} q_i^e (x_i + y_i) ∏_{j∈A∖i} x_j y_j`, with `e = 1` or `0`.
fn bracket(w: &WeightVars, a: &[u32], with_q: bool) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::zero(w.vars().clone());
    for &i in a {
        let mut term = &w.var('x', i)? + &w.var('y', i)?;
        if with_q {
            term = &term * &w.var('q', i)?;
        }
        for &j in a.iter().filter(|&&j| j != i) {
            term = &term * &(&w.var('x', j)? * &w.var('y', j)?);
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

fn exponent(v: BigInt) -> Result<u32> {
    u32::try_from(v).map_err(|e| Error::Range(format!("exponent must be a nonnegative u32: {e}")))
}

/// Right-hand side of the conjectured formula:
/// `(q_1⋯q_n)^{Σ_{i=k−1}^{n−1} C(n−1,i)C(i−1,k−2)} ∏_{|A|≥k+1} [bracket_A]^{C(|A|−2,k−1)}`.
pub fn conjecture_rhs(n: usize, k: usize) -> Result<LaurentPoly> {
    check_range(n, k)?;
    let universe: Vec<u32> = (1..=n as u32).collect();
    let w = WeightVars::new(&universe);
    let e: BigInt = (k - 1..n)
        .map(|i| gen_binom(n as i64 - 1, i as i64) * gen_binom(i as i64 - 1, k as i64 - 2))
        .sum();
    let e = exponent(e)?;
    let mut out = universe
        .iter()
        .try_fold(LaurentPoly::one(w.vars().clone()), |acc, &d| Ok::<_, Error>(&acc * &w.var('q', d)?))?
        .pow(e);
    for a in subsets_of(&universe).filter(|a| a.len() > k) {
        let m = exponent(gen_binom(a.len() as i64 - 2, k as i64 - 1))?;
        out = &out * &bracket(&w, &a, true)?.pow(m);
    }
    Ok(out)
}

/// Outcome of comparing brute-force `τ̂_k(Q_n)` with the conjectured formula.
#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub n: usize,
    pub k: usize,
    pub trees: usize,
    pub equal: bool,
    /// First differing monomial with the brute-force and formula coefficients.
    pub difference: Option<(String, String, String)>,
}

/// Brute-force weighted enumeration (torsion factor included) against [`conjecture_rhs`].
pub fn verify_conjecture(n: usize, k: usize, cap: u64) -> Result<ConjectureReport> {
    check_range(n, k)?;
    let q = cube_with_cap(n, n.max(crate::cubical::DEFAULT_CUBE_CAP))?;
    let w = WeightVars::new(q.universe());
    let weights: Vec<LaurentPoly> = q.faces_of_dim(k).into_iter().map(|f| w.xi(f)).collect();
    let report = enumerate_trees(&q.to_chain(), k, cap, Some(&weights))?;
    let TauValue::Poly(lhs) = report.tau else {
        unreachable!("weighted enumeration yields a polynomial")
    };
    let rhs = conjecture_rhs(n, k)?;
    let difference = lhs
        .first_difference(&rhs)
        .map(|(m, a, b)| (m.to_string(), a.to_string(), b.to_string()));
    Ok(ConjectureReport {
        n,
        k,
        trees: report.trees.unwrap_or(0),
        equal: difference.is_none(),
        difference,
    })
}

/// `F(S, k) = ∏_{A⊆S, |A|≥k+1} [Σ_{i∈A} (x_i+y_i) ∏_{j∈A∖i} x_j y_j]^{C(|A|−2,k−1)}` over the
/// weight table of `table`.
pub fn f_poly(table: &WeightVars, s: &[u32], k: usize) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::one(table.vars().clone());
    for a in subsets_of(s).filter(|a| a.len() > k) {
        let m = exponent(gen_binom(a.len() as i64 - 2, k as i64 - 1))?;
        out = &out * &bracket(table, &a, false)?.pow(m);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct FRecurrenceReport {
    pub n: usize,
    pub k: usize,
    pub holds: bool,
}

/// Checks `F(n,k) = G([n], n−1, k) · F(n, n−1)^{C(n−2,k−1)}` with
/// `G(S,a,b) = ∏_{A⊆S,|A|=a} F(A,b)`, by full expansion.
pub fn f_recurrence_check(n: usize, k: usize) -> Result<FRecurrenceReport> {
    if n < 2 || k < 1 || k > n - 1 {
        return Err(Error::Range(format!("need n >= 2 and 1 <= k <= n-1, got n={n}, k={k}")));
    }
    let universe: Vec<u32> = (1..=n as u32).collect();
    let w = WeightVars::new(&universe);
    let lhs = f_poly(&w, &universe, k)?;
    let mut g = LaurentPoly::one(w.vars().clone());
    for a in subsets_of(&universe).filter(|a| a.len() == n - 1) {
        g = &g * &f_poly(&w, &a, k)?;
    }
    let e = binom_usize(n as i64 - 2, k as i64 - 1) as u32;
    let rhs = &g * &f_poly(&w, &universe, n - 1)?.pow(e);
    Ok(FRecurrenceReport { n, k, holds: lhs == rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spanning_trees::DEFAULT_BRUTE_CAP;

    #[test]
    fn rhs_examples() {
        assert_eq!(conjecture_rhs(2, 2).unwrap().to_string(), "q1*q2");
        assert_eq!(conjecture_rhs(3, 1).unwrap().eval_ones(), BigInt::from(384));
        let w = WeightVars::new(&[1, 2]);
        let expect = &(&w.var('q', 1).unwrap() * &w.var('q', 2).unwrap())
            * &bracket(&w, &[1, 2], true).unwrap();
        assert_eq!(conjecture_rhs(2, 1).unwrap(), expect);
    }

    #[test]
    fn small_conjecture_cases() {
        for (n, k) in [(2, 1), (2, 2), (3, 2), (3, 3)] {
            let r = verify_conjecture(n, k, DEFAULT_BRUTE_CAP).unwrap();
            assert!(r.equal, "{n},{k}: {:?}", r.difference);
        }
    }

    #[test]
    fn recurrence() {
        for (n, k) in [(3, 1), (3, 2)] {
            assert!(f_recurrence_check(n, k).unwrap().holds);
        }
    }
}
