//! Face weightings by Laurent monomials `ξ_f = ∏_{f_i=*} q_i ∏_{f_i=0} x_i ∏_{f_i=1} y_i`.
//!
//! The algebraic weighting rescales the boundary by `ξ_g / ξ_f` and still squares to zero.
//! The combinatorial weighting only enters as a diagonal factor in `∂ diag(ξ) ∂ᵀ`; its
//! rescaled boundaries would not form a chain complex, so none is built.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{boundary_matrix, sign, CubicalComplex, Face, Sym};
use crate::chain_complex::Family;
use crate::error::{Error, Result};
use crate::exact_algebra::{binom_usize, LaurentPoly, PolyMatrix};

/// Variable table `[q_d.., x_d.., y_d..]` over the directions `d` of a universe.
#[derive(Clone, Debug)]
pub struct WeightVars {
    universe: Vec<u32>,
    vars: Arc<[String]>,
}

impl WeightVars {
    pub fn new(universe: &[u32]) -> Self {
        let names: Vec<String> = ["q", "x", "y"]
            .iter()
            .flat_map(|p| universe.iter().map(move |d| format!("{p}{d}")))
            .collect();
        WeightVars {
            universe: universe.to_vec(),
            vars: LaurentPoly::table(&names),
        }
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    fn exponent(&self, f: &Face) -> Vec<i32> {
        let n = self.universe.len();
        let mut e = vec![0; 3 * n];
        for (p, s) in f.syms().iter().enumerate() {
            let block = match s {
                Sym::Star => 0,
                Sym::Zero => 1,
                Sym::One => 2,
            };
            e[block * n + p] = 1;
        }
        e
    }

    /// `ξ_f`.
    pub fn xi(&self, f: &Face) -> LaurentPoly {
        LaurentPoly::monomial(self.vars.clone(), self.exponent(f), 1)
    }

    /// `c · ξ_g / ξ_f`.
    pub fn ratio(&self, g: &Face, f: &Face, c: i64) -> LaurentPoly {
        let e = self.exponent(g).iter().zip(self.exponent(f)).map(|(a, b)| a - b).collect();
        LaurentPoly::monomial(self.vars.clone(), e, c)
    }

    fn position(&self, dir: u32) -> Result<usize> {
        self.universe
            .iter()
            .position(|&d| d == dir)
            .ok_or_else(|| Error::Direction(format!("direction {dir} is not in {:?}", self.universe)))
    }

    fn mono(&self, pairs: &[(usize, i32)]) -> LaurentPoly {
        let mut e = vec![0; self.vars.len()];
        for &(i, k) in pairs {
            e[i] += k;
        }
        LaurentPoly::monomial(self.vars.clone(), e, 1)
    }

    /// `u_d = q_d²/x_d² + q_d²/y_d²`.
    pub fn u(&self, dir: u32) -> Result<LaurentPoly> {
        let p = self.position(dir)?;
        let n = self.universe.len();
        Ok(&self.mono(&[(p, 2), (n + p, -2)]) + &self.mono(&[(p, 2), (2 * n + p, -2)]))
    }

    /// `u_A = Σ_{d∈A} u_d`.
    pub fn u_set(&self, dirs: &[u32]) -> Result<LaurentPoly> {
        dirs.iter().try_fold(LaurentPoly::zero(self.vars.clone()), |acc, &d| Ok(&acc + &self.u(d)?))
    }

    /// `q_d`, `x_d` or `y_d` as a polynomial.
    pub fn var(&self, kind: char, dir: u32) -> Result<LaurentPoly> {
        let block = match kind {
            'q' => 0,
            'x' => 1,
            'y' => 2,
            _ => return Err(Error::Direction(format!("unknown weight variable kind {kind}"))),
        };
        let p = self.position(dir)?;
        Ok(LaurentPoly::var(self.vars.clone(), block * self.universe.len() + p))
    }
}

/// `ξ_f` over the weight table of the complex's universe.
pub fn face_weight(x: &CubicalComplex, f: &Face) -> LaurentPoly {
    WeightVars::new(x.universe()).xi(f)
}

/// Algebraically weighted boundaries `∂̂_1, …, ∂̂_d`, rows and columns in face order.
pub fn algebraic_boundaries(x: &CubicalComplex) -> Vec<PolyMatrix> {
    let w = WeightVars::new(x.universe());
    let d = x.dim();
    (1..=d.max(0) as usize)
        .map(|k| {
            let rows = x.faces_of_dim(k - 1);
            let cols = x.faces_of_dim(k);
            let mut m = PolyMatrix::zeros(w.vars().clone(), rows.len(), cols.len());
            for (c, g) in cols.iter().enumerate() {
                for (r, f) in rows.iter().enumerate() {
                    let e = sign(f, g).expect("dimensions match");
                    if e != 0 {
                        m.set(r, c, w.ratio(g, f, i64::from(e)));
                    }
                }
            }
            m
        })
        .collect()
}

/// Algebraically weighted Laplacian `L̂_k`, with the weighted coboundary the transpose of `∂̂`.
pub fn algebraic_laplacian(x: &CubicalComplex, k: usize, family: Family) -> Result<PolyMatrix> {
    let d = x.dim();
    if d < 0 || k as isize > d {
        return Err(Error::DimensionOutOfRange {
            dim: k as isize,
            lo: 0,
            hi: d,
        });
    }
    let w = WeightVars::new(x.universe());
    let n = x.faces_of_dim(k).len();
    let bd = algebraic_boundaries(x);
    let zero = PolyMatrix::zeros(w.vars().clone(), n, n);
    let ud = match bd.get(k) {
        Some(b) => b.mul(&b.transpose())?,
        None => zero.clone(),
    };
    let du = match k.checked_sub(1).and_then(|i| bd.get(i)) {
        Some(b) => b.transpose().mul(b)?,
        None => zero,
    };
    match family {
        Family::Ud => Ok(ud),
        Family::Du => Ok(du),
        Family::Tot => ud.add(&du),
    }
}

/// Combinatorially weighted `∂_k diag(ξ) ∂_kᵀ` on the `(k−1)`-faces, weighting each `k`-face.
pub fn combinatorial_laplacian(x: &CubicalComplex, k: usize) -> Result<PolyMatrix> {
    if k == 0 || k as isize > x.dim() {
        return Err(Error::DimensionOutOfRange {
            dim: k as isize,
            lo: 1,
            hi: x.dim(),
        });
    }
    let w = WeightVars::new(x.universe());
    let rows = x.faces_of_dim(k - 1);
    let cols = x.faces_of_dim(k);
    let bd = boundary_matrix(&rows, &cols, |f, g| i64::from(sign(f, g).expect("dimensions match")));
    let mut m = PolyMatrix::zeros(w.vars().clone(), rows.len(), rows.len());
    for (c, g) in cols.iter().enumerate() {
        let support: Vec<(usize, BigInt)> = (0..rows.len())
            .filter_map(|r| {
                let v = bd.get(r, c);
                (!num_traits::Zero::is_zero(v)).then(|| (r, v.clone()))
            })
            .collect();
        let xi = w.xi(g);
        for (a, va) in &support {
            for (b, vb) in &support {
                let entry = m.get(*a, *b) + &xi.scale(&(va * vb));
                m.set(*a, *b, entry);
            }
        }
    }
    Ok(m)
}

/// Weighted `L̂^tot_i(Q_n)` eigenvalues: `u_C` with multiplicity `C(|C|, i)` for `|C| ≥ i`.
/// The empty set contributes the eigenvalue 0.
pub fn cube_weighted_tot_eigenvalues(universe: &[u32], i: usize) -> Vec<(LaurentPoly, usize)> {
    let w = WeightVars::new(universe);
    subsets(universe)
        .into_iter()
        .filter(|c| c.len() >= i)
        .map(|c| (w.u_set(&c).expect("subset of universe"), binom_usize(c.len() as i64, i as i64)))
        .collect()
}

/// Weighted `L̂^ud_i(Q_n)` nonzero eigenvalues: `u_A` with multiplicity `C(|A|−1, i)`.
pub fn cube_weighted_ud_eigenvalues(universe: &[u32], i: usize) -> Vec<(LaurentPoly, usize)> {
    let w = WeightVars::new(universe);
    subsets(universe)
        .into_iter()
        .filter(|a| a.len() > i)
        .map(|a| (w.u_set(&a).expect("subset of universe"), binom_usize(a.len() as i64 - 1, i as i64)))
        .collect()
}

pub(crate) fn subsets(universe: &[u32]) -> Vec<Vec<u32>> {
    (0u32..1 << universe.len())
        .map(|mask| {
            universe
                .iter()
                .enumerate()
                .filter(|(p, _)| mask >> p & 1 == 1)
                .map(|(_, &d)| d)
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use num_rational::BigRational;

    use super::*;
    use crate::cubical::cube;
    use crate::exact_algebra::{char_poly_rational, IntMatrix};

    #[test]
    fn q1_algebraic_boundary() {
        let q1 = cube(1).unwrap();
        let b = &algebraic_boundaries(&q1)[0];
        assert_eq!(b.get(0, 0).to_string(), "-q1*x1^-1");
        assert_eq!(b.get(1, 0).to_string(), "q1*y1^-1");
        let tot = algebraic_laplacian(&q1, 1, Family::Tot).unwrap();
        let w = WeightVars::new(&[1]);
        assert_eq!(*tot.get(0, 0), w.u(1).unwrap());
    }

    #[test]
    fn boundary_squares_to_zero() {
        for n in 2..=4 {
            let bd = algebraic_boundaries(&cube(n).unwrap());
            for k in 1..bd.len() {
                assert!(bd[k - 1].mul(&bd[k]).unwrap().is_zero(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn specializes_to_unweighted() {
        let x = cube(3).unwrap();
        let c = x.to_chain();
        for k in 0..=3usize {
            for fam in [Family::Ud, Family::Du, Family::Tot] {
                let l = algebraic_laplacian(&x, k, fam).unwrap();
                let plain = c.laplacian(k as isize, fam).unwrap();
                for r in 0..l.nrows() {
                    for s in 0..l.ncols() {
                        assert_eq!(l.get(r, s).eval_ones(), plain.get(r, s).clone());
                    }
                }
            }
        }
    }

    #[test]
    fn combinatorial_q2_is_weighted_cycle() {
        let l = combinatorial_laplacian(&cube(2).unwrap(), 1).unwrap();
        let ones: Vec<Vec<BigInt>> = (0..4)
            .map(|r| (0..4).map(|s| l.get(r, s).eval_ones()).collect())
            .collect();
        let plain = cube(2).unwrap().to_chain().laplacian(0, Family::Ud).unwrap();
        assert_eq!(IntMatrix::from_rows(&ones, 4).unwrap(), plain);
    }

    #[test]
    fn weighted_cube_spectrum_at_a_point() {
        let universe = [1u32, 2];
        let w = WeightVars::new(&universe);
        let vals = [2, 3, 5, 7, 11, 13];
        let point: HashMap<String, BigRational> = w
            .vars()
            .iter()
            .zip(vals)
            .map(|(v, a)| (v.clone(), BigRational::from_integer(a.into())))
            .collect();
        let x = cube(2).unwrap();
        for i in 0..=2 {
            let l = algebraic_laplacian(&x, i, Family::Tot).unwrap().eval(&point).unwrap();
            let chi = char_poly_rational(&l).unwrap();
            let y = BigRational::from_integer(17.into());
            let lhs = chi.iter().rev().fold(BigRational::from_integer(0.into()), |a, c| a * &y + c);
            let rhs = cube_weighted_tot_eigenvalues(&universe, i)
                .iter()
                .fold(BigRational::from_integer(1.into()), |acc, (u, m)| {
                    let d = &y - u.eval(&point).unwrap();
                    (0..*m).fold(acc, |a, _| a * &d)
                });
            assert_eq!(lhs, rhs, "i={i}");
        }
    }
}
