//! Shifted cubical complexes, near-prisms and the recursive ud-spectrum.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::Serialize;

use super::weights::subsets;
use super::{CubicalComplex, Face, Sym};
use crate::error::{Error, Result};

fn direction_sets(x: &CubicalComplex) -> BTreeSet<Vec<u32>> {
    x.faces().iter().map(|f| x.dir(f)).collect()
}

/// Every face with direction set `S` is present whenever one is.
fn dir_closed(x: &CubicalComplex, dirs: &BTreeSet<Vec<u32>>) -> bool {
    let n = x.universe().len();
    dirs.iter().all(|s| {
        let count = x.faces().iter().filter(|f| x.dir(f) == *s).count();
        count == 1 << (n - s.len())
    })
}

/// `S ≤ T` componentwise on the increasing lists, same size.
fn precedes(s: &[u32], t: &[u32]) -> bool {
    s.len() == t.len() && s.iter().zip(t).all(|(a, b)| a <= b)
}

/// Componentwise order ideal on each size class.
fn componentwise_closed(universe: &[u32], dirs: &BTreeSet<Vec<u32>>) -> bool {
    dirs.iter().all(|t| {
        universe
            .iter()
            .copied()
            .combinations(t.len())
            .filter(|s| precedes(s, t))
            .all(|s| dirs.contains(&s))
    })
}

/// Shiftedness: the full 1-skeleton is present, membership depends only on the direction
/// set, and direction sets are closed under componentwise decrease.
pub fn is_shifted(x: &CubicalComplex) -> bool {
    let dirs = direction_sets(x);
    let u = x.universe();
    dirs.contains(&Vec::new())
        && u.iter().all(|&d| dirs.contains(&vec![d]))
        && dir_closed(x, &dirs)
        && componentwise_closed(u, &dirs)
}

/// The same conditions with the 1-skeleton requirement weakened to "all vertices". This is
/// what the link in the first direction of a shifted complex satisfies.
pub fn is_shifted_relaxed(x: &CubicalComplex) -> bool {
    let dirs = direction_sets(x);
    dirs.contains(&Vec::new()) && dir_closed(x, &dirs) && componentwise_closed(x.universe(), &dirs)
}

/// All shifted complexes on directions `1..=n`: mirrors of the down-closed families of
/// direction sets that contain every singleton and are componentwise closed.
pub fn shifted_family(n: usize) -> Vec<CubicalComplex> {
    let universe: Vec<u32> = (1..=n as u32).collect();
    let all = subsets(&universe);
    // sets of size >= 2 are optional; the rest are forced
    let optional: Vec<&Vec<u32>> = all.iter().filter(|s| s.len() >= 2).collect();
    let forced: Vec<Vec<u32>> = all.iter().filter(|s| s.len() < 2).cloned().collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << optional.len() {
        let mut fam: BTreeSet<Vec<u32>> = forced.iter().cloned().collect();
        fam.extend(
            optional
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, s)| (*s).clone()),
        );
        let down = fam.iter().all(|s| {
            (0..s.len()).all(|p| {
                let mut t = s.clone();
                t.remove(p);
                fam.contains(&t)
            })
        });
        if down && componentwise_closed(&universe, &fam) {
            out.push(from_direction_sets(&universe, &fam));
        }
    }
    out
}

/// All faces whose direction set lies in `fam`.
pub(crate) fn from_direction_sets(universe: &[u32], fam: &BTreeSet<Vec<u32>>) -> CubicalComplex {
    let n = universe.len();
    let mut faces = BTreeSet::new();
    for s in fam {
        let star: Vec<bool> = universe.iter().map(|d| s.contains(d)).collect();
        let free = n - s.len();
        for bits in 0u32..1 << free {
            let mut k = 0;
            let syms = star
                .iter()
                .map(|&st| {
                    if st {
                        Sym::Star
                    } else {
                        k += 1;
                        if bits >> (k - 1) & 1 == 1 {
                            Sym::One
                        } else {
                            Sym::Zero
                        }
                    }
                })
                .collect();
            faces.insert(Face(syms));
        }
    }
    CubicalComplex::from_closed(universe.to_vec(), faces)
}

/// Deletion/link decomposition in one direction, with both near-prism conditions.
#[derive(Clone, Debug)]
pub struct NearPrism {
    pub direction: u32,
    pub deletion: CubicalComplex,
    pub link: CubicalComplex,
    /// `del \ link`, in face order.
    pub b: Vec<Face>,
    /// Every facet of every face of the deletion lies in the link.
    pub boundary_in_link: bool,
    /// Both copies of the deletion (0 or 1 inserted in the direction) lie in the complex.
    pub copies_in_complex: bool,
}

impl NearPrism {
    pub fn new(x: &CubicalComplex, i: u32) -> Result<Self> {
        let deletion = x.deletion(i)?;
        let link = x.link(i)?;
        let boundary_in_link = deletion
            .faces()
            .iter()
            .all(|f| f.facets().iter().all(|g| link.contains(g)));
        let copies_in_complex = [Sym::Zero, Sym::One].into_iter().all(|s| {
            x.insert_copy(&deletion, i, s)
                .map(|c| c.iter().all(|f| x.contains(f)))
                .unwrap_or(false)
        });
        let b = deletion.faces().iter().filter(|f| !link.contains(f)).cloned().collect();
        Ok(NearPrism {
            direction: i,
            deletion,
            link,
            b,
            boundary_in_link,
            copies_in_complex,
        })
    }

    pub fn holds(&self) -> bool {
        self.boundary_in_link && self.copies_in_complex
    }

    /// `c_j`: number of `j`-dimensional faces of `B`.
    pub fn b_count(&self, j: usize) -> usize {
        self.b.iter().filter(|f| f.dim() == j).count()
    }
}

impl CubicalComplex {
    pub fn is_near_prism(&self, i: u32) -> Result<bool> {
        Ok(NearPrism::new(self, i)?.holds())
    }
}

/// Nonzero eigenvalues of `L^ud_{d−1}` for a pure complex that is a near-prism in its
/// smallest direction, by the deletion/link recursion. Weakly decreasing.
pub fn shifted_spectrum(x: &CubicalComplex) -> Result<Vec<u64>> {
    if !x.is_pure() {
        return Err(Error::Hypothesis("complex is not pure".into()));
    }
    let d = x.dim();
    if d < 1 {
        return Ok(Vec::new());
    }
    shifted_spectrum_at(x, d as usize)
}

/// Nonzero eigenvalues of `L^ud_{j−1}`, recursing on the `j`-dimensional pure skeleton.
pub fn shifted_spectrum_at(x: &CubicalComplex, j: usize) -> Result<Vec<u64>> {
    if j == 0 {
        return Ok(Vec::new());
    }
    let y = x.pure_skeleton(j);
    if y.is_empty() {
        return Ok(Vec::new());
    }
    let Some(&i) = y.universe().first() else {
        return Ok(Vec::new());
    };
    let np = NearPrism::new(&y, i)?;
    if !np.holds() {
        return Err(Error::Hypothesis(format!(
            "the {j}-dimensional pure skeleton is not a near-prism in direction {i}"
        )));
    }
    let ell = np.link.faces_of_dim(j - 1).len();
    let s_del = shifted_spectrum_at(&np.deletion, j)?;
    let s_link = shifted_spectrum_at(&np.link, j - 1)?;
    let mut inner: Vec<u64> = s_del.iter().chain(&s_link).copied().collect();
    inner.sort_unstable_by(|a, b| b.cmp(a));
    if inner.len() < ell {
        inner.resize(ell, 0);
    }
    for v in inner.iter_mut().take(ell) {
        *v += 2;
    }
    let mut out: Vec<u64> = s_del.into_iter().chain(inner).filter(|&v| v != 0).collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}

/// Betti-level check of the near-prism wedge-of-spheres prediction.
#[derive(Clone, Debug, Serialize)]
pub struct BettiCheck {
    pub direction: u32,
    pub betti: Vec<usize>,
    pub deletion_betti: Vec<usize>,
    pub b_counts: Vec<usize>,
    pub holds: bool,
}

/// Compares `b̃_j(X)` with `b̃_j(del_i X) + c_{i,j}` for every `j`.
pub fn near_prism_betti_check(x: &CubicalComplex, i: u32) -> Result<BettiCheck> {
    let np = NearPrism::new(x, i)?;
    if !np.holds() {
        return Err(Error::Hypothesis(format!("not a near-prism in direction {i}")));
    }
    if x.is_empty() {
        return Err(Error::Hypothesis("empty complex".into()));
    }
    let top = x.dim().max(0) as usize;
    let cx = x.to_chain();
    let cd = np.deletion.to_chain();
    let betti: Vec<usize> = (0..=top).map(|j| cx.reduced_betti(j as isize)).collect();
    let deletion_betti: Vec<usize> = (0..=top).map(|j| cd.reduced_betti(j as isize)).collect();
    let b_counts: Vec<usize> = (0..=top).map(|j| np.b_count(j)).collect();
    let holds = (0..=top).all(|j| betti[j] == deletion_betti[j] + b_counts[j]);
    Ok(BettiCheck {
        direction: i,
        betti,
        deletion_betti,
        b_counts,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain_complex::Family;
    use crate::cubical::cube;

    fn square_boundary() -> CubicalComplex {
        CubicalComplex::build_from_strs(vec![1, 2], &["*0", "*1", "0*", "1*"]).unwrap()
    }

    fn direct(x: &CubicalComplex) -> Vec<u64> {
        let d = x.dim();
        x.to_chain()
            .spectrum(d - 1, Family::Ud)
            .unwrap()
            .nonzero_sequence()
            .unwrap()
            .iter()
            .map(|v| u64::try_from(v).unwrap())
            .collect()
    }

    #[test]
    fn cubes_are_shifted_near_prisms() {
        for n in 1..=3 {
            let q = cube(n).unwrap();
            assert!(is_shifted(&q));
            for i in 1..=n as u32 {
                let np = NearPrism::new(&q, i).unwrap();
                assert!(np.holds() && np.b.is_empty());
            }
        }
    }

    #[test]
    fn near_prism_examples() {
        let sq = square_boundary();
        let np = NearPrism::new(&sq, 1).unwrap();
        assert!(np.holds());
        assert_eq!(np.b.iter().map(|f| f.to_string()).collect::<Vec<_>>(), vec!["*"]);
        let edge = CubicalComplex::build_from_strs(vec![1, 2], &["*0"]).unwrap();
        assert!(!edge.is_near_prism(2).unwrap());
        let r = near_prism_betti_check(&sq, 1).unwrap();
        assert!(r.holds);
        assert_eq!(r.betti, vec![0, 1]);
    }

    #[test]
    fn shiftedness_examples() {
        let skel = cube(2).unwrap().skeleton(1);
        assert!(is_shifted(&skel));
        let missing_12 = CubicalComplex::build_from_strs(
            vec![1, 2, 3],
            &["*0*", "*1*", "0**", "1**"],
        )
        .unwrap();
        assert!(!is_shifted(&missing_12));
        let present_12 = CubicalComplex::build_from_strs(vec![1, 2, 3], &["**0", "**1", "*0*", "*1*"])
            .unwrap();
        assert!(is_shifted(&present_12.skeleton(2)));
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(shifted_spectrum(&cube(1).unwrap()).unwrap(), vec![2]);
        assert_eq!(shifted_spectrum(&cube(2).unwrap()).unwrap(), vec![4]);
        assert_eq!(shifted_spectrum(&cube(3).unwrap()).unwrap(), vec![6]);
        assert_eq!(shifted_spectrum(&square_boundary()).unwrap(), vec![4, 2, 2]);
    }

    #[test]
    fn shifted_family_counts_and_spectra() {
        for n in 1..=3 {
            for x in shifted_family(n) {
                assert!(is_shifted(&x));
                let d = x.dim();
                let y = x.pure_skeleton(d as usize);
                assert_eq!(shifted_spectrum(&y).unwrap(), direct(&y));
            }
        }
    }
}
