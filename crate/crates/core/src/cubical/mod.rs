//! Proper cubical complexes: order ideals in the face poset of a cube, with faces written as
//! words over `{0, 1, *}` indexed by a set of direction labels.

mod face;
mod json;
mod mirror;
mod shifted;
mod weights;

use std::collections::BTreeSet;

use crate::chain_complex::ChainComplex;
use crate::error::{Error, Result};
use crate::exact_algebra::IntMatrix;

pub use face::{sign, Face, Sym};
pub use json::{CubicalJson, MirrorJson};
pub use mirror::{all_simplicial_complexes, mirror, SimplicialComplex};
pub use shifted::{
    is_shifted, is_shifted_relaxed, near_prism_betti_check, shifted_family, shifted_spectrum,
    shifted_spectrum_at, BettiCheck, NearPrism,
};
pub use weights::{
    algebraic_boundaries, algebraic_laplacian, combinatorial_laplacian, cube_weighted_tot_eigenvalues,
    cube_weighted_ud_eigenvalues, face_weight, WeightVars,
};

/// Default largest cube dimension accepted by [`cube`].
pub const DEFAULT_CUBE_CAP: usize = 6;

/// An order ideal of faces over a sorted direction set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubicalComplex {
    universe: Vec<u32>,
    faces: BTreeSet<Face>,
}

impl CubicalComplex {
    /// The empty complex on a direction set.
    pub fn empty(universe: Vec<u32>) -> Result<Self> {
        check_universe(&universe)?;
        Ok(CubicalComplex {
            universe,
            faces: BTreeSet::new(),
        })
    }

    /// Downward closure of the generators.
    pub fn build(universe: Vec<u32>, generators: impl IntoIterator<Item = Face>) -> Result<Self> {
        check_universe(&universe)?;
        let mut faces = BTreeSet::new();
        let mut stack: Vec<Face> = Vec::new();
        for g in generators {
            if g.len() != universe.len() {
                return Err(Error::MalformedFace(format!(
                    "{g} has {} symbols for {} directions",
                    g.len(),
                    universe.len()
                )));
            }
            stack.push(g);
        }
        while let Some(f) = stack.pop() {
            if faces.contains(&f) {
                continue;
            }
            stack.extend(f.facets());
            faces.insert(f);
        }
        Ok(CubicalComplex { universe, faces })
    }

    /// Parses generator words such as `"0*1"`.
    pub fn build_from_strs<S: AsRef<str>>(universe: Vec<u32>, gens: &[S]) -> Result<Self> {
        let faces = gens.iter().map(|s| s.as_ref().parse()).collect::<Result<Vec<Face>>>()?;
        Self::build(universe, faces)
    }

    pub(crate) fn from_closed(universe: Vec<u32>, faces: BTreeSet<Face>) -> Self {
        debug_assert!(faces.iter().all(|f| f.facets().iter().all(|g| faces.contains(g))));
        CubicalComplex { universe, faces }
    }

    pub fn universe(&self) -> &[u32] {
        &self.universe
    }

    pub fn faces(&self) -> &BTreeSet<Face> {
        &self.faces
    }

    pub fn contains(&self, f: &Face) -> bool {
        self.faces.contains(f)
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    /// Dimension; −1 for the empty complex.
    pub fn dim(&self) -> isize {
        self.faces.iter().map(|f| f.dim() as isize).max().unwrap_or(-1)
    }

    /// Faces of dimension `i`, in the fixed order `0 < 1 < *` (lexicographic).
    pub fn faces_of_dim(&self, i: usize) -> Vec<&Face> {
        self.faces.iter().filter(|f| f.dim() == i).collect()
    }

    /// Face counts by dimension `0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        let d = self.dim();
        (0..=d).map(|i| self.faces_of_dim(i as usize).len()).collect()
    }

    /// Direction labels of the stars of `f`.
    pub fn dir(&self, f: &Face) -> Vec<u32> {
        f.star_positions().into_iter().map(|p| self.universe[p]).collect()
    }

    /// Maximal faces.
    pub fn facets(&self) -> Vec<&Face> {
        self.faces
            .iter()
            .filter(|f| {
                !self
                    .faces
                    .iter()
                    .any(|g| g.dim() == f.dim() + 1 && f.leq(g))
            })
            .collect()
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets().iter().all(|f| f.dim() as isize == d)
    }

    /// Every face lies in the complex together with all of its subfaces.
    pub fn is_order_ideal(&self) -> bool {
        self.faces.iter().all(|f| f.facets().iter().all(|g| self.faces.contains(g)))
    }

    /// Non-maximal faces.
    pub fn boundary_complex(&self) -> CubicalComplex {
        let facets: BTreeSet<&Face> = self.facets().into_iter().collect();
        let faces = self.faces.iter().filter(|f| !facets.contains(f)).cloned().collect();
        CubicalComplex::from_closed(self.universe.clone(), faces)
    }

    /// Faces of dimension at most `k`.
    pub fn skeleton(&self, k: isize) -> CubicalComplex {
        let faces = self.faces.iter().filter(|f| f.dim() as isize <= k).cloned().collect();
        CubicalComplex::from_closed(self.universe.clone(), faces)
    }

    /// Downward closure of the `j`-dimensional faces.
    pub fn pure_skeleton(&self, j: usize) -> CubicalComplex {
        let gens: Vec<Face> = self.faces_of_dim(j).into_iter().cloned().collect();
        CubicalComplex::build(self.universe.clone(), gens).expect("faces already match the universe")
    }

    fn position(&self, dir: u32) -> Result<usize> {
        self.universe
            .iter()
            .position(|&d| d == dir)
            .ok_or_else(|| Error::Direction(format!("direction {dir} is not in {:?}", self.universe)))
    }

    /// Prism in a new direction `i`: every face of `self` with any symbol inserted at `i`.
    pub fn prism(&self, i: u32) -> Result<CubicalComplex> {
        if self.universe.contains(&i) {
            return Err(Error::Direction(format!("direction {i} is already in {:?}", self.universe)));
        }
        let mut universe = self.universe.clone();
        let p = universe.partition_point(|&d| d < i);
        universe.insert(p, i);
        let faces = self
            .faces
            .iter()
            .flat_map(|f| [Sym::Zero, Sym::One, Sym::Star].map(|s| f.with(p, s)))
            .collect();
        Ok(CubicalComplex::from_closed(universe, faces))
    }

    /// Prism in a direction one larger than the current maximum.
    pub fn prism_next(&self) -> CubicalComplex {
        let next = self.universe.last().map_or(1, |&d| d + 1);
        self.prism(next).expect("fresh direction")
    }

    fn split(&self, i: u32, star: bool) -> Result<CubicalComplex> {
        let p = self.position(i)?;
        let mut universe = self.universe.clone();
        universe.remove(p);
        let faces = self
            .faces
            .iter()
            .filter(|f| (f.get(p) == Sym::Star) == star)
            .map(|f| f.without(p))
            .collect();
        Ok(CubicalComplex::from_closed(universe, faces))
    }

    /// `{f \ f_i : f_i ≠ *}` on the remaining directions.
    pub fn deletion(&self, i: u32) -> Result<CubicalComplex> {
        self.split(i, false)
    }

    /// `{f \ f_i : f_i = *}` on the remaining directions.
    pub fn link(&self, i: u32) -> Result<CubicalComplex> {
        self.split(i, true)
    }

    /// The copy of `other` (on the directions other than `i`) with `s` inserted at direction `i`.
    pub fn insert_copy(&self, other: &CubicalComplex, i: u32, s: Sym) -> Result<BTreeSet<Face>> {
        let p = self.position(i)?;
        Ok(other.faces.iter().map(|f| f.with(p, s)).collect())
    }

    /// Same set of faces, ignoring how the universe is labelled.
    pub fn same_faces(&self, other: &CubicalComplex) -> bool {
        self.faces == other.faces
    }

    /// Cellular chain complex with the cubical signs; cells are the face words.
    pub fn to_chain(&self) -> ChainComplex {
        let d = self.dim();
        if d < 0 {
            return ChainComplex::from_raw(Vec::new(), Vec::new(), None);
        }
        let by_dim: Vec<Vec<&Face>> = (0..=d as usize).map(|i| self.faces_of_dim(i)).collect();
        let cells = by_dim.iter().map(|v| v.iter().map(|f| f.to_string()).collect()).collect();
        let mut boundaries = vec![IntMatrix::zeros(0, by_dim[0].len())];
        for i in 1..=d as usize {
            boundaries.push(boundary_matrix(&by_dim[i - 1], &by_dim[i], |f, g| {
                i64::from(sign(f, g).expect("dimensions match"))
            }));
        }
        ChainComplex::from_raw(cells, boundaries, None)
    }
}

pub(crate) fn boundary_matrix(rows: &[&Face], cols: &[&Face], entry: impl Fn(&Face, &Face) -> i64) -> IntMatrix {
    let index: std::collections::HashMap<&Face, usize> =
        rows.iter().enumerate().map(|(k, f)| (*f, k)).collect();
    let mut m = IntMatrix::zeros(rows.len(), cols.len());
    for (c, g) in cols.iter().enumerate() {
        for f in g.facets() {
            if let Some(&r) = index.get(&f) {
                m.set(r, c, entry(&f, g).into());
            }
        }
    }
    m
}

fn check_universe(u: &[u32]) -> Result<()> {
    if u.windows(2).any(|w| w[0] >= w[1]) || u.contains(&0) {
        return Err(Error::Direction(format!(
            "direction set {u:?} must be strictly increasing positive integers"
        )));
    }
    Ok(())
}

/// The full cube `Q_n` on directions `1..=n`, with the default dimension cap.
pub fn cube(n: usize) -> Result<CubicalComplex> {
    cube_with_cap(n, DEFAULT_CUBE_CAP)
}

pub fn cube_with_cap(n: usize, cap: usize) -> Result<CubicalComplex> {
    if n > cap {
        return Err(Error::CapExceeded {
            required: format!("cube dimension {n}"),
            cap: cap as u64,
        });
    }
    let universe: Vec<u32> = (1..=n as u32).collect();
    CubicalComplex::build(universe, [Face(vec![Sym::Star; n])])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain_complex::Family;
    use num_bigint::BigInt;

    #[test]
    fn build_examples() {
        let q2 = CubicalComplex::build_from_strs(vec![1, 2], &["**"]).unwrap();
        assert_eq!(q2.f_vector(), vec![4, 4, 1]);
        let two = CubicalComplex::build_from_strs(vec![1, 2], &["*0", "0*"]).unwrap();
        let words: Vec<String> = two.faces().iter().map(|f| f.to_string()).collect();
        assert_eq!(words, vec!["00", "01", "0*", "10", "*0"]);
        assert!(CubicalComplex::build(vec![1], []).unwrap().is_empty());
        assert!(CubicalComplex::build_from_strs(vec![1], &["0*"]).is_err());
    }

    #[test]
    fn cube_counts() {
        assert_eq!(cube(2).unwrap().f_vector(), vec![4, 4, 1]);
        assert_eq!(cube(3).unwrap().f_vector(), vec![8, 12, 6, 1]);
        let q0 = cube(0).unwrap();
        assert_eq!(q0.f_vector(), vec![1]);
        assert_eq!(q0.faces().iter().next().unwrap().to_string(), "()");
        assert!(matches!(cube(7), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn q1_chain() {
        let c = cube(1).unwrap().to_chain();
        assert_eq!(c.boundary(1), IntMatrix::from_i64(&[&[-1], &[1]]));
        assert_eq!(c.cells(1), vec!["*".to_string()]);
    }

    #[test]
    fn chains_are_complexes() {
        for n in 0..=4 {
            let c = cube(n).unwrap().to_chain();
            assert!(c.validate().is_none(), "Q_{n}");
        }
    }

    #[test]
    fn q2_spectra() {
        let c = cube(2).unwrap().to_chain();
        let tot = c.spectrum(1, Family::Tot).unwrap();
        assert_eq!(tot.pairs().unwrap(), vec![(BigInt::from(2), 2), (BigInt::from(4), 2)]);
        let ud = c.spectrum(1, Family::Ud).unwrap();
        assert_eq!(ud.pairs().unwrap(), vec![(BigInt::from(0), 3), (BigInt::from(4), 1)]);
    }

    #[test]
    fn prism_deletion_link() {
        let q1 = cube(1).unwrap();
        assert!(q1.prism(2).unwrap().same_faces(&cube(2).unwrap()));
        let q3 = cube(3).unwrap();
        let l = q3.link(2).unwrap();
        let d = q3.deletion(2).unwrap();
        assert_eq!(l.universe(), &[1, 3]);
        assert!(l.same_faces(&cube(2).unwrap()) && d.same_faces(&cube(2).unwrap()));
        assert!(q1.prism(1).is_err());
        assert!(q1.link(5).is_err());
    }

    #[test]
    fn pure_skeleton_of_cube() {
        let g = cube(3).unwrap().pure_skeleton(1);
        assert_eq!(g.f_vector(), vec![8, 12]);
        assert_eq!(cube(3).unwrap().pure_skeleton(3), cube(3).unwrap());
    }
}
