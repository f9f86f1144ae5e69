//! Finite chain complexes over the integers with an optional empty (−1)-cell.
//!
//! Reduced homology always uses an augmentation in dimension 0: the stored one when the
//! complex has an empty cell, an implicit all-ones row otherwise. Laplacians use only the
//! stored boundaries, so `L^du_0` vanishes for complexes without an empty cell.

mod json;
mod laplacian;
mod ops;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_algebra::{rank, smith_normal_form, torsion_order, IntMatrix};

pub use json::ChainComplexJson;
pub use laplacian::Family;
pub use ops::{find_sign_conjugation, map_by_labels, SignConjugation};

/// Label reported for the empty cell unless a complex names it otherwise.
pub const EMPTY_LABEL: &str = "∅";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    /// `cells[i]` lists the labels of the `i`-cells.
    cells: Vec<Vec<String>>,
    /// `boundaries[i]` is `∂_i : C_i → C_{i−1}` for `0 <= i <= top`.
    boundaries: Vec<IntMatrix>,
    /// Label of the empty cell when present.
    empty: Option<String>,
}

/// First place where `∂∂ = 0` or a shape constraint fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub dim: isize,
    pub row: usize,
    pub col: usize,
    pub message: String,
}

/// Reduced homology in one dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    pub dim: isize,
    pub betti: usize,
    #[serde(serialize_with = "crate::serde_big::ser")]
    pub torsion: BigInt,
}

impl ChainComplex {
    /// Assembles a complex from labels and the boundaries `∂_1..∂_d` (in that order), then
    /// validates it. With an empty cell and no explicit augmentation, `∂_0` is all ones.
    pub fn new(cells: Vec<Vec<String>>, boundaries: Vec<IntMatrix>, empty_cell: bool) -> Result<Self> {
        let aug = empty_cell.then(|| IntMatrix::from_rows(&[vec![1i64; cells.first().map_or(0, Vec::len)]], cells.first().map_or(0, Vec::len)).expect("row shape"));
        Self::with_augmentation(cells, boundaries, aug)
    }

    /// Like [`ChainComplex::new`] with an explicit `∂_0` row (`Some`) for the empty cell.
    pub fn with_augmentation(
        cells: Vec<Vec<String>>,
        boundaries: Vec<IntMatrix>,
        augmentation: Option<IntMatrix>,
    ) -> Result<Self> {
        if boundaries.len() + 1 != cells.len() && !(cells.is_empty() && boundaries.is_empty()) {
            return Err(Error::InvalidComplex(format!(
                "{} cell dimensions need {} boundary matrices, got {}",
                cells.len(),
                cells.len().saturating_sub(1),
                boundaries.len()
            )));
        }
        let n0 = cells.first().map_or(0, Vec::len);
        let d0 = match &augmentation {
            Some(a) => a.clone(),
            None => IntMatrix::zeros(0, n0),
        };
        let mut all = Vec::with_capacity(cells.len());
        if !cells.is_empty() {
            all.push(d0);
        }
        all.extend(boundaries);
        let c = ChainComplex {
            cells,
            boundaries: all,
            empty: augmentation.map(|_| EMPTY_LABEL.to_string()),
        };
        if let Some(v) = c.validate() {
            return Err(Error::InvalidComplex(format!(
                "dimension {}, entry ({}, {}): {}",
                v.dim, v.row, v.col, v.message
            )));
        }
        for (i, labels) in c.cells.iter().enumerate() {
            let mut seen = std::collections::HashSet::new();
            if let Some(l) = labels.iter().find(|l| !seen.insert(*l)) {
                return Err(Error::InvalidComplex(format!("duplicate label `{l}` in dimension {i}")));
            }
        }
        Ok(c)
    }

    pub(crate) fn from_raw(cells: Vec<Vec<String>>, boundaries: Vec<IntMatrix>, empty: Option<String>) -> Self {
        ChainComplex {
            cells,
            boundaries,
            empty,
        }
    }

    /// The minimal CW structure on the real projective plane: one cell per dimension,
    /// `∂_1 = 0`, `∂_2 = 2`.
    pub fn real_projective_plane() -> Self {
        let one = |s: &str| vec![s.to_string()];
        ChainComplex::new(
            vec![one("v"), one("e"), one("f")],
            vec![IntMatrix::from_i64(&[&[0]]), IntMatrix::from_i64(&[&[2]])],
            false,
        )
        .expect("valid by construction")
    }

    /// Reports the first violated shape or `∂_{i}∂_{i+1} = 0` condition.
    pub fn validate(&self) -> Option<Violation> {
        let n_minus = usize::from(self.empty.is_some());
        for (i, b) in self.boundaries.iter().enumerate() {
            let rows = if i == 0 { n_minus } else { self.cells[i - 1].len() };
            if b.rows() != rows || b.cols() != self.cells[i].len() {
                return Some(Violation {
                    dim: i as isize,
                    row: b.rows(),
                    col: b.cols(),
                    message: format!(
                        "boundary has shape {}x{}, expected {}x{}",
                        b.rows(),
                        b.cols(),
                        rows,
                        self.cells[i].len()
                    ),
                });
            }
        }
        for i in 0..self.boundaries.len().saturating_sub(1) {
            let p = &self.boundaries[i] * &self.boundaries[i + 1];
            if let Some((row, col)) = p.first_nonzero() {
                return Some(Violation {
                    dim: i as isize,
                    row,
                    col,
                    message: format!("composite ∂_{}∂_{} is nonzero", i, i + 1),
                });
            }
        }
        None
    }

    /// Top dimension; −1 for a complex with no cells of nonnegative dimension.
    pub fn dim(&self) -> isize {
        self.cells.len() as isize - 1
    }

    pub fn has_empty_cell(&self) -> bool {
        self.empty.is_some()
    }

    /// Smallest dimension carrying a cell.
    pub fn min_dim(&self) -> isize {
        if self.has_empty_cell() {
            -1
        } else {
            0
        }
    }

    /// Labels of the `i`-cells (the empty cell at `i = −1`).
    pub fn cells(&self, i: isize) -> Vec<String> {
        match i {
            -1 => self.empty.iter().cloned().collect(),
            i if i >= 0 && (i as usize) < self.cells.len() => self.cells[i as usize].clone(),
            _ => Vec::new(),
        }
    }

    pub fn cell_labels(&self, i: usize) -> &[String] {
        &self.cells[i]
    }

    pub fn num_cells(&self, i: isize) -> usize {
        match i {
            -1 => usize::from(self.has_empty_cell()),
            i if i >= 0 && (i as usize) < self.cells.len() => self.cells[i as usize].len(),
            _ => 0,
        }
    }

    /// Stored boundary `∂_i`, extended by zero matrices outside `0..=d`.
    pub fn boundary(&self, i: isize) -> IntMatrix {
        if i >= 0 && (i as usize) < self.boundaries.len() {
            self.boundaries[i as usize].clone()
        } else {
            IntMatrix::zeros(self.num_cells(i - 1), self.num_cells(i))
        }
    }

    /// Boundary used for reduced homology: the stored one, except that `∂_0` is the all-ones
    /// row when no empty cell is stored.
    pub fn reduced_boundary(&self, i: isize) -> IntMatrix {
        match i {
            0 if !self.has_empty_cell() => {
                let n = self.num_cells(0);
                IntMatrix::from_rows(&[vec![1i64; n]], n).expect("row shape")
            }
            -1 => IntMatrix::zeros(0, 1),
            _ => self.boundary(i),
        }
    }

    fn reduced_count(&self, i: isize) -> usize {
        if i == -1 {
            1
        } else {
            self.num_cells(i)
        }
    }

    /// Reduced Betti number; defined for every `i >= −1`.
    pub fn reduced_betti(&self, i: isize) -> usize {
        if i < -1 {
            return 0;
        }
        let r_in = if i == -1 { 0 } else { rank(&self.reduced_boundary(i)) };
        let r_out = rank(&self.reduced_boundary(i + 1));
        self.reduced_count(i) - r_in - r_out
    }

    /// Order of the torsion subgroup of `H̃_i`.
    pub fn torsion(&self, i: isize) -> BigInt {
        if i < -1 {
            return BigInt::one();
        }
        torsion_order(&smith_normal_form(&self.reduced_boundary(i + 1)))
    }

    /// Reduced homology in dimension `i`, for `min_dim() <= i <= dim()`.
    pub fn homology(&self, i: isize) -> Result<HomologySummary> {
        self.check_dim(i)?;
        Ok(self.reduced_homology(i))
    }

    /// Reduced homology without the range check, for any `i >= −1`.
    pub fn reduced_homology(&self, i: isize) -> HomologySummary {
        HomologySummary {
            dim: i,
            betti: self.reduced_betti(i),
            torsion: self.torsion(i),
        }
    }

    pub(crate) fn check_dim(&self, i: isize) -> Result<()> {
        if i < self.min_dim() || i > self.dim() {
            return Err(Error::DimensionOutOfRange {
                dim: i,
                lo: self.min_dim(),
                hi: self.dim(),
            });
        }
        Ok(())
    }

    /// The subcomplex of cells of dimension at most `k` (the `k`-skeleton).
    pub fn skeleton(&self, k: isize) -> ChainComplex {
        let keep = (k + 1).clamp(0, self.cells.len() as isize) as usize;
        ChainComplex {
            cells: self.cells[..keep].to_vec(),
            boundaries: self.boundaries[..keep].to_vec(),
            empty: self.empty.clone(),
        }
    }

    /// Keeps all cells below dimension `k` and only the listed `k`-cells, dropping everything above.
    pub fn restrict_top(&self, k: usize, keep: &[usize]) -> ChainComplex {
        let mut c = self.skeleton(k as isize);
        c.cells[k] = keep.iter().map(|&j| self.cells[k][j].clone()).collect();
        c.boundaries[k] = self.boundaries[k].select_columns(keep);
        c
    }

    /// Euler characteristic `Σ (−1)^i |X_i|`, the empty cell (if any) counting in dimension −1.
    pub fn euler_characteristic(&self) -> i64 {
        let cells: i64 = self
            .cells
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 0 { c.len() as i64 } else { -(c.len() as i64) })
            .sum();
        cells - i64::from(self.has_empty_cell())
    }

    /// Checks `Σ(−1)^i|X_i| = Σ(−1)^i b̃_i + [no empty cell]`.
    pub fn euler_check(&self) -> bool {
        let betti: i64 = (-1..=self.dim())
            .map(|i| {
                let b = self.reduced_betti(i) as i64;
                if i.rem_euclid(2) == 0 {
                    b
                } else {
                    -b
                }
            })
            .sum();
        self.euler_characteristic() == betti + i64::from(!self.has_empty_cell())
    }

    /// `true` when `b̃_j = 0` for every `j` below the top dimension.
    pub fn is_apc(&self) -> bool {
        (-1..self.dim()).all(|j| self.reduced_betti(j) == 0)
    }

    /// Unit-free test: does `H̃_i` vanish together with its torsion for every `i < k`?
    pub fn integrally_acyclic_below(&self, k: isize) -> bool {
        (-1..k).all(|i| self.reduced_betti(i) == 0 && self.torsion(i).is_one())
    }

    /// Number of nonzero entries of `∂_i`, a cheap sanity statistic.
    pub fn boundary_nonzeros(&self, i: isize) -> usize {
        self.boundary(i).entries().filter(|x| !x.is_zero()).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn labels(v: &[&[&str]]) -> Vec<Vec<String>> {
        v.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
    }

    pub(crate) fn rp2() -> ChainComplex {
        ChainComplex::real_projective_plane()
    }

    fn q1() -> ChainComplex {
        ChainComplex::new(
            labels(&[&["0", "1"], &["*"]]),
            vec![IntMatrix::from_i64(&[&[-1], &[1]])],
            false,
        )
        .unwrap()
    }

    #[test]
    fn validation() {
        assert!(q1().validate().is_none());
        assert!(rp2().validate().is_none());
        let bad = ChainComplex::new(
            labels(&[&["a", "b"], &["e"], &["f"]]),
            vec![IntMatrix::from_i64(&[&[1], &[1]]), IntMatrix::from_i64(&[&[1]])],
            false,
        );
        match bad {
            Err(Error::InvalidComplex(m)) => assert!(m.starts_with("dimension 1"), "{m}"),
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn homology_examples() {
        let circle = ChainComplex::new(labels(&[&["v"], &["e"]]), vec![IntMatrix::from_i64(&[&[0]])], false).unwrap();
        let h1 = circle.homology(1).unwrap();
        assert_eq!((h1.betti, h1.torsion.clone()), (1, BigInt::one()));
        assert_eq!(circle.homology(0).unwrap().betti, 0);
        let h = rp2().homology(1).unwrap();
        assert_eq!((h.betti, h.torsion), (0, BigInt::from(2)));
        assert!(rp2().is_apc());
        assert!(matches!(rp2().homology(3), Err(Error::DimensionOutOfRange { .. })));
        assert!(matches!(rp2().homology(-1), Err(Error::DimensionOutOfRange { .. })));
    }

    #[test]
    fn euler() {
        assert!(rp2().euler_check());
        assert!(q1().euler_check());
    }
}
