use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::ChainComplex;
use crate::error::{Error, Result};
use crate::exact_algebra::IntMatrix;

fn dual_label(l: &str) -> String {
    match l.strip_suffix('^') {
        Some(s) => s.to_string(),
        None => format!("{l}^"),
    }
}

impl ChainComplex {
    /// Dimension shift `s` of the dual: the `i`-cells of `self` become the `(s − i)`-cells of
    /// [`ChainComplex::dual`]. A unique top cell turns into the empty cell of the dual, giving
    /// `s = d − 1`; otherwise `s = d`.
    pub fn dual_shift(&self) -> isize {
        if self.dim() >= 0 && self.num_cells(self.dim()) == 1 {
            self.dim() - 1
        } else {
            self.dim()
        }
    }

    /// The dual complex: boundaries are transposed and dimensions reversed, so that
    /// `L^ud_{X,i} = L^du_{Y,s−i}` and `L^tot_{X,i} = L^tot_{Y,s−i}` with `s = dual_shift()`.
    /// Labels gain a trailing `^` (or lose one).
    pub fn dual(&self) -> ChainComplex {
        let d = self.dim();
        if d < 0 {
            return self.clone();
        }
        let s = self.dual_shift();
        let y_empty = s == d - 1;
        let y_top = if self.has_empty_cell() { s + 1 } else { s };
        let y_min = if y_empty { -1 } else { 0 };
        // Y_j = (X_{s−j})^*
        let mut cells = Vec::new();
        for j in 0..=y_top {
            let i = s - j;
            let labels: Vec<String> = if i == -1 {
                self.empty.iter().map(|l| dual_label(l)).collect()
            } else {
                self.cells[i as usize].iter().map(|l| dual_label(l)).collect()
            };
            cells.push(labels);
        }
        // ∂_{Y,j} = (∂_{X,s−j+1})^T for j in 0..=y_top
        let boundaries: Vec<IntMatrix> = (0..=y_top)
            .map(|j| {
                let b = self.boundary(s - j + 1).transpose();
                if j == 0 && !y_empty {
                    IntMatrix::zeros(0, b.cols())
                } else {
                    b
                }
            })
            .collect();
        let empty = (y_min == -1).then(|| dual_label(&self.cells[d as usize][0]));
        ChainComplex::from_raw(cells, boundaries, empty)
    }

    /// Disjoint union; labels are prefixed with `L:` and `R:`. Both operands must agree on
    /// whether an empty cell is present, in which case the two augmentations are concatenated.
    pub fn disjoint_union(&self, other: &ChainComplex) -> Result<ChainComplex> {
        if self.has_empty_cell() != other.has_empty_cell() {
            return Err(Error::InvalidComplex(
                "disjoint union of complexes that disagree on the empty cell".into(),
            ));
        }
        let top = self.dim().max(other.dim());
        let mut cells = Vec::new();
        let mut boundaries = Vec::new();
        for i in 0..=top {
            let mut labels: Vec<String> = self.cells(i).iter().map(|l| format!("L:{l}")).collect();
            labels.extend(other.cells(i).iter().map(|l| format!("R:{l}")));
            cells.push(labels);
            let (a, b) = (self.boundary(i), other.boundary(i));
            if i == 0 && self.has_empty_cell() {
                let mut row: Vec<BigInt> = a.row(0).to_vec();
                row.extend(b.row(0).iter().cloned());
                let n = row.len();
                boundaries.push(IntMatrix::from_rows(&[row], n)?);
            } else {
                boundaries.push(a.direct_sum(&b));
            }
        }
        Ok(ChainComplex::from_raw(cells, boundaries, self.empty.clone()))
    }

    /// Cartesian product with `∂(f⊗g) = ∂f⊗g + (−1)^{dim f} f⊗∂g`. Cells of dimension `n` are
    /// ordered by the dimension of the first factor, then by the factors' own orders; labels
    /// are `(a,b)`.
    pub fn product(&self, other: &ChainComplex) -> Result<ChainComplex> {
        if self.has_empty_cell() || other.has_empty_cell() {
            return Err(Error::InvalidComplex(
                "product is defined only for complexes without an empty cell".into(),
            ));
        }
        let (dx, dy) = (self.dim(), other.dim());
        if dx < 0 || dy < 0 {
            return Ok(ChainComplex::from_raw(Vec::new(), Vec::new(), None));
        }
        let top = dx + dy;
        // index[n][(i, a, b)] = position of a⊗b among the n-cells
        let mut index: Vec<HashMap<(isize, usize, usize), usize>> = Vec::new();
        let mut cells = Vec::new();
        for n in 0..=top {
            let mut map = HashMap::new();
            let mut labels = Vec::new();
            for i in 0.max(n - dy)..=n.min(dx) {
                for (a, la) in self.cells[i as usize].iter().enumerate() {
                    for (b, lb) in other.cells[(n - i) as usize].iter().enumerate() {
                        map.insert((i, a, b), labels.len());
                        labels.push(format!("({la},{lb})"));
                    }
                }
            }
            index.push(map);
            cells.push(labels);
        }
        let mut boundaries = vec![IntMatrix::zeros(0, cells[0].len())];
        for n in 1..=top {
            let mut m = IntMatrix::zeros(cells[n as usize - 1].len(), cells[n as usize].len());
            for (&(i, a, b), &col) in &index[n as usize] {
                let j = n - i;
                if i > 0 {
                    let bx = &self.boundaries[i as usize];
                    for r in 0..bx.rows() {
                        let v = bx.get(r, a);
                        if !v.is_zero() {
                            let row = index[n as usize - 1][&(i - 1, r, b)];
                            m.set(row, col, m.get(row, col) + v);
                        }
                    }
                }
                if j > 0 {
                    let by = &other.boundaries[j as usize];
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    for r in 0..by.rows() {
                        let v = by.get(r, b);
                        if !v.is_zero() {
                            let row = index[n as usize - 1][&(i, a, r)];
                            m.set(row, col, m.get(row, col) + v * sign);
                        }
                    }
                }
            }
            boundaries.push(m);
        }
        Ok(ChainComplex::from_raw(cells, boundaries, None))
    }
}

/// Per-dimension `±1` signs `s` with `∂_b[φf, φg] = s_f s_g ∂_a[f, g]` for every pair of cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignConjugation {
    /// `signs[i + 1][j]` is the sign of cell `j` of dimension `i` (index 0 is the empty cell).
    pub signs: Vec<Vec<i8>>,
}

/// Searches for a diagonal `±1` conjugation carrying `a` onto `b` along the cell bijection
/// `map(i, j) = index in b of the image of the j-th i-cell of a`. Such a conjugation preserves
/// every Laplacian spectrum and every spanning-tree structure.
pub fn find_sign_conjugation(
    a: &ChainComplex,
    b: &ChainComplex,
    map: &dyn Fn(isize, usize) -> Option<usize>,
) -> Option<SignConjugation> {
    if a.dim() != b.dim() || a.has_empty_cell() != b.has_empty_cell() {
        return None;
    }
    let lo = a.min_dim();
    for i in lo..=a.dim() {
        if a.num_cells(i) != b.num_cells(i) {
            return None;
        }
    }
    // images, checked to be a bijection per dimension
    let mut img: Vec<Vec<usize>> = Vec::new();
    for i in lo..=a.dim() {
        let n = a.num_cells(i);
        let v: Vec<usize> = (0..n).map(|j| if i == -1 { Some(0) } else { map(i, j) }).collect::<Option<_>>()?;
        let mut seen = vec![false; n];
        for &x in &v {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return None;
            }
        }
        img.push(v);
    }
    let node = |i: isize, j: usize| -> (usize, usize) { ((i - lo) as usize, j) };
    // edges carry the required relative sign
    let mut adj: HashMap<(usize, usize), Vec<((usize, usize), i8)>> = HashMap::new();
    for i in 0.max(lo + 1)..=a.dim() {
        let (ba, bb) = (a.boundary(i), b.boundary(i));
        let (nnz_a, nnz_b) = (
            ba.entries().filter(|x| !x.is_zero()).count(),
            bb.entries().filter(|x| !x.is_zero()).count(),
        );
        if nnz_a != nnz_b {
            return None;
        }
        let ri = node(i - 1, 0).0;
        let ci = node(i, 0).0;
        for r in 0..ba.rows() {
            for c in 0..ba.cols() {
                let x = ba.get(r, c);
                if x.is_zero() {
                    continue;
                }
                let y = bb.get(img[ri][r], img[ci][c]);
                if y.abs() != x.abs() {
                    return None;
                }
                let rel: i8 = if (x.is_positive()) == (y.is_positive()) { 1 } else { -1 };
                adj.entry((ri, r)).or_default().push(((ci, c), rel));
                adj.entry((ci, c)).or_default().push(((ri, r), rel));
            }
        }
    }
    let mut signs: Vec<Vec<i8>> = (lo..=a.dim()).map(|i| vec![0; a.num_cells(i)]).collect();
    for d in 0..signs.len() {
        for j in 0..signs[d].len() {
            if signs[d][j] != 0 {
                continue;
            }
            signs[d][j] = 1;
            let mut queue = VecDeque::from([(d, j)]);
            while let Some(u) = queue.pop_front() {
                let su = signs[u.0][u.1];
                for &(v, rel) in adj.get(&u).map(Vec::as_slice).unwrap_or(&[]) {
                    let want = su * rel;
                    match signs[v.0][v.1] {
                        0 => {
                            signs[v.0][v.1] = want;
                            queue.push_back(v);
                        }
                        s if s != want => return None,
                        _ => {}
                    }
                }
            }
        }
    }
    if lo == 0 {
        signs.insert(0, Vec::new());
    }
    Some(SignConjugation { signs })
}

/// Cell bijection between two complexes induced by a label translation.
pub fn map_by_labels(
    a: &ChainComplex,
    b: &ChainComplex,
    translate: &dyn Fn(&str) -> String,
) -> impl Fn(isize, usize) -> Option<usize> {
    let lookup: Vec<HashMap<String, usize>> = (0..=b.dim())
        .map(|i| b.cells(i).into_iter().enumerate().map(|(j, l)| (l, j)).collect())
        .collect();
    let src: Vec<Vec<String>> = (0..=a.dim()).map(|i| a.cells(i)).collect();
    let translated: Vec<Vec<String>> = src.iter().map(|r| r.iter().map(|l| translate(l)).collect()).collect();
    move |i: isize, j: usize| {
        let l = translated.get(i as usize)?.get(j)?;
        lookup.get(i as usize)?.get(l).copied()
    }
}
