//! Complete colorful complexes `X(a_1, …, a_n)`: all vertex sets meeting each color class in
//! at most one vertex. Closed forms for their spectra and tree counts, and the duality
//! between the cross-polytope `X(2, …, 2)` and the cube.

mod duality;

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::chain_complex::{ChainComplex, EMPTY_LABEL};
use crate::error::{Error, Result};
use crate::exact_algebra::{gen_binom, IntMatrix};

pub use duality::{cross_polytope_cube_duality, cube_to_cross_label, weighted_duality_check, DualityReport};

/// Default largest number of faces (including the empty face) of a generated colorful complex.
pub const DEFAULT_FACE_CAP: u64 = 200_000;

fn check_sizes(a: &[usize]) -> Result<()> {
    if a.is_empty() || a.contains(&0) {
        return Err(Error::Range(format!("color class sizes must be positive and nonempty, got {a:?}")));
    }
    Ok(())
}

/// `A(K) = Σ_{k∈K} a_k` over 0-based color indices.
fn size_of(a: &[usize], k: &[usize]) -> u64 {
    k.iter().map(|&i| a[i] as u64).sum()
}

fn complement(n: usize, k: &[usize]) -> Vec<usize> {
    (0..n).filter(|i| !k.contains(i)).collect()
}

/// Label of the vertex `v_{i,j}` (1-based).
pub fn vertex_label(i: usize, j: usize) -> String {
    format!("v{i}_{j}")
}

/// Simplicial chain complex of `X(a)`, with the empty cell. Vertices are ordered class by
/// class and faces lexicographically by their vertex lists.
pub fn colorful_complex(a: &[usize]) -> Result<ChainComplex> {
    colorful_complex_with_cap(a, DEFAULT_FACE_CAP)
}

pub fn colorful_complex_with_cap(a: &[usize], cap: u64) -> Result<ChainComplex> {
    check_sizes(a)?;
    let total: BigInt = a.iter().map(|&x| BigInt::from(x + 1)).product();
    if total > BigInt::from(cap) {
        return Err(Error::CapExceeded {
            required: format!("{total} faces"),
            cap,
        });
    }
    let n = a.len();
    // global vertex index -> (class, 1-based position)
    let verts: Vec<(usize, usize)> = (0..n).flat_map(|i| (1..=a[i]).map(move |j| (i, j))).collect();
    let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
    for size in 1..=n {
        for f in (0..verts.len()).combinations(size) {
            if f.iter().map(|&v| verts[v].0).all_unique() {
                faces[size - 1].push(f);
            }
        }
    }
    let label = |f: &[usize]| {
        format!(
            "[{}]",
            f.iter().map(|&v| vertex_label(verts[v].0 + 1, verts[v].1)).join(",")
        )
    };
    let cells: Vec<Vec<String>> = faces.iter().map(|fs| fs.iter().map(|f| label(f)).collect()).collect();
    let mut boundaries = Vec::new();
    for d in 1..n {
        let index: BTreeMap<&[usize], usize> = faces[d - 1].iter().enumerate().map(|(k, f)| (f.as_slice(), k)).collect();
        let mut m = IntMatrix::zeros(faces[d - 1].len(), faces[d].len());
        for (c, g) in faces[d].iter().enumerate() {
            for p in 0..g.len() {
                let mut f = g.clone();
                f.remove(p);
                let sign = if p % 2 == 0 { 1 } else { -1 };
                m.set(index[f.as_slice()], c, BigInt::from(sign));
            }
        }
        boundaries.push(m);
    }
    let c = ChainComplex::new(cells, boundaries, true)?;
    debug_assert_eq!(c.cells(-1), vec![EMPTY_LABEL.to_string()]);
    Ok(c)
}

/// A univariate integer polynomial in `q` as exponent → coefficient.
pub type QPoly = BTreeMap<u64, BigInt>;

fn qmul(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = QPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_default() += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn qadd(a: &mut QPoly, b: &QPoly) {
    for (e, c) in b {
        *a.entry(*e).or_default() += c;
    }
    a.retain(|_, c| !c.is_zero());
}

fn qterm(e: u64, c: impl Into<BigInt>) -> QPoly {
    let c = c.into();
    if c.is_zero() {
        QPoly::new()
    } else {
        QPoly::from([(e, c)])
    }
}

/// Spectrum polynomial `Σ_{K⊆[n]} t^{|K|} ∏_{k∈K} (1 + (a_k − 1) q^{a_k})`; entry `j` of the
/// result is the coefficient of `t^j`.
pub fn colorful_spec_poly(a: &[usize]) -> Result<Vec<QPoly>> {
    check_sizes(a)?;
    let n = a.len();
    let mut out = vec![QPoly::new(); n + 1];
    for size in 0..=n {
        for k in (0..n).combinations(size) {
            let mut p = qterm(0, 1);
            for &i in &k {
                let mut f = qterm(0, 1);
                qadd(&mut f, &qterm(a[i] as u64, a[i] as i64 - 1));
                p = qmul(&p, &f);
            }
            qadd(&mut out[size], &p);
        }
    }
    Ok(out)
}

/// `E^tot_i = Σ_{|K|=i+1} q^{A(K̄)} ∏_{k∈K} (q^{a_k} + a_k − 1)` as eigenvalue → multiplicity.
pub fn colorful_etot(a: &[usize], i: isize) -> Result<QPoly> {
    check_sizes(a)?;
    let n = a.len();
    if i < -1 || i > n as isize - 1 {
        return Err(Error::DimensionOutOfRange {
            dim: i,
            lo: -1,
            hi: n as isize - 1,
        });
    }
    let mut out = QPoly::new();
    for k in (0..n).combinations((i + 1) as usize) {
        let mut p = qterm(size_of(a, &complement(n, &k)), 1);
        for &j in &k {
            let mut f = qterm(a[j] as u64, 1);
            qadd(&mut f, &qterm(0, a[j] as i64 - 1));
            p = qmul(&p, &f);
        }
        qadd(&mut out, &p);
    }
    Ok(out)
}

fn big_pow(base: u64, e: &BigInt) -> Result<BigInt> {
    let e: u32 = e
        .try_into()
        .map_err(|_| Error::Range(format!("exponent {e} is not a small nonnegative integer")))?;
    Ok(BigInt::from(base).pow(e))
}

/// `∏_{|J|≤i+1} A(J̄)^{C(n−|J|, i+1−|J|) ∏_{j∈J}(a_j − 1)}`, skipping the zero base `J = [n]`.
pub fn colorful_omega(a: &[usize], i: usize) -> Result<BigInt> {
    check_sizes(a)?;
    let n = a.len();
    if i >= n {
        return Err(Error::DimensionOutOfRange {
            dim: i as isize,
            lo: 0,
            hi: n as isize - 1,
        });
    }
    let mut out = BigInt::one();
    for size in 0..=(i + 1).min(n) {
        for j in (0..n).combinations(size) {
            let base = size_of(a, &complement(n, &j));
            if base == 0 {
                continue;
            }
            let e = gen_binom((n - size) as i64, (i + 1 - size) as i64)
                * j.iter().map(|&c| BigInt::from(a[c] - 1)).product::<BigInt>();
            out *= big_pow(base, &e)?;
        }
    }
    Ok(out)
}

/// Adin's count `τ_k = ∏_{j=0}^k ∏_{|J|=j} B(J)^{C(n−j−2, k−j)}` with
/// `B(J) = A(J̄)^{∏_{j∈J}(a_j − 1)}`.
pub fn adin_tau(a: &[usize], k: usize) -> Result<BigInt> {
    check_sizes(a)?;
    let n = a.len();
    if k >= n {
        return Err(Error::DimensionOutOfRange {
            dim: k as isize,
            lo: 0,
            hi: n as isize - 1,
        });
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..=k {
        let outer = gen_binom(n as i64 - j as i64 - 2, (k - j) as i64);
        for set in (0..n).combinations(j) {
            let base = size_of(a, &complement(n, &set));
            let inner: BigInt = set.iter().map(|&c| BigInt::from(a[c] - 1)).product();
            let e = &outer * inner;
            if e.is_zero() {
                continue;
            }
            if e > BigInt::zero() {
                num *= big_pow(base, &e)?;
            } else {
                den *= big_pow(base, &-e)?;
            }
        }
    }
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::InexactDivision(format!("{num} / {den}")));
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain_complex::Family;

    fn direct(c: &ChainComplex, i: isize) -> QPoly {
        c.spectrum(i, Family::Tot)
            .unwrap()
            .generating_function()
            .unwrap()
            .into_iter()
            .map(|(e, m)| (e, BigInt::from(m)))
            .collect()
    }

    #[test]
    fn complexes() {
        let c = colorful_complex(&[2, 2]).unwrap();
        assert_eq!((c.num_cells(0), c.num_cells(1)), (4, 4));
        assert_eq!(c.cells(1)[0], "[v1_1,v2_1]");
        let o = colorful_complex(&[2, 2, 2]).unwrap();
        assert_eq!((o.num_cells(0), o.num_cells(1), o.num_cells(2)), (6, 12, 8));
        assert!(o.validate().is_none());
        let t = colorful_complex(&[1, 1, 1]).unwrap();
        assert_eq!((t.num_cells(0), t.num_cells(1), t.num_cells(2)), (3, 3, 1));
        assert!(matches!(colorful_complex_with_cap(&[9, 9, 9], 100), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn spec_poly_examples() {
        let s = colorful_spec_poly(&[2, 2]).unwrap();
        assert_eq!(s[1], QPoly::from([(0, 2.into()), (2, 2.into())]));
        assert_eq!(s[2], QPoly::from([(0, 1.into()), (2, 2.into()), (4, 1.into())]));
        let m = colorful_spec_poly(&[5]).unwrap();
        assert_eq!(m[1], QPoly::from([(0, 1.into()), (5, 4.into())]));
    }

    #[test]
    fn etot_matches_direct() {
        for a in [vec![2, 2], vec![2, 2, 2], vec![1, 3], vec![1, 1, 1], vec![3, 2]] {
            let c = colorful_complex(&a).unwrap();
            for i in -1..a.len() as isize {
                assert_eq!(colorful_etot(&a, i).unwrap(), direct(&c, i), "{a:?} {i}");
            }
        }
        assert_eq!(
            colorful_etot(&[2, 2], 0).unwrap(),
            QPoly::from([(2, 2.into()), (4, 2.into())])
        );
    }

    #[test]
    fn omega_and_adin() {
        assert_eq!(colorful_omega(&[2, 2], 0).unwrap(), BigInt::from(64));
        for a in [vec![2, 2], vec![1, 1], vec![2, 2, 2], vec![3, 1, 2]] {
            let c = colorful_complex(&a).unwrap();
            for i in 0..a.len() {
                assert_eq!(colorful_omega(&a, i).unwrap(), c.omega(i as isize).unwrap(), "{a:?} {i}");
            }
        }
        assert_eq!(adin_tau(&[2, 2], 1).unwrap(), BigInt::from(4));
        assert_eq!(adin_tau(&[2, 2, 2], 1).unwrap(), BigInt::from(384));
        assert_eq!(adin_tau(&[2, 2, 2], 2).unwrap(), BigInt::from(8));
        assert_eq!(adin_tau(&[3, 3], 1).unwrap(), BigInt::from(81));
    }
}
