//! Simplicial complexes on small vertex sets and the mirror construction
//! `M(Δ) = {f : dir(f) ∈ Δ}`.

use std::collections::BTreeSet;

use super::shifted::from_direction_sets;
use super::weights::subsets;
use super::CubicalComplex;
use crate::error::{Error, Result};

/// A simplicial complex on a sorted vertex set, stored as all of its faces (including the
/// empty face unless the complex is void).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<u32>,
    faces: BTreeSet<Vec<u32>>,
}

impl SimplicialComplex {
    /// Downward closure of the facets.
    pub fn from_facets(vertices: Vec<u32>, facets: &[Vec<u32>]) -> Result<Self> {
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidComplex("vertex set must be strictly increasing".into()));
        }
        let mut faces = BTreeSet::new();
        for f in facets {
            let mut s = f.clone();
            s.sort_unstable();
            s.dedup();
            if let Some(v) = s.iter().find(|v| !vertices.contains(v)) {
                return Err(Error::InvalidComplex(format!("vertex {v} is not in {vertices:?}")));
            }
            faces.extend(subsets(&s));
        }
        Ok(SimplicialComplex { vertices, faces })
    }

    /// The full simplex on `1..=n`.
    pub fn simplex(n: u32) -> Self {
        let vertices: Vec<u32> = (1..=n).collect();
        Self::from_facets(vertices.clone(), &[vertices]).expect("valid")
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn faces(&self) -> &BTreeSet<Vec<u32>> {
        &self.faces
    }

    pub fn facets(&self) -> Vec<Vec<u32>> {
        self.faces
            .iter()
            .filter(|s| !self.faces.iter().any(|t| t.len() == s.len() + 1 && s.iter().all(|v| t.contains(v))))
            .cloned()
            .collect()
    }

    /// Cone with apex one larger than every vertex.
    pub fn cone(&self) -> Self {
        let apex = self.vertices.last().map_or(1, |v| v + 1);
        let mut vertices = self.vertices.clone();
        vertices.push(apex);
        let mut faces = self.faces.clone();
        for s in &self.faces {
            let mut t = s.clone();
            t.push(apex);
            faces.insert(t);
        }
        SimplicialComplex { vertices, faces }
    }

    /// Faces with at most `k` vertices, matching the cubical skeleton of dimension `k`.
    pub fn size_skeleton(&self, k: usize) -> Self {
        SimplicialComplex {
            vertices: self.vertices.clone(),
            faces: self.faces.iter().filter(|s| s.len() <= k).cloned().collect(),
        }
    }

    fn split(&self, i: u32, link: bool) -> Result<Self> {
        if !self.vertices.contains(&i) {
            return Err(Error::Direction(format!("vertex {i} is not in {:?}", self.vertices)));
        }
        let vertices = self.vertices.iter().copied().filter(|&v| v != i).collect();
        let faces = self
            .faces
            .iter()
            .filter(|s| !link || s.contains(&i))
            .map(|s| s.iter().copied().filter(|&v| v != i).collect())
            .collect();
        Ok(SimplicialComplex { vertices, faces })
    }

    /// `{σ \ i : σ ∈ Δ}`.
    pub fn deletion(&self, i: u32) -> Result<Self> {
        self.split(i, false)
    }

    /// `{σ \ i : i ∈ σ ∈ Δ}`.
    pub fn link(&self, i: u32) -> Result<Self> {
        self.split(i, true)
    }

    /// Non-maximal faces.
    pub fn boundary(&self) -> Self {
        let facets: BTreeSet<Vec<u32>> = self.facets().into_iter().collect();
        SimplicialComplex {
            vertices: self.vertices.clone(),
            faces: self.faces.iter().filter(|s| !facets.contains(*s)).cloned().collect(),
        }
    }
}

/// The mirror complex on the same direction set.
pub fn mirror(delta: &SimplicialComplex) -> CubicalComplex {
    from_direction_sets(&delta.vertices, &delta.faces)
}

/// Every non-void simplicial complex on `1..=n` (not necessarily using every vertex).
pub fn all_simplicial_complexes(n: u32) -> Vec<SimplicialComplex> {
    let vertices: Vec<u32> = (1..=n).collect();
    let nonempty: Vec<Vec<u32>> = subsets(&vertices).into_iter().filter(|s| !s.is_empty()).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << nonempty.len() {
        let mut faces: BTreeSet<Vec<u32>> = nonempty
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, s)| s.clone())
            .collect();
        let closed = faces.iter().all(|s| {
            s.len() == 1
                || (0..s.len()).all(|p| {
                    let mut t = s.clone();
                    t.remove(p);
                    faces.contains(&t)
                })
        });
        if closed {
            faces.insert(Vec::new());
            out.push(SimplicialComplex {
                vertices: vertices.clone(),
                faces,
            });
        }
    }
    out
}
