use serde::{Deserialize, Serialize};

use super::{CubicalComplex, Face, SimplicialComplex};
use crate::error::Result;

/// `{"universe": [1,2,3], "faces": ["**0", "0*1"]}`; faces are closed downward on load.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CubicalJson {
    pub universe: Vec<u32>,
    pub faces: Vec<String>,
}

/// `{"vertices": n, "facets": [[1,2],[1,3]]}` on vertex set `1..=n`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MirrorJson {
    pub vertices: u32,
    pub facets: Vec<Vec<u32>>,
}

impl CubicalComplex {
    /// Serializes the facets only.
    pub fn to_json(&self) -> CubicalJson {
        CubicalJson {
            universe: self.universe.clone(),
            faces: self.facets().iter().map(|f| f.to_string()).collect(),
        }
    }

    pub fn from_json(j: &CubicalJson) -> Result<Self> {
        let faces = j.faces.iter().map(|s| s.parse()).collect::<Result<Vec<Face>>>()?;
        CubicalComplex::build(j.universe.clone(), faces)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(s)?)
    }
}

impl SimplicialComplex {
    pub fn from_mirror_json(j: &MirrorJson) -> Result<Self> {
        SimplicialComplex::from_facets((1..=j.vertices).collect(), &j.facets)
    }

    pub fn from_mirror_json_str(s: &str) -> Result<Self> {
        Self::from_mirror_json(&serde_json::from_str(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::{cube, mirror};

    #[test]
    fn round_trip() {
        let q = cube(3).unwrap();
        let j = serde_json::to_string(&q.to_json()).unwrap();
        assert_eq!(j, r#"{"universe":[1,2,3],"faces":["***"]}"#);
        assert_eq!(CubicalComplex::from_json_str(&j).unwrap(), q);
        let d = SimplicialComplex::from_mirror_json_str(r#"{"vertices":3,"facets":[[1,2],[1,3]]}"#).unwrap();
        assert_eq!(mirror(&d).f_vector(), vec![8, 12, 4]);
        assert!(CubicalComplex::from_json_str(r#"{"universe":[1],"faces":["x"]}"#).is_err());
    }
}
