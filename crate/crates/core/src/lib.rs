//! Exact Laplacian spectra, homology with torsion, and cellular spanning-tree enumeration for
//! finite cell complexes given by integer boundary matrices.

pub mod chain_complex;
pub mod colorful;
pub mod corpus;
pub mod cubical;
pub mod error;
pub mod spanning_trees;
pub mod exact_algebra;
pub mod verify;
mod serde_big;

pub use error::{Error, Result};
