use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use super::ChainComplex;
use crate::error::{Error, Result};
use crate::exact_algebra::{integer_spectrum, IntMatrix, Spectrum};

/// Which combinatorial Laplacian.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `∂_{i+1} ∂_{i+1}^T`
    Ud,
    /// `∂_i^T ∂_i`
    Du,
    /// `Ud + Du`
    Tot,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ud" => Ok(Family::Ud),
            "du" => Ok(Family::Du),
            "tot" => Ok(Family::Tot),
            _ => Err(Error::Range(format!("unknown Laplacian family `{s}` (ud, du, tot)"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Ud => "ud",
            Family::Du => "du",
            Family::Tot => "tot",
        })
    }
}

impl ChainComplex {
    /// Laplacian of the given family on `i`-chains.
    pub fn laplacian(&self, i: isize, family: Family) -> Result<IntMatrix> {
        self.check_dim(i)?;
        Ok(self.laplacian_unchecked(i, family))
    }

    pub(crate) fn laplacian_unchecked(&self, i: isize, family: Family) -> IntMatrix {
        let ud = || {
            let b = self.boundary(i + 1);
            &b * &b.transpose()
        };
        let du = || {
            let b = self.boundary(i);
            &b.transpose() * &b
        };
        match family {
            Family::Ud => ud(),
            Family::Du => du(),
            Family::Tot => &ud() + &du(),
        }
    }

    /// Exact spectrum of a Laplacian.
    pub fn spectrum(&self, i: isize, family: Family) -> Result<Spectrum> {
        integer_spectrum(&self.laplacian(i, family)?)
    }

    /// `π_k`: product of nonzero eigenvalues of `L^ud_{k−1}`, with `π_{−1} = 1` and, without an
    /// empty cell, `π_0 = |X_0|`.
    pub fn pi(&self, k: isize) -> Result<BigInt> {
        if k < -1 || k > self.dim() + 1 {
            return Err(Error::DimensionOutOfRange {
                dim: k,
                lo: -1,
                hi: self.dim() + 1,
            });
        }
        Ok(match k {
            -1 => BigInt::from(1),
            0 if !self.has_empty_cell() => BigInt::from(self.num_cells(0)),
            _ => integer_spectrum(&self.laplacian_unchecked(k - 1, Family::Ud))?.nonzero_product(),
        })
    }

    /// `ω_k`: product of nonzero eigenvalues of `L^tot_k`.
    pub fn omega(&self, k: isize) -> Result<BigInt> {
        Ok(self.spectrum(k, Family::Tot)?.nonzero_product())
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{labels, rp2};
    use super::*;
    use num_traits::Zero;

    fn q1() -> ChainComplex {
        ChainComplex::new(labels(&[&["0", "1"], &["*"]]), vec![IntMatrix::from_i64(&[&[-1], &[1]])], false).unwrap()
    }

    #[test]
    fn q1_laplacians() {
        let c = q1();
        assert_eq!(c.laplacian(0, Family::Ud).unwrap(), IntMatrix::from_i64(&[&[1, -1], &[-1, 1]]));
        assert_eq!(c.laplacian(1, Family::Du).unwrap(), IntMatrix::from_i64(&[&[2]]));
        assert!(c.laplacian(0, Family::Du).unwrap().is_zero());
        assert_eq!(c.omega(1).unwrap(), BigInt::from(2));
        assert_eq!(c.pi(0).unwrap(), BigInt::from(2));
        assert_eq!(c.pi(1).unwrap(), BigInt::from(2));
    }

    #[test]
    fn rp2_laplacian() {
        let l = rp2().laplacian(1, Family::Ud).unwrap();
        assert_eq!(l, IntMatrix::from_i64(&[&[4]]));
        assert!(rp2().laplacian(0, Family::Tot).unwrap().get(0, 0).is_zero());
    }

    #[test]
    fn family_parse() {
        assert_eq!("tot".parse::<Family>().unwrap(), Family::Tot);
        assert!("x".parse::<Family>().is_err());
    }
}
