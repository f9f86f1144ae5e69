use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::charpoly::{char_poly, nonzero_eigen_product};
use super::matrix::IntMatrix;
use super::poly::IntPoly;
use crate::error::{Error, Result};

/// Exact eigenvalue data of a symmetric integer matrix.
///
/// The characteristic polynomial is always kept; `eigenvalues` is present exactly when it
/// splits over the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    charpoly: IntPoly,
    eigenvalues: Option<BTreeMap<BigInt, usize>>,
}

impl Spectrum {
    pub fn from_eigenvalues(eigs: BTreeMap<BigInt, usize>) -> Self {
        let charpoly = eigs
            .iter()
            .fold(IntPoly::one(), |acc, (l, &m)| &acc * &IntPoly::linear_root(l).pow(m));
        Spectrum {
            charpoly,
            eigenvalues: Some(eigs.into_iter().filter(|(_, m)| *m > 0).collect()),
        }
    }

    /// Factors `chi` over the integers when possible, searching roots in `0..=bound`.
    pub fn from_charpoly(chi: IntPoly, bound: &BigInt) -> Self {
        let (zeros, mut rest) = chi.strip_zero_roots();
        let mut eigs = BTreeMap::new();
        if zeros > 0 {
            eigs.insert(BigInt::zero(), zeros);
        }
        let mut lambda = BigInt::one();
        while rest.degree().unwrap_or(0) > 0 && &lambda <= bound {
            let c0 = rest.coeff(0);
            if (&c0 % &lambda).is_zero() {
                while let Some(q) = rest.div_root(&lambda) {
                    *eigs.entry(lambda.clone()).or_insert(0) += 1;
                    rest = q;
                    if rest.degree().unwrap_or(0) == 0 {
                        break;
                    }
                }
            }
            lambda += 1;
        }
        let integral = rest.degree().unwrap_or(0) == 0;
        Spectrum {
            charpoly: chi,
            eigenvalues: integral.then_some(eigs),
        }
    }

    pub fn charpoly(&self) -> &IntPoly {
        &self.charpoly
    }

    pub fn is_integral(&self) -> bool {
        self.eigenvalues.is_some()
    }

    pub fn eigenvalues(&self) -> Option<&BTreeMap<BigInt, usize>> {
        self.eigenvalues.as_ref()
    }

    /// Matrix side length.
    pub fn size(&self) -> usize {
        self.charpoly.degree().unwrap_or(0)
    }

    pub fn multiplicity_of_zero(&self) -> usize {
        self.charpoly.strip_zero_roots().0
    }

    /// Number of nonzero eigenvalues, i.e. the rank of the matrix.
    pub fn rank(&self) -> usize {
        self.size() - self.multiplicity_of_zero()
    }

    /// Characteristic polynomial with all factors of `y` removed: the nonzero part.
    pub fn nonzero_part(&self) -> IntPoly {
        self.charpoly.strip_zero_roots().1
    }

    /// Product of nonzero eigenvalues (1 if there are none).
    pub fn nonzero_product(&self) -> BigInt {
        nonzero_eigen_product(&self.charpoly)
    }

    /// Sorted `(eigenvalue, multiplicity)` pairs.
    pub fn pairs(&self) -> Option<Vec<(BigInt, usize)>> {
        self.eigenvalues
            .as_ref()
            .map(|m| m.iter().map(|(l, &k)| (l.clone(), k)).collect())
    }

    /// Nonzero eigenvalues in weakly decreasing order.
    pub fn nonzero_sequence(&self) -> Option<Vec<BigInt>> {
        let m = self.eigenvalues.as_ref()?;
        let mut out = Vec::new();
        for (l, &k) in m.iter().rev() {
            if !l.is_zero() {
                out.extend(std::iter::repeat(l.clone()).take(k));
            }
        }
        Some(out)
    }

    /// The generating function `sum q^lambda` as a map exponent -> coefficient.
    pub fn generating_function(&self) -> Option<BTreeMap<u64, usize>> {
        self.eigenvalues.as_ref().map(|m| {
            m.iter()
                .map(|(l, &k)| (l.to_u64().expect("eigenvalue fits in u64"), k))
                .collect()
        })
    }

    pub fn to_json(&self) -> SpectrumJson {
        match &self.eigenvalues {
            Some(m) => SpectrumJson::Integral {
                spectrum: m
                    .iter()
                    .map(|(l, &k)| (serde_json::Number::from(l.to_i64().unwrap_or(i64::MAX)), k))
                    .collect(),
            },
            None => SpectrumJson::NotIntegral {
                not_integral: true,
                charpoly: self.charpoly.coeffs().iter().map(|c| c.to_string()).collect(),
            },
        }
    }
}

/// Serialized spectrum: eigenvalue/multiplicity pairs, or the characteristic polynomial
/// coefficients (lowest degree first) when the spectrum is not integral.
#[derive(Serialize)]
#[serde(untagged)]
pub enum SpectrumJson {
    Integral {
        spectrum: Vec<(serde_json::Number, usize)>,
    },
    NotIntegral {
        not_integral: bool,
        charpoly: Vec<String>,
    },
}

/// Exact spectrum of a symmetric positive semidefinite integer matrix.
pub fn integer_spectrum(m: &IntMatrix) -> Result<Spectrum> {
    if !m.is_symmetric() {
        return Err(if m.is_square() {
            Error::NotSymmetric
        } else {
            Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            }
        });
    }
    let chi = char_poly(m)?;
    Ok(Spectrum::from_charpoly(chi, &m.trace().abs()))
}
