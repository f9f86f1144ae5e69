use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One coordinate of a cube face. The derived order `0 < 1 < *` fixes cell order everywhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    Zero,
    One,
    Star,
}

impl Sym {
    pub fn as_char(self) -> char {
        match self {
            Sym::Zero => '0',
            Sym::One => '1',
            Sym::Star => '*',
        }
    }

    /// Face order on one coordinate: `0 < *`, `1 < *`, `0` and `1` incomparable.
    pub fn leq(self, other: Sym) -> bool {
        self == other || other == Sym::Star
    }
}

/// A face of the cube on some direction set, one symbol per direction in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face(pub Vec<Sym>);

impl Face {
    pub fn syms(&self) -> &[Sym] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.0.iter().filter(|s| **s == Sym::Star).count()
    }

    /// Positions (not direction labels) holding `*`.
    pub fn star_positions(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&p| self.0[p] == Sym::Star).collect()
    }

    pub fn leq(&self, other: &Face) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a.leq(*b))
    }

    /// Codimension-one faces, in the order obtained by replacing each `*` first by 0 then by 1.
    pub fn facets(&self) -> Vec<Face> {
        let mut out = Vec::new();
        for p in self.star_positions() {
            for s in [Sym::Zero, Sym::One] {
                let mut g = self.0.clone();
                g[p] = s;
                out.push(Face(g));
            }
        }
        out
    }

    /// Removes the coordinate at position `p`.
    pub fn without(&self, p: usize) -> Face {
        let mut v = self.0.clone();
        v.remove(p);
        Face(v)
    }

    /// Inserts `s` at position `p`.
    pub fn with(&self, p: usize, s: Sym) -> Face {
        let mut v = self.0.clone();
        v.insert(p, s);
        Face(v)
    }

    pub fn get(&self, p: usize) -> Sym {
        self.0[p]
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("()");
        }
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Face {
    type Err = Error;
    fn from_str(s: &str) -> Result<Face> {
        if s == "()" {
            return Ok(Face(Vec::new()));
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(Sym::Zero),
                '1' => Ok(Sym::One),
                '*' => Ok(Sym::Star),
                _ => Err(Error::MalformedFace(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(Face)
    }
}

/// Relative orientation `ε(f, g)` of faces with `dim g = dim f + 1`: zero unless `f <= g`;
/// otherwise `(−1)^j` when `f` has 0 in the `j`-th direction of `g` (counting from 1) and
/// `(−1)^{j+1}` when it has 1 there.
pub fn sign(f: &Face, g: &Face) -> Result<i8> {
    if f.len() != g.len() {
        return Err(Error::MalformedFace(format!("{f} and {g} have different lengths")));
    }
    if f.dim() + 1 != g.dim() {
        return Err(Error::Direction(format!(
            "sign needs dim g = dim f + 1, got {} and {}",
            f.dim(),
            g.dim()
        )));
    }
    if !f.leq(g) {
        return Ok(0);
    }
    let stars = g.star_positions();
    let j = stars
        .iter()
        .position(|&p| f.0[p] != Sym::Star)
        .expect("f <= g with one fewer star")
        + 1;
    let odd = j % 2 == 1;
    Ok(match (f.0[stars[j - 1]], odd) {
        (Sym::Zero, true) | (Sym::One, false) => -1,
        _ => 1,
    })
}
