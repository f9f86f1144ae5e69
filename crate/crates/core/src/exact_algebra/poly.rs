use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense univariate polynomial over the integers, coefficients stored lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `y^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        IntPoly { coeffs: c }
    }

    /// `y - r`.
    pub fn linear_root(r: &BigInt) -> Self {
        Self::from_coeffs(vec![-r, BigInt::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, y: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * y + c)
    }

    /// Lowest-degree nonzero coefficient with its degree.
    pub fn lowest_nonzero(&self) -> Option<(usize, &BigInt)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_zero())
    }

    /// Splits off the largest power of `y`: returns `(k, p / y^k)`.
    pub fn strip_zero_roots(&self) -> (usize, IntPoly) {
        match self.lowest_nonzero() {
            None => (0, IntPoly::zero()),
            Some((k, _)) => (k, IntPoly::from_coeffs(self.coeffs[k..].to_vec())),
        }
    }

    /// Synthetic division by `y - r`; `None` when `r` is not a root.
    pub fn div_root(&self, r: &BigInt) -> Option<IntPoly> {
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let n = self.coeffs.len();
        let mut q = vec![BigInt::zero(); n - 1];
        let mut carry = BigInt::zero();
        for i in (0..n).rev() {
            let v = &self.coeffs[i] + &carry * r;
            if i == 0 {
                return v.is_zero().then(|| IntPoly::from_coeffs(q));
            }
            q[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// `p(y + c)`.
    pub fn taylor_shift(&self, c: &BigInt) -> IntPoly {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let v = &a[j + 1] * c;
                a[j] += v;
            }
        }
        IntPoly::from_coeffs(a)
    }

    pub fn pow(&self, e: usize) -> IntPoly {
        (0..e).fold(IntPoly::one(), |acc, _| &acc * self)
    }

    /// Divides every coefficient by `d`; `None` unless all divisions are exact.
    pub fn div_scalar(&self, d: &BigInt) -> Option<IntPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(IntPoly::from_coeffs(out))
    }
}

impl std::ops::Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl std::ops::Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl std::ops::Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let show_coeff = !a.is_one() || i == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "y")?,
                _ => write!(f, "y^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_eval() {
        let p = IntPoly::from_i64(&[0, -2, 1]);
        assert_eq!(p.to_string(), "y^2 - 2y");
        assert_eq!(p.eval(&BigInt::from(2)), BigInt::zero());
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn roots_and_shift() {
        // (y-1)(y-3) = y^2 - 4y + 3
        let p = IntPoly::from_i64(&[3, -4, 1]);
        assert_eq!(p.div_root(&BigInt::from(3)), Some(IntPoly::from_i64(&[-1, 1])));
        assert_eq!(p.div_root(&BigInt::from(2)), None);
        // p(y+1) = y^2 - 2y
        assert_eq!(p.taylor_shift(&BigInt::one()), IntPoly::from_i64(&[0, -2, 1]));
        let (k, r) = IntPoly::from_i64(&[0, 0, 5, 1]).strip_zero_roots();
        assert_eq!((k, r), (2, IntPoly::from_i64(&[5, 1])));
    }
}
