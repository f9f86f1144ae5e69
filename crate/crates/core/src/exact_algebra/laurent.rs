//! Sparse multivariate Laurent polynomials with integer coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Laurent polynomial over a named variable table. Exponent vectors have the arity of the
/// table and may be negative; zero coefficients are never stored.
#[derive(Clone)]
pub struct LaurentPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Vec<i32>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(vars: Arc<[String]>) -> Self {
        LaurentPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Arc<[String]>, c: impl Into<BigInt>) -> Self {
        let n = vars.len();
        Self::monomial(vars, vec![0; n], c)
    }

    pub fn one(vars: Arc<[String]>) -> Self {
        Self::constant(vars, 1)
    }

    /// `c * prod v_i^{exp_i}`.
    pub fn monomial(vars: Arc<[String]>, exp: Vec<i32>, c: impl Into<BigInt>) -> Self {
        assert_eq!(exp.len(), vars.len(), "exponent arity mismatch");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { vars, terms }
    }

    /// The variable at position `i` of the table.
    pub fn var(vars: Arc<[String]>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, 1)
    }

    /// Builds a variable table from names.
    pub fn table<S: AsRef<str>>(names: &[S]) -> Arc<[String]> {
        names.iter().map(|s| s.as_ref().to_string()).collect()
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i32>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Integer value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Re-expresses the polynomial over a larger table containing all of its variables.
    pub fn align(&self, vars: &Arc<[String]>) -> Self {
        if Arc::ptr_eq(&self.vars, vars) || *self.vars == **vars {
            return LaurentPoly {
                vars: vars.clone(),
                terms: self.terms.clone(),
            };
        }
        let pos: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter()
                    .position(|w| w == v)
                    .expect("target table must contain every variable")
            })
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0; vars.len()];
                for (i, &x) in e.iter().enumerate() {
                    ne[pos[i]] = x;
                }
                (ne, c.clone())
            })
            .collect();
        LaurentPoly {
            vars: vars.clone(),
            terms,
        }
    }

    fn union_table(a: &Arc<[String]>, b: &Arc<[String]>) -> Arc<[String]> {
        if Arc::ptr_eq(a, b) || **a == **b {
            return a.clone();
        }
        let mut v: Vec<String> = a.to_vec();
        for name in b.iter() {
            if !v.contains(name) {
                v.push(name.clone());
            }
        }
        v.into()
    }

    fn aligned(&self, rhs: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        let t = Self::union_table(&self.vars, &rhs.vars);
        (self.align(&t), rhs.align(&t))
    }

    fn add_term(&mut self, e: Vec<i32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.vars.clone());
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    /// Lexicographically largest exponent and its coefficient.
    fn leading(&self) -> Option<(&Vec<i32>, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Coordinatewise minimum and maximum exponents.
    fn exponent_box(&self) -> (Vec<i32>, Vec<i32>) {
        let n = self.vars.len();
        let mut lo = vec![i32::MAX; n];
        let mut hi = vec![i32::MIN; n];
        for e in self.terms.keys() {
            for i in 0..n {
                lo[i] = lo[i].min(e[i]);
                hi[i] = hi[i].max(e[i]);
            }
        }
        (lo, hi)
    }

    /// Exact quotient `self / d`; errors when the division leaves a remainder.
    pub fn div_exact(&self, d: &LaurentPoly) -> Result<LaurentPoly> {
        let (mut rem, d) = self.aligned(d);
        let vars = rem.vars.clone();
        let (dl, dc) = match d.leading() {
            Some((e, c)) => (e.clone(), c.clone()),
            None => return Err(Error::InexactDivision("division by zero polynomial".into())),
        };
        if rem.is_zero() {
            return Ok(rem);
        }
        // quotient exponents lie in the box spanned by the coordinatewise ranges (Newton polytopes add)
        let (nlo, nhi) = rem.exponent_box();
        let (dlo, dhi) = d.exponent_box();
        let lo: Vec<i32> = nlo.iter().zip(&dlo).map(|(a, b)| a - b).collect();
        let hi: Vec<i32> = nhi.iter().zip(&dhi).map(|(a, b)| a - b).collect();
        let mut quot = LaurentPoly::zero(vars);
        while let Some((rl, rc)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
            let qe: Vec<i32> = rl.iter().zip(&dl).map(|(a, b)| a - b).collect();
            let (qc, r) = rc.div_rem(&dc);
            let in_box = qe.iter().zip(lo.iter().zip(&hi)).all(|(x, (l, h))| l <= x && x <= h);
            if !r.is_zero() || !in_box {
                return Err(Error::InexactDivision(format!("{self} by {d}")));
            }
            let step = LaurentPoly::monomial(rem.vars.clone(), qe.clone(), qc.clone());
            rem = &rem - &(&step * &d);
            quot.add_term(qe, qc);
        }
        Ok(quot)
    }

    /// Exact division by an integer.
    pub fn div_scalar(&self, d: &BigInt) -> Result<LaurentPoly> {
        let mut out = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::InexactDivision(format!("{self} by {d}")));
            }
            out.add_term(e.clone(), q);
        }
        Ok(out)
    }

    /// Exact evaluation at a rational point; unassigned variables are an error.
    pub fn eval(&self, assignment: &HashMap<String, BigRational>) -> Result<BigRational> {
        let mut vals = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            let used = self.terms.keys().any(|e| e[i] != 0);
            match assignment.get(v) {
                Some(x) => {
                    if x.is_zero() && self.terms.keys().any(|e| e[i] < 0) {
                        return Err(Error::ZeroDivisor(v.clone()));
                    }
                    vals.push(x.clone());
                }
                None if !used => vals.push(BigRational::one()),
                None => return Err(Error::Unassigned(v.clone())),
            }
        }
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (x, &k) in vals.iter().zip(e) {
                if k != 0 {
                    t *= num_traits::pow::Pow::pow(x, k);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Sets every variable to 1.
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Substitutes 1 for the named variables, keeping the table.
    pub fn set_to_one(&self, names: &[&str]) -> Self {
        let idx: Vec<usize> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(_, v)| names.contains(&v.as_str()))
            .map(|(i, _)| i)
            .collect();
        let mut out = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            for &i in &idx {
                ne[i] = 0;
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// First monomial where the two polynomials differ, with both coefficients.
    pub fn first_difference(&self, other: &LaurentPoly) -> Option<(LaurentPoly, BigInt, BigInt)> {
        let (a, b) = self.aligned(other);
        let diff = &a - &b;
        let (e, _) = diff.terms.iter().next()?;
        let ca = a.terms.get(e).cloned().unwrap_or_default();
        let cb = b.terms.get(e).cloned().unwrap_or_default();
        Some((LaurentPoly::monomial(a.vars.clone(), e.clone(), 1), ca, cb))
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.vars.to_vec(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exp: e.clone(),
                    coef: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<LaurentPoly> {
        let vars: Arc<[String]> = j.vars.clone().into();
        let mut out = LaurentPoly::zero(vars.clone());
        for t in &j.terms {
            if t.exp.len() != vars.len() {
                return Err(Error::Shape(format!(
                    "exponent vector of length {} for {} variables",
                    t.exp.len(),
                    vars.len()
                )));
            }
            let c: BigInt = t
                .coef
                .parse()
                .map_err(|_| Error::Shape(format!("bad coefficient `{}`", t.coef)))?;
            out.add_term(t.exp.clone(), c);
        }
        Ok(out)
    }
}

/// JSON form: terms sorted lexicographically by exponent vector.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub exp: Vec<i32>,
    pub coef: String,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.terms == b.terms
    }
}

impl Eq for LaurentPoly {}

impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (mut a, b) = self.aligned(rhs);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }
}

impl std::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (mut a, b) = self.aligned(rhs);
        for (e, c) in b.terms {
            a.add_term(e, -c);
        }
        a
    }
}

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&BigInt::from(-1))
    }
}

impl std::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (a, b) = self.aligned(rhs);
        let mut out = LaurentPoly::zero(a.vars.clone());
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let factors: Vec<String> = e
                .iter()
                .zip(self.vars.iter())
                .filter(|(x, _)| **x != 0)
                .map(|(&x, v)| if x == 1 { v.clone() } else { format!("{v}^{x}") })
                .collect();
            if factors.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{a}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Square matrix of Laurent polynomials sharing one variable table.
#[derive(Clone, Debug)]
pub struct PolyMatrix {
    vars: Arc<[String]>,
    rows: Vec<Vec<LaurentPoly>>,
}

impl PolyMatrix {
    pub fn new(vars: Arc<[String]>, rows: Vec<Vec<LaurentPoly>>) -> Self {
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|p| p.align(&vars)).collect())
            .collect();
        PolyMatrix { vars, rows }
    }

    pub fn zeros(vars: Arc<[String]>, rows: usize, cols: usize) -> Self {
        let z = LaurentPoly::zero(vars.clone());
        PolyMatrix {
            vars,
            rows: vec![vec![z; cols]; rows],
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn get(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.rows[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: LaurentPoly) {
        self.rows[r][c] = p.align(&self.vars);
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn transpose(&self) -> PolyMatrix {
        let (r, c) = (self.nrows(), self.ncols());
        let mut t = PolyMatrix::zeros(self.vars.clone(), c, r);
        for i in 0..r {
            for j in 0..c {
                t.rows[j][i] = self.rows[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.ncols() != rhs.nrows() {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows(),
                self.ncols(),
                rhs.nrows(),
                rhs.ncols()
            )));
        }
        let mut out = PolyMatrix::zeros(self.vars.clone(), self.nrows(), rhs.ncols());
        for i in 0..self.nrows() {
            for k in 0..self.ncols() {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.ncols() {
                    let b = &rhs.rows[k][j];
                    if !b.is_zero() {
                        out.rows[i][j] = &out.rows[i][j] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if (self.nrows(), self.ncols()) != (rhs.nrows(), rhs.ncols()) {
            return Err(Error::Shape("matrix sum shape mismatch".into()));
        }
        let mut out = self.clone();
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                out.rows[i][j] = &self.rows[i][j] + &rhs.rows[i][j];
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(LaurentPoly::is_zero)
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        PolyMatrix {
            vars: self.vars.clone(),
            rows: rows
                .iter()
                .map(|&r| cols.iter().map(|&c| self.rows[r][c].clone()).collect())
                .collect(),
        }
    }

    /// Evaluates every entry at a rational point.
    pub fn eval(&self, assignment: &HashMap<String, BigRational>) -> Result<Vec<Vec<BigRational>>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|p| p.eval(assignment)).collect())
            .collect()
    }

    /// Determinant by fraction-free elimination; every division is exact.
    pub fn det(&self) -> Result<LaurentPoly> {
        let n = self.nrows();
        if n != self.ncols() {
            return Err(Error::NotSquare {
                rows: n,
                cols: self.ncols(),
            });
        }
        if n == 0 {
            return Ok(LaurentPoly::one(self.vars.clone()));
        }
        let mut a = self.rows.clone();
        let mut negate = false;
        let mut prev = LaurentPoly::one(self.vars.clone());
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        negate = !negate;
                    }
                    None => return Ok(LaurentPoly::zero(self.vars.clone())),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = v.div_exact(&prev)?;
                }
                a[i][k] = LaurentPoly::zero(self.vars.clone());
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { -&d } else { d })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn evaluation() {
        let t = LaurentPoly::table(&["q1", "x1", "y1"]);
        let u = &LaurentPoly::monomial(t.clone(), vec![2, -2, 0], 1)
            + &LaurentPoly::monomial(t.clone(), vec![2, 0, -2], 1);
        let a: HashMap<String, BigRational> =
            [("q1", 2), ("x1", 1), ("y1", 2)].iter().map(|(k, v)| (k.to_string(), rat(*v))).collect();
        assert_eq!(u.eval(&a).unwrap(), rat(5));
        assert_eq!(LaurentPoly::constant(t.clone(), 7).eval(&a).unwrap(), rat(7));
        let mut z = a.clone();
        z.insert("x1".into(), rat(0));
        assert!(matches!(u.eval(&z), Err(Error::ZeroDivisor(_))));
    }

    #[test]
    fn alignment_and_equality() {
        let a = LaurentPoly::var(LaurentPoly::table(&["x"]), 0);
        let b = LaurentPoly::var(LaurentPoly::table(&["y"]), 0);
        let s = &a + &b;
        let s2 = &b + &a;
        assert_eq!(s, s2);
        assert_eq!(s.vars().len(), 2);
    }

    #[test]
    fn exact_division() {
        let t = LaurentPoly::table(&["x", "y"]);
        let x = LaurentPoly::var(t.clone(), 0);
        let y = LaurentPoly::var(t.clone(), 1);
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p.div_exact(&(&x + &y)).unwrap(), &x - &y);
        assert!(p.div_exact(&(&x + &LaurentPoly::one(t.clone()))).is_err());
        let inv = LaurentPoly::monomial(t.clone(), vec![-1, 0], 1);
        assert_eq!((&p * &inv).div_exact(&(&x - &y)).unwrap(), &(&x + &y) * &inv);
    }

    #[test]
    fn poly_det_matches_expansion() {
        let t = LaurentPoly::table(&["a", "b"]);
        let a = LaurentPoly::var(t.clone(), 0);
        let b = LaurentPoly::var(t.clone(), 1);
        let m = PolyMatrix::new(
            t.clone(),
            vec![
                vec![&a + &b, -&a, -&b],
                vec![-&a, &a + &b, -&b],
                vec![-&b, -&b, &b + &b],
            ],
        );
        let direct = {
            let e = |i: usize, j: usize| m.get(i, j).clone();
            let t1 = &e(0, 0) * &(&(&e(1, 1) * &e(2, 2)) - &(&e(1, 2) * &e(2, 1)));
            let t2 = &e(0, 1) * &(&(&e(1, 0) * &e(2, 2)) - &(&e(1, 2) * &e(2, 0)));
            let t3 = &e(0, 2) * &(&(&e(1, 0) * &e(2, 1)) - &(&e(1, 1) * &e(2, 0)));
            &(&t1 - &t2) + &t3
        };
        assert_eq!(m.det().unwrap(), direct);
    }
}
