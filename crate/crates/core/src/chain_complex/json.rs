use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::ChainComplex;
use crate::error::{Error, Result};
use crate::exact_algebra::IntMatrix;

/// On-disk form: `{"dims": d, "cells": [[...], ...], "boundary": {"1": [[...]], ...},
/// "empty_cell": bool}`. Matrix rows are row-major with integers as decimal strings; plain
/// JSON numbers are accepted on input. An optional `"0"` entry gives the augmentation row.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainComplexJson {
    pub dims: isize,
    pub cells: Vec<Vec<String>>,
    pub boundary: BTreeMap<String, Vec<Vec<Value>>>,
    #[serde(default)]
    pub empty_cell: bool,
}

fn parse_entry(v: &Value) -> Result<BigInt> {
    match v {
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidComplex(format!("bad integer `{s}`"))),
        Value::Number(n) => n
            .to_string()
            .parse()
            .map_err(|_| Error::InvalidComplex(format!("non-integer entry {n}"))),
        other => Err(Error::InvalidComplex(format!("bad matrix entry {other}"))),
    }
}

impl ChainComplex {
    pub fn to_json(&self) -> ChainComplexJson {
        let mut boundary = BTreeMap::new();
        let first = if self.has_empty_cell() { 0 } else { 1 };
        for i in first..=self.dim() {
            let b = self.boundary(i);
            let rows = b
                .to_rows()
                .into_iter()
                .map(|r| r.into_iter().map(|x| Value::String(x.to_string())).collect())
                .collect();
            boundary.insert(i.to_string(), rows);
        }
        ChainComplexJson {
            dims: self.dim(),
            cells: (0..=self.dim()).map(|i| self.cells(i)).collect(),
            boundary,
            empty_cell: self.has_empty_cell(),
        }
    }

    pub fn from_json(j: &ChainComplexJson) -> Result<ChainComplex> {
        if j.cells.len() as isize != j.dims + 1 {
            return Err(Error::InvalidComplex(format!(
                "dims = {} but {} cell lists given",
                j.dims,
                j.cells.len()
            )));
        }
        let matrix = |i: isize| -> Result<IntMatrix> {
            let rows_expected = if i == 0 { 1 } else { j.cells[i as usize - 1].len() };
            let cols = j.cells[i as usize].len();
            match j.boundary.get(&i.to_string()) {
                None if i == 0 => IntMatrix::from_rows(&[vec![1i64; cols]], cols),
                None => Ok(IntMatrix::zeros(rows_expected, cols)),
                Some(rows) => {
                    let parsed: Vec<Vec<BigInt>> = rows
                        .iter()
                        .map(|r| r.iter().map(parse_entry).collect())
                        .collect::<Result<_>>()?;
                    if parsed.len() != rows_expected {
                        return Err(Error::InvalidComplex(format!(
                            "boundary {i} has {} rows, expected {rows_expected}",
                            parsed.len()
                        )));
                    }
                    IntMatrix::from_rows(&parsed, cols)
                }
            }
        };
        let boundaries = (1..=j.dims).map(matrix).collect::<Result<Vec<_>>>()?;
        let aug = if j.empty_cell && j.dims >= 0 { Some(matrix(0)?) } else { None };
        if !j.empty_cell && j.boundary.contains_key("0") {
            return Err(Error::InvalidComplex("boundary 0 given without an empty cell".into()));
        }
        ChainComplex::with_augmentation(j.cells.clone(), boundaries, aug)
    }

    pub fn from_json_str(s: &str) -> Result<ChainComplex> {
        Self::from_json(&serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let src = r#"{"dims":2,"cells":[["v"],["e"],["f"]],"boundary":{"1":[["0"]],"2":[[2]]},"empty_cell":false}"#;
        let c = ChainComplex::from_json_str(src).unwrap();
        assert_eq!(c.torsion(1), BigInt::from(2));
        let again = ChainComplex::from_json_str(&c.to_json_string()).unwrap();
        assert_eq!(again, c);
        assert!(c.to_json_string().contains(r#""2":[["2"]]"#));
    }

    #[test]
    fn rejects_bad_input() {
        let src = r#"{"dims":1,"cells":[["a","b"],["e"]],"boundary":{"1":[["1"],["x"]]}}"#;
        assert!(ChainComplex::from_json_str(src).is_err());
        let src = r#"{"dims":1,"cells":[["a","b"],["e"]],"boundary":{"1":[["1"]]}}"#;
        assert!(ChainComplex::from_json_str(src).is_err());
    }
}
