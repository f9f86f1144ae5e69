//! The built-in test corpus: small cubes, mirrors, the projective plane, colorful complexes
//! and shifted complexes.

use crate::chain_complex::ChainComplex;
use crate::colorful::colorful_complex;
use crate::cubical::{all_simplicial_complexes, cube, mirror, shifted_family, CubicalComplex};
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub chain: ChainComplex,
    /// The cubical complex behind `chain`, when there is one.
    pub cubical: Option<CubicalComplex>,
}

impl CorpusEntry {
    fn cubical(name: String, x: CubicalComplex) -> Self {
        CorpusEntry {
            name,
            chain: x.to_chain(),
            cubical: Some(x),
        }
    }
}

/// Size limits for [`corpus`].
#[derive(Clone, Copy, Debug)]
pub struct CorpusLimits {
    pub max_cube: usize,
    pub max_mirror_vertices: u32,
    pub max_colorful_sum: usize,
    pub max_shifted_directions: usize,
}

impl Default for CorpusLimits {
    fn default() -> Self {
        CorpusLimits {
            max_cube: 4,
            max_mirror_vertices: 4,
            max_colorful_sum: 9,
            max_shifted_directions: 4,
        }
    }
}

/// Nonincreasing sequences of positive integers with sum at most `max_sum`.
pub fn colorful_sizes(max_sum: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, largest: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for a in 1..=largest.min(rest) {
            cur.push(a);
            go(rest - a, a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(max_sum, max_sum, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.iter().sum::<usize>().cmp(&b.iter().sum()).then(a.cmp(b)));
    out
}

pub fn colorful_name(a: &[usize]) -> String {
    let parts: Vec<String> = a.iter().map(|v| v.to_string()).collect();
    format!("colorful:{}", parts.join(","))
}

/// Every shifted complex on at most `max_n` directions, with a name.
pub fn shifted_corpus(max_n: usize) -> Vec<(String, CubicalComplex)> {
    (1..=max_n)
        .flat_map(|n| {
            shifted_family(n)
                .into_iter()
                .enumerate()
                .map(move |(j, x)| (format!("shifted:{n}#{j}"), x))
        })
        .collect()
}

pub fn corpus(limits: CorpusLimits) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for n in 1..=limits.max_cube {
        out.push(CorpusEntry::cubical(format!("cube:{n}"), cube(n)?));
    }
    for n in 1..=limits.max_mirror_vertices {
        for (j, d) in all_simplicial_complexes(n).iter().enumerate() {
            out.push(CorpusEntry::cubical(format!("mirror:{n}#{j}"), mirror(d)));
        }
    }
    out.push(CorpusEntry {
        name: "rp2".into(),
        chain: ChainComplex::real_projective_plane(),
        cubical: None,
    });
    for a in colorful_sizes(limits.max_colorful_sum) {
        out.push(CorpusEntry {
            name: colorful_name(&a),
            chain: colorful_complex(&a)?,
            cubical: None,
        });
    }
    for (name, x) in shifted_corpus(limits.max_shifted_directions) {
        out.push(CorpusEntry::cubical(name, x));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colorful_size_lists() {
        assert_eq!(colorful_sizes(3), vec![vec![1], vec![1, 1], vec![2], vec![1, 1, 1], vec![2, 1], vec![3]]);
        // partitions of 1..=9
        assert_eq!(colorful_sizes(9).len(), 1 + 2 + 3 + 5 + 7 + 11 + 15 + 22 + 30);
    }

    #[test]
    fn small_corpus() {
        let limits = CorpusLimits {
            max_cube: 2,
            max_mirror_vertices: 2,
            max_colorful_sum: 3,
            max_shifted_directions: 2,
        };
        let c = corpus(limits).unwrap();
        let shifted = shifted_corpus(2).len();
        assert_eq!(c.len(), 2 + 7 + 1 + 6 + shifted);
        assert!(c.iter().all(|e| e.chain.validate().is_none()));
    }
}
