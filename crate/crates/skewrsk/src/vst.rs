//! Vertically strict tableaux, stored as tensor products of columns.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::partition::Partition;
use crate::tableau::Letter;

/// A tensor product `b_1 ⊗ … ⊗ b_N` of strictly increasing columns over `1..=n`.
///
/// When the heights are weakly decreasing this is a vertically strict
/// tableau of shape `µ` with `µ'` equal to the list of heights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ColumnTensor {
    pub n: u32,
    pub columns: Vec<Vec<Letter>>,
}

pub type Vst = ColumnTensor;

impl ColumnTensor {
    pub fn new(n: u32, columns: Vec<Vec<Letter>>) -> Result<Self> {
        for col in &columns {
            if col.windows(2).any(|w| w[0] >= w[1]) {
                return invalid(format!("column {col:?} is not strictly increasing"));
            }
            if col.iter().any(|&l| l == 0 || l > n) {
                return invalid(format!("column {col:?} has letters outside 1..={n}"));
            }
        }
        Ok(ColumnTensor { n, columns })
    }

    /// Like [`ColumnTensor::new`] but also requires weakly decreasing heights.
    pub fn vst(n: u32, columns: Vec<Vec<Letter>>) -> Result<Self> {
        let t = Self::new(n, columns)?;
        if t.columns.windows(2).any(|w| w[0].len() < w[1].len()) || t.columns.iter().any(|c| c.is_empty()) {
            return invalid("column heights of a vertically strict tableau must be positive and weakly decreasing");
        }
        Ok(t)
    }

    /// The leading vector: column `k` holds `1..=h_k`.
    pub fn leading(n: u32, heights: &[usize]) -> Self {
        ColumnTensor { n, columns: heights.iter().map(|&h| (1..=h as Letter).collect()).collect() }
    }

    pub fn heights(&self) -> Vec<usize> {
        self.columns.iter().map(|c| c.len()).collect()
    }

    /// `µ` such that `µ'` lists the heights; `None` if the heights increase somewhere.
    pub fn shape(&self) -> Option<Partition> {
        let h = self.heights();
        Partition::new(h).ok().map(|p| p.transpose())
    }

    pub fn size(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn content(&self) -> Vec<usize> {
        let mut c = vec![0; self.n as usize];
        for col in &self.columns {
            for &l in col {
                c[l as usize - 1] += 1;
            }
        }
        c
    }

    /// Column reading word: each column bottom to top, columns left to right.
    pub fn column_word(&self) -> Vec<Letter> {
        self.columns.iter().flat_map(|c| c.iter().rev().copied()).collect()
    }

    /// Positions `(column, index in column)` in reading-word order.
    pub(crate) fn word_positions(&self) -> Vec<(usize, usize)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, c)| (0..c.len()).rev().map(move |k| (j, k)))
            .collect()
    }

    /// Every tensor with the given heights, in lexicographic order.
    pub fn enumerate(n: u32, heights: &[usize]) -> Vec<ColumnTensor> {
        let per: Vec<Vec<Vec<Letter>>> = heights.iter().map(|&h| subsets(n, h)).collect();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(heights.len());
        fn rec(per: &[Vec<Vec<Letter>>], k: usize, cur: &mut Vec<Vec<Letter>>, n: u32, out: &mut Vec<ColumnTensor>) {
            if k == per.len() {
                out.push(ColumnTensor { n, columns: cur.clone() });
                return;
            }
            for s in &per[k] {
                cur.push(s.clone());
                rec(per, k + 1, cur, n, out);
                cur.pop();
            }
        }
        rec(&per, 0, &mut cur, n, &mut out);
        out
    }
}

/// All `h`-subsets of `1..=n` in increasing order.
pub fn subsets(n: u32, h: usize) -> Vec<Vec<Letter>> {
    fn rec(start: Letter, n: u32, h: usize, cur: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
        if cur.len() == h {
            out.push(cur.clone());
            return;
        }
        for l in start..=n {
            cur.push(l);
            rec(l + 1, n, h, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, h, &mut Vec::new(), &mut out);
    out
}

impl std::fmt::Display for ColumnTensor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .columns
            .iter()
            .map(|c| format!("({})", c.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{}", parts.join("⊗"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerate_counts() {
        assert_eq!(ColumnTensor::enumerate(4, &[2, 1]).len(), 6 * 4);
        assert_eq!(ColumnTensor::enumerate(3, &[]).len(), 1);
    }

    #[test]
    fn shape_and_word() {
        let v = ColumnTensor::vst(5, vec![vec![1, 2, 3], vec![1, 2], vec![3, 5], vec![4]]).unwrap();
        assert_eq!(v.shape().unwrap().parts(), &[4, 3, 1]);
        assert_eq!(v.column_word(), vec![3, 2, 1, 2, 1, 5, 3, 4]);
        assert!(ColumnTensor::vst(3, vec![vec![1], vec![1, 2]]).is_err());
    }
}
