//! Overlap, kernel, the row-coordinate encoding of classical pairs, and
//! standardization.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::partition::Partition;
use crate::tableau::{Letter, Row, SkewTableau};

/// Counts `α_{i,r}` of `i`-cells at row `r`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RowCoordMatrix {
    pub n: u32,
    counts: BTreeMap<(Letter, i64), usize>,
}

impl RowCoordMatrix {
    pub fn zero(n: u32) -> Self {
        RowCoordMatrix { n, counts: BTreeMap::new() }
    }

    /// Builds from dense rows: `rows[i-1][k]` is the count of letter `i` at row `first_row + k`.
    pub fn from_dense(n: u32, first_row: i64, rows: &[Vec<usize>]) -> Result<Self> {
        if rows.len() > n as usize {
            return invalid("more letter rows than the alphabet");
        }
        let mut m = RowCoordMatrix::zero(n);
        for (i, row) in rows.iter().enumerate() {
            for (k, &c) in row.iter().enumerate() {
                m.add(i as Letter + 1, first_row + k as i64, c);
            }
        }
        Ok(m)
    }

    pub fn of_tableau(t: &SkewTableau) -> Self {
        let mut m = RowCoordMatrix::zero(t.n());
        for (k, row) in t.rows().iter().enumerate() {
            for &l in &row.labels {
                m.add(l, t.base_row() + k as i64, 1);
            }
        }
        m
    }

    pub fn get(&self, i: Letter, r: i64) -> usize {
        self.counts.get(&(i, r)).copied().unwrap_or(0)
    }

    pub fn add(&mut self, i: Letter, r: i64, c: usize) {
        if c > 0 {
            *self.counts.entry((i, r)).or_insert(0) += c;
        }
    }

    pub fn set(&mut self, i: Letter, r: i64, c: usize) {
        if c == 0 {
            self.counts.remove(&(i, r));
        } else {
            self.counts.insert((i, r), c);
        }
    }

    pub fn counts(&self) -> &BTreeMap<(Letter, i64), usize> {
        &self.counts
    }

    pub fn row_range(&self) -> Option<(i64, i64)> {
        let lo = self.counts.keys().map(|k| k.1).min()?;
        let hi = self.counts.keys().map(|k| k.1).max()?;
        Some((lo, hi))
    }

    /// Sum over letters at row `r`.
    pub fn row_total(&self, r: i64) -> usize {
        self.counts.iter().filter(|(k, _)| k.1 == r).map(|(_, &c)| c).sum()
    }

    /// Number of cells carrying letter `i`.
    pub fn letter_total(&self, i: Letter) -> usize {
        self.counts.iter().filter(|(k, _)| k.0 == i).map(|(_, &c)| c).sum()
    }

    /// Weakly increasing word of the letters at row `r`.
    pub fn row_word(&self, r: i64) -> Vec<Letter> {
        let mut w = Vec::new();
        for (&(i, rr), &c) in &self.counts {
            if rr == r {
                w.extend(std::iter::repeat(i).take(c));
            }
        }
        w
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// Dense view `[letter][row - lo]` over rows `lo..=hi`.
    pub fn dense(&self, lo: i64, hi: i64) -> Vec<Vec<usize>> {
        (1..=self.n)
            .map(|i| (lo..=hi).map(|r| self.get(i, r)).collect())
            .collect()
    }
}

/// `(α, β)` have equal column sums on every row.
pub fn balanced(alpha: &RowCoordMatrix, beta: &RowCoordMatrix) -> bool {
    let rows: std::collections::BTreeSet<i64> =
        alpha.counts.keys().chain(beta.counts.keys()).map(|k| k.1).collect();
    rows.into_iter().all(|r| alpha.row_total(r) == beta.row_total(r))
}

fn check_weak(w: &[Letter]) -> Result<()> {
    if w.windows(2).any(|x| x[0] > x[1]) {
        return invalid(format!("word {w:?} is not weakly increasing"));
    }
    Ok(())
}

/// The largest `L ≤ min(ℓ(A), ℓ(B))` with `B_{ℓ(B)−L+i} > A_i` for `i = 1..L`.
pub fn overlap(a: &[Letter], b: &[Letter]) -> Result<usize> {
    check_weak(a)?;
    check_weak(b)?;
    Ok(overlap_unchecked(a, b))
}

pub(crate) fn overlap_unchecked(a: &[Letter], b: &[Letter]) -> usize {
    let lb = b.len();
    (0..=a.len().min(lb))
        .rev()
        .find(|&l| (0..l).all(|i| b[lb - l + i] > a[i]))
        .unwrap_or(0)
}

fn kernel_from(t: &SkewTableau, slack: impl Fn(i64) -> usize) -> Result<Partition> {
    t.require_classical()?;
    let len = t.rows().len() as i64;
    let mut diffs = Vec::with_capacity(len as usize);
    for j in 1..=len {
        let d = t.inner_at(j) as i64 - t.outer_at(j + 1) as i64 + slack(j) as i64;
        if d < 0 {
            return invalid("negative kernel increment; shape and fillings are inconsistent");
        }
        diffs.push(d as usize);
    }
    let mut parts = vec![0; diffs.len()];
    let mut acc = 0;
    for j in (0..diffs.len()).rev() {
        acc += diffs[j];
        parts[j] = acc;
    }
    Partition::new(parts)
}

/// The kernel of a classical tableau.
pub fn kernel(p: &SkewTableau) -> Result<Partition> {
    kernel_from(p, |j| overlap_unchecked(p.labels_at(j), p.labels_at(j + 1)))
}

/// The kernel of a classical pair, using the smaller of the two overlaps per row.
pub fn kernel_pair(p: &SkewTableau, q: &SkewTableau) -> Result<Partition> {
    if !p.same_shape(q) {
        return invalid("P and Q must have the same shape");
    }
    kernel_from(p, |j| {
        overlap_unchecked(p.labels_at(j), p.labels_at(j + 1))
            .min(overlap_unchecked(q.labels_at(j), q.labels_at(j + 1)))
    })
}

/// Row-coordinate encoding of a classical pair.
pub fn rc_encode(p: &SkewTableau, q: &SkewTableau) -> Result<(RowCoordMatrix, RowCoordMatrix, Partition)> {
    let nu = kernel_pair(p, q)?;
    Ok((RowCoordMatrix::of_tableau(p), RowCoordMatrix::of_tableau(q), nu))
}

/// Inverse of [`rc_encode`].
pub fn rc_decode(
    alpha: &RowCoordMatrix,
    beta: &RowCoordMatrix,
    nu: &Partition,
) -> Result<(SkewTableau, SkewTableau)> {
    if !balanced(alpha, beta) {
        return invalid("(α, β) is not balanced");
    }
    let lo = alpha.row_range().map(|r| r.0).unwrap_or(1);
    if lo < 1 {
        return invalid("row-coordinate matrices must be supported on positive rows");
    }
    let rows_ab = alpha.row_range().map(|r| r.1).unwrap_or(0).max(0) as usize;
    let len = rows_ab.max(nu.len());
    let pw: Vec<Vec<Letter>> = (1..=len as i64 + 1).map(|r| alpha.row_word(r)).collect();
    let qw: Vec<Vec<Letter>> = (1..=len as i64 + 1).map(|r| beta.row_word(r)).collect();
    let theta: Vec<usize> = pw.iter().map(|w| w.len()).collect();
    let mut eta = vec![0usize; len + 1];
    for j in (0..len).rev() {
        let ov = overlap_unchecked(&pw[j], &pw[j + 1]).min(overlap_unchecked(&qw[j], &qw[j + 1]));
        let d = theta[j + 1] as i64 - ov as i64;
        if d < 0 {
            return invalid("inconsistent overlaps");
        }
        eta[j] = eta[j + 1] + d as usize;
    }
    let mk = |words: &[Vec<Letter>], n: u32| {
        let rows = (0..len)
            .map(|j| Row::new(eta[j] + nu.part(j + 1), words[j].clone()))
            .collect();
        SkewTableau::new(n, 1, rows)
    };
    Ok((mk(&pw, alpha.n)?, mk(&qw, beta.n)?))
}

/// Relabels the `i`-cells left to right so that the content becomes all ones.
pub fn standardize_tableau(t: &SkewTableau) -> SkewTableau {
    let total = t.num_cells();
    let mut cells: Vec<(Letter, usize, i64)> = Vec::with_capacity(total);
    for (k, row) in t.rows().iter().enumerate() {
        let r = t.base_row() + k as i64;
        for (off, &l) in row.labels.iter().enumerate() {
            cells.push((l, row.inner + off + 1, r));
        }
    }
    cells.sort();
    let mut out_rows: Vec<Row> = t.rows().to_vec();
    for (s, &(_, c, r)) in cells.iter().enumerate() {
        let row = &mut out_rows[(r - t.base_row()) as usize];
        row.labels[c - row.inner - 1] = s as Letter + 1;
    }
    SkewTableau::raw(total.max(1) as u32, t.base_row(), out_rows).finish()
}

/// The array `𝔞` of the standardization: row of the `s`-th standardized cell.
pub fn standardize_matrix(alpha: &RowCoordMatrix) -> Vec<i64> {
    let mut out = Vec::with_capacity(alpha.total());
    for i in 1..=alpha.n {
        let mut rows: Vec<(i64, usize)> =
            alpha.counts.iter().filter(|(k, _)| k.0 == i).map(|(k, &c)| (k.1, c)).collect();
        rows.sort_by(|a, b| b.0.cmp(&a.0));
        for (r, c) in rows {
            out.extend(std::iter::repeat(r).take(c));
        }
    }
    out
}

/// A standard array as a row-coordinate matrix with one cell per letter.
pub fn array_to_matrix(a: &[i64]) -> RowCoordMatrix {
    let mut m = RowCoordMatrix::zero(a.len() as u32);
    for (s, &r) in a.iter().enumerate() {
        m.add(s as Letter + 1, r, 1);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex_rc() -> (SkewTableau, SkewTableau) {
        let p = SkewTableau::classical(3, &[3, 2, 0], vec![vec![2], vec![1, 3], vec![1, 2]]).unwrap();
        let q = SkewTableau::classical(3, &[3, 2, 0], vec![vec![1], vec![2, 2], vec![1, 3]]).unwrap();
        (p, q)
    }

    #[test]
    fn overlap_examples() {
        assert_eq!(overlap(&[1, 3, 3, 5], &[1, 2, 2, 3, 4]).unwrap(), 2);
        assert_eq!(overlap(&[], &[1, 2]).unwrap(), 0);
        assert_eq!(overlap(&[1, 1], &[2, 2]).unwrap(), 2);
        assert!(overlap(&[2, 1], &[3]).is_err());
    }

    #[test]
    fn kernel_examples() {
        let p = SkewTableau::classical(5, &[5, 2, 0], vec![vec![2, 4], vec![1, 3, 3, 5], vec![1, 2, 5]]).unwrap();
        assert_eq!(kernel(&p).unwrap().parts(), &[2, 1]);
        let (p, q) = ex_rc();
        assert_eq!(kernel_pair(&p, &q).unwrap().parts(), &[1, 1]);
        let straight = SkewTableau::classical(3, &[], vec![vec![1, 1, 2], vec![2, 3]]).unwrap();
        assert!(kernel(&straight).unwrap().is_empty());
    }

    #[test]
    fn kernel_rejects_generalized() {
        let g = SkewTableau::from_rows(3, 0, &[(1, &[1]), (0, &[2])]).unwrap();
        assert!(kernel(&g).is_err());
    }

    #[test]
    fn rc_example() {
        let (p, q) = ex_rc();
        let (a, b, nu) = rc_encode(&p, &q).unwrap();
        assert_eq!(a.dense(1, 3), vec![vec![0, 1, 1], vec![1, 0, 1], vec![0, 1, 0]]);
        assert_eq!(b.dense(1, 3), vec![vec![1, 0, 1], vec![0, 2, 0], vec![0, 0, 1]]);
        assert_eq!(nu.parts(), &[1, 1]);
        assert_eq!(rc_decode(&a, &b, &nu).unwrap(), (p, q));
    }

    #[test]
    fn rc_empty() {
        let z = RowCoordMatrix::zero(2);
        let (p, q) = rc_decode(&z, &z, &Partition::empty()).unwrap();
        assert!(p.is_empty() && q.is_empty());
        assert!(p.rows().is_empty());
    }

    #[test]
    fn rc_unbalanced_rejected() {
        let a = RowCoordMatrix::from_dense(2, 1, &[vec![1]]).unwrap();
        let b = RowCoordMatrix::from_dense(2, 1, &[vec![0, 1]]).unwrap();
        assert!(rc_decode(&a, &b, &Partition::empty()).is_err());
    }

    #[test]
    fn standardization_examples() {
        let (p, _) = ex_rc();
        let s = standardize_tableau(&p);
        assert_eq!(s, SkewTableau::classical(5, &[3, 2, 0], vec![vec![4], vec![2, 5], vec![1, 3]]).unwrap());
        let (a, _, _) = rc_encode(&p, &ex_rc().1).unwrap();
        assert_eq!(standardize_matrix(&a), vec![3, 2, 3, 1, 2]);
        assert_eq!(standardize_tableau(&s), s);
    }
}
