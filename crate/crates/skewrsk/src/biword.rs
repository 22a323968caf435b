//! Weighted biwords, their matrix form and points on the twisted cylinder.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::tableau::Letter;

/// One column `(q, p, w)` of a weighted biword.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Entry {
    pub q: Letter,
    pub p: Letter,
    pub w: i64,
}

impl Entry {
    pub fn new(q: Letter, p: Letter, w: i64) -> Self {
        Entry { q, p, w }
    }
}

/// A finite multiset of triples `(q, p, w)` with letters in `1..=n`, kept in
/// canonical order: `(q, p)` increasing, ties by decreasing weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightedBiword {
    n: u32,
    entries: Vec<Entry>,
}

fn canonical_key(e: &Entry) -> (Letter, Letter, std::cmp::Reverse<i64>) {
    (e.q, e.p, std::cmp::Reverse(e.w))
}

impl WeightedBiword {
    pub fn new(n: u32, mut entries: Vec<Entry>) -> Result<Self> {
        if let Some(e) = entries.iter().find(|e| e.p == 0 || e.q == 0 || e.p > n || e.q > n) {
            return invalid(format!("entry {e:?} has letters outside 1..={n}"));
        }
        entries.sort_by_key(canonical_key);
        Ok(WeightedBiword { n, entries })
    }

    pub fn from_triples(n: u32, triples: &[(Letter, Letter, i64)]) -> Result<Self> {
        Self::new(n, triples.iter().map(|&(q, p, w)| Entry::new(q, p, w)).collect())
    }

    pub fn empty(n: u32) -> Self {
        WeightedBiword { n, entries: Vec::new() }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Timetable order: weight decreasing, then `q` and `p` increasing.
    pub fn timetable_order(&self) -> Vec<Entry> {
        let mut v = self.entries.clone();
        v.sort_by_key(|e| (std::cmp::Reverse(e.w), e.q, e.p));
        v
    }

    /// Swaps the `p` and `q` rows.
    pub fn invert(&self) -> WeightedBiword {
        let entries = self.entries.iter().map(|e| Entry::new(e.p, e.q, e.w)).collect();
        WeightedBiword::new(self.n, entries).expect("same alphabet")
    }

    pub fn disjoint_union(&self, other: &WeightedBiword) -> Result<WeightedBiword> {
        if self.n != other.n {
            return invalid("alphabet sizes differ");
        }
        let mut e = self.entries.clone();
        e.extend_from_slice(&other.entries);
        WeightedBiword::new(self.n, e)
    }

    pub fn wt(&self) -> i64 {
        self.entries.iter().map(|e| e.w).sum()
    }

    /// Number of entries with `p = q`.
    pub fn fixed(&self) -> usize {
        self.entries.iter().filter(|e| e.p == e.q).count()
    }

    pub fn min_weight(&self) -> Option<i64> {
        self.entries.iter().map(|e| e.w).min()
    }

    pub fn max_weight(&self) -> Option<i64> {
        self.entries.iter().map(|e| e.w).max()
    }

    /// Adds `s` to every weight.
    pub fn shift_weights(&self, s: i64) -> WeightedBiword {
        WeightedBiword {
            n: self.n,
            entries: self.entries.iter().map(|e| Entry::new(e.q, e.p, e.w + s)).collect(),
        }
    }

    pub fn to_matrix(&self) -> MatrixBar {
        let mut m = MatrixBar::zero(self.n);
        for e in &self.entries {
            *m.support.entry((e.p, e.q, e.w)).or_insert(0) += 1;
        }
        m
    }

    pub fn from_matrix(m: &MatrixBar) -> WeightedBiword {
        let mut entries = Vec::new();
        for (&(i, j, k), &c) in &m.support {
            for _ in 0..c {
                entries.push(Entry::new(j, i, k));
            }
        }
        WeightedBiword::new(m.n, entries).expect("matrix letters are in range")
    }

    /// Points `(q, p − n·w)` on the cylinder, in canonical entry order.
    pub fn cylinder_points(&self) -> Vec<CylinderPoint> {
        self.entries
            .iter()
            .map(|e| CylinderPoint::new(e.q as i64, e.p as i64 - self.n as i64 * e.w, self.n))
            .collect()
    }

    /// The `p` letters and `q` letters as content vectors.
    pub fn contents(&self) -> (Vec<usize>, Vec<usize>) {
        let mut cp = vec![0; self.n as usize];
        let mut cq = vec![0; self.n as usize];
        for e in &self.entries {
            cp[e.p as usize - 1] += 1;
            cq[e.q as usize - 1] += 1;
        }
        (cp, cq)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.entries
                .iter()
                .map(|e| serde_json::json!([e.q, e.p, e.w]))
                .collect(),
        )
    }

    pub fn from_json_value(n: u32, v: &serde_json::Value) -> Result<Self> {
        let triples: Vec<(Letter, Letter, i64)> =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
        Self::from_triples(n, &triples)
    }
}

/// Sparse counts `M̄_{i,j}(k)` = number of entries with `p = i`, `q = j`, `w = k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixBar {
    pub n: u32,
    support: BTreeMap<(Letter, Letter, i64), u64>,
}

impl MatrixBar {
    pub fn zero(n: u32) -> Self {
        MatrixBar { n, support: BTreeMap::new() }
    }

    pub fn from_entries(n: u32, entries: &[(Letter, Letter, i64, u64)]) -> Result<Self> {
        let mut m = MatrixBar::zero(n);
        for &(i, j, k, c) in entries {
            if i == 0 || j == 0 || i > n || j > n {
                return invalid(format!("index ({i},{j}) outside 1..={n}"));
            }
            if c > 0 {
                *m.support.entry((i, j, k)).or_insert(0) += c;
            }
        }
        Ok(m)
    }

    pub fn get(&self, i: Letter, j: Letter, k: i64) -> u64 {
        self.support.get(&(i, j, k)).copied().unwrap_or(0)
    }

    pub fn support(&self) -> &BTreeMap<(Letter, Letter, i64), u64> {
        &self.support
    }

    pub fn add(&mut self, i: Letter, j: Letter, k: i64, c: u64) {
        if c > 0 {
            *self.support.entry((i, j, k)).or_insert(0) += c;
        }
    }

    /// Removes one unit at `(i, j, k)`; returns false if it was zero.
    pub fn remove_one(&mut self, i: Letter, j: Letter, k: i64) -> bool {
        match self.support.get_mut(&(i, j, k)) {
            Some(c) => {
                *c -= 1;
                if *c == 0 {
                    self.support.remove(&(i, j, k));
                }
                true
            }
            None => false,
        }
    }

    pub fn total(&self) -> u64 {
        self.support.values().sum()
    }

    pub fn wt(&self) -> i64 {
        self.support.iter().map(|(&(_, _, k), &c)| k * c as i64).sum()
    }

    pub fn trace(&self) -> u64 {
        self.support.iter().filter(|(&(i, j, _), _)| i == j).map(|(_, &c)| c).sum()
    }

    /// Membership in the non-negative cone.
    pub fn is_nonnegative(&self) -> bool {
        self.support.keys().all(|&(_, _, k)| k >= 0)
    }

    pub fn transpose(&self) -> MatrixBar {
        MatrixBar { n: self.n, support: self.support.iter().map(|(&(i, j, k), &c)| ((j, i, k), c)).collect() }
    }

    pub fn shift_weights(&self, s: i64) -> MatrixBar {
        MatrixBar { n: self.n, support: self.support.iter().map(|(&(i, j, k), &c)| ((i, j, k + s), c)).collect() }
    }

    pub fn sum(&self, other: &MatrixBar) -> MatrixBar {
        let mut m = self.clone();
        for (&(i, j, k), &c) in &other.support {
            m.add(i, j, k, c);
        }
        m
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "m": self.n,
            "entries": self.support.iter().map(|(&(i, j, k), &c)| serde_json::json!([i, j, k, c])).collect::<Vec<_>>(),
        })
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct J {
            n: u32,
            m: Option<u32>,
            entries: Vec<(Letter, Letter, i64, u64)>,
        }
        let j: J = serde_json::from_value(v.clone()).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
        if j.m.is_some_and(|m| m != j.n) {
            return invalid("only square matrices (m = n) are supported");
        }
        MatrixBar::from_entries(j.n, &j.entries)
    }
}

/// A point of `ℤ²/((j,i) ∼ (j+kn, i−kn))`, stored with column in `1..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CylinderPoint {
    pub j: i64,
    pub v: i64,
    pub n: u32,
}

impl CylinderPoint {
    pub fn new(j: i64, v: i64, n: u32) -> Self {
        let nn = n as i64;
        let k = (j - 1).div_euclid(nn);
        CylinderPoint { j: j - k * nn, v: v + k * nn, n }
    }

    pub fn canonical(self) -> Self {
        CylinderPoint::new(self.j, self.v, self.n)
    }

    /// Back to `(q, p, w)`.
    pub fn to_entry(self) -> Entry {
        let nn = self.n as i64;
        let w = -(self.v - 1).div_euclid(nn);
        Entry::new(self.j as Letter, (self.v + nn * w) as Letter, w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> WeightedBiword {
        WeightedBiword::from_triples(
            4,
            &[(1, 2, 0), (1, 3, 2), (1, 3, 1), (1, 3, 1), (2, 1, 0), (3, 3, 1), (3, 4, 2), (3, 4, -1), (4, 2, 1)],
        )
        .unwrap()
    }

    #[test]
    fn canonical_and_timetable() {
        let b = example();
        let canon: Vec<_> = b.entries().iter().map(|e| (e.q, e.p, e.w)).collect();
        assert_eq!(
            canon,
            vec![(1, 2, 0), (1, 3, 2), (1, 3, 1), (1, 3, 1), (2, 1, 0), (3, 3, 1), (3, 4, 2), (3, 4, -1), (4, 2, 1)]
        );
        let tt: Vec<_> = b.timetable_order().iter().map(|e| (e.q, e.p, e.w)).collect();
        assert_eq!(
            tt,
            vec![(1, 3, 2), (3, 4, 2), (1, 3, 1), (1, 3, 1), (3, 3, 1), (4, 2, 1), (1, 2, 0), (2, 1, 0), (3, 4, -1)]
        );
    }

    #[test]
    fn views_round_trip() {
        let b = example();
        assert_eq!(WeightedBiword::from_matrix(&b.to_matrix()), b);
        assert_eq!(b.invert().invert(), b);
        assert_eq!(b.to_matrix().wt(), b.wt());
        let pts: Vec<Entry> = b.cylinder_points().into_iter().map(|c| c.to_entry()).collect();
        let back = WeightedBiword::new(4, pts).unwrap();
        assert_eq!(back, b);
        let m = b.to_matrix();
        assert_eq!(MatrixBar::from_json_value(&m.to_json_value()).unwrap(), m);
        assert_eq!(WeightedBiword::from_json_value(4, &b.to_json_value()).unwrap(), b);
    }

    #[test]
    fn empty_views() {
        let e = WeightedBiword::empty(3);
        assert_eq!(e.to_matrix(), MatrixBar::zero(3));
        assert!(e.cylinder_points().is_empty());
        assert!(e.timetable_order().is_empty());
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(WeightedBiword::from_triples(2, &[(3, 1, 0)]).is_err());
        assert!(WeightedBiword::from_triples(2, &[(1, 0, 0)]).is_err());
    }

    #[test]
    fn cylinder_canonical_idempotent() {
        let c = CylinderPoint::new(7, -3, 3);
        assert_eq!(c.j, 1);
        assert_eq!(c.v, 3);
        assert_eq!(c.canonical(), c);
    }
}
