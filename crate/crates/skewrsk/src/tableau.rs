//! Semi-standard tableaux of generalized skew shape.
//!
//! Rows are indexed by integers growing downward. Only a window of rows is
//! stored; rows above the window are fully empty with the width of the top
//! stored row, rows below it have no cells at all.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::partition::Partition;

pub type Letter = u32;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Row {
    /// Number of empty cells at the left of the row.
    pub inner: usize,
    pub labels: Vec<Letter>,
}

impl Row {
    pub fn new(inner: usize, labels: Vec<Letter>) -> Self {
        Row { inner, labels }
    }

    pub fn outer(&self) -> usize {
        self.inner + self.labels.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReadingMode {
    Row,
    Column,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkewTableau {
    n: u32,
    base_row: i64,
    rows: Vec<Row>,
}

impl SkewTableau {
    /// Builds a tableau whose first stored row sits at `base_row`, validating
    /// every shape and filling constraint.
    pub fn new(n: u32, base_row: i64, rows: Vec<Row>) -> Result<Self> {
        let mut t = SkewTableau { n, base_row, rows };
        t.validate()?;
        t.normalize();
        Ok(t)
    }

    pub fn from_rows(n: u32, base_row: i64, rows: &[(usize, &[Letter])]) -> Result<Self> {
        Self::new(
            n,
            base_row,
            rows.iter().map(|(i, l)| Row::new(*i, l.to_vec())).collect(),
        )
    }

    pub fn empty(n: u32) -> Self {
        SkewTableau { n, base_row: 1, rows: Vec::new() }
    }

    /// The tableau of shape `lambda/lambda`, rows starting at 1.
    pub fn empty_of_shape(n: u32, lambda: &Partition) -> Self {
        let rows = lambda.parts().iter().map(|&w| Row::new(w, Vec::new())).collect();
        let mut t = SkewTableau { n, base_row: 1, rows };
        t.normalize();
        t
    }

    /// Classical tableau from an inner partition and row label lists (row 1 first).
    pub fn classical(n: u32, rho: &[usize], labels: Vec<Vec<Letter>>) -> Result<Self> {
        let len = rho.len().max(labels.len());
        let rows = (0..len)
            .map(|k| {
                Row::new(
                    rho.get(k).copied().unwrap_or(0),
                    labels.get(k).cloned().unwrap_or_default(),
                )
            })
            .collect();
        Self::new(n, 1, rows)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn base_row(&self) -> i64 {
        self.base_row
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// Index of the last stored row (`base_row - 1` when nothing is stored).
    pub fn last_row(&self) -> i64 {
        self.base_row + self.rows.len() as i64 - 1
    }

    fn top_width(&self) -> usize {
        self.rows.first().map(|r| r.outer()).unwrap_or(0)
    }

    pub fn row(&self, r: i64) -> Option<&Row> {
        if r < self.base_row {
            return None;
        }
        self.rows.get((r - self.base_row) as usize)
    }

    pub fn inner_at(&self, r: i64) -> usize {
        if r < self.base_row {
            return self.top_width();
        }
        self.row(r).map(|x| x.inner).unwrap_or(0)
    }

    pub fn outer_at(&self, r: i64) -> usize {
        if r < self.base_row {
            return self.top_width();
        }
        self.row(r).map(|x| x.outer()).unwrap_or(0)
    }

    pub fn labels_at(&self, r: i64) -> &[Letter] {
        self.row(r).map(|x| x.labels.as_slice()).unwrap_or(&[])
    }

    /// Label of cell `(c, r)` with columns counted from 1.
    pub fn label_at(&self, c: usize, r: i64) -> Option<Letter> {
        let row = self.row(r)?;
        if c > row.inner && c <= row.outer() {
            Some(row.labels[c - row.inner - 1])
        } else {
            None
        }
    }

    pub fn num_cells(&self) -> usize {
        self.rows.iter().map(|r| r.labels.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.num_cells() == 0
    }

    /// Rows of the tableau lie at positive indices.
    pub fn is_classical(&self) -> bool {
        self.base_row >= 1
    }

    /// First and last stored rows that carry labels.
    pub fn labeled_row_range(&self) -> Option<(i64, i64)> {
        let mut lo = None;
        let mut hi = None;
        for (k, row) in self.rows.iter().enumerate() {
            if !row.labels.is_empty() {
                let r = self.base_row + k as i64;
                lo.get_or_insert(r);
                hi = Some(r);
            }
        }
        Some((lo?, hi?))
    }

    /// Outer shape of a classical tableau.
    pub fn lambda(&self) -> Result<Partition> {
        self.require_classical()?;
        Partition::new(self.rows.iter().map(|r| r.outer()).collect())
    }

    /// Inner shape of a classical tableau.
    pub fn rho(&self) -> Result<Partition> {
        self.require_classical()?;
        Partition::new(self.rows.iter().map(|r| r.inner).collect())
    }

    pub(crate) fn require_classical(&self) -> Result<()> {
        if self.is_classical() {
            Ok(())
        } else {
            invalid("operation requires a classical shape (no rows at non-positive indices)")
        }
    }

    /// `content[i-1]` is the number of `i`-cells.
    pub fn content(&self) -> Vec<usize> {
        let mut c = vec![0; self.n as usize];
        for row in &self.rows {
            for &l in &row.labels {
                c[l as usize - 1] += 1;
            }
        }
        c
    }

    /// Labeled cells of each column, top to bottom, as `(row, label)`.
    pub fn columns(&self) -> BTreeMap<usize, Vec<(i64, Letter)>> {
        let mut cols: BTreeMap<usize, Vec<(i64, Letter)>> = BTreeMap::new();
        for (k, row) in self.rows.iter().enumerate() {
            let r = self.base_row + k as i64;
            for (off, &l) in row.labels.iter().enumerate() {
                cols.entry(row.inner + off + 1).or_default().push((r, l));
            }
        }
        cols
    }

    pub fn reading_word(&self, mode: ReadingMode) -> Vec<Letter> {
        match mode {
            ReadingMode::Row => self.rows.iter().rev().flat_map(|r| r.labels.iter().copied()).collect(),
            ReadingMode::Column => self
                .columns()
                .values()
                .flat_map(|col| col.iter().rev().map(|&(_, l)| l))
                .collect(),
        }
    }

    /// Positions `(row, column)` matching the column reading word order.
    pub(crate) fn column_word_positions(&self) -> Vec<(i64, usize)> {
        self.columns()
            .iter()
            .flat_map(|(&c, col)| col.iter().rev().map(move |&(r, _)| (r, c)))
            .collect()
    }

    pub(crate) fn set_label(&mut self, r: i64, c: usize, l: Letter) {
        let row = &mut self.rows[(r - self.base_row) as usize];
        row.labels[c - row.inner - 1] = l;
    }

    pub fn same_shape(&self, other: &SkewTableau) -> bool {
        let lo = self.base_row.min(other.base_row);
        let hi = self.last_row().max(other.last_row());
        (lo..=hi).all(|r| {
            self.inner_at(r) == other.inner_at(r) && self.outer_at(r) == other.outer_at(r)
        })
    }

    /// Moves every row by `d` (positive moves downward).
    pub fn shifted(&self, d: i64) -> SkewTableau {
        let mut t = self.clone();
        t.base_row += d;
        t.normalize();
        t
    }

    pub fn with_n(&self, n: u32) -> Result<SkewTableau> {
        Self::new(n, self.base_row, self.rows.clone())
    }

    /// Checks shape monotonicity, row weakness, column strictness and the alphabet.
    pub fn validate(&self) -> Result<()> {
        for (k, row) in self.rows.iter().enumerate() {
            let r = self.base_row + k as i64;
            if let Some(&l) = row.labels.iter().find(|&&l| l == 0 || l > self.n) {
                return invalid(format!("letter {l} at row {r} outside 1..={}", self.n));
            }
            if row.labels.windows(2).any(|w| w[0] > w[1]) {
                return invalid(format!("row {r} is not weakly increasing"));
            }
            if k > 0 {
                let up = &self.rows[k - 1];
                if up.outer() < row.outer() || up.inner < row.inner {
                    return invalid(format!("rows {} and {r} break the shape", r - 1));
                }
                for c in (row.inner + 1)..=row.outer() {
                    if c > up.inner {
                        let a = up.labels[c - up.inner - 1];
                        let b = row.labels[c - row.inner - 1];
                        if a >= b {
                            return invalid(format!("column {c} not strict between rows {} and {r}", r - 1));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Rewrites the stored window into the canonical form used for equality.
    pub(crate) fn normalize(&mut self) {
        while self.rows.last().is_some_and(|r| r.outer() == 0) {
            self.rows.pop();
        }
        if self.rows.is_empty() {
            self.base_row = 1;
            return;
        }
        if self.base_row > 1 {
            let w = self.top_width();
            let pad = (self.base_row - 1) as usize;
            let mut rows = vec![Row::new(w, Vec::new()); pad];
            rows.append(&mut self.rows);
            self.rows = rows;
            self.base_row = 1;
        }
        let mut drop = 0;
        while self.base_row + (drop as i64) <= 0 && drop + 1 < self.rows.len() {
            let (a, b) = (&self.rows[drop], &self.rows[drop + 1]);
            if a.labels.is_empty() && a.inner == b.outer() {
                drop += 1;
            } else {
                break;
            }
        }
        if drop > 0 {
            self.rows.drain(..drop);
            self.base_row += drop as i64;
        }
    }

    /// Materializes implicit rows so that rows `lo..=hi` are stored.
    pub(crate) fn ensure_rows(&mut self, lo: i64, hi: i64) {
        if self.rows.is_empty() {
            self.base_row = lo;
        }
        if lo < self.base_row {
            let w = self.top_width();
            let pad = (self.base_row - lo) as usize;
            let mut rows = vec![Row::new(w, Vec::new()); pad];
            rows.append(&mut self.rows);
            self.rows = rows;
            self.base_row = lo;
        }
        while self.last_row() < hi {
            self.rows.push(Row::default());
        }
    }

    pub(crate) fn row_mut(&mut self, r: i64) -> &mut Row {
        self.ensure_rows(r.min(self.base_row), r);
        let idx = (r - self.base_row) as usize;
        &mut self.rows[idx]
    }

    pub(crate) fn raw(n: u32, base_row: i64, rows: Vec<Row>) -> Self {
        SkewTableau { n, base_row, rows }
    }

    pub(crate) fn finish(mut self) -> Self {
        debug_assert!(self.validate().is_ok(), "invalid tableau produced: {self:?}");
        self.normalize();
        self
    }

    /// Text form: `base <r0> n <n>` then `<inner>: labels` per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("base {} n {}\n", self.base_row, self.n);
        for row in &self.rows {
            s.push_str(&format!("{}:", row.inner));
            for l in &row.labels {
                s.push_str(&format!(" {l}"));
            }
            s.push('\n');
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
        let perr = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 4 || toks[0] != "base" || toks[2] != "n" {
            return Err(perr(ln, "expected header `base <r0> n <alphabet>`"));
        }
        let base: i64 = toks[1].parse().map_err(|_| perr(ln, "bad base row"))?;
        let n: u32 = toks[3].parse().map_err(|_| perr(ln, "bad alphabet size"))?;
        let mut rows = Vec::new();
        for (ln, line) in lines {
            let (inner, rest) = line.split_once(':').ok_or_else(|| perr(ln, "expected `<inner>: labels`"))?;
            let inner: usize = inner.trim().parse().map_err(|_| perr(ln, "bad inner count"))?;
            let labels = rest
                .split_whitespace()
                .map(|t| t.parse::<Letter>().map_err(|_| perr(ln, "bad label")))
                .collect::<Result<Vec<_>>>()?;
            rows.push(Row::new(inner, labels));
        }
        Self::new(n, base, rows)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(TableauJson::from(self)).expect("serializable")
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let j: TableauJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
        j.try_into()
    }
}

/// JSON mirror of the text format.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableauJson {
    pub base_row: i64,
    pub inner: Vec<usize>,
    pub rows: Vec<Vec<Letter>>,
    pub n: u32,
}

impl From<&SkewTableau> for TableauJson {
    fn from(t: &SkewTableau) -> Self {
        TableauJson {
            base_row: t.base_row,
            inner: t.rows.iter().map(|r| r.inner).collect(),
            rows: t.rows.iter().map(|r| r.labels.clone()).collect(),
            n: t.n,
        }
    }
}

impl TryFrom<TableauJson> for SkewTableau {
    type Error = Error;
    fn try_from(j: TableauJson) -> Result<Self> {
        if j.inner.len() != j.rows.len() {
            return invalid("inner and rows must have equal length");
        }
        let rows = j.inner.into_iter().zip(j.rows).map(|(i, l)| Row::new(i, l)).collect();
        SkewTableau::new(j.n, j.base_row, rows)
    }
}

impl Serialize for SkewTableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableauJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SkewTableau {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = TableauJson::deserialize(d)?;
        SkewTableau::try_from(j).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for SkewTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.rows.iter().enumerate() {
            write!(f, "{:>4} |", self.base_row + k as i64)?;
            for _ in 0..row.inner {
                write!(f, " .")?;
            }
            for l in &row.labels {
                write!(f, " {l}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reading_example() -> SkewTableau {
        SkewTableau::classical(5, &[3, 1, 0], vec![vec![2, 4], vec![1, 3, 3, 5], vec![1, 2, 5]]).unwrap()
    }

    #[test]
    fn reading_words() {
        let t = reading_example();
        assert_eq!(t.reading_word(ReadingMode::Row), vec![1, 2, 5, 1, 3, 3, 5, 2, 4]);
        assert_eq!(t.reading_word(ReadingMode::Column), vec![1, 2, 1, 5, 3, 3, 2, 5, 4]);
    }

    #[test]
    fn reading_trivial() {
        let e = SkewTableau::empty(3);
        assert!(e.reading_word(ReadingMode::Row).is_empty());
        let one = SkewTableau::classical(3, &[], vec![vec![3]]).unwrap();
        assert_eq!(one.reading_word(ReadingMode::Row), vec![3]);
        assert_eq!(one.reading_word(ReadingMode::Column), vec![3]);
    }

    #[test]
    fn text_and_json_round_trip() {
        let t = reading_example();
        assert_eq!(SkewTableau::parse_text(&t.to_text()).unwrap(), t);
        assert_eq!(SkewTableau::from_json_value(&t.to_json_value()).unwrap(), t);
    }

    #[test]
    fn rejects_bad_columns() {
        assert!(SkewTableau::classical(3, &[], vec![vec![1, 2], vec![1]]).is_err());
        assert!(SkewTableau::classical(3, &[], vec![vec![2, 1]]).is_err());
        assert!(SkewTableau::classical(2, &[], vec![vec![3]]).is_err());
    }

    #[test]
    fn canonical_top_trimming() {
        let a = SkewTableau::from_rows(3, -1, &[(3, &[]), (3, &[]), (1, &[1]), (0, &[2])]).unwrap();
        assert_eq!(a.base_row(), 0);
        let b = SkewTableau::from_rows(3, 3, &[(1, &[1])]).unwrap();
        assert_eq!(b.base_row(), 1);
        assert_eq!(b.rows().len(), 3);
    }
}
