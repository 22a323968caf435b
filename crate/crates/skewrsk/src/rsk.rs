//! Internal insertion, the maps ι₁ and ι₂, the skew RSK map and its dynamics.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::partition::Partition;
use crate::tableau::{Letter, SkewTableau};
use crate::vst::ColumnTensor;

/// A pair of tableaux with identical shape and alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TableauPair {
    #[serde(rename = "P")]
    pub p: SkewTableau,
    #[serde(rename = "Q")]
    pub q: SkewTableau,
}

impl TableauPair {
    pub fn new(p: SkewTableau, q: SkewTableau) -> Result<Self> {
        if p.n() != q.n() {
            return invalid("P and Q must share the alphabet");
        }
        if !p.same_shape(&q) {
            return invalid("P and Q must have the same shape");
        }
        Ok(TableauPair { p, q })
    }

    pub fn n(&self) -> u32 {
        self.p.n()
    }

    pub fn swap(&self) -> TableauPair {
        TableauPair { p: self.q.clone(), q: self.p.clone() }
    }

    pub fn num_cells(&self) -> usize {
        self.p.num_cells()
    }

    pub fn shifted(&self, d: i64) -> TableauPair {
        TableauPair { p: self.p.shifted(d), q: self.q.shifted(d) }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("pair serializes")
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let raw: TableauPair = serde_json::from_value(v.clone()).map_err(|e| Error::Invalid(e.to_string()))?;
        TableauPair::new(raw.p, raw.q)
    }
}

/// One move of a letter from row `boundary - 1` into row `boundary`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Crossing {
    pub step: usize,
    pub boundary: i64,
    pub i: Letter,
    pub j: Letter,
    pub count: usize,
}

/// Successive states of the dynamics and the boundary crossings seen along the way.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynamicsTrace {
    pub steps: Vec<TableauPair>,
    pub crossings: Vec<Crossing>,
}

/// Schensted-bumps `v` into row `r` and below. Returns `(row entered, letter)` per move.
pub(crate) fn bump_into(t: &mut SkewTableau, r: i64, mut v: Letter) -> Vec<(i64, Letter)> {
    let mut path = Vec::new();
    let mut rr = r;
    loop {
        path.push((rr, v));
        let row = t.row_mut(rr);
        match row.labels.iter().position(|&x| x > v) {
            Some(k) => {
                v = std::mem::replace(&mut row.labels[k], v);
                rr += 1;
            }
            None => {
                row.labels.push(v);
                return path;
            }
        }
    }
}

/// Internal insertion at row `r`. Returns the bumping path as `(row entered, letter)`.
pub(crate) fn insert_mut(t: &mut SkewTableau, r: i64) -> Vec<(i64, Letter)> {
    let row = t.row_mut(r);
    row.inner += 1;
    if row.labels.is_empty() {
        return Vec::new();
    }
    let v = row.labels.remove(0);
    bump_into(t, r + 1, v)
}

/// The internal insertion `ℛ_[r]`.
pub fn internal_insert(t: &SkewTableau, r: i64) -> Result<SkewTableau> {
    if !t.labels_at(r).is_empty() && t.inner_at(r - 1) <= t.inner_at(r) {
        return invalid(format!("leftmost cell of row {r} is not a corner"));
    }
    let mut out = t.clone();
    insert_mut(&mut out, r);
    let out = out.finish();
    out.validate()?;
    Ok(out)
}

pub(crate) fn cell_rows(t: &SkewTableau, letter: Letter) -> Vec<i64> {
    let mut rows = Vec::new();
    for (k, row) in t.rows().iter().enumerate() {
        let r = t.base_row() + k as i64;
        rows.extend(row.labels.iter().filter(|&&l| l == letter).map(|_| r));
    }
    rows.sort_unstable_by(|a, b| b.cmp(a));
    rows
}

/// Adds `letter` at the end of every row of `q` whose outer edge lags behind `p`.
pub(crate) fn fill_to_match(q: &mut SkewTableau, p: &SkewTableau, letter: Letter) {
    let lo = p.base_row().min(q.base_row());
    let hi = p.last_row().max(q.last_row());
    for r in lo..=hi {
        let target = p.outer_at(r);
        let cur = q.outer_at(r);
        if target > cur {
            let row = q.row_mut(r);
            row.labels.extend(std::iter::repeat(letter).take(target - cur));
        }
    }
}

fn iota2_traced(pair: &TableauPair, mut log: impl FnMut(i64, Letter)) -> TableauPair {
    let n = pair.n();
    let mut p = pair.p.clone();
    for r in cell_rows(&pair.q, 1) {
        for (rr, v) in insert_mut(&mut p, r) {
            log(rr, v);
        }
    }
    let mut q = pair.q.clone();
    for k in q.base_row()..=q.last_row() {
        let row = q.row_mut(k);
        let ones = row.labels.iter().take_while(|&&l| l == 1).count();
        row.labels.drain(..ones);
        row.inner += ones;
        row.labels.iter_mut().for_each(|l| *l -= 1);
    }
    fill_to_match(&mut q, &p, n);
    TableauPair { p: p.finish(), q: q.finish() }
}

pub fn iota2(pair: &TableauPair) -> TableauPair {
    iota2_traced(pair, |_, _| {})
}

pub fn iota1(pair: &TableauPair) -> TableauPair {
    iota2(&pair.swap()).swap()
}

/// Reverse bumping from the end of row `r`; returns the row whose inner edge moved left.
fn reverse_bump(t: &mut SkewTableau, r: i64) -> i64 {
    // Fix the width of the implicit rows before the pop can change it.
    let lo = t.base_row().min(r) - 1;
    t.ensure_rows(lo, r);
    let mut v = t.row_mut(r).labels.pop().expect("row has a last cell");
    let mut rr = r - 1;
    loop {
        let row = t.row_mut(rr);
        match row.labels.iter().rposition(|&x| x < v) {
            Some(k) => {
                v = std::mem::replace(&mut row.labels[k], v);
                rr -= 1;
            }
            None => {
                row.labels.insert(0, v);
                row.inner -= 1;
                return rr;
            }
        }
    }
}

pub fn iota2_inverse(pair: &TableauPair) -> TableauPair {
    let n = pair.n();
    let mut p = pair.p.clone();
    let mut cells: Vec<(usize, i64)> = Vec::new();
    for (&c, col) in pair.q.columns().iter() {
        cells.extend(col.iter().filter(|x| x.1 == n).map(|x| (c, x.0)));
    }
    cells.sort_unstable_by(|a, b| b.cmp(a));
    for &(_, r) in &cells {
        reverse_bump(&mut p, r);
    }
    let mut q = pair.q.clone();
    let top = q.base_row() - 1;
    q.ensure_rows(top, q.last_row());
    for k in q.base_row()..=q.last_row() {
        let row = q.row_mut(k);
        let ns = row.labels.iter().rev().take_while(|&&l| l == n).count();
        let keep = row.labels.len() - ns;
        row.labels.truncate(keep);
        row.labels.iter_mut().for_each(|l| *l += 1);
    }
    let lo = p.base_row().min(q.base_row());
    let hi = p.last_row().max(q.last_row());
    for r in lo..=hi {
        let target = p.inner_at(r);
        let cur = q.inner_at(r);
        if target < cur {
            let row = q.row_mut(r);
            let add = cur - target;
            row.inner = target;
            row.labels.splice(0..0, std::iter::repeat(1).take(add));
        }
    }
    TableauPair { p: p.finish(), q: q.finish() }
}

pub fn iota1_inverse(pair: &TableauPair) -> TableauPair {
    iota2_inverse(&pair.swap()).swap()
}

/// The skew RSK map for `P` over `n` letters and `Q` over `m` letters sharing the inner shape.
pub fn skew_rsk_general(p: &SkewTableau, q: &SkewTableau) -> Result<(SkewTableau, SkewTableau)> {
    let lo = p.base_row().min(q.base_row());
    let hi = p.last_row().max(q.last_row());
    if (lo..=hi).any(|r| p.inner_at(r) != q.inner_at(r)) {
        return invalid("P and Q must share the inner shape");
    }
    let mut cur = p.clone();
    let rows = p.rows().iter().map(|r| crate::tableau::Row::new(r.outer(), Vec::new())).collect();
    let mut rec = SkewTableau::raw(q.n(), p.base_row(), rows);
    for j in 1..=q.n() {
        for r in cell_rows(q, j) {
            insert_mut(&mut cur, r);
        }
        fill_to_match(&mut rec, &cur, j);
    }
    let (a, b) = (cur.finish(), rec.finish());
    a.validate()?;
    b.validate()?;
    Ok((a, b))
}

pub fn skew_rsk(pair: &TableauPair) -> TableauPair {
    (0..pair.n()).fold(pair.clone(), |x, _| iota2(&x))
}

pub fn skew_rsk_inverse(pair: &TableauPair) -> TableauPair {
    (0..pair.n()).fold(pair.clone(), |x, _| iota2_inverse(&x))
}

/// `RSK^t` for any integer `t`.
pub fn run_dynamics(pair: &TableauPair, t: i64) -> TableauPair {
    let mut x = pair.clone();
    for _ in 0..t.unsigned_abs() {
        x = if t > 0 { skew_rsk(&x) } else { skew_rsk_inverse(&x) };
    }
    x
}

/// One RSK step with every boundary crossing it causes, keyed by `(boundary, i, j)`.
pub(crate) fn rsk_step_crossings(pair: &TableauPair) -> (TableauPair, Vec<(i64, Letter, Letter)>) {
    let mut x = pair.clone();
    let mut out = Vec::new();
    for j in 1..=pair.n() {
        x = iota2_traced(&x, |r, v| out.push((r, v, j)));
    }
    (x, out)
}

/// Runs `steps` forward steps, recording letters of `P` entering row `boundary`
/// (every row when `None`) together with the `Q`-letter whose insertion moved them.
pub fn record_boundary_crossings(pair: &TableauPair, boundary: Option<i64>, steps: usize) -> DynamicsTrace {
    let mut states = vec![pair.clone()];
    let mut crossings = Vec::new();
    for s in 0..steps {
        let (next, cr) = rsk_step_crossings(states.last().expect("nonempty"));
        let mut counts = std::collections::BTreeMap::new();
        for (b, i, j) in cr {
            if boundary.map_or(true, |x| x == b) {
                *counts.entry((b, i, j)).or_insert(0usize) += 1;
            }
        }
        crossings.extend(counts.into_iter().map(|((b, i, j), count)| Crossing { step: s, boundary: b, i, j, count }));
        states.push(next);
    }
    DynamicsTrace { steps: states, crossings }
}

/// Result of running the dynamics until it only translates columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stable {
    pub t: usize,
    pub pair: TableauPair,
    pub mu: Partition,
    pub v: ColumnTensor,
    pub w: ColumnTensor,
}

/// Default step bound for stabilization searches.
pub fn default_cap(pair: &TableauPair) -> usize {
    let span = (pair.p.last_row() - pair.p.base_row() + 1).max(0) as usize;
    4 * (pair.num_cells() + span + pair.p.base_row().unsigned_abs() as usize) + 16
}

fn column_heights(t: &SkewTableau) -> Option<Vec<usize>> {
    let cols = t.columns();
    if cols.keys().copied().ne(1..=cols.len()) {
        return None;
    }
    Some(cols.values().map(|c| c.len()).collect())
}

/// Every column keeps its letters and moves by its height (`dir = ±1`).
fn pure_shift(a: &TableauPair, b: &TableauPair, dir: i64) -> bool {
    let check = |x: &SkewTableau, y: &SkewTableau| {
        let (cx, cy) = (x.columns(), y.columns());
        cx.len() == cy.len()
            && cx.iter().zip(cy.iter()).all(|((c1, col1), (c2, col2))| {
                let h = col1.len() as i64;
                c1 == c2
                    && col1.len() == col2.len()
                    && col1.iter().zip(col2).all(|(u, v)| u.1 == v.1 && v.0 == u.0 + dir * h)
            })
    };
    check(&a.p, &b.p) && check(&a.q, &b.q)
}

fn read_columns(t: &SkewTableau) -> ColumnTensor {
    let cols = t.columns().values().map(|c| c.iter().map(|x| x.1).collect()).collect();
    ColumnTensor::new(t.n(), cols).expect("columns of a tableau are strict")
}

const STABLE_RUN: usize = 2;

fn stabilize(pair: &TableauPair, cap: Option<usize>, forward: bool) -> Result<(usize, TableauPair)> {
    let cap = cap.unwrap_or_else(|| default_cap(pair));
    let step = |x: &TableauPair| if forward { skew_rsk(x) } else { skew_rsk_inverse(x) };
    let dir = if forward { 1 } else { -1 };
    let ordered = |h: &[usize]| {
        h.windows(2).all(|w| if forward { w[0] >= w[1] } else { w[0] <= w[1] })
    };
    let mut window = vec![pair.clone()];
    for _ in 0..STABLE_RUN {
        let next = step(window.last().expect("nonempty"));
        window.push(next);
    }
    let mut t = 0;
    loop {
        // Backward-stable pairs may keep fully empty columns at the left.
        let heights = if forward {
            column_heights(&window[0].p)
        } else {
            Some(window[0].p.columns().values().map(|c| c.len()).collect())
        };
        let good = heights.is_some_and(|h| ordered(&h))
            && window.windows(2).all(|w| pure_shift(&w[0], &w[1], dir));
        if good {
            return Ok((t, window.swap_remove(0)));
        }
        if t >= cap {
            return Err(Error::CapExceeded(cap));
        }
        window.remove(0);
        let next = step(window.last().expect("nonempty"));
        window.push(next);
        t += 1;
    }
}

/// Runs forward until the pair is RSK-stable.
pub fn stabilize_forward(pair: &TableauPair, cap: Option<usize>) -> Result<Stable> {
    let (t, st) = stabilize(pair, cap, true)?;
    let heights = column_heights(&st.p).unwrap_or_default();
    let mu = Partition::new(heights).expect("stable heights decrease").transpose();
    let v = read_columns(&st.p);
    let w = read_columns(&st.q);
    Ok(Stable { t, pair: st, mu, v, w })
}

/// Runs backward until the pair is RSK⁻¹-stable; columns are read left to right.
pub fn stabilize_backward(pair: &TableauPair, cap: Option<usize>) -> Result<(usize, TableauPair, ColumnTensor, ColumnTensor)> {
    let (t, st) = stabilize(pair, cap, false)?;
    let v = read_columns(&st.p);
    let w = read_columns(&st.q);
    Ok((t, st, v, w))
}

/// The projection `Φ(P, Q) = (V, W)`.
pub fn phi(pair: &TableauPair) -> Result<(ColumnTensor, ColumnTensor)> {
    let s = stabilize_forward(pair, None)?;
    Ok((s.v, s.w))
}
