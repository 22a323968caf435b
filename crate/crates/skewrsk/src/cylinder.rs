//! Edge local rules, the skew RS/RSK maps of arrays and matrices, edge
//! configurations on the twisted cylinder, the Sagan–Stanley correspondence
//! and the Viennot map.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::biword::MatrixBar;
use crate::error::{invalid, Error, Result};
use crate::partition::Partition;
use crate::rowcoord::{kernel_pair, RowCoordMatrix};
use crate::rsk::{bump_into, cell_rows, default_cap, fill_to_match, insert_mut, rsk_step_crossings, run_dynamics};
use crate::rsk::TableauPair;
use crate::tableau::{Letter, Row, SkewTableau};

/// A `V`-valued edge: number of lines of each color.
pub type Colors = BTreeMap<i64, u64>;

/// Integer local rule: lines of equal color fuse and gain one unit.
pub fn local_rule_z(w: i64, s: i64) -> (i64, i64) {
    if w == s {
        (s + 1, s + 1)
    } else {
        (w, s)
    }
}

/// Multi-line local rule, color by color.
pub fn local_rule_v(w: &Colors, s: &Colors) -> (Colors, Colors) {
    let get = |c: &Colors, k: i64| c.get(&k).copied().unwrap_or(0);
    let mut keys: Vec<i64> = w.keys().chain(s.keys()).flat_map(|&k| [k, k + 1]).collect();
    keys.sort_unstable();
    keys.dedup();
    let (mut e, mut n) = (Colors::new(), Colors::new());
    for k in keys {
        let m = get(w, k).min(get(s, k));
        let m1 = get(w, k - 1).min(get(s, k - 1));
        let ek = get(w, k) - m + m1;
        let nk = get(s, k) - m + m1;
        if ek > 0 {
            e.insert(k, ek);
        }
        if nk > 0 {
            n.insert(k, nk);
        }
    }
    (e, n)
}

fn single(k: i64) -> Colors {
    Colors::from([(k, 1)])
}

fn only(c: &Colors) -> i64 {
    *c.keys().next().expect("one line per edge")
}

/// Edge values on a grid of `cols × rows` faces; column `x` of the grid is face column `first_col + x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeConfig {
    pub rows: usize,
    pub cols: usize,
    pub first_col: i64,
    w: Vec<Colors>,
    s: Vec<Colors>,
    e: Vec<Colors>,
    n: Vec<Colors>,
}

impl EdgeConfig {
    fn idx(&self, j: i64, i: usize) -> usize {
        let x = (j - self.first_col) as usize;
        assert!(x < self.cols && (1..=self.rows).contains(&i), "face ({j},{i}) outside window");
        x * self.rows + (i - 1)
    }

    /// Solves the local rules column by column. `south(x, cfg)` supplies the south
    /// input of grid column `x` and may read columns already filled.
    fn solve(
        rows: usize,
        cols: usize,
        first_col: i64,
        west: Vec<Colors>,
        mut south: impl FnMut(usize, &EdgeConfig) -> Colors,
    ) -> EdgeConfig {
        let empty = vec![Colors::new(); rows * cols];
        let mut cfg = EdgeConfig { rows, cols, first_col, w: empty.clone(), s: empty.clone(), e: empty.clone(), n: empty };
        let mut west = west;
        for x in 0..cols {
            let mut s = south(x, &cfg);
            for i in 0..rows {
                let k = x * rows + i;
                let (e, n) = local_rule_v(&west[i], &s);
                cfg.w[k] = std::mem::take(&mut west[i]);
                cfg.s[k] = s;
                west[i] = e.clone();
                cfg.e[k] = e;
                s = n.clone();
                cfg.n[k] = n;
            }
        }
        cfg
    }

    pub fn west(&self, j: i64, i: usize) -> &Colors {
        &self.w[self.idx(j, i)]
    }

    pub fn south(&self, j: i64, i: usize) -> &Colors {
        &self.s[self.idx(j, i)]
    }

    pub fn east(&self, j: i64, i: usize) -> &Colors {
        &self.e[self.idx(j, i)]
    }

    pub fn north(&self, j: i64, i: usize) -> &Colors {
        &self.n[self.idx(j, i)]
    }

    /// `N_k(c) ∧ E_k(c)` at face `c`.
    pub fn bullets(&self, j: i64, i: usize, k: i64) -> u64 {
        let x = self.idx(j, i);
        let g = |c: &Colors| c.get(&k).copied().unwrap_or(0);
        g(&self.n[x]).min(g(&self.e[x]))
    }

    /// Checks adjacency and the local rules on every face.
    pub fn is_admissible(&self) -> bool {
        (0..self.cols * self.rows).all(|k| {
            let (e, n) = local_rule_v(&self.w[k], &self.s[k]);
            let inner_ok = e == self.e[k] && n == self.n[k];
            let i = k % self.rows;
            let east_ok = k + self.rows >= self.w.len() || self.w[k + self.rows] == self.e[k];
            let north_ok = i + 1 >= self.rows || self.s[k + 1] == self.n[k];
            inner_ok && east_ok && north_ok
        })
    }
}

fn matrix_rows(m: &RowCoordMatrix) -> Vec<Colors> {
    let mut out = vec![Colors::new(); m.n as usize];
    for (&(i, r), &c) in m.counts() {
        out[i as usize - 1].insert(r, c as u64);
    }
    out
}

fn colors_to_matrix(n: u32, rows: &[Colors]) -> RowCoordMatrix {
    let mut m = RowCoordMatrix::zero(n);
    for (i, c) in rows.iter().enumerate() {
        for (&r, &k) in c {
            m.add(i as Letter + 1, r, k as usize);
        }
    }
    m
}

/// Output of the skew RS map of arrays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsArrays {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    /// Faces `(j, i)` where a line of color `k` is born, keyed by `k`.
    pub bullets: BTreeMap<i64, Vec<(usize, usize)>>,
}

/// The skew RS map of arrays on the `b.len() × a.len()` rectangle.
pub fn rs_map_arrays(a: &[i64], b: &[i64]) -> RsArrays {
    let west: Vec<Colors> = a.iter().map(|&x| single(x)).collect();
    let cfg = EdgeConfig::solve(a.len(), b.len(), 1, west, |x, _| single(b[x]));
    let mut bullets: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
    for j in 1..=b.len() {
        for i in 1..=a.len() {
            let (e, n) = (only(cfg.east(j as i64, i)), only(cfg.north(j as i64, i)));
            if e == n {
                bullets.entry(e).or_default().push((j, i));
            }
        }
    }
    RsArrays {
        a: (1..=a.len()).map(|i| only(cfg.east(b.len() as i64, i))).collect(),
        b: (1..=b.len()).map(|j| only(cfg.north(j as i64, a.len()))).collect(),
        bullets,
    }
}

/// Output of the skew RSK map of matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RskMatrices {
    pub alpha: RowCoordMatrix,
    pub beta: RowCoordMatrix,
    /// `M^(k)(j, i)` keyed by `(k, j, i)`.
    pub bullets: BTreeMap<(i64, usize, usize), u64>,
    pub config: EdgeConfig,
}

/// The skew RSK map of a pair of row-coordinate matrices (`α` over `n` letters, `β` over `m`).
pub fn rsk_map_matrices(alpha: &RowCoordMatrix, beta: &RowCoordMatrix) -> RskMatrices {
    let (n, m) = (alpha.n as usize, beta.n as usize);
    let south = matrix_rows(beta);
    let cfg = EdgeConfig::solve(n, m, 1, matrix_rows(alpha), |x, _| south[x].clone());
    let mut bullets = BTreeMap::new();
    for j in 1..=m {
        for i in 1..=n {
            let (e, nn) = (cfg.east(j as i64, i), cfg.north(j as i64, i));
            for (&k, &c) in e {
                let b = c.min(nn.get(&k).copied().unwrap_or(0));
                if b > 0 {
                    bullets.insert((k, j, i), b);
                }
            }
        }
    }
    let east: Vec<Colors> = (1..=n).map(|i| cfg.east(m as i64, i).clone()).collect();
    let north: Vec<Colors> = (1..=m).map(|j| cfg.north(j as i64, n).clone()).collect();
    RskMatrices { alpha: colors_to_matrix(alpha.n, &east), beta: colors_to_matrix(beta.n, &north), bullets, config: cfg }
}

/// `ι₂` on a balanced pair of matrices.
pub fn iota2_matrices(alpha: &RowCoordMatrix, beta: &RowCoordMatrix) -> (RowCoordMatrix, RowCoordMatrix) {
    let n = alpha.n as usize;
    let b = matrix_rows(beta);
    let cfg = EdgeConfig::solve(n, 1, 1, matrix_rows(alpha), |_, _| b[0].clone());
    let a2: Vec<Colors> = (1..=n).map(|i| cfg.east(1, i).clone()).collect();
    let mut b2: Vec<Colors> = b[1..].to_vec();
    b2.push(cfg.north(1, n).clone());
    (colors_to_matrix(alpha.n, &a2), colors_to_matrix(beta.n, &b2))
}

pub fn iota1_matrices(alpha: &RowCoordMatrix, beta: &RowCoordMatrix) -> (RowCoordMatrix, RowCoordMatrix) {
    let (b, a) = iota2_matrices(beta, alpha);
    (a, b)
}

/// Window of the cylinder configuration of `(α, β)` covering `steps` RSK steps.
///
/// Uses the horizontal strip with rows `1..=n`. Face column `t·n + j` holds the
/// step from time `t` to `t + 1`, where time 1 carries `(α, β)` at `start = 1`;
/// `start` selects the first time represented.
pub fn build_edge_config(alpha: &RowCoordMatrix, beta: &RowCoordMatrix, start: i64, steps: usize) -> Result<EdgeConfig> {
    if alpha.n != beta.n {
        return invalid("α and β must share the alphabet");
    }
    if !crate::rowcoord::balanced(alpha, beta) {
        return invalid("(α, β) is not balanced");
    }
    let n = alpha.n as usize;
    let b0 = matrix_rows(beta);
    let first_col = start * n as i64 + 1;
    Ok(EdgeConfig::solve(n, steps * n, first_col, matrix_rows(alpha), |x, cfg| {
        if x < n {
            b0[x].clone()
        } else {
            cfg.n[(x - n) * n + (n - 1)].clone()
        }
    }))
}

/// Reads `M̄^(t)` off a window: bullets of color `t` mapped back to matrix entries.
pub fn bullets_to_matrix(cfg: &EdgeConfig, color: i64) -> MatrixBar {
    let n = cfg.rows as i64;
    let mut m = MatrixBar::zero(cfg.rows as u32);
    for x in 0..cfg.cols as i64 {
        let col = cfg.first_col + x;
        let t = (col - 1).div_euclid(n);
        let j = col - t * n;
        for i in 1..=cfg.rows {
            let b = cfg.bullets(col, i, color);
            if b > 0 {
                m.add(i as Letter, j as Letter, -t, b);
            }
        }
    }
    m
}

fn all_at_most(pair: &TableauPair, r: i64) -> bool {
    pair.p.labeled_row_range().map_or(true, |(_, hi)| hi <= r)
}

fn all_at_least(pair: &TableauPair, r: i64) -> bool {
    pair.p.labeled_row_range().map_or(true, |(lo, _)| lo >= r)
}

/// Sagan–Stanley image of a pair: `(M̄, ν)`; generalized pairs get `ν = ∅`.
pub fn ss_backward(pair: &TableauPair, cap: Option<usize>) -> Result<(MatrixBar, Partition)> {
    let cap = cap.unwrap_or_else(|| default_cap(pair));
    let nu = if pair.p.is_classical() { kernel_pair(&pair.p, &pair.q)? } else { Partition::empty() };
    let mut x = pair.clone();
    let mut back = 0i64;
    while !all_at_most(&x, 0) {
        if back as usize >= cap {
            return Err(Error::CapExceeded(cap));
        }
        x = crate::rsk::skew_rsk_inverse(&x);
        back += 1;
    }
    // `x` is the state at time `1 - back`; the step leaving time `a` has weight `-a`.
    let mut m = MatrixBar::zero(pair.n());
    let mut a = 1 - back;
    let mut fwd = 0usize;
    while !all_at_least(&x, 1) {
        if fwd >= cap + back as usize {
            return Err(Error::CapExceeded(cap));
        }
        let (next, cr) = rsk_step_crossings(&x);
        for (row, i, j) in cr {
            if row == 1 {
                m.add(i, j, -a, 1);
            }
        }
        x = next;
        a += 1;
        fwd += 1;
    }
    Ok((m, nu))
}

/// Inverse of [`ss_backward`] on non-negatively weighted matrices.
pub fn ss_forward(m: &MatrixBar, nu: &Partition) -> Result<TableauPair> {
    if !m.is_nonnegative() {
        return invalid("ss_forward needs non-negative weights");
    }
    let n = m.n;
    let mut p = SkewTableau::empty_of_shape(n, nu);
    let mut q = p.clone();
    let wmax = m.support().keys().map(|k| k.2).max();
    if let Some(wmax) = wmax {
        for w in (0..=wmax).rev() {
            let mut ext: BTreeMap<Letter, Vec<Letter>> = BTreeMap::new();
            for (&(i, j, k), &c) in m.support() {
                if k == w {
                    ext.entry(j).or_default().extend(std::iter::repeat(i).take(c as usize));
                }
            }
            let mut cur = p.clone();
            let rows = p.rows().iter().map(|r| Row::new(r.outer(), Vec::new())).collect();
            let mut rec = SkewTableau::raw(n, p.base_row(), rows);
            for j in 1..=n {
                for r in cell_rows(&q, j) {
                    insert_mut(&mut cur, r);
                }
                for &i in ext.get(&j).map(|v| v.as_slice()).unwrap_or(&[]) {
                    bump_into(&mut cur, 1, i);
                }
                fill_to_match(&mut rec, &cur, j);
            }
            p = cur.finish();
            q = rec.finish();
        }
    }
    TableauPair::new(p, q)
}

/// Pair with Sagan–Stanley image `M̄` for arbitrary weights (kernel convention `∅`).
pub fn ss_forward_general(m: &MatrixBar) -> Result<TableauPair> {
    let s = m.support().keys().map(|k| k.2).min().map_or(0, |w| (-w).max(0));
    let base = ss_forward(&m.shift_weights(s), &Partition::empty())?;
    Ok(run_dynamics(&base, -s))
}

/// The Viennot map.
pub fn viennot_map(m: &MatrixBar) -> Result<MatrixBar> {
    let x = ss_forward_general(m)?;
    Ok(ss_backward(&x.shifted(-1), None)?.0)
}

pub fn viennot_inverse(m: &MatrixBar) -> Result<MatrixBar> {
    let x = ss_forward_general(m)?;
    Ok(ss_backward(&x.shifted(1), None)?.0)
}

/// `V^t(M̄)` for any integer `t`.
pub fn viennot_dynamics(m: &MatrixBar, t: i64) -> Result<MatrixBar> {
    let x = ss_forward_general(m)?;
    Ok(ss_backward(&x.shifted(-t), None)?.0)
}
