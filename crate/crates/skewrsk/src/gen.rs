//! Seeded random instances for tests, benches and the CLI.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::biword::MatrixBar;
use crate::partition::Partition;
use crate::rsk::{run_dynamics, TableauPair};
use crate::tableau::{Letter, Row, SkewTableau};
use crate::vst::ColumnTensor;

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A partition with at most `max_size` cells and parts at most `max_part`.
pub fn partition<R: Rng>(rng: &mut R, max_size: usize, max_part: usize, max_len: usize) -> Partition {
    let mut parts = Vec::new();
    let mut left = max_size;
    let mut cap = max_part;
    while left > 0 && parts.len() < max_len && cap > 0 {
        let p = rng.gen_range(0..=cap.min(left));
        if p == 0 {
            break;
        }
        parts.push(p);
        left -= p;
        cap = p;
    }
    Partition::new(parts).expect("built decreasing")
}

/// Random column-strict filling of a straight shape with letters in `1..=n`.
pub fn vst<R: Rng>(rng: &mut R, n: u32, mu: &Partition) -> ColumnTensor {
    let columns = mu
        .transpose()
        .parts()
        .iter()
        .map(|&h| {
            let mut all: Vec<Letter> = (1..=n).collect();
            all.shuffle(rng);
            let mut c = all[..h].to_vec();
            c.sort_unstable();
            c
        })
        .collect();
    ColumnTensor { n, columns }
}

/// Random semi-standard filling of `λ/ρ`; `None` if the greedy fill got stuck.
fn try_fill<R: Rng>(rng: &mut R, n: u32, lambda: &Partition, rho: &Partition) -> Option<SkewTableau> {
    let mut rows: Vec<Row> = Vec::new();
    for r in 0..lambda.len() {
        let inner = rho.part(r + 1);
        let outer = lambda.part(r + 1);
        let mut labels: Vec<Letter> = Vec::with_capacity(outer - inner);
        for c in inner..outer {
            let left = labels.last().copied().unwrap_or(1);
            let above = if r > 0 && c >= rho.part(r) {
                let up = &rows[r - 1];
                up.labels[c - up.inner] + 1
            } else {
                1
            };
            let lo = left.max(above);
            if lo > n {
                return None;
            }
            // Bias towards small letters so deep columns still fit.
            let hi = (lo + 2).min(n);
            labels.push(rng.gen_range(lo..=hi));
        }
        rows.push(Row::new(inner, labels));
    }
    SkewTableau::new(n, 1, rows).ok()
}

pub fn skew_shape<R: Rng>(rng: &mut R, max_cells: usize, max_rows: usize) -> (Partition, Partition) {
    loop {
        let lambda = partition(rng, max_cells + 4, max_cells.max(1), max_rows);
        let rho_parts: Vec<usize> = lambda.parts().iter().map(|&l| rng.gen_range(0..=l)).collect();
        let rho = Partition::from_unsorted(rho_parts);
        if !lambda.contains(&rho) {
            continue;
        }
        let cells = lambda.size() - rho.size();
        if cells <= max_cells {
            return (lambda, rho);
        }
    }
}

/// A random pair of classical skew tableaux of equal shape with at most
/// `max_cells` labeled cells, letters in `1..=n`.
pub fn classical_pair<R: Rng>(rng: &mut R, n: u32, max_cells: usize) -> TableauPair {
    loop {
        let (lambda, rho) = skew_shape(rng, max_cells, n as usize + 2);
        let (Some(p), Some(q)) = (try_fill(rng, n, &lambda, &rho), try_fill(rng, n, &lambda, &rho)) else {
            continue;
        };
        return TableauPair::new(p, q).expect("same shape");
    }
}

/// A classical pair moved by a few dynamics steps in either direction.
pub fn pair<R: Rng>(rng: &mut R, n: u32, max_cells: usize) -> TableauPair {
    let p = classical_pair(rng, n, max_cells);
    let t = rng.gen_range(-2..=2);
    run_dynamics(&p, t)
}

/// A random matrix with `count` units and weights in `wmin..=wmax`.
pub fn matrix<R: Rng>(rng: &mut R, n: u32, count: usize, wmin: i64, wmax: i64) -> MatrixBar {
    let mut m = MatrixBar::zero(n);
    for _ in 0..count {
        m.add(rng.gen_range(1..=n), rng.gen_range(1..=n), rng.gen_range(wmin..=wmax), 1);
    }
    m
}
