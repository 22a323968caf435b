//! Combinatorial R-matrix on single columns, energies and the shape-reversing composite.

use crate::crystal::{leading_map, DemazureTree};
use crate::tableau::Letter;
use crate::vst::ColumnTensor;

/// `R(b₁ ⊗ b₂) = b̃₂ ⊗ b̃₁` together with the energy `H(b₁ ⊗ b₂)`.
///
/// The first output factor has the height of `b₂`, the second that of `b₁`.
pub fn combinatorial_r(b1: &[Letter], b2: &[Letter]) -> (Vec<Letter>, Vec<Letter>, usize) {
    // (letter, opening?) in increasing order, b₁ first on ties.
    let mut word: Vec<(Letter, bool)> = Vec::with_capacity(b1.len() + b2.len());
    let (mut x, mut y) = (0, 0);
    while x < b1.len() || y < b2.len() {
        if y == b2.len() || (x < b1.len() && b1[x] <= b2[y]) {
            word.push((b1[x], true));
            x += 1;
        } else {
            word.push((b2[y], false));
            y += 1;
        }
    }
    let mut open: Vec<usize> = Vec::new();
    let mut close: Vec<usize> = Vec::new();
    for (k, &(_, o)) in word.iter().enumerate() {
        if o {
            open.push(k);
        } else if open.pop().is_none() {
            close.push(k);
        }
    }
    let h = close.len().min(open.len());
    let mut flip = vec![false; word.len()];
    for &k in &close[h..] {
        flip[k] = true;
    }
    for &k in &open[..open.len() - h] {
        flip[k] = true;
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (k, &(l, o)) in word.iter().enumerate() {
        if o != flip[k] {
            left.push(l);
        } else {
            right.push(l);
        }
    }
    (left, right, h)
}

pub fn energy(b1: &[Letter], b2: &[Letter]) -> usize {
    combinatorial_r(b1, b2).2
}

/// `R_i` on factors `i, i+1` (0-based `i`).
pub fn r_local(t: &ColumnTensor, i: usize) -> ColumnTensor {
    let (a, b, _) = combinatorial_r(&t.columns[i], &t.columns[i + 1]);
    let mut out = t.clone();
    out.columns[i] = a;
    out.columns[i + 1] = b;
    out
}

/// Intrinsic energy and the local energies `ℋ_1, …, ℋ_N`.
pub fn intrinsic_energy(b: &ColumnTensor) -> (i64, Vec<i64>) {
    let cols = &b.columns;
    let mut locals = vec![0i64; cols.len()];
    for i in 0..cols.len() {
        let mut carrier = cols[i].clone();
        for bj in &cols[i + 1..] {
            let (_, next, h) = combinatorial_r(&carrier, bj);
            locals[i] += h as i64;
            carrier = next;
        }
    }
    (locals.iter().sum(), locals)
}

/// Every intermediate tensor of `R₁·(R₂R₁)⋯(R_{N−1}⋯R₁)`, input first.
pub fn r_delta_steps(v: &ColumnTensor) -> Vec<(usize, ColumnTensor)> {
    let n = v.columns.len();
    let mut out = Vec::new();
    let mut cur = v.clone();
    for top in (1..n).rev() {
        for i in 0..top {
            cur = r_local(&cur, i);
            out.push((i, cur.clone()));
        }
    }
    out
}

/// The crystal isomorphism onto the reversed column heights.
pub fn r_delta(v: &ColumnTensor) -> ColumnTensor {
    r_delta_steps(v).pop().map_or_else(|| v.clone(), |x| x.1)
}

pub fn yang_baxter_check(b1: &[Letter], b2: &[Letter], b3: &[Letter], n: u32) -> bool {
    let t = ColumnTensor { n, columns: vec![b1.to_vec(), b2.to_vec(), b3.to_vec()] };
    let lhs = r_local(&r_local(&r_local(&t, 0), 1), 0);
    let rhs = r_local(&r_local(&r_local(&t, 1), 0), 1);
    lhs == rhs
}

/// `ℋ` and `u_k − d_k` per factor, read off a leading map.
pub fn demazure_energy(v: &ColumnTensor) -> (i64, Vec<i64>) {
    let walk = leading_map(v);
    (walk.total(), walk.grading())
}

/// Tensors of the given heights where the two energies disagree, with the count checked.
pub fn energy_equivalence(n: u32, heights: &[usize]) -> (usize, Vec<ColumnTensor>) {
    let tree = DemazureTree::new(n, heights);
    let mut bad = Vec::new();
    let all = ColumnTensor::enumerate(n, heights);
    for v in &all {
        let ok = tree.walk(v).is_some_and(|w| {
            let (h, locals) = intrinsic_energy(v);
            w.total() == h && w.grading() == locals
        });
        if !ok {
            bad.push(v.clone());
        }
    }
    (all.len(), bad)
}
