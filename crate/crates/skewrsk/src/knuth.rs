//! Knuth moves on words, generalized moves on weighted words, generalized dual
//! moves on weighted permutations, and the invariance checks they satisfy.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::Serialize;

use crate::biword::{MatrixBar, WeightedBiword};
use crate::cylinder::ss_forward_general;
use crate::error::{invalid, Error, Result};
use crate::greene::{d_all, i_all};
use crate::rsk::{run_dynamics, stabilize_backward, stabilize_forward, TableauPair};
use crate::tableau::{Letter, SkewTableau};

/// `a^{(w)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeightedLetter {
    pub a: Letter,
    pub w: i64,
}

impl WeightedLetter {
    pub fn new(a: Letter, w: i64) -> Self {
        WeightedLetter { a, w }
    }
}

/// The order `≺`: larger weight first, then smaller letter.
impl Ord for WeightedLetter {
    fn cmp(&self, other: &Self) -> Ordering {
        other.w.cmp(&self.w).then(self.a.cmp(&other.a))
    }
}

impl PartialOrd for WeightedLetter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A single move: the word after it and its type `i` (letters `i`, `i+1` swapped, 1-based).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Move<T> {
    pub kind: usize,
    pub word: Vec<T>,
}

fn neighbors_by<T: Copy + Ord>(word: &[T]) -> Vec<Move<T>> {
    let mut out = BTreeSet::new();
    for i in 0..word.len().saturating_sub(2) {
        let (a, b, c) = (word[i], word[i + 1], word[i + 2]);
        let mut push = |k: usize| {
            let mut w = word.to_vec();
            w.swap(k, k + 1);
            out.insert(Move { kind: k + 1, word: w });
        };
        // x z y ⇌ z x y, x ⪯ y ≺ z.
        if (a <= c && c < b) || (b <= c && c < a) {
            push(i);
        }
        // y x z ⇌ y z x, x ≺ y ⪯ z.
        if (b < a && a <= c) || (c < a && a <= b) {
            push(i + 1);
        }
    }
    out.into_iter().collect()
}

/// All words one classical Knuth move away.
pub fn knuth_neighbors(word: &[Letter]) -> Vec<Move<Letter>> {
    neighbors_by(word)
}

/// All weighted words one generalized Knuth move away.
pub fn gen_knuth_neighbors(word: &[WeightedLetter]) -> Vec<Move<WeightedLetter>> {
    neighbors_by(word)
}

/// All weighted permutations one generalized dual move away; `kind` is the `k`
/// of the values `k, k+1, k+2` involved.
pub fn gen_dual_knuth_neighbors(word: &[WeightedLetter]) -> Result<Vec<Move<WeightedLetter>>> {
    let len = word.len();
    let mut pos = vec![usize::MAX; len + 1];
    for (j, l) in word.iter().enumerate() {
        let a = l.a as usize;
        if a == 0 || a > len || pos[a] != usize::MAX {
            return invalid("the letters of a weighted permutation must be 1..=length, each once");
        }
        pos[a] = j;
    }
    let mut out = BTreeSet::new();
    for k in 1..len.saturating_sub(1) {
        let mut at = [(pos[k], k), (pos[k + 1], k + 1), (pos[k + 2], k + 2)];
        at.sort();
        let ws = at.map(|(j, _)| word[j].w);
        if !(ws[0] >= ws[1] && ws[1] >= ws[2]) {
            continue;
        }
        let vals = at.map(|(_, v)| v - k);
        let image = match vals {
            [0, 2, 1] => [1, 2, 0],
            [1, 2, 0] => [0, 2, 1],
            [1, 0, 2] => [2, 0, 1],
            [2, 0, 1] => [1, 0, 2],
            _ => continue,
        };
        let mut w = word.to_vec();
        for (slot, &v) in at.iter().zip(&image) {
            w[slot.0].a = (k + v) as Letter;
        }
        out.insert(Move { kind: k, word: w });
    }
    Ok(out.into_iter().collect())
}

/// The weighted biword `(1 2 ⋯ k; a₁ ⋯ a_k; w₁ ⋯ w_k)`.
pub fn word_to_biword(word: &[WeightedLetter], n: u32) -> Result<WeightedBiword> {
    let n = n.max(word.len() as u32).max(1);
    let triples: Vec<(Letter, Letter, i64)> =
        word.iter().enumerate().map(|(j, l)| (j as Letter + 1, l.a, l.w)).collect();
    WeightedBiword::from_triples(n, &triples)
}

/// Parses `2^(1) 1^(-1) 3` (missing weights are 0).
pub fn parse_weighted_word(s: &str) -> Result<Vec<WeightedLetter>> {
    s.split_whitespace()
        .map(|tok| {
            let bad = || Error::Parse { line: 1, msg: format!("bad weighted letter {tok:?}") };
            match tok.split_once('^') {
                None => Ok(WeightedLetter::new(tok.parse().map_err(|_| bad())?, 0)),
                Some((a, w)) => {
                    let w = w.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(w);
                    Ok(WeightedLetter::new(a.parse().map_err(|_| bad())?, w.parse().map_err(|_| bad())?))
                }
            }
        })
        .collect()
}

pub fn format_weighted_word(word: &[WeightedLetter]) -> String {
    word.iter().map(|l| format!("{}^({})", l.a, l.w)).collect::<Vec<_>>().join(" ")
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub neighbors: usize,
    /// Moves where `P_t` (generalized) or `Q_t` (dual) differ at some tested `t`.
    pub tableau_failures: usize,
    pub greene_failures: usize,
    pub times: Vec<i64>,
}

impl InvarianceReport {
    pub fn ok(&self) -> bool {
        self.tableau_failures == 0 && self.greene_failures == 0
    }
}

fn dynamics_pair(word: &[WeightedLetter], n: u32) -> Result<(MatrixBar, TableauPair)> {
    let m = word_to_biword(word, n)?.to_matrix();
    let pair = ss_forward_general(&m)?;
    Ok((m, pair))
}

/// `t ∈ [−3, 3]` together with the forward and backward stabilization times.
fn window(pair: &TableauPair, cap: Option<usize>) -> Result<Vec<i64>> {
    let mut ts: BTreeSet<i64> = (-3..=3).collect();
    ts.insert(stabilize_forward(pair, cap)?.t as i64);
    ts.insert(-(stabilize_backward(pair, cap)?.0 as i64));
    Ok(ts.into_iter().collect())
}

/// Checks `P_t` (or `Q_t` for dual moves) and `I_k`, `D_k` across every single move.
pub fn invariance_suite(word: &[WeightedLetter], n: u32, dual: bool, cap: Option<usize>) -> Result<InvarianceReport> {
    if let Some(c) = cap {
        if word.len() > c {
            return Err(Error::TooLarge { size: word.len(), cap: c });
        }
    }
    let moves = if dual { gen_dual_knuth_neighbors(word)? } else { gen_knuth_neighbors(word) };
    let (m0, pair0) = dynamics_pair(word, n)?;
    let times = window(&pair0, None)?;
    let side = |p: &TableauPair| -> SkewTableau { if dual { p.q.clone() } else { p.p.clone() } };
    let base: Vec<SkewTableau> = times.iter().map(|&t| side(&run_dynamics(&pair0, t))).collect();
    let (i0, d0) = (i_all(&m0, None)?, d_all(&m0, None)?);
    let mut rep = InvarianceReport { neighbors: moves.len(), times: times.clone(), ..Default::default() };
    for mv in moves {
        let (m1, pair1) = dynamics_pair(&mv.word, n)?;
        if times.iter().zip(&base).any(|(&t, b)| side(&run_dynamics(&pair1, t)) != *b) {
            rep.tableau_failures += 1;
        }
        if i_all(&m1, None)? != i0 || d_all(&m1, None)? != d0 {
            rep.greene_failures += 1;
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_words_have_no_moves() {
        assert!(knuth_neighbors(&[]).is_empty());
        assert!(knuth_neighbors(&[2, 1]).is_empty());
    }

    #[test]
    fn weighted_parse() {
        let w = parse_weighted_word("2^(1) 1^(-1) 3").unwrap();
        assert_eq!(w, vec![WeightedLetter::new(2, 1), WeightedLetter::new(1, -1), WeightedLetter::new(3, 0)]);
        assert_eq!(format_weighted_word(&w), "2^(1) 1^(-1) 3^(0)");
    }
}
