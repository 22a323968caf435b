//! Kashiwara operators on words, column tensors, tableau pairs and matrices;
//! Demazure arrows and leading maps.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::biword::MatrixBar;
use crate::error::{Error, Result};
use crate::rsk::{iota1, iota1_inverse, iota2, iota2_inverse, TableauPair};
use crate::tableau::{Letter, SkewTableau};
use crate::vst::ColumnTensor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Single,
    One,
    Two,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dir {
    E,
    F,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CrystalOpToken {
    pub family: Family,
    pub index: u32,
    pub dir: Dir,
}

impl CrystalOpToken {
    pub fn new(family: Family, index: u32, dir: Dir) -> Self {
        CrystalOpToken { family, index, dir }
    }

    pub fn e(family: Family, index: u32) -> Self {
        Self::new(family, index, Dir::E)
    }

    pub fn f(family: Family, index: u32) -> Self {
        Self::new(family, index, Dir::F)
    }

    pub fn inverse(self) -> Self {
        let dir = match self.dir {
            Dir::E => Dir::F,
            Dir::F => Dir::E,
        };
        CrystalOpToken { dir, ..self }
    }

    /// Every token of the given families for `n` letters, in the canonical
    /// order: family, index ascending, `F` before `E`.
    pub fn all(n: u32, families: &[Family]) -> Vec<CrystalOpToken> {
        let mut out = Vec::new();
        for &fam in families {
            for i in 0..n {
                out.push(Self::f(fam, i));
                out.push(Self::e(fam, i));
            }
        }
        out
    }
}

impl fmt::Display for CrystalOpToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.dir {
            Dir::E => "E",
            Dir::F => "F",
        };
        let fam = match self.family {
            Family::Single => "",
            Family::One => "1",
            Family::Two => "2",
        };
        write!(f, "{d}{fam}[{}]", self.index)
    }
}

impl FromStr for CrystalOpToken {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { line: 1, msg: format!("bad operator token {s:?}") };
        let dir = match s.chars().next() {
            Some('E') => Dir::E,
            Some('F') => Dir::F,
            _ => return Err(bad()),
        };
        let open = s.find('[').ok_or_else(bad)?;
        let family = match &s[1..open] {
            "" => Family::Single,
            "1" => Family::One,
            "2" => Family::Two,
            _ => return Err(bad()),
        };
        let close = s.strip_suffix(']').ok_or_else(bad)?;
        let index = close[open + 1..].parse().map_err(|_| bad())?;
        Ok(CrystalOpToken { family, index, dir })
    }
}

/// Tokens listed in application order: the first one acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OpSequence(pub Vec<CrystalOpToken>);

impl OpSequence {
    pub fn new() -> Self {
        OpSequence(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, t: CrystalOpToken) {
        self.0.push(t);
    }

    /// Reversed and direction-flipped.
    pub fn invert(&self) -> OpSequence {
        OpSequence(self.0.iter().rev().map(|t| t.inverse()).collect())
    }

    pub fn concat(&self, other: &OpSequence) -> OpSequence {
        OpSequence(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    /// Number of `F₀` minus number of `E₀` tokens.
    pub fn zero_balance(&self) -> i64 {
        self.0
            .iter()
            .filter(|t| t.index == 0)
            .map(|t| if t.dir == Dir::F { 1 } else { -1 })
            .sum()
    }
}

pub fn invert(ops: &OpSequence) -> OpSequence {
    ops.invert()
}

impl fmt::Display for OpSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut k = 0;
        while k < self.0.len() {
            let t = self.0[k];
            let run = self.0[k..].iter().take_while(|&&x| x == t).count();
            if run > 1 {
                parts.push(format!("{t}^{run}"));
            } else {
                parts.push(t.to_string());
            }
            k += run;
        }
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for OpSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for part in s.split_whitespace() {
            let (tok, rep) = match part.split_once('^') {
                Some((a, b)) => {
                    let r: usize = b
                        .parse()
                        .map_err(|_| Error::Parse { line: 1, msg: format!("bad repetition in {part:?}") })?;
                    (a, r)
                }
                None => (part, 1),
            };
            let t: CrystalOpToken = tok.parse()?;
            out.extend(std::iter::repeat(t).take(rep));
        }
        Ok(OpSequence(out))
    }
}

// ---------------------------------------------------------------------------
// Words

/// Positions of the unmatched `)` (letters `i`) and unmatched `(` (letters `i+1`).
fn signature(w: &[Letter], i: Letter) -> (Vec<usize>, Vec<usize>) {
    let mut close = Vec::new();
    let mut open: Vec<usize> = Vec::new();
    for (k, &l) in w.iter().enumerate() {
        if l == i + 1 {
            open.push(k);
        } else if l == i && open.pop().is_none() {
            close.push(k);
        }
    }
    (close, open)
}

/// Position acted on by `E_i` / `F_i`, if any.
fn signature_target(w: &[Letter], i: Letter, dir: Dir) -> Option<usize> {
    let (close, open) = signature(w, i);
    match dir {
        Dir::E => open.first().copied(),
        Dir::F => close.last().copied(),
    }
}

pub fn phi_eps(w: &[Letter], i: Letter) -> (usize, usize) {
    let (close, open) = signature(w, i);
    (close.len(), open.len())
}

pub fn kashiwara_word(w: &[Letter], i: Letter, dir: Dir) -> Option<Vec<Letter>> {
    let k = signature_target(w, i, dir)?;
    let mut out = w.to_vec();
    out[k] = match dir {
        Dir::E => i,
        Dir::F => i + 1,
    };
    Some(out)
}

// ---------------------------------------------------------------------------
// Column tensors

fn promote_column(c: &[Letter], n: u32, up: bool) -> Vec<Letter> {
    let mut out: Vec<Letter> = c
        .iter()
        .map(|&l| if up { l % n + 1 } else { (l + n - 2) % n + 1 })
        .collect();
    out.sort_unstable();
    out
}

/// Promotion `l ↦ l+1`, `n ↦ 1`, applied to every factor.
pub fn promotion(v: &ColumnTensor) -> ColumnTensor {
    ColumnTensor { n: v.n, columns: v.columns.iter().map(|c| promote_column(c, v.n, true)).collect() }
}

pub fn promotion_inverse(v: &ColumnTensor) -> ColumnTensor {
    ColumnTensor { n: v.n, columns: v.columns.iter().map(|c| promote_column(c, v.n, false)).collect() }
}

/// Classical step; returns the new tensor and the factor that changed.
fn vst_classical(v: &ColumnTensor, i: Letter, dir: Dir) -> Option<(ColumnTensor, usize)> {
    if i == 0 || i >= v.n {
        return None;
    }
    let word = v.column_word();
    let k = signature_target(&word, i, dir)?;
    let (col, idx) = v.word_positions()[k];
    let mut out = v.clone();
    out.columns[col][idx] = match dir {
        Dir::E => i,
        Dir::F => i + 1,
    };
    Some((out, col))
}

fn vst_step(v: &ColumnTensor, i: u32, dir: Dir) -> Option<(ColumnTensor, usize)> {
    if v.n < 2 {
        return None;
    }
    if i == 0 {
        let (b, k) = vst_classical(&promotion(v), 1, dir)?;
        Some((promotion_inverse(&b), k))
    } else {
        vst_classical(v, i, dir)
    }
}

pub fn kashiwara_vst(v: &ColumnTensor, i: u32, dir: Dir) -> Option<ColumnTensor> {
    vst_step(v, i, dir).map(|x| x.0)
}

/// `(φ_i, ε_i)` of a tensor, index 0 through promotion.
pub fn phi_eps_vst(v: &ColumnTensor, i: u32) -> (usize, usize) {
    if i == 0 {
        phi_eps(&promotion(v).column_word(), 1)
    } else {
        phi_eps(&v.column_word(), i)
    }
}

// ---------------------------------------------------------------------------
// Tableaux and pairs

/// Classical operator on a skew tableau via its column reading word.
pub fn kashiwara_tableau(t: &SkewTableau, i: Letter, dir: Dir) -> Option<SkewTableau> {
    if i == 0 || i >= t.n() {
        return None;
    }
    let word = t.reading_word(crate::tableau::ReadingMode::Column);
    let k = signature_target(&word, i, dir)?;
    let (r, c) = t.column_word_positions()[k];
    let mut out = t.clone();
    out.set_label(
        r,
        c,
        match dir {
            Dir::E => i,
            Dir::F => i + 1,
        },
    );
    Some(out)
}

pub fn kashiwara_pair(pair: &TableauPair, tok: CrystalOpToken) -> Option<TableauPair> {
    let n = pair.n();
    if n < 2 || tok.index >= n {
        return None;
    }
    match (tok.family, tok.index) {
        (Family::Single, _) => None,
        (Family::One, 0) => {
            let x = iota1_inverse(pair);
            let p = kashiwara_tableau(&x.p, 1, tok.dir)?;
            Some(iota1(&TableauPair { p, q: x.q }))
        }
        (Family::Two, 0) => {
            let x = iota2_inverse(pair);
            let q = kashiwara_tableau(&x.q, 1, tok.dir)?;
            Some(iota2(&TableauPair { p: x.p, q }))
        }
        (Family::One, i) => {
            let p = kashiwara_tableau(&pair.p, i, tok.dir)?;
            Some(TableauPair { p, q: pair.q.clone() })
        }
        (Family::Two, i) => {
            let q = kashiwara_tableau(&pair.q, i, tok.dir)?;
            Some(TableauPair { p: pair.p.clone(), q })
        }
    }
}

// ---------------------------------------------------------------------------
// Matrices

fn matrix_classical(m: &MatrixBar, i: Letter, dir: Dir) -> Option<MatrixBar> {
    let n = m.n as i64;
    // Units on rows i and i+1 of the strip, read by column J = q − n·w.
    let mut units: Vec<(i64, Letter, Letter, i64)> = Vec::new();
    for (&(p, q, w), &c) in m.support() {
        if p == i || p == i + 1 {
            for _ in 0..c {
                units.push((q as i64 - n * w, p, q, w));
            }
        }
    }
    units.sort_unstable();
    let word: Vec<Letter> = units.iter().map(|u| u.1).collect();
    let k = signature_target(&word, i, dir)?;
    let (_, p, q, w) = units[k];
    let np = match dir {
        Dir::E => i,
        Dir::F => i + 1,
    };
    let mut out = m.clone();
    out.remove_one(p, q, w);
    out.add(np, q, w, 1);
    Some(out)
}

/// `down` moves every unit from row `p` to `p − 1`, wrapping `1 ↦ n` with
/// weight `+1`; this is the image of `ι₁` under the Sagan–Stanley map.
pub fn shift_rows(m: &MatrixBar, down: bool) -> MatrixBar {
    let n = m.n;
    let mut out = MatrixBar::zero(n);
    for (&(p, q, w), &c) in m.support() {
        let (np, nw) = if down {
            if p == 1 {
                (n, w + 1)
            } else {
                (p - 1, w)
            }
        } else if p == n {
            (1, w - 1)
        } else {
            (p + 1, w)
        };
        out.add(np, q, nw, c);
    }
    out
}

pub fn kashiwara_matrix(m: &MatrixBar, tok: CrystalOpToken) -> Option<MatrixBar> {
    if m.n < 2 || tok.index >= m.n {
        return None;
    }
    match tok.family {
        Family::Single => None,
        Family::Two => {
            let t = CrystalOpToken { family: Family::One, ..tok };
            kashiwara_matrix(&m.transpose(), t).map(|x| x.transpose())
        }
        Family::One if tok.index == 0 => {
            let x = matrix_classical(&shift_rows(m, false), 1, tok.dir)?;
            Some(shift_rows(&x, true))
        }
        Family::One => matrix_classical(m, tok.index, tok.dir),
    }
}

// ---------------------------------------------------------------------------
// Generic application

/// States carrying Kashiwara operators.
pub trait CrystalState: Sized + Clone {
    fn apply(&self, tok: CrystalOpToken) -> Option<Self>;
}

impl CrystalState for ColumnTensor {
    fn apply(&self, tok: CrystalOpToken) -> Option<Self> {
        if tok.family != Family::Single {
            return None;
        }
        kashiwara_vst(self, tok.index, tok.dir)
    }
}

impl CrystalState for TableauPair {
    fn apply(&self, tok: CrystalOpToken) -> Option<Self> {
        kashiwara_pair(self, tok)
    }
}

impl CrystalState for MatrixBar {
    fn apply(&self, tok: CrystalOpToken) -> Option<Self> {
        kashiwara_matrix(self, tok)
    }
}

/// A pair of tensors with family 1 acting on the first and family 2 on the second.
impl CrystalState for (ColumnTensor, ColumnTensor) {
    fn apply(&self, tok: CrystalOpToken) -> Option<Self> {
        match tok.family {
            Family::Single => None,
            Family::One => Some((kashiwara_vst(&self.0, tok.index, tok.dir)?, self.1.clone())),
            Family::Two => Some((self.0.clone(), kashiwara_vst(&self.1, tok.index, tok.dir)?)),
        }
    }
}

pub fn apply_op_sequence<S: CrystalState>(state: &S, ops: &OpSequence) -> Result<S> {
    let mut cur = state.clone();
    for (k, &t) in ops.0.iter().enumerate() {
        cur = cur.apply(t).ok_or(Error::Undefined { token: t.to_string(), position: k })?;
    }
    Ok(cur)
}

// ---------------------------------------------------------------------------
// Demazure arrows and leading maps

/// Whether `tok` is defined at `v` and gives a Demazure arrow.
pub fn is_demazure_arrow_vst(v: &ColumnTensor, tok: CrystalOpToken) -> bool {
    if v.apply(tok).is_none() {
        return false;
    }
    if tok.index != 0 {
        return true;
    }
    let eps0 = phi_eps_vst(v, 0).1;
    match tok.dir {
        Dir::F => eps0 > 0,
        Dir::E => eps0 > 1,
    }
}

/// Pair version: `F̃₀` needs `Ẽ₀` defined, `Ẽ₀` needs `Ẽ₀²` defined (same family).
pub fn is_demazure_arrow_pair(pair: &TableauPair, tok: CrystalOpToken) -> bool {
    if pair.apply(tok).is_none() {
        return false;
    }
    if tok.index != 0 {
        return true;
    }
    let e0 = CrystalOpToken::e(tok.family, 0);
    match tok.dir {
        Dir::F => pair.apply(e0).is_some(),
        Dir::E => pair.apply(e0).and_then(|x| x.apply(e0)).is_some(),
    }
}

/// A leading map together with the factor touched by each step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DemazureWalk {
    pub ops: OpSequence,
    pub factors: Vec<usize>,
    pub num_factors: usize,
}

impl DemazureWalk {
    /// `u_k − d_k` for every factor `k`.
    pub fn grading(&self) -> Vec<i64> {
        let mut g = vec![0; self.num_factors];
        for (t, &k) in self.ops.0.iter().zip(&self.factors) {
            if t.index == 0 {
                g[k] += if t.dir == Dir::F { 1 } else { -1 };
            }
        }
        g
    }

    pub fn total(&self) -> i64 {
        self.ops.zero_balance()
    }
}

/// Breadth-first search over Demazure arrows from `v` to the leading vector.
pub fn leading_map(v: &ColumnTensor) -> DemazureWalk {
    let target = ColumnTensor::leading(v.n, &v.heights());
    let toks = CrystalOpToken::all(v.n, &[Family::Single]);
    let mut prev: HashMap<ColumnTensor, Option<(ColumnTensor, CrystalOpToken, usize)>> = HashMap::new();
    prev.insert(v.clone(), None);
    let mut queue = VecDeque::from([v.clone()]);
    while let Some(b) = queue.pop_front() {
        if b == target {
            break;
        }
        for &t in &toks {
            if !is_demazure_arrow_vst(&b, t) {
                continue;
            }
            let (c, k) = vst_step(&b, t.index, t.dir).expect("arrow is defined");
            if !prev.contains_key(&c) {
                prev.insert(c.clone(), Some((b.clone(), t, k)));
                queue.push_back(c);
            }
        }
    }
    let mut ops = Vec::new();
    let mut factors = Vec::new();
    let mut cur = target;
    while let Some(Some((b, t, k))) = prev.get(&cur) {
        ops.push(*t);
        factors.push(*k);
        cur = b.clone();
    }
    assert!(cur == *v, "Demazure subgraph is connected to the leading vector");
    ops.reverse();
    factors.reverse();
    DemazureWalk { ops: OpSequence(ops), factors, num_factors: v.columns.len() }
}

/// Leading maps for every tensor of one shape at once: a breadth-first tree
/// grown backwards from the leading vector along Demazure arrows.
pub struct DemazureTree {
    next: HashMap<ColumnTensor, (ColumnTensor, CrystalOpToken, usize)>,
    target: ColumnTensor,
}

impl DemazureTree {
    pub fn new(n: u32, heights: &[usize]) -> Self {
        let target = ColumnTensor::leading(n, heights);
        let toks = CrystalOpToken::all(n, &[Family::Single]);
        let mut next = HashMap::new();
        let mut seen = std::collections::HashSet::from([target.clone()]);
        let mut queue = VecDeque::from([target.clone()]);
        while let Some(c) = queue.pop_front() {
            for &t in &toks {
                let Some(b) = kashiwara_vst(&c, t.index, t.inverse().dir) else { continue };
                if seen.contains(&b) || !is_demazure_arrow_vst(&b, t) {
                    continue;
                }
                let k = vst_step(&b, t.index, t.dir).expect("arrow is defined").1;
                seen.insert(b.clone());
                next.insert(b.clone(), (c.clone(), t, k));
                queue.push_back(b);
            }
        }
        DemazureTree { next, target }
    }

    /// Number of tensors connected to the leading vector, itself included.
    pub fn len(&self) -> usize {
        self.next.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn walk(&self, v: &ColumnTensor) -> Option<DemazureWalk> {
        let mut ops = Vec::new();
        let mut factors = Vec::new();
        let mut cur = v;
        while *cur != self.target {
            let (c, t, k) = self.next.get(cur)?;
            ops.push(*t);
            factors.push(*k);
            cur = c;
        }
        Some(DemazureWalk { ops: OpSequence(ops), factors, num_factors: v.columns.len() })
    }
}

/// Family-1 steps of `ℒ_V` followed by family-2 steps of `ℒ_W`.
pub fn leading_map_pair(v: &ColumnTensor, w: &ColumnTensor) -> OpSequence {
    let relabel = |ops: OpSequence, family: Family| ops.0.into_iter().map(move |t| CrystalOpToken { family, ..t });
    let mut out: Vec<CrystalOpToken> = relabel(leading_map(v).ops, Family::One).collect();
    out.extend(relabel(leading_map(w).ops, Family::Two));
    OpSequence(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn token_strings() {
        let s: OpSequence = "F1[2] E2[0]^3 F[1]".parse().unwrap();
        assert_eq!(s.len(), 5);
        assert_eq!(s.to_string(), "F1[2] E2[0]^3 F[1]");
        assert_eq!(s.invert().to_string(), "E[1] F2[0]^3 E1[2]");
        assert!("G1[2]".parse::<OpSequence>().is_err());
    }

    #[test]
    fn promotion_round_trip() {
        let v = ColumnTensor::new(4, vec![vec![1, 4], vec![], vec![2, 3, 4]]).unwrap();
        assert_eq!(promotion_inverse(&promotion(&v)), v);
        assert_eq!(promotion(&v).columns[0], vec![1, 2]);
    }

    #[test]
    fn empty_factor_is_skipped() {
        let v = ColumnTensor::new(3, vec![vec![], vec![2]]).unwrap();
        let e = kashiwara_vst(&v, 1, Dir::E).unwrap();
        assert_eq!(e.columns, vec![vec![], vec![1]]);
    }
}
