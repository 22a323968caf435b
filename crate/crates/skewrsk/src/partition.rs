//! Integer partitions and the rectangular decomposition of their columns.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return invalid(format!("not a partition: {parts:?}"));
        }
        Ok(Partition(parts))
    }

    /// Sorts the input decreasingly and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i`, 1-based, zero past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn transpose(&self) -> Partition {
        let w = self.part(1);
        let mut t = vec![0; w];
        for &p in &self.0 {
            for c in t.iter_mut().take(p) {
                *c += 1;
            }
        }
        Partition(t)
    }

    pub fn contains(&self, other: &Partition) -> bool {
        (1..=other.len()).all(|i| other.part(i) <= self.part(i))
    }

    /// Number of odd parts.
    pub fn odd(&self) -> usize {
        self.0.iter().filter(|&&p| p % 2 == 1).count()
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// One block of equal column heights: columns `R_{i-1}+1 ..= R_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectBlock {
    pub start: usize,
    pub end: usize,
    pub height: usize,
}

impl RectBlock {
    pub fn width(&self) -> usize {
        self.end - self.start + 1
    }
}

/// Splits the columns of `mu` into maximal runs of equal height.
pub fn rectangular_decomposition(mu: &Partition) -> Vec<RectBlock> {
    let cols = mu.transpose();
    let mut out: Vec<RectBlock> = Vec::new();
    for (k, &h) in cols.parts().iter().enumerate() {
        match out.last_mut() {
            Some(b) if b.height == h => b.end = k + 1,
            _ => out.push(RectBlock { start: k + 1, end: k + 1, height: h }),
        }
    }
    out
}

/// All partitions of `size`, in reverse lexicographic order.
pub fn partitions_of(size: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(size, size, &mut Vec::new(), &mut out);
    out
}

/// All partitions contained in `lambda` (including empty and `lambda` itself).
pub fn subpartitions(lambda: &Partition) -> Vec<Partition> {
    fn rec(lambda: &Partition, i: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i > lambda.len() {
            out.push(Partition::new(cur.clone()).expect("decreasing"));
            return;
        }
        for p in 0..=lambda.part(i).min(max) {
            cur.push(p);
            rec(lambda, i + 1, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(lambda, 1, usize::MAX, &mut Vec::new(), &mut out);
    out
}
