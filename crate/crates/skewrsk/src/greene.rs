//! Increasing and localized decreasing subsequences on the twisted cylinder.
//!
//! Every search here is exhaustive over sub-multisets of the points, so
//! instance sizes are capped.

use crate::biword::{CylinderPoint, MatrixBar, WeightedBiword};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::rsk::{stabilize_forward, TableauPair};

pub const DEFAULT_CAP_I: usize = 12;
pub const DEFAULT_CAP_D: usize = 10;

/// Cylinder points of a matrix, one per unit of multiplicity.
pub fn points(m: &MatrixBar) -> Vec<CylinderPoint> {
    let nn = m.n as i64;
    let mut out = Vec::new();
    for (&(i, j, k), &c) in m.support() {
        for _ in 0..c {
            out.push(CylinderPoint::new(j as i64, i as i64 - nn * k, m.n));
        }
    }
    out
}

/// `a` and `b` lie on a common up-right path with `a` first.
pub fn weakly_before(a: &CylinderPoint, b: &CylinderPoint) -> bool {
    let shift = if a.j <= b.j { 0 } else { a.n as i64 };
    b.v - a.v >= shift
}

fn comparable(a: &CylinderPoint, b: &CylinderPoint) -> bool {
    weakly_before(a, b) || weakly_before(b, a)
}

/// Whether the points form a strict down-right loop.
pub fn is_lds(pts: &[CylinderPoint]) -> bool {
    let mut s = pts.to_vec();
    s.sort_by_key(|p| p.j);
    if s.windows(2).any(|w| w[0].j == w[1].j || w[0].v <= w[1].v) {
        return false;
    }
    match (s.first(), s.last()) {
        (Some(f), Some(l)) => f.v - l.v < f.n as i64,
        _ => true,
    }
}

fn check_cap(size: usize, cap: usize) -> Result<()> {
    if size > cap {
        return Err(Error::TooLarge { size, cap });
    }
    Ok(())
}

fn subset(pts: &[CylinderPoint], mask: u32) -> Vec<CylinderPoint> {
    (0..pts.len()).filter(|&b| mask >> b & 1 == 1).map(|b| pts[b]).collect()
}

/// For each mask, `Some(size)` when the mask is a single block.
fn blocks(pts: &[CylinderPoint], is_block: impl Fn(&[CylinderPoint]) -> bool) -> Vec<bool> {
    (0..1u32 << pts.len()).map(|m| is_block(&subset(pts, m))).collect()
}

/// Minimal number of blocks partitioning each mask, and the minimal `Σ min(k, |block|)`.
fn min_cover(n: usize, block: &[bool], cost: impl Fn(u32) -> usize) -> Vec<usize> {
    let full = 1u32 << n;
    let mut best = vec![usize::MAX; full as usize];
    best[0] = 0;
    for mask in 1..full {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        // Enumerate sub-blocks of `mask` containing its lowest point.
        let mut sub = rest;
        loop {
            let s = sub | low;
            if block[s as usize] {
                let prev = best[(mask ^ s) as usize];
                if prev != usize::MAX {
                    best[mask as usize] = best[mask as usize].min(prev + cost(s));
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    best
}

fn largest_with_cover(n: usize, cover: &[usize], k: usize) -> usize {
    (0..1u32 << n).filter(|&m| cover[m as usize] <= k).map(|m| m.count_ones() as usize).max().unwrap_or(0)
}

fn chain_block(s: &[CylinderPoint]) -> bool {
    s.iter().enumerate().all(|(x, a)| s[x + 1..].iter().all(|b| comparable(a, b)))
}

/// Length of the longest `k`-increasing subsequence.
pub fn i_k(m: &MatrixBar, k: usize, cap: Option<usize>) -> Result<usize> {
    let pts = points(m);
    check_cap(pts.len(), cap.unwrap_or(DEFAULT_CAP_I))?;
    let cover = min_cover(pts.len(), &blocks(&pts, chain_block), |_| 1);
    Ok(largest_with_cover(pts.len(), &cover, k))
}

/// Length of the longest `k`-localized decreasing subsequence.
pub fn d_k(m: &MatrixBar, k: usize, cap: Option<usize>) -> Result<usize> {
    let pts = points(m);
    check_cap(pts.len(), cap.unwrap_or(DEFAULT_CAP_D))?;
    let cover = min_cover(pts.len(), &blocks(&pts, is_lds), |_| 1);
    Ok(largest_with_cover(pts.len(), &cover, k))
}

/// `min Σ min(k, ℓ(σ))` over decompositions into localized decreasing sequences.
pub fn g_k(m: &MatrixBar, k: usize, cap: Option<usize>) -> Result<usize> {
    let pts = points(m);
    check_cap(pts.len(), cap.unwrap_or(DEFAULT_CAP_D))?;
    let cover = min_cover(pts.len(), &blocks(&pts, is_lds), |s| (s.count_ones() as usize).min(k));
    Ok(cover[(1usize << pts.len()) - 1])
}

/// All `I_k` for `k = 1..=ℓ`, computed from one cover table.
pub fn i_all(m: &MatrixBar, cap: Option<usize>) -> Result<Vec<usize>> {
    let pts = points(m);
    check_cap(pts.len(), cap.unwrap_or(DEFAULT_CAP_I))?;
    let cover = min_cover(pts.len(), &blocks(&pts, chain_block), |_| 1);
    Ok((1..=pts.len()).map(|k| largest_with_cover(pts.len(), &cover, k)).collect())
}

pub fn d_all(m: &MatrixBar, cap: Option<usize>) -> Result<Vec<usize>> {
    let pts = points(m);
    check_cap(pts.len(), cap.unwrap_or(DEFAULT_CAP_D))?;
    let cover = min_cover(pts.len(), &blocks(&pts, is_lds), |_| 1);
    Ok((1..=pts.len()).map(|k| largest_with_cover(pts.len(), &cover, k)).collect())
}

fn from_partial_sums(sums: &[usize]) -> Partition {
    let mut prev = 0;
    let parts = sums
        .iter()
        .map(|&s| {
            let d = s - prev;
            prev = s;
            d
        })
        .collect();
    Partition::from_unsorted(parts)
}

/// `µ̃` read off the increasing statistics.
pub fn mu_from_increasing(m: &MatrixBar, cap: Option<usize>) -> Result<Partition> {
    Ok(from_partial_sums(&i_all(m, cap)?))
}

/// `µ` read off the decreasing statistics (their increments give `µ′`).
pub fn mu_from_decreasing(m: &MatrixBar, cap: Option<usize>) -> Result<Partition> {
    Ok(from_partial_sums(&d_all(m, cap)?).transpose())
}

/// Asymptotic increment of the dynamics.
pub fn greene_partition(pair: &TableauPair) -> Result<Partition> {
    Ok(stabilize_forward(pair, None)?.mu)
}

pub fn greene_partition_biword(b: &WeightedBiword) -> Result<Partition> {
    let pair = crate::cylinder::ss_forward_general(&b.to_matrix())?;
    greene_partition(&pair)
}

/// `λ₁ = ν₁ + I₁` for the pair built from `(M̄, ν)`.
pub fn extended_schensted_check(m: &MatrixBar, nu: &Partition) -> Result<bool> {
    let pair = crate::cylinder::ss_forward(m, nu)?;
    let lambda1 = pair.p.outer_at(1);
    Ok(lambda1 == nu.part(1) + i_k(m, 1, None)?)
}
