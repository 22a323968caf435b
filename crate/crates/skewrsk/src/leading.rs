//! Leading tableaux `T(µ, κ; ν)`, the linear action of skew RSK on them, and
//! the bijection `Υ : (P, Q) ↔ (V, W; κ; ν)`.

use serde::{Deserialize, Serialize};

use crate::biword::WeightedBiword;
use crate::crystal::{apply_op_sequence, leading_map_pair};
use crate::cylinder::{ss_backward, ss_forward};
use crate::error::{invalid, Error, Result};
use crate::partition::{rectangular_decomposition, Partition};
use crate::rmatrix::intrinsic_energy;
use crate::rowcoord::{kernel, rc_decode, RowCoordMatrix};
use crate::rsk::{skew_rsk, stabilize_forward, TableauPair};
use crate::tableau::{Letter, SkewTableau};
use crate::vst::ColumnTensor;

/// `κ ∈ 𝒦(µ)`: one entry per column of `µ`, weakly decreasing inside each
/// block of equal column heights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KappaArray {
    pub mu: Partition,
    pub values: Vec<usize>,
}

impl KappaArray {
    pub fn new(mu: Partition, values: Vec<usize>) -> Result<Self> {
        if values.len() != mu.part(1) {
            return invalid(format!("κ has {} entries, µ has {} columns", values.len(), mu.part(1)));
        }
        let cols = mu.transpose();
        for i in 1..values.len() {
            if cols.part(i) == cols.part(i + 1) && values[i - 1] < values[i] {
                return invalid(format!("κ = {values:?} increases inside a block of equal columns"));
            }
        }
        Ok(KappaArray { mu, values })
    }

    pub fn zero(mu: Partition) -> Self {
        let values = vec![0; mu.part(1)];
        KappaArray { mu, values }
    }

    pub fn size(&self) -> usize {
        self.values.iter().sum()
    }

    /// `κ⁺`.
    pub fn sorted(&self) -> Partition {
        Partition::from_unsorted(self.values.clone())
    }

    /// The blocks `κ^{(1)}, κ^{(2)}, …`.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        rectangular_decomposition(&self.mu)
            .iter()
            .map(|b| self.values[b.start - 1..b.end].to_vec())
            .collect()
    }

    /// `κ + µ'`.
    pub fn shifted(&self) -> KappaArray {
        let cols = self.mu.transpose();
        let values = self.values.iter().enumerate().map(|(i, &k)| k + cols.part(i + 1)).collect();
        KappaArray { mu: self.mu.clone(), values }
    }
}

/// Every element of `𝒦(µ)` with `|κ| ≤ max_size`.
pub fn kappa_enumerate(mu: &Partition, max_size: usize) -> Vec<KappaArray> {
    let cols = mu.transpose();
    let w = mu.part(1);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(w);
    fn rec(cols: &Partition, w: usize, left: usize, cur: &mut Vec<usize>, mu: &Partition, out: &mut Vec<KappaArray>) {
        let i = cur.len();
        if i == w {
            out.push(KappaArray { mu: mu.clone(), values: cur.clone() });
            return;
        }
        let cap = if i > 0 && cols.part(i) == cols.part(i + 1) { cur[i - 1].min(left) } else { left };
        for k in 0..=cap {
            cur.push(k);
            rec(cols, w, left - k, cur, mu, out);
            cur.pop();
        }
    }
    rec(&cols, w, max_size, &mut cur, mu, &mut out);
    out
}

/// Cell count criterion: `k` `i`-cells at row `r` need `k` `(i−1)`-cells at row `r−1`.
fn leading_by_cells(t: &SkewTableau) -> bool {
    let a = RowCoordMatrix::of_tableau(t);
    a.counts().iter().all(|(&(i, r), &c)| i == 1 || c <= a.get(i - 1, r - 1))
}

/// Diagonal criterion `α_{1,j} ≥ α_{2,j+1} ≥ α_{3,j+2} ≥ ⋯`.
fn leading_by_diagonals(t: &SkewTableau) -> bool {
    let a = RowCoordMatrix::of_tableau(t);
    let Some((_, hi)) = a.row_range() else { return true };
    (0..=hi).all(|j| {
        let diag: Vec<usize> = (1..=t.n()).map(|i| a.get(i, j + i as i64 - 1)).collect();
        diag.windows(2).all(|w| w[0] >= w[1])
    })
}

/// Whether a classical tableau is leading. Both criteria are evaluated and must agree.
pub fn is_leading(t: &SkewTableau) -> bool {
    if !t.is_classical() {
        return false;
    }
    let by_cells = leading_by_cells(t);
    let by_diag = leading_by_diagonals(t);
    assert_eq!(by_cells, by_diag, "the two leading criteria disagree on {t:?}");
    by_cells
}

/// `α_µ(κ) = Σ_i A(µ'_i, κ_i)`.
pub fn alpha_of_kappa(n: u32, kappa: &KappaArray) -> RowCoordMatrix {
    let cols = kappa.mu.transpose();
    let mut a = RowCoordMatrix::zero(n);
    for (c, &k) in kappa.values.iter().enumerate() {
        for i in 1..=cols.part(c + 1) {
            a.add(i as Letter, (i + k) as i64, 1);
        }
    }
    a
}

/// Peels a leading matrix into diagonals `A(m, k)`, returning `(m, k)` pairs.
pub fn peel_diagonals(alpha: &RowCoordMatrix) -> Result<Vec<(usize, usize)>> {
    let mut a = alpha.clone();
    let mut out = Vec::new();
    while a.total() > 0 {
        let Some(k) = a.counts().keys().filter(|x| x.0 == 1).map(|x| x.1).min() else {
            return invalid("matrix is not leading: letters above 1 without a matching 1");
        };
        if k < 1 {
            return invalid("row coordinates must be positive");
        }
        let k = (k - 1) as usize;
        let mut m = 0;
        while a.get(m as Letter + 1, (k + m + 1) as i64) > 0 {
            m += 1;
        }
        for i in 1..=m {
            let r = (k + i) as i64;
            let c = a.get(i as Letter, r);
            a.set(i as Letter, r, c - 1);
        }
        out.push((m, k));
    }
    Ok(out)
}

/// `T(µ, κ; ν)` over the alphabet `1..=n`.
pub fn kappa_to_leading(n: u32, kappa: &KappaArray, nu: &Partition) -> Result<SkewTableau> {
    KappaArray::new(kappa.mu.clone(), kappa.values.clone())?;
    if kappa.mu.len() > n as usize {
        return invalid(format!("µ = {} needs more than {n} letters", kappa.mu));
    }
    let a = alpha_of_kappa(n, kappa);
    Ok(rc_decode(&a, &a, nu)?.0)
}

/// Inverse of [`kappa_to_leading`].
pub fn leading_to_kappa(t: &SkewTableau) -> Result<(KappaArray, Partition)> {
    if !is_leading(t) {
        return invalid("tableau is not leading");
    }
    let a = RowCoordMatrix::of_tableau(t);
    let mut diags = peel_diagonals(&a)?;
    // Taller columns first; inside a block, larger shifts first.
    diags.sort_by(|x, y| y.cmp(x));
    let mu = Partition::new(diags.iter().map(|d| d.0).collect())?.transpose();
    let kappa = KappaArray::new(mu, diags.iter().map(|d| d.1).collect())?;
    let nu = kernel(t)?;
    Ok((kappa, nu))
}

/// `RSK(T, T) = (T′, T′)` with `T′ = T(µ, κ + µ′; ν)`.
pub fn linearization_check(t: &SkewTableau) -> Result<bool> {
    let (kappa, nu) = leading_to_kappa(t)?;
    let predicted = kappa_to_leading(t.n(), &kappa.shifted(), &nu)?;
    let image = skew_rsk(&TableauPair::new(t.clone(), t.clone())?);
    Ok(image.p == predicted && image.q == predicted)
}

/// `(V, W; κ; ν)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpsilonImage {
    pub v: ColumnTensor,
    pub w: ColumnTensor,
    pub kappa: KappaArray,
    pub nu: Partition,
}

#[derive(Serialize, Deserialize)]
struct UpsilonJson {
    n: u32,
    #[serde(rename = "V")]
    v: Vec<Vec<Letter>>,
    #[serde(rename = "W")]
    w: Vec<Vec<Letter>>,
    kappa: Vec<usize>,
    nu: Vec<usize>,
}

impl UpsilonImage {
    pub fn mu(&self) -> &Partition {
        &self.kappa.mu
    }

    /// `ℋ(V) + ℋ(W) + |κ| + |ν|`.
    pub fn weight(&self) -> i64 {
        intrinsic_energy(&self.v).0 + intrinsic_energy(&self.w).0 + (self.kappa.size() + self.nu.size()) as i64
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(UpsilonJson {
            n: self.v.n,
            v: self.v.columns.clone(),
            w: self.w.columns.clone(),
            kappa: self.kappa.values.clone(),
            nu: self.nu.parts().to_vec(),
        })
        .expect("plain data")
    }

    pub fn from_json_value(val: &serde_json::Value) -> Result<Self> {
        let j: UpsilonJson = serde_json::from_value(val.clone()).map_err(|e| Error::Invalid(e.to_string()))?;
        let v = ColumnTensor::vst(j.n, j.v)?;
        let w = ColumnTensor::vst(j.n, j.w)?;
        let mu = v.shape().unwrap_or_default();
        Ok(UpsilonImage { v, w, kappa: KappaArray::new(mu, j.kappa)?, nu: Partition::new(j.nu)? })
    }
}

/// `Υ(P, Q)`.
pub fn upsilon(pair: &TableauPair, cap: Option<usize>) -> Result<UpsilonImage> {
    if !pair.p.is_classical() {
        return invalid("Υ is defined on pairs of classical skew shape");
    }
    let st = stabilize_forward(pair, cap)?;
    let ops = leading_map_pair(&st.v, &st.w);
    let lead = apply_op_sequence(pair, &ops)?;
    if lead.p != lead.q {
        return invalid("leading map did not produce a diagonal pair");
    }
    let (kappa, nu) = leading_to_kappa(&lead.p)?;
    if kappa.mu != st.mu {
        return invalid(format!("content {} of T differs from the shape {} of V", kappa.mu, st.mu));
    }
    Ok(UpsilonImage { v: st.v, w: st.w, kappa, nu })
}

/// `Υ⁻¹(V, W; κ; ν) = ℒ⁻¹(T, T)`.
pub fn upsilon_inverse(img: &UpsilonImage) -> Result<TableauPair> {
    let (Some(mv), Some(mw)) = (img.v.shape(), img.w.shape()) else {
        return invalid("V and W must be vertically strict tableaux");
    };
    if mv != mw || mv != img.kappa.mu || img.v.n != img.w.n {
        return invalid("V, W and κ must share the shape µ and the alphabet");
    }
    let t = kappa_to_leading(img.v.n, &img.kappa, &img.nu)?;
    let ops = leading_map_pair(&img.v, &img.w);
    apply_op_sequence(&TableauPair::new(t.clone(), t)?, &ops.invert())
}

/// `Υ̃(π̄) = (V, W; κ)` for non-negatively weighted biwords.
pub fn upsilon_tilde(b: &WeightedBiword) -> Result<(ColumnTensor, ColumnTensor, KappaArray)> {
    if b.min_weight().is_some_and(|w| w < 0) {
        return invalid("Υ̃ needs non-negative weights");
    }
    let pair = ss_forward(&b.to_matrix(), &Partition::empty())?;
    let img = upsilon(&pair, None)?;
    if !img.nu.is_empty() {
        return invalid(format!("ν = {} should be empty", img.nu));
    }
    Ok((img.v, img.w, img.kappa))
}

pub fn upsilon_tilde_inverse(v: &ColumnTensor, w: &ColumnTensor, kappa: &KappaArray) -> Result<WeightedBiword> {
    let img = UpsilonImage { v: v.clone(), w: w.clone(), kappa: kappa.clone(), nu: Partition::empty() };
    let pair = upsilon_inverse(&img)?;
    let (m, nu) = ss_backward(&pair, None)?;
    if !nu.is_empty() {
        return invalid("preimage has a nonempty kernel");
    }
    Ok(WeightedBiword::from_matrix(&m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_constraint() {
        let mu = Partition::new(vec![3, 1, 1]).unwrap();
        assert!(KappaArray::new(mu.clone(), vec![0, 1, 1]).is_ok());
        assert!(KappaArray::new(mu.clone(), vec![0, 1, 2]).is_err());
        assert!(KappaArray::new(mu, vec![0, 1]).is_err());
    }

    #[test]
    fn row_one_needs_letter_one() {
        let t = SkewTableau::from_rows(3, 1, &[(0, &[2])]).unwrap();
        assert!(!is_leading(&t));
    }

    #[test]
    fn zero_kappa_is_yamanouchi() {
        let mu = Partition::new(vec![2, 1]).unwrap();
        let t = kappa_to_leading(2, &KappaArray::zero(mu), &Partition::empty()).unwrap();
        assert_eq!(t, SkewTableau::from_rows(2, 1, &[(0, &[1, 1]), (0, &[2])]).unwrap());
    }
}
