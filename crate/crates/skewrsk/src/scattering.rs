//! Soliton picture of the dynamics: conservation of column heights, exchange
//! of column contents through `R_δ`, and phase shifts.

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::partition::{rectangular_decomposition, Partition};
use crate::rmatrix::{intrinsic_energy, r_delta};
use crate::rowcoord::kernel_pair;
use crate::rsk::{run_dynamics, stabilize_backward, stabilize_forward, TableauPair};
use crate::tableau::SkewTableau;
use crate::vst::ColumnTensor;

/// Column lengths `ρ'_1, …, ρ'_k` of the empty shape, padded with zeros.
pub fn empty_columns(t: &SkewTableau, k: usize) -> Result<Vec<usize>> {
    let rho = t.rho()?.transpose();
    Ok((1..=k).map(|i| rho.part(i)).collect())
}

/// Forward heights are `µ'`, backward heights are `µ'` reversed.
pub fn conservation_check(pair: &TableauPair, cap: Option<usize>) -> Result<bool> {
    let fwd = stabilize_forward(pair, cap)?;
    let (_, _, v_minus, _) = stabilize_backward(pair, cap)?;
    let mut back = v_minus.heights();
    back.reverse();
    Ok(back == fwd.v.heights())
}

/// `V⁻ = R_δ(V)` and `W⁻ = R_δ(W)`.
pub fn evacuation_check(pair: &TableauPair, cap: Option<usize>) -> Result<bool> {
    let fwd = stabilize_forward(pair, cap)?;
    let (_, _, v_minus, w_minus) = stabilize_backward(pair, cap)?;
    Ok(r_delta(&fwd.v) == v_minus && r_delta(&fwd.w) == w_minus)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColumnShift {
    /// Column of the final shape.
    pub column: usize,
    /// Column of the initial shape it is paired with.
    pub partner: usize,
    pub height: usize,
    pub initial: usize,
    pub observed: usize,
    pub predicted: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScatteringReport {
    pub mu: Partition,
    pub t: usize,
    pub v: ColumnTensor,
    pub w: ColumnTensor,
    pub v_minus: ColumnTensor,
    pub w_minus: ColumnTensor,
    pub h_v: Vec<i64>,
    pub h_w: Vec<i64>,
    pub h_v_minus: Vec<i64>,
    pub h_w_minus: Vec<i64>,
    pub columns: Vec<ColumnShift>,
}

impl ScatteringReport {
    pub fn all_match(&self) -> bool {
        self.columns.iter().all(|c| c.observed as i64 == c.predicted)
    }
}

/// Compares the empty shape after `t` steps with the phase shift prediction.
/// `t = None` uses the first time the pair is RSK-stable.
pub fn phase_shift_verify(pair: &TableauPair, t: Option<usize>, cap: Option<usize>) -> Result<ScatteringReport> {
    let (t_back, _, v_minus, w_minus) = stabilize_backward(pair, cap)?;
    if t_back != 0 {
        return invalid("pair is not RSK⁻¹-stable");
    }
    if !kernel_pair(&pair.p, &pair.q)?.is_empty() {
        return invalid("pair has a nonempty kernel");
    }
    let fwd = stabilize_forward(pair, cap)?;
    let t = t.unwrap_or(fwd.t);
    if t < fwd.t {
        return invalid(format!("pair is only RSK-stable from t = {}", fwd.t));
    }
    let last = run_dynamics(pair, t as i64);
    let mu = fwd.mu.clone();
    let width = mu.part(1);
    let cols = mu.transpose();
    let rho0 = empty_columns(&pair.p, width)?;
    let rho1 = empty_columns(&last.p, width)?;
    let (h_v, h_w) = (intrinsic_energy(&fwd.v).1, intrinsic_energy(&fwd.w).1);
    let (h_vm, h_wm) = (intrinsic_energy(&v_minus).1, intrinsic_energy(&w_minus).1);
    let blocks = rectangular_decomposition(&mu);
    let mut columns = Vec::with_capacity(width);
    for b in &blocks {
        // R_i = b.start − 1, R̃_i = R_N − R_{i+1}.
        let r_tilde = width - b.end;
        for j in 1..=b.width() {
            let c = b.start - 1 + j;
            let d = r_tilde + j;
            let height = cols.part(b.end);
            let predicted = rho0[d - 1] as i64 + (t * height) as i64 + h_v[c - 1] + h_w[c - 1]
                - h_vm[d - 1]
                - h_wm[d - 1];
            columns.push(ColumnShift { column: c, partner: d, height, initial: rho0[d - 1], observed: rho1[c - 1], predicted });
        }
    }
    Ok(ScatteringReport {
        mu,
        t,
        v: fwd.v,
        w: fwd.w,
        v_minus,
        w_minus,
        h_v,
        h_w,
        h_v_minus: h_vm,
        h_w_minus: h_wm,
        columns,
    })
}
