//! Replays of the reference examples with their expected outputs embedded.

use std::collections::BTreeMap;
use std::fmt::Debug;

use serde::Serialize;

use crate::crystal::{kashiwara_word, phi_eps, Dir};
use crate::cylinder::{ss_backward, ss_forward};
use crate::leading::{is_leading, kappa_to_leading, leading_to_kappa, upsilon, upsilon_inverse, KappaArray, UpsilonImage};
use crate::partition::Partition;
use crate::rmatrix::{combinatorial_r, intrinsic_energy, r_delta_steps};
use crate::rsk::{iota2, iota2_inverse, run_dynamics, skew_rsk, skew_rsk_general, skew_rsk_inverse, TableauPair};
use crate::scattering::phase_shift_verify;
use crate::tableau::{Letter, Row, SkewTableau};
use crate::vst::ColumnTensor;
use crate::MatrixBar;

type Check = std::result::Result<(), String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldenOutcome {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

fn eq<T: PartialEq + Debug>(what: &str, got: T, want: T) -> Check {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn ok<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn tab(n: u32, base: i64, rows: &[(usize, &[Letter])]) -> SkewTableau {
    SkewTableau::from_rows(n, base, rows).expect("embedded tableau")
}

fn pair(p: SkewTableau, q: SkewTableau) -> TableauPair {
    TableauPair::new(p, q).expect("embedded pair")
}

fn vst(n: u32, cols: &[&[Letter]]) -> ColumnTensor {
    ColumnTensor::new(n, cols.iter().map(|c| c.to_vec()).collect()).expect("embedded tensor")
}

/// A tableau from labeled column segments `(column, top row, labels)`; unlabeled rows
/// between labeled ones take the outer width of the next labeled row below.
fn from_columns(n: u32, cols: &[(usize, i64, &[Letter])]) -> SkewTableau {
    let mut cells = BTreeMap::<i64, Vec<(usize, Letter)>>::new();
    for &(c, top, labels) in cols {
        for (k, &l) in labels.iter().enumerate() {
            cells.entry(top + k as i64).or_default().push((c, l));
        }
    }
    let lo = *cells.keys().next().expect("cells");
    let hi = *cells.keys().last().expect("cells");
    let mut rows = Vec::new();
    let mut below = 0;
    for r in (lo..=hi).rev() {
        match cells.get_mut(&r) {
            Some(v) => {
                v.sort();
                let inner = v[0].0 - 1;
                below = inner + v.len();
                rows.push(Row::new(inner, v.iter().map(|x| x.1).collect()));
            }
            None => rows.push(Row::new(below, Vec::new())),
        }
    }
    rows.reverse();
    SkewTableau::new(n, lo, rows).expect("embedded tableau")
}

/// The running example pair over five letters.
pub fn intro_pair() -> TableauPair {
    pair(
        tab(5, 1, &[(3, &[1]), (1, &[2, 3, 4]), (0, &[1, 3, 5]), (0, &[2])]),
        tab(5, 1, &[(3, &[2]), (1, &[1, 3, 3]), (0, &[2, 2, 5]), (0, &[3])]),
    )
}

/// The pair whose leading map and `Υ` are worked out step by step.
pub fn worked_pair() -> TableauPair {
    pair(
        tab(4, 1, &[(3, &[1]), (1, &[1, 3]), (0, &[2, 4])]),
        tab(4, 1, &[(3, &[1]), (1, &[2, 2]), (0, &[1, 3])]),
    )
}

/// The four-soliton pair of the phase-shift example, rebuilt from its asymptotic data.
pub fn four_solitons() -> TableauPair {
    let img = UpsilonImage {
        v: vst(7, &[&[3, 5, 6, 7], &[1, 4], &[2, 3], &[1]]),
        w: vst(7, &[&[2, 3, 5, 6], &[3, 5], &[1, 2], &[4]]),
        kappa: KappaArray::new(Partition::new(vec![4, 3, 1, 1]).expect("partition"), vec![0, 3, 2, 6]).expect("κ"),
        nu: Partition::empty(),
    };
    upsilon_inverse(&img).expect("embedded image")
}

fn iota2_case() -> Check {
    let want = pair(
        tab(5, 1, &[(3, &[1]), (2, &[3, 4]), (0, &[1, 2, 5]), (0, &[2, 3])]),
        tab(5, 1, &[(3, &[1]), (2, &[2, 2]), (0, &[1, 1, 4]), (0, &[2, 5])]),
    );
    eq("ι₂", iota2(&intro_pair()), want)
}

fn iota2_inverse_case() -> Check {
    let want = pair(
        tab(5, 0, &[(3, &[1]), (3, &[4]), (1, &[2, 3, 5]), (0, &[1, 3]), (0, &[2])]),
        tab(5, 0, &[(3, &[1]), (3, &[3]), (1, &[2, 4, 4]), (0, &[3, 3]), (0, &[4])]),
    );
    eq("ι₂⁻¹", iota2_inverse(&intro_pair()), want)
}

fn rsk_step_case() -> Check {
    let fwd = pair(
        tab(5, 1, &[(4, &[]), (4, &[]), (3, &[4]), (1, &[1, 3]), (0, &[1, 2, 5]), (0, &[2, 3])]),
        tab(5, 1, &[(4, &[]), (4, &[]), (3, &[3]), (1, &[1, 2]), (0, &[2, 2, 3]), (0, &[3, 5])]),
    );
    eq("RSK", skew_rsk(&intro_pair()), fwd)?;
    let back = pair(
        tab(5, -2, &[(3, &[1]), (3, &[4]), (2, &[2, 5]), (0, &[1, 3, 3]), (0, &[2])]),
        tab(5, -2, &[(3, &[2]), (3, &[3]), (2, &[1, 5]), (0, &[2, 2, 3]), (0, &[3])]),
    );
    eq("RSK⁻¹", skew_rsk_inverse(&intro_pair()), back)
}

fn rsk_product_case() -> Check {
    let p = tab(3, 1, &[(3, &[2]), (2, &[1, 3]), (0, &[1, 2])]);
    let q = tab(3, 1, &[(3, &[1]), (2, &[2, 2]), (0, &[1, 3])]);
    let (p2, q2) = ok(skew_rsk_general(&p, &q))?;
    eq("P", p2, tab(3, 1, &[(4, &[]), (4, &[]), (2, &[2]), (0, &[1, 1, 3]), (0, &[2])]))?;
    eq("Q", q2, tab(3, 1, &[(4, &[]), (4, &[]), (2, &[1]), (0, &[1, 2, 2]), (0, &[3])]))
}

fn dynamics_forward_case() -> Check {
    let t10 = pair(
        from_columns(5, &[(4, 12, &[4]), (3, 22, &[3, 5]), (2, 23, &[1, 2]), (1, 31, &[1, 2, 3])]),
        from_columns(5, &[(4, 12, &[3]), (3, 22, &[2, 3]), (2, 23, &[2, 5]), (1, 31, &[1, 2, 3])]),
    );
    let t11 = pair(
        from_columns(5, &[(4, 13, &[4]), (3, 24, &[3, 5]), (2, 25, &[1, 2]), (1, 34, &[1, 2, 3])]),
        from_columns(5, &[(4, 13, &[3]), (3, 24, &[2, 3]), (2, 25, &[2, 5]), (1, 34, &[1, 2, 3])]),
    );
    eq("t = 10", run_dynamics(&intro_pair(), 10), t10)?;
    eq("t = 11", run_dynamics(&intro_pair(), 11), t11)
}

fn dynamics_backward_case() -> Check {
    let m10 = pair(
        from_columns(5, &[(4, -29, &[1, 4, 5]), (3, -18, &[2, 3]), (2, -17, &[1, 3]), (1, -8, &[2])]),
        from_columns(5, &[(4, -29, &[2, 3, 5]), (3, -18, &[1, 3]), (2, -17, &[2, 3]), (1, -8, &[2])]),
    );
    eq("t = -10", run_dynamics(&intro_pair(), -10), m10)
}

fn sagan_stanley_case() -> Check {
    let (mb, nu) = ok(ss_backward(&intro_pair(), None))?;
    let want = ok(MatrixBar::from_entries(
        5,
        &[(1, 3, 1, 1), (1, 5, 0, 1), (2, 1, 0, 1), (2, 2, 1, 1), (3, 2, 1, 1), (3, 3, 1, 1), (4, 3, 0, 1), (5, 2, 0, 1)],
    ))?;
    eq("ν", nu.clone(), Partition::empty())?;
    eq("M̄", mb.clone(), want)?;
    eq("inverse", ok(ss_forward(&mb, &nu))?, intro_pair())
}

fn kashiwara_word_case() -> Check {
    let w = [4, 2, 3, 2, 1, 2, 3, 1, 4, 3, 3, 2, 1, 2, 4, 1, 2, 3, 3];
    let mut e = w.to_vec();
    e[17] = 2;
    let mut f = w.to_vec();
    f[5] = 3;
    eq("E₂", kashiwara_word(&w, 2, Dir::E), Some(e))?;
    eq("F₂", kashiwara_word(&w, 2, Dir::F), Some(f))?;
    eq("(φ₂, ε₂)", phi_eps(&w, 2), (2, 2))
}

fn r_matrix_case() -> Check {
    eq("R", combinatorial_r(&[2, 3, 6], &[1, 2, 4, 5]), (vec![2, 3, 5, 6], vec![1, 2, 4], 1))
}

fn leading_tableau_case() -> Check {
    let mu = Partition::new(vec![4, 2, 2, 1]).expect("partition");
    let nu = Partition::new(vec![1, 1]).expect("partition");
    let kappa = ok(KappaArray::new(mu, vec![1, 3, 2, 1]))?;
    let t = ok(kappa_to_leading(4, &kappa, &nu))?;
    eq("T", t.clone(), tab(4, 1, &[(5, &[]), (3, &[1, 1]), (1, &[1, 2]), (0, &[1, 3]), (0, &[2, 4]), (0, &[3])]))?;
    eq("leading", is_leading(&t), true)?;
    eq("decode", ok(leading_to_kappa(&t))?, (kappa, nu))
}

fn upsilon_worked_case() -> Check {
    let img = ok(upsilon(&worked_pair(), None))?;
    eq("V", img.v.clone(), vst(4, &[&[1, 2, 4], &[3], &[1]]))?;
    eq("W", img.w.clone(), vst(4, &[&[1, 2, 3], &[1], &[2]]))?;
    eq("κ", img.kappa.values.clone(), vec![0, 1, 1])?;
    eq("ν", img.nu.parts().to_vec(), vec![1])?;
    eq("ℋ(V), ℋ(W)", (intrinsic_energy(&img.v).0, intrinsic_energy(&img.w).0), (1, 0))?;
    eq("Υ⁻¹", ok(upsilon_inverse(&img))?, worked_pair())
}

fn upsilon_intro_case() -> Check {
    let img = ok(upsilon(&intro_pair(), None))?;
    eq("V", img.v.clone(), vst(5, &[&[1, 2, 3], &[1, 2], &[3, 5], &[4]]))?;
    eq("W", img.w.clone(), vst(5, &[&[1, 2, 3], &[2, 5], &[2, 3], &[3]]))?;
    eq("µ", img.mu().parts().to_vec(), vec![4, 3, 1])?;
    eq("κ", img.kappa.values.clone(), vec![0, 1, 1, 1])?;
    eq("ν", img.nu.is_empty(), true)?;
    eq("Υ⁻¹", ok(upsilon_inverse(&img))?, intro_pair())
}

fn shape_reversing_case() -> Check {
    let v = vst(7, &[&[3, 5, 6, 7], &[1, 4], &[2, 3], &[1]]);
    let expected: [&[&[Letter]]; 6] = [
        &[&[3, 7], &[1, 4, 5, 6], &[2, 3], &[1]],
        &[&[3, 7], &[1, 6], &[2, 3, 4, 5], &[1]],
        &[&[3, 7], &[1, 6], &[5], &[1, 2, 3, 4]],
        &[&[3, 7], &[1, 6], &[5], &[1, 2, 3, 4]],
        &[&[3, 7], &[1], &[5, 6], &[1, 2, 3, 4]],
        &[&[7], &[1, 3], &[5, 6], &[1, 2, 3, 4]],
    ];
    let steps = r_delta_steps(&v);
    eq("order", steps.iter().map(|s| s.0).collect::<Vec<_>>(), vec![0, 1, 2, 0, 1, 0])?;
    for (k, (s, e)) in steps.iter().zip(expected).enumerate() {
        eq(&format!("step {}", k + 1), s.1.clone(), vst(7, e))?;
    }
    Ok(())
}

fn phase_shift_case() -> Check {
    let rep = ok(phase_shift_verify(&four_solitons(), Some(10), None))?;
    let got: Vec<(usize, i64)> = rep.columns.iter().map(|c| (c.observed, c.predicted)).collect();
    eq("ρ' at t = 10 vs prediction", got, vec![(44, 44), (27, 27), (23, 23), (16, 16)])
}

pub const CASES: [(&str, fn() -> Check); 14] = [
    ("iota2", iota2_case),
    ("iota2-inverse", iota2_inverse_case),
    ("rsk-step", rsk_step_case),
    ("rsk-product", rsk_product_case),
    ("dynamics-t10-t11", dynamics_forward_case),
    ("dynamics-t-minus-10", dynamics_backward_case),
    ("sagan-stanley-matrix", sagan_stanley_case),
    ("kashiwara-word", kashiwara_word_case),
    ("r-matrix", r_matrix_case),
    ("leading-tableau", leading_tableau_case),
    ("upsilon-worked", upsilon_worked_case),
    ("upsilon-intro", upsilon_intro_case),
    ("shape-reversing-chain", shape_reversing_case),
    ("phase-shift", phase_shift_case),
];

pub fn run_all() -> Vec<GoldenOutcome> {
    CASES
        .iter()
        .map(|(name, f)| match f() {
            Ok(()) => GoldenOutcome { name, ok: true, detail: String::new() },
            Err(detail) => GoldenOutcome { name, ok: false, detail },
        })
        .collect()
}
