mod common;

use common::{intro_pair, pair, tab};
use skewrsk::crystal::{
    apply_op_sequence, is_demazure_arrow_pair, is_demazure_arrow_vst, kashiwara_vst, kashiwara_word,
    leading_map, leading_map_pair, phi_eps, phi_eps_vst, CrystalOpToken, Dir, Family, OpSequence,
};
use skewrsk::rsk::phi;
use skewrsk::{ColumnTensor, TableauPair};

fn vst(n: u32, cols: &[&[u32]]) -> ColumnTensor {
    ColumnTensor::vst(n, cols.iter().map(|c| c.to_vec()).collect()).unwrap()
}

fn seq(s: &str) -> OpSequence {
    s.parse().unwrap()
}

#[test]
fn word_signature_rule() {
    let w = [4, 2, 3, 2, 1, 2, 3, 1, 4, 3, 3, 2, 1, 2, 4, 1, 2, 3, 3];
    let mut e = w.to_vec();
    e[17] = 2;
    let mut f = w.to_vec();
    f[5] = 3;
    assert_eq!(kashiwara_word(&w, 2, Dir::E), Some(e.clone()));
    assert_eq!(kashiwara_word(&w, 2, Dir::F), Some(f));
    assert_eq!(phi_eps(&w, 2), (2, 2));
    assert_eq!(kashiwara_word(&e, 2, Dir::F), Some(w.to_vec()));
    assert_eq!(kashiwara_word(&[1, 1, 3], 1, Dir::E), None);
}

#[test]
fn zero_operator_on_a_column() {
    let b = ColumnTensor::new(6, vec![vec![1, 3, 4, 5]]).unwrap();
    let e = kashiwara_vst(&b, 0, Dir::E).unwrap();
    assert_eq!(e.columns, vec![vec![3, 4, 5, 6]]);
    assert_eq!(kashiwara_vst(&e, 0, Dir::E), None);
    assert_eq!(kashiwara_vst(&e, 0, Dir::F), Some(b));
}

#[test]
fn leading_vector_is_highest() {
    let lv = ColumnTensor::leading(4, &[3, 2, 2, 1]);
    for i in 1..4 {
        assert_eq!(kashiwara_vst(&lv, i, Dir::E), None);
    }
    assert!(leading_map(&lv).ops.is_empty());
}

fn worked_v() -> ColumnTensor {
    vst(4, &[&[1, 2, 4], &[3], &[1]])
}

fn worked_pair() -> TableauPair {
    pair(
        tab(4, 1, &[(3, &[1]), (1, &[1, 3]), (0, &[2, 4])]),
        tab(4, 1, &[(3, &[1]), (1, &[2, 2]), (0, &[1, 3])]),
    )
}

#[test]
fn worked_leading_map_chain() {
    let steps: [(u32, Dir, &[&[u32]]); 5] = [
        (2, Dir::F, &[&[1, 3, 4], &[3], &[1]]),
        (3, Dir::F, &[&[1, 3, 4], &[4], &[1]]),
        (0, Dir::F, &[&[1, 3, 4], &[1], &[1]]),
        (2, Dir::E, &[&[1, 2, 4], &[1], &[1]]),
        (3, Dir::E, &[&[1, 2, 3], &[1], &[1]]),
    ];
    let mut cur = worked_v();
    for (i, d, next) in steps {
        let tok = CrystalOpToken::new(Family::Single, i, d);
        assert!(is_demazure_arrow_vst(&cur, tok), "{tok} at {cur}");
        cur = kashiwara_vst(&cur, i, d).unwrap();
        assert_eq!(cur, vst(4, next));
    }
    assert_eq!(cur, ColumnTensor::leading(4, &[3, 1, 1]));
    let walk = leading_map(&worked_v());
    assert_eq!(walk.total(), 1);
    assert_eq!(apply_op_sequence(&worked_v(), &walk.ops).unwrap(), cur);
    let w = vst(4, &[&[1, 2, 3], &[1], &[2]]);
    assert_eq!(leading_map(&w).total(), 0);
    assert_eq!(leading_map(&w).ops, seq("E[1]"));
}

#[test]
fn worked_pair_leading_map() {
    let target = tab(4, 1, &[(3, &[1]), (0, &[1, 1, 2]), (0, &[3])]);
    let ops = seq("E2[1] F1[2] F1[3] F1[0] E1[2] E1[3]");
    let out = apply_op_sequence(&worked_pair(), &ops).unwrap();
    assert_eq!(out, pair(target.clone(), target.clone()));
    let (v, w) = phi(&worked_pair()).unwrap();
    assert_eq!(v, worked_v());
    let ours = leading_map_pair(&v, &w);
    assert_eq!(apply_op_sequence(&worked_pair(), &ours).unwrap(), pair(target.clone(), target));
    // The family-1 zero arrow of the chain is Demazure at pair level too.
    let before = apply_op_sequence(&worked_pair(), &seq("E2[1] F1[2] F1[3]")).unwrap();
    assert!(is_demazure_arrow_pair(&before, CrystalOpToken::f(Family::One, 0)));
}

#[test]
fn intro_leading_maps() {
    let v = vst(5, &[&[1, 2, 3], &[1, 2], &[3, 5], &[4]]);
    let w = vst(5, &[&[1, 2, 3], &[2, 5], &[2, 3], &[3]]);
    let lv = ColumnTensor::leading(5, &[3, 2, 2, 1]);
    let lv_ops = seq("E[2] E[1] E[3] E[2] E[1] E[4] E[3] E[2]");
    let lw_ops = seq("E[2] E[1]^3 E[2] F[1]^2 F[3] F[4] F[0] E[1] E[4] E[3]");
    assert_eq!(apply_op_sequence(&v, &lv_ops).unwrap(), lv);
    assert_eq!(apply_op_sequence(&w, &lw_ops).unwrap(), lv);
    assert_eq!(lv_ops.zero_balance() + lw_ops.zero_balance(), 1);
    assert_eq!(leading_map(&v).total() + leading_map(&w).total(), 1);

    let intro = intro_pair();
    assert_eq!(phi(&intro).unwrap(), (v.clone(), w.clone()));
    let t = tab(5, 1, &[(3, &[1]), (0, &[1, 1, 1, 2]), (0, &[2, 2, 3])]);
    let relabel = |s: &OpSequence, fam: Family| {
        OpSequence(s.0.iter().map(|x| CrystalOpToken { family: fam, ..*x }).collect())
    };
    let listed = relabel(&lv_ops, Family::One).concat(&relabel(&lw_ops, Family::Two));
    assert_eq!(apply_op_sequence(&intro, &listed).unwrap(), pair(t.clone(), t.clone()));
    let ours = leading_map_pair(&v, &w);
    assert_eq!(apply_op_sequence(&intro, &ours).unwrap(), pair(t.clone(), t));
}

#[test]
fn energy_example_epsilons() {
    // b = (2,2,1;3) read as columns (2,3) ⊗ (2) ⊗ (1).
    let b = vst(3, &[&[2, 3], &[2], &[1]]);
    let walk = leading_map(&b);
    assert_eq!(walk.grading(), vec![1, 1, 0]);
    assert_eq!(apply_op_sequence(&b, &walk.ops).unwrap(), ColumnTensor::leading(3, &[2, 1, 1]));
    assert_eq!(phi_eps_vst(&ColumnTensor::leading(3, &[2, 1, 1]), 1).1, 0);
}
