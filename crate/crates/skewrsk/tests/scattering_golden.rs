use skewrsk::leading::{upsilon_inverse, KappaArray, UpsilonImage};
use skewrsk::rmatrix::r_delta;
use skewrsk::scattering::{conservation_check, evacuation_check, phase_shift_verify};
use skewrsk::{stabilize_backward, stabilize_forward, ColumnTensor, Partition, SkewTableau, TableauPair};

fn vst(cols: &[&[u32]]) -> ColumnTensor {
    ColumnTensor::new(7, cols.iter().map(|c| c.to_vec()).collect()).unwrap()
}

/// The backward-stable pair with the given asymptotics; κ comes from
/// `ρ'_i = κ⁺_i + ℋ_i(V⁻) + ℋ_i(W⁻)` with `ρ' = (9,6,5,0)`.
fn four_solitons() -> TableauPair {
    let img = UpsilonImage {
        v: vst(&[&[3, 5, 6, 7], &[1, 4], &[2, 3], &[1]]),
        w: vst(&[&[2, 3, 5, 6], &[3, 5], &[1, 2], &[4]]),
        kappa: KappaArray::new(Partition::new(vec![4, 3, 1, 1]).unwrap(), vec![0, 3, 2, 6]).unwrap(),
        nu: Partition::empty(),
    };
    upsilon_inverse(&img).unwrap()
}

#[test]
fn rebuilt_pair() {
    let pq = four_solitons();
    let p = SkewTableau::from_rows(
        7,
        1,
        &[(3, &[1]), (3, &[2]), (3, &[3]), (3, &[4]), (3, &[]), (2, &[5]), (1, &[1, 6]), (1, &[3]), (1, &[]), (0, &[7])],
    )
    .unwrap();
    assert_eq!(pq.p, p);
    let (t, _, vm, wm) = stabilize_backward(&pq, None).unwrap();
    assert_eq!(t, 0);
    assert_eq!(vm, vst(&[&[7], &[1, 3], &[5, 6], &[1, 2, 3, 4]]));
    assert_eq!(wm, vst(&[&[5], &[2, 3], &[3, 6], &[1, 2, 4, 5]]));
    assert_eq!(stabilize_forward(&pq, None).unwrap().v.heights(), vec![4, 2, 2, 1]);
    assert_eq!(vm.heights(), vec![1, 2, 2, 4]);
    assert!(conservation_check(&pq, None).unwrap());
    assert!(evacuation_check(&pq, None).unwrap());
}

#[test]
fn phase_shifts() {
    let rep = phase_shift_verify(&four_solitons(), Some(10), None).unwrap();
    assert_eq!(rep.h_v, vec![3, 2, 1, 0]);
    assert_eq!(rep.h_w, vec![1, 2, 0, 0]);
    assert_eq!(rep.h_v_minus, vec![2, 2, 2, 0]);
    assert_eq!(rep.h_w_minus, vec![1, 1, 1, 0]);
    let got: Vec<(usize, usize, usize, usize)> =
        rep.columns.iter().map(|c| (c.column, c.partner, c.initial, c.observed)).collect();
    assert_eq!(got, vec![(1, 4, 0, 44), (2, 2, 6, 27), (3, 3, 5, 23), (4, 1, 9, 16)]);
    assert!(rep.all_match());
}

#[test]
fn leading_pair_has_no_phase_shift() {
    // κ = (0, 2, 1) with µ' = (2, 1, 1): the blocks increase to the left.
    let t = skewrsk::leading::kappa_to_leading(
        3,
        &KappaArray::new(Partition::new(vec![3, 1]).unwrap(), vec![3, 1, 0]).unwrap(),
        &Partition::empty(),
    )
    .unwrap();
    let pq = TableauPair::new(t.clone(), t).unwrap();
    let rep = phase_shift_verify(&pq, None, None);
    // (T, T) with κ decreasing is RSK-stable already, not RSK⁻¹-stable.
    assert!(rep.is_err());
    let t2 = skewrsk::leading::kappa_to_leading(
        3,
        &KappaArray::new(Partition::new(vec![3, 1]).unwrap(), vec![0, 2, 1]).unwrap(),
        &Partition::empty(),
    )
    .unwrap();
    let pq = TableauPair::new(t2.clone(), t2).unwrap();
    let rep = phase_shift_verify(&pq, Some(5), None).unwrap();
    assert!(rep.h_v.iter().chain(&rep.h_w).chain(&rep.h_v_minus).chain(&rep.h_w_minus).all(|&h| h == 0));
    assert!(rep.all_match());
}

#[test]
fn single_column() {
    let v = vst(&[&[2, 5]]);
    assert_eq!(r_delta(&v), v);
}
