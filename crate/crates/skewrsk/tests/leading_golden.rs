mod common;

use common::{intro_pair, pair, tab};
use skewrsk::leading::{
    is_leading, kappa_to_leading, leading_to_kappa, linearization_check, upsilon, upsilon_inverse, KappaArray,
    UpsilonImage,
};
use skewrsk::rmatrix::intrinsic_energy;
use skewrsk::{ColumnTensor, Partition};

fn part(p: &[usize]) -> Partition {
    Partition::new(p.to_vec()).unwrap()
}

#[test]
fn displayed_leading_tableau() {
    let mu = part(&[4, 2, 2, 1]);
    let kappa = KappaArray::new(mu.clone(), vec![1, 3, 2, 1]).unwrap();
    assert_eq!(kappa.blocks(), vec![vec![1], vec![3], vec![2, 1]]);
    let t = kappa_to_leading(4, &kappa, &part(&[1, 1])).unwrap();
    let expected = tab(4, 1, &[(5, &[]), (3, &[1, 1]), (1, &[1, 2]), (0, &[1, 3]), (0, &[2, 4]), (0, &[3])]);
    assert_eq!(t, expected);
    assert!(is_leading(&t));
    assert_eq!(leading_to_kappa(&t).unwrap(), (kappa, part(&[1, 1])));
    // ρ = (κ⁺)′ + ν.
    assert_eq!(t.rho().unwrap(), part(&[5, 3, 1]));
}

#[test]
fn worked_example_tableau() {
    let t = tab(4, 1, &[(3, &[1]), (0, &[1, 1, 2]), (0, &[3])]);
    assert!(is_leading(&t));
    let (kappa, nu) = leading_to_kappa(&t).unwrap();
    assert_eq!(kappa.mu, part(&[3, 1, 1]));
    assert_eq!(kappa.values, vec![0, 1, 1]);
    assert_eq!(nu, part(&[1]));
    assert!(linearization_check(&t).unwrap());
    let t2 = kappa_to_leading(4, &KappaArray::new(part(&[3, 1, 1]), vec![3, 2, 2]).unwrap(), &part(&[1])).unwrap();
    let image = skewrsk::skew_rsk(&pair(t.clone(), t.clone()));
    assert_eq!(image.p, t2);
}

#[test]
fn non_leading() {
    let t = tab(3, 1, &[(1, &[1]), (0, &[1, 3])]);
    assert!(!is_leading(&t));
    assert!(leading_to_kappa(&t).is_err());
}

#[test]
fn worked_upsilon() {
    let p = tab(4, 1, &[(3, &[1]), (1, &[1, 3]), (0, &[2, 4])]);
    let q = tab(4, 1, &[(3, &[1]), (1, &[2, 2]), (0, &[1, 3])]);
    let pq = pair(p, q);
    let img = upsilon(&pq, None).unwrap();
    assert_eq!(img.v, ColumnTensor::new(4, vec![vec![1, 2, 4], vec![3], vec![1]]).unwrap());
    assert_eq!(img.w, ColumnTensor::new(4, vec![vec![1, 2, 3], vec![1], vec![2]]).unwrap());
    assert_eq!(img.kappa.values, vec![0, 1, 1]);
    assert_eq!(img.nu, part(&[1]));
    assert_eq!(intrinsic_energy(&img.v).0, 1);
    assert_eq!(intrinsic_energy(&img.w).0, 0);
    assert_eq!(img.weight(), 4);
    assert_eq!(pq.p.rho().unwrap().size(), 4);
    assert_eq!(upsilon_inverse(&img).unwrap(), pq);
    let json = img.to_json_value();
    assert_eq!(UpsilonImage::from_json_value(&json).unwrap(), img);
}

#[test]
fn intro_upsilon() {
    let pq = intro_pair();
    let img = upsilon(&pq, None).unwrap();
    assert_eq!(img.v, ColumnTensor::new(5, vec![vec![1, 2, 3], vec![1, 2], vec![3, 5], vec![4]]).unwrap());
    assert_eq!(img.w, ColumnTensor::new(5, vec![vec![1, 2, 3], vec![2, 5], vec![2, 3], vec![3]]).unwrap());
    assert_eq!(*img.mu(), part(&[4, 3, 1]));
    assert_eq!(img.kappa.values, vec![0, 1, 1, 1]);
    assert!(img.nu.is_empty());
    assert_eq!(img.weight(), pq.p.rho().unwrap().size() as i64);
    assert_eq!(upsilon_inverse(&img).unwrap(), pq);
}

#[test]
fn straight_leading_pair() {
    let mu = part(&[3, 1]);
    let lv = ColumnTensor::leading(3, &[2, 1, 1]);
    let img = UpsilonImage { v: lv.clone(), w: lv, kappa: KappaArray::zero(mu.clone()), nu: Partition::empty() };
    let back = upsilon_inverse(&img).unwrap();
    assert_eq!(back.p, tab(3, 1, &[(0, &[1, 1, 1]), (0, &[2])]));
    assert_eq!(back.p, back.q);
}
