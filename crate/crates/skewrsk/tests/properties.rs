use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;
use rand::Rng;
use skewrsk::biword::WeightedBiword;
use skewrsk::crystal::{kashiwara_matrix, kashiwara_pair, CrystalOpToken, Family};
use skewrsk::cylinder::{ss_backward, ss_forward};
use skewrsk::gen;
use skewrsk::greene::{extended_schensted_check, mu_from_decreasing, mu_from_increasing};
use skewrsk::knuth::{gen_dual_knuth_neighbors, gen_knuth_neighbors, knuth_neighbors, WeightedLetter};
use skewrsk::leading::{upsilon, upsilon_inverse};
use skewrsk::rmatrix::combinatorial_r;
use skewrsk::rowcoord::kernel_pair;
use skewrsk::symfunc::{Bounds, Series, Space};
use skewrsk::vst::subsets;
use skewrsk::{iota2, iota2_inverse, run_dynamics, skew_rsk, skew_rsk_inverse};

fn many() -> ProptestConfig {
    ProptestConfig::with_cases(1000)
}

fn some() -> ProptestConfig {
    ProptestConfig::with_cases(200)
}

proptest! {
    #![proptest_config(many())]

    #[test]
    fn upsilon_round_trip(seed: u64, n in 1u32..=4) {
        let cp = gen::classical_pair(&mut gen::rng(seed), n, 8);
        let img = upsilon(&cp, None).unwrap();
        prop_assert_eq!(upsilon_inverse(&img).unwrap(), cp);
    }

    #[test]
    fn ss_round_trip_and_weight(seed: u64, n in 1u32..=4) {
        let cp = gen::classical_pair(&mut gen::rng(seed), n, 8);
        let (m, nu) = ss_backward(&cp, None).unwrap();
        let rho = cp.p.rho().unwrap().size() as i64;
        prop_assert_eq!(m.wt() + nu.size() as i64, rho);
        prop_assert_eq!(ss_forward(&m, &nu).unwrap(), cp);
    }

    #[test]
    fn upsilon_weight(seed: u64, n in 1u32..=4) {
        let cp = gen::classical_pair(&mut gen::rng(seed), n, 8);
        let img = upsilon(&cp, None).unwrap();
        prop_assert_eq!(img.weight(), cp.p.rho().unwrap().size() as i64);
    }

    #[test]
    fn iota_and_rsk_invert(seed: u64, n in 1u32..=4) {
        let gp = gen::pair(&mut gen::rng(seed), n, 8);
        prop_assert_eq!(&iota2_inverse(&iota2(&gp)), &gp);
        prop_assert_eq!(&skew_rsk_inverse(&skew_rsk(&gp)), &gp);
    }

    #[test]
    fn biword_invert_involution(seed: u64, n in 1u32..=4, units in 0usize..=7) {
        let b = WeightedBiword::from_matrix(&gen::matrix(&mut gen::rng(seed), n, units, -3, 3));
        prop_assert_eq!(b.invert().invert(), b);
    }

    #[test]
    fn schensted_first_row(seed: u64, n in 1u32..=4, units in 0usize..=6) {
        let mut r = gen::rng(seed);
        let m = gen::matrix(&mut r, n, units, 0, 3);
        let nu = gen::partition(&mut r, 5, 3, 3);
        prop_assert!(extended_schensted_check(&m, &nu).unwrap());
    }
}

proptest! {
    #![proptest_config(some())]

    #[test]
    fn dynamics_is_a_group_action(seed: u64, n in 1u32..=3, a in -4i64..=4, b in -4i64..=4) {
        let p = gen::classical_pair(&mut gen::rng(seed), n, 6);
        prop_assert_eq!(run_dynamics(&run_dynamics(&p, a), b), run_dynamics(&p, a + b));
    }

    #[test]
    fn kernel_is_conserved(seed: u64, n in 1u32..=3) {
        let p = gen::classical_pair(&mut gen::rng(seed), n, 6);
        let k0 = kernel_pair(&p.p, &p.q).unwrap();
        // The kernel is read off classical shapes only.
        for t in -5..=5 {
            let later = run_dynamics(&p, t);
            if later.p.is_classical() {
                prop_assert_eq!(kernel_pair(&later.p, &later.q).unwrap(), k0.clone(), "t = {}", t);
            }
        }
    }

    #[test]
    fn greene_sides_agree(seed: u64, n in 1u32..=4, units in 0usize..=7) {
        let m = gen::matrix(&mut gen::rng(seed), n, units, -2, 2);
        prop_assert_eq!(mu_from_increasing(&m, None).unwrap(), mu_from_decreasing(&m, None).unwrap());
    }

    #[test]
    fn crystal_ops_undo(seed: u64, n in 2u32..=4) {
        let mut r = gen::rng(seed);
        let p = gen::pair(&mut r, n, 7);
        let m = gen::matrix(&mut r, n, 6, -2, 2);
        for t in CrystalOpToken::all(n, &[Family::One, Family::Two]) {
            if let Some(x) = kashiwara_pair(&p, t) {
                prop_assert_eq!(kashiwara_pair(&x, t.inverse()), Some(p.clone()));
            }
            if let Some(x) = kashiwara_matrix(&m, t) {
                prop_assert_eq!(kashiwara_matrix(&x, t.inverse()), Some(m.clone()));
            }
        }
    }

    #[test]
    fn r_is_an_involution(seed: u64, n in 1u32..=4) {
        let mut r = gen::rng(seed);
        let cols: Vec<Vec<u32>> = (0..=n as usize).flat_map(|h| subsets(n, h)).collect();
        let a = &cols[r.gen_range(0..cols.len())];
        let b = &cols[r.gen_range(0..cols.len())];
        let (c, d, e) = combinatorial_r(a, b);
        let (a2, b2, e2) = combinatorial_r(&c, &d);
        prop_assert_eq!((&a2, &b2), (a, b));
        prop_assert_eq!(e, e2);
    }

    #[test]
    fn knuth_moves_are_symmetric(word in prop::collection::vec(1u32..=3, 0..7)) {
        for mv in knuth_neighbors(&word) {
            prop_assert!(knuth_neighbors(&mv.word).iter().any(|b| b.word == word));
        }
    }

    #[test]
    fn generalized_moves_are_symmetric(word in prop::collection::vec((1u32..=3, -1i64..=1), 0..7)) {
        let word: Vec<WeightedLetter> = word.into_iter().map(|(a, w)| WeightedLetter::new(a, w)).collect();
        for mv in gen_knuth_neighbors(&word) {
            prop_assert!(gen_knuth_neighbors(&mv.word).iter().any(|b| b.word == word));
        }
    }

    #[test]
    fn dual_moves_are_symmetric(perm in Just((1u32..=6).collect::<Vec<_>>()).prop_shuffle(), ws in prop::collection::vec(-1i64..=2, 6)) {
        let word: Vec<WeightedLetter> = perm.into_iter().zip(ws).map(|(a, w)| WeightedLetter::new(a, w)).collect();
        for mv in gen_dual_knuth_neighbors(&word).unwrap() {
            prop_assert!(gen_dual_knuth_neighbors(&mv.word).unwrap().iter().any(|b| b.word == word));
        }
    }
}

fn space() -> Space {
    Space::new(2, 1, Bounds { xy: 3, q: 3, z: 2 })
}

fn series_z(zmax: u32) -> impl Strategy<Value = Series> {
    let exps = (prop::collection::vec(0u32..=3, 4), 0..=zmax).prop_map(|(mut e, z)| {
        e.push(z);
        e
    });
    prop::collection::vec((exps, -3i64..=3), 0..6).prop_map(|ts| {
        ts.into_iter().fold(Series::zero(space()), |s, (e, c)| s.add(&Series::monomial(space(), e, c)))
    })
}

fn series() -> impl Strategy<Value = Series> {
    series_z(3)
}

proptest! {
    #![proptest_config(some())]

    #[test]
    fn series_ring_laws(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    // Exact only while the product stays inside the z bound.
    fn specialization_is_a_ring_map(a in series_z(1), b in series_z(1), v in -2i64..=2) {
        prop_assert_eq!(a.mul(&b).specialize_z(v), a.specialize_z(v).mul(&b.specialize_z(v)));
        prop_assert_eq!(a.add(&b).specialize_z(v), a.specialize_z(v).add(&b.specialize_z(v)));
    }

    #[test]
    fn inverse_of_unit(a in series()) {
        let mut u = a.clone();
        u.add_term(vec![0; 5], BigRational::one() - a.coeff(&[0; 5]));
        prop_assert_eq!(u.mul(&u.inverse().unwrap()), Series::one(space()));
    }
}
