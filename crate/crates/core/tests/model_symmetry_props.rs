mod common;

use common::{huber_model, random_model, Feed};
use proptest::prelude::*;
use thirdq::model::{build_bath_matrices, build_structure, preset, BathVector, Preset, PresetParams, QuadraticModel};
use thirdq::numerics::{max_abs_diff, spectral_norm};
use thirdq::symmetry::{check_huber, check_matrix_pt, ParitySpec, SYMMETRY_TOL};
use thirdq::C64;

fn numbers() -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-1.0f64..1.0, 64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn y_symmetric_and_trace_matches(v in numbers(), n in 1usize..5, nb in 0usize..4) {
        let m = random_model(&mut Feed::new(&v), n, nb);
        let s = build_structure(&m);
        prop_assert_eq!(&s.y, &s.y.transpose());
        prop_assert!((s.x.trace() - s.s0).norm() <= 1e-12 * (1.0 + spectral_norm(&s.x)));
        prop_assert!(max_abs_diff(&s.m, &s.m.adjoint()) < 1e-14);
        prop_assert!(max_abs_diff(&s.n, &s.n.adjoint()) < 1e-14);
    }

    #[test]
    fn bath_scaling_is_quadratic(v in numbers(), n in 1usize..4, nb in 1usize..4, sc in 0.1f64..3.0) {
        let m = random_model(&mut Feed::new(&v), n, nb);
        let (m0, n0, l0) = build_bath_matrices(&m);
        let (m1, n1, l1) = build_bath_matrices(&m.with_scaled_baths(sc));
        let s2 = C64::new(sc * sc, 0.0);
        prop_assert!(max_abs_diff(&m1, &(m0 * s2)) < 1e-12 * (1.0 + sc * sc));
        prop_assert!(max_abs_diff(&n1, &(n0 * s2)) < 1e-12 * (1.0 + sc * sc));
        prop_assert!(max_abs_diff(&l1, &(l0 * s2)) < 1e-12 * (1.0 + sc * sc));
    }

    #[test]
    fn huber_symmetric_models_have_pt_x(v in numbers(), n in 1usize..5, pairs in 0usize..3) {
        let m = huber_model(&mut Feed::new(&v), n, pairs);
        let h = check_huber(&m, SYMMETRY_TOL);
        prop_assert!(h.huber_hamiltonian);
        prop_assert_eq!(h.huber_baths, Some(true));
        let x = build_structure(&m).x;
        let r = check_matrix_pt(&x, ParitySpec::reflection(n), SYMMETRY_TOL).unwrap();
        prop_assert!(r.pt_residual < 1e-10, "residual {}", r.pt_residual);
    }

    #[test]
    fn broken_pairing_breaks_pt(v in numbers(), n in 2usize..5, pairs in 1usize..3, f in 1.2f64..2.0) {
        let m = huber_model(&mut Feed::new(&v), n, pairs);
        let mut baths = m.baths().to_vec();
        baths[0] = baths[0].scaled(f);
        let m = QuadraticModel::new(m.h().clone(), m.k().clone(), baths).unwrap();
        prop_assert_eq!(check_huber(&m, SYMMETRY_TOL).huber_baths, Some(false));
    }

    #[test]
    fn pt_and_anti_pt_exclusive(v in numbers(), n in 1usize..4, nb in 0usize..3) {
        let m = random_model(&mut Feed::new(&v), n, nb);
        let x = build_structure(&m).x;
        for p in [ParitySpec::reflection(n), ParitySpec::sector_swap(n)] {
            let r = check_matrix_pt(&x, p, SYMMETRY_TOL).unwrap();
            prop_assert!(!(r.matrix_pt && r.matrix_anti_pt));
        }
    }
}

#[test]
fn presets_have_hermitian_bath_matrices() {
    for p in Preset::ALL {
        let params = PresetParams {
            gg: Some(1.3),
            gl: Some(0.7),
            g: Some(0.4),
            gamma: Some(0.6),
            omega: Some(1.0),
        };
        let s = build_structure(&preset(p, &params).unwrap().model);
        assert!(max_abs_diff(&s.m, &s.m.adjoint()) == 0.0);
        assert!(max_abs_diff(&s.n, &s.n.adjoint()) == 0.0);
        assert_eq!(s.y, s.y.transpose());
    }
}

#[test]
fn two_boson_equals_balanced_fm() {
    for (gamma, g) in [(0.3, 1.0), (1.0, 1.0), (2.5, 0.7)] {
        let a = build_structure(&preset(Preset::TwoBoson, &PresetParams::boson(gamma, g)).unwrap().model);
        let b = build_structure(&preset(Preset::Fm2SpinUp, &PresetParams::spins(gamma, gamma, g)).unwrap().model);
        assert_eq!(a.x, b.x);
        assert_eq!(a.y, b.y);
    }
}

#[test]
fn sign_flipped_partner_still_pairs() {
    let l = vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
    let z = vec![C64::new(0.0, 0.0); 2];
    let partner = vec![C64::new(0.0, 0.0), C64::new(-1.0, 0.0)];
    let m = QuadraticModel::new(
        nalgebra::DMatrix::zeros(2, 2),
        nalgebra::DMatrix::zeros(2, 2),
        vec![BathVector::new(l, z.clone()), BathVector::new(z, partner)],
    )
    .unwrap();
    assert_eq!(check_huber(&m, SYMMETRY_TOL).huber_baths, Some(true));
}
