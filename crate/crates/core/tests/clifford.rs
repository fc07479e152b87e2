use otfkm::bundle::sample::{sample_rng, uniform_sphere};
use otfkm::clifford::{
    build_clifford_system, classify_definiteness, extend_clifford, fkm_gradient, fkm_laplacian, fkm_polynomial,
    laplacian_constant, product_matrix, product_trace, product_trace_closed_form, verify_cartan_munzner,
    verify_clifford, Definiteness, Extension, MAX_DENSE_L,
};
use otfkm::error::Error;
use otfkm::intmat::IntMatrix;
use proptest::prelude::*;

// (m, k, p, c) with ΔF = c|x|²: second differences (h = 1e−3) of F built from
// independently assembled numpy matrices, rounded.
const LAPLACIAN_ORACLE: [(usize, usize, usize, f64); 10] = [
    (1, 3, 0, 0.0),
    (2, 3, 0, 8.0),
    (3, 2, 0, 8.0),
    (3, 4, 0, 72.0),
    (4, 2, 0, -8.0),
    (4, 3, 1, 24.0),
    (4, 4, 3, 56.0),
    (8, 2, 0, -8.0),
    (8, 2, 1, -8.0),
    (8, 3, 1, 56.0),
];

// Tr(P₀⋯P_m) from the same numpy construction.
const TRACE_ORACLE: [(usize, usize, usize, i64); 6] =
    [(4, 2, 0, 0), (4, 3, 1, -8), (4, 4, 3, -32), (8, 2, 0, 0), (8, 2, 1, -32), (8, 3, 1, -16)];

#[test]
fn exact_certification_small_range() {
    for m in [1, 2, 3, 4, 8] {
        for k in 1..=4 {
            for p in 0..k {
                let sys = build_clifford_system(m, k, p).unwrap();
                let res = verify_clifford(&sys).unwrap();
                assert!(res.is_exact(), "m={m} k={k} p={p}: {res:?}");
            }
        }
    }
}

#[test]
fn operator_counts_and_dimensions() {
    let sys = build_clifford_system(8, 3, 1).unwrap();
    assert_eq!(sys.operators().len(), 9);
    assert_eq!(sys.l(), 24);
    assert_eq!(sys.multiplicities(), (8, 15));
    let sys = build_clifford_system(3, 4, 0).unwrap();
    assert_eq!(sys.operators().len(), 4);
    assert_eq!(sys.multiplicities(), (3, 12));
}

#[test]
fn unsupported_m_rejected() {
    for m in [0, 5, 6, 7, 9] {
        assert!(matches!(build_clifford_system(m, 3, 0), Err(Error::UnsupportedM(_))));
    }
    assert!(build_clifford_system(4, 3, 3).is_err());
}

#[test]
fn traces_match_oracle_and_closed_form() {
    for (m, k, p, t) in TRACE_ORACLE {
        let sys = build_clifford_system(m, k, p).unwrap();
        assert_eq!(product_trace(&sys).unwrap(), t);
        assert_eq!(product_trace_closed_form(m, k, p).unwrap(), t);
    }
}

#[test]
fn definite_octonionic_product_is_minus_identity() {
    for k in 1..=4 {
        let sys = build_clifford_system(8, k, k - 1).unwrap();
        let prod = product_matrix(&sys).unwrap();
        assert_eq!(prod, -&IntMatrix::identity(16 * k));
        assert_eq!(classify_definiteness(&sys).unwrap(), Definiteness::DefiniteMinus);
    }
}

#[test]
fn fault_injection_breaks_certification() {
    let mut sys = build_clifford_system(4, 3, 1).unwrap();
    sys.inject_sign_fault();
    assert!(!verify_clifford(&sys).unwrap().is_exact());
}

#[test]
fn extension_exists_exactly_when_k_is_2p_plus_2() {
    for m in [4, 8] {
        for k in 1..=8 {
            for p in 0..k {
                let ext = extend_clifford(m, k, p).unwrap();
                assert_eq!(ext.is_extended(), k == 2 * p + 2, "m={m} k={k} p={p}");
                if let Extension::Extended { system, .. } = ext {
                    assert_eq!(system.operators().len(), m + 2);
                    assert!(verify_clifford(&system).unwrap().is_exact());
                }
            }
        }
    }
    assert!(extend_clifford(3, 2, 0).is_err());
}

#[test]
fn dense_size_guard() {
    let k = MAX_DENSE_L / 8 + 1;
    let sys = build_clifford_system(8, k, 0).unwrap();
    assert!(matches!(sys.matrix_form(), Err(Error::TooLarge { .. })));
}

#[test]
fn laplacian_constant_matches_oracle() {
    for (m, k, p, c) in LAPLACIAN_ORACLE {
        let sys = build_clifford_system(m, k, p).unwrap();
        assert!((laplacian_constant(&sys) - c).abs() <= 1e-8, "m={m} k={k} p={p}");
        let x = uniform_sphere(&mut sample_rng(5, 0), 2 * sys.l());
        let r2: f64 = x.iter().map(|v| v * v).sum();
        assert!((fkm_laplacian(&sys, &x) - c * r2).abs() <= 1e-8);
    }
}

#[test]
fn gradient_matches_central_differences() {
    let sys = build_clifford_system(8, 3, 1).unwrap();
    let mut x = uniform_sphere(&mut sample_rng(2, 0), 48);
    let g = fkm_gradient(&sys, &x);
    let h = 1e-5;
    for j in 0..x.len() {
        let x0 = x[j];
        x[j] = x0 + h;
        let fp = fkm_polynomial(&sys, &x);
        x[j] = x0 - h;
        let fm = fkm_polynomial(&sys, &x);
        x[j] = x0;
        assert!(((fp - fm) / (2.0 * h) - g[j]).abs() <= 1e-6 * 4.0);
    }
}

proptest! {
    #[test]
    fn cartan_munzner_identities(m in prop::sample::select(vec![1usize, 2, 3, 4, 8]), k in 2usize..5, p in 0usize..4, seed in any::<u64>()) {
        prop_assume!(p < k);
        let sys = build_clifford_system(m, k, p).unwrap();
        let x = uniform_sphere(&mut sample_rng(seed, 0), 2 * sys.l());
        let (grad, lap) = verify_cartan_munzner(&sys, &x);
        prop_assert!(grad.abs() <= 1e-9);
        prop_assert!(lap.abs() <= 1e-8);
    }

    #[test]
    fn fkm_is_homogeneous_of_degree_four(seed in any::<u64>(), s in 0.1f64..3.0) {
        let sys = build_clifford_system(4, 3, 1).unwrap();
        let x = uniform_sphere(&mut sample_rng(seed, 0), 24);
        let y: Vec<f64> = x.iter().map(|v| v * s).collect();
        prop_assert!((fkm_polynomial(&sys, &y) - s.powi(4) * fkm_polynomial(&sys, &x)).abs() <= 1e-12 * s.powi(4));
    }
}
