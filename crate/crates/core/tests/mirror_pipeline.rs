//! End-to-end checks over the shipped presets: the Fourier identities,
//! the quantum cohomology / Jacobian ring verification, numeric critical
//! points and the Floer/Clifford battery.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use syzkit::brane::{clifford_form, complex_det, endomorphism_dim, floer_m1, floer_nontrivial};
use syzkit::lattice::euler_characteristic;
use syzkit::loops::{build_psi, phi_derivative_identity_check, psi_total, verify_qh_jac_iso};
use syzkit::mirror::{build_superpotential, critical_points, jacobian_ring};
use syzkit::presets;

fn ones(l: usize) -> Vec<f64> {
    vec![1.0; l]
}

#[test]
fn fourier_of_psi_powers_equals_superpotential_powers() {
    for name in presets::PRESET_NAMES {
        let fp = presets::preset(name).unwrap();
        let w = build_superpotential(&fp).unwrap();
        let total = psi_total(&fp).unwrap();
        assert_eq!(total.fourier(), w.poly, "{name}: Fourier of Psi is W");
        for k in 0..=5u32 {
            assert_eq!(
                total.conv_power(k as usize).fourier(),
                w.poly.pow(k),
                "{name}: Fourier of Psi^{k}"
            );
        }
    }
}

#[test]
fn qh_jacobian_isomorphism_for_all_presets() {
    let expected = [
        ("CP1", 2),
        ("CP2", 3),
        ("CP3", 4),
        ("CP1xCP1", 4),
        ("CP1xCP2", 6),
        ("Bl1CP2", 4),
    ];
    for (name, dim) in expected {
        let fp = presets::preset(name).unwrap();
        let report = verify_qh_jac_iso(&fp).unwrap();
        assert!(report.verified, "{name}: {:?}", report.witness);
        assert_eq!(report.jacobian_dimension, Some(dim), "{name}");
        assert_eq!(report.euler_characteristic, dim, "{name}");
        assert_eq!(report.product_of_projective_spaces, name != "Bl1CP2", "{name}");
    }
}

#[test]
fn phi_derivative_identity_for_all_presets() {
    for name in presets::PRESET_NAMES {
        let fp = presets::preset(name).unwrap();
        for param in 0..fp.kahler_params {
            for cutoff in 1..=4 {
                assert!(
                    phi_derivative_identity_check(&fp, param, cutoff).unwrap(),
                    "{name}: parameter {param}, cutoff {cutoff}"
                );
            }
        }
    }
}

#[test]
fn critical_point_counts_match_jacobian_dimension() {
    for name in presets::PRESET_NAMES {
        let fp = presets::preset(name).unwrap();
        let w = build_superpotential(&fp).unwrap();
        let dim = jacobian_ring(&w).unwrap().dimension().unwrap();
        for qv in [1.0, 0.5] {
            let q = vec![qv; fp.kahler_params];
            let report = critical_points(&w, &q, 1e-10).unwrap();
            assert_eq!(
                report.points.len(),
                dim,
                "{name} at q={qv}: {:?}",
                report.warning
            );
            assert!(report.residuals.iter().all(|&r| r <= 1e-10), "{name} at q={qv}");
        }
    }
}

#[test]
fn floer_nontrivial_exactly_at_critical_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let tol = 1e-10;
    for name in presets::PRESET_NAMES {
        let fp = presets::preset(name).unwrap();
        let w = build_superpotential(&fp).unwrap();
        let q = ones(fp.kahler_params);
        let report = critical_points(&w, &q, tol).unwrap();
        for z in &report.points {
            assert!(floer_nontrivial(&w, z, &q, tol).unwrap(), "{name}");
            assert_eq!(
                endomorphism_dim(&w, z, &q, tol).unwrap(),
                1 << fp.dim,
                "{name}"
            );
        }
        // Random points with visible residual must be trivial.
        let mut rejected = 0;
        while rejected < 100 {
            let z: Vec<Complex64> = (0..fp.dim)
                .map(|_| {
                    Complex64::from_polar(rng.gen_range(0.3..3.0), rng.gen_range(0.0..std::f64::consts::TAU))
                })
                .collect();
            let m1 = floer_m1(&w, &z, &q).unwrap();
            let residual = m1.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
            if residual <= 10.0 * tol {
                continue;
            }
            rejected += 1;
            assert!(!floer_nontrivial(&w, &z, &q, tol).unwrap(), "{name}");
            assert_eq!(endomorphism_dim(&w, &z, &q, tol).unwrap(), 0, "{name}");
        }
    }
}

#[test]
fn floer_m1_two_routes_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for name in presets::PRESET_NAMES {
        let fp = presets::preset(name).unwrap();
        let w = build_superpotential(&fp).unwrap();
        let grads = w.gradients();
        let q: Vec<f64> = (0..fp.kahler_params).map(|_| rng.gen_range(0.25..2.0)).collect();
        for _ in 0..20 {
            let z: Vec<Complex64> = (0..fp.dim)
                .map(|_| {
                    Complex64::from_polar(rng.gen_range(0.3..3.0), rng.gen_range(0.0..std::f64::consts::TAU))
                })
                .collect();
            let termwise = floer_m1(&w, &z, &q).unwrap();
            for (j, g) in grads.iter().enumerate() {
                let exact = g.eval(&z, &q);
                let scale = exact.norm().max(1.0);
                assert!(
                    (exact - termwise[j]).norm() / scale <= 1e-12,
                    "{name}: routes disagree at component {j}"
                );
            }
        }
    }
}

#[test]
fn clifford_form_symmetric_and_nonsingular_at_critical_points() {
    for name in presets::PRESET_NAMES {
        let fp = presets::preset(name).unwrap();
        let w = build_superpotential(&fp).unwrap();
        let q = ones(fp.kahler_params);
        let report = critical_points(&w, &q, 1e-10).unwrap();
        assert!(!report.points.is_empty(), "{name}");
        for z in &report.points {
            let m = clifford_form(&w, z, &q).unwrap();
            for j in 0..fp.dim {
                for k in 0..fp.dim {
                    assert_eq!(m[j][k], m[k][j], "{name}: exact symmetry");
                }
            }
            assert!(
                complex_det(&m).norm() > 1e-8,
                "{name}: Clifford form degenerates at a critical point"
            );
        }
    }
}

#[test]
fn euler_characteristics_match_expected_table() {
    for (name, chi) in [("CP1", 2), ("CP2", 3), ("CP3", 4), ("CP1xCP1", 4), ("CP1xCP2", 6), ("Bl1CP2", 4)] {
        assert_eq!(euler_characteristic(&presets::preset(name).unwrap()), chi);
    }
}

#[test]
fn triple_product_of_lines_beyond_presets() {
    use syzkit::lattice::{Facet, LatticeVector};
    // (P^1)^3: six facets, eight maximal cones, Jacobian dimension 8.
    let mut facets = Vec::new();
    for j in 0..3 {
        let mut v = vec![0i64; 3];
        v[j] = 1;
        facets.push(Facet { normal: LatticeVector(v), q_exponent: vec![0; 3], lambda: None });
    }
    for j in 0..3 {
        let mut v = vec![0i64; 3];
        v[j] = -1;
        let mut m = vec![0i64; 3];
        m[j] = 1;
        facets.push(Facet { normal: LatticeVector(v), q_exponent: m, lambda: None });
    }
    let mut cones = Vec::new();
    for s in 0..8usize {
        cones.push(
            (0..3)
                .map(|j| if s & (1 << j) == 0 { j } else { j + 3 })
                .collect::<Vec<usize>>(),
        );
    }
    let fp = syzkit::lattice::FanPolytope {
        dim: 3,
        kahler_params: 3,
        facets,
        maximal_cones: cones,
    };
    assert!(syzkit::lattice::validate_smooth_fano(&fp).unwrap().passed());
    assert_eq!(euler_characteristic(&fp), 8);
    let report = verify_qh_jac_iso(&fp).unwrap();
    assert!(report.verified, "{:?}", report.witness);
    assert!(report.product_of_projective_spaces);
    assert_eq!(report.jacobian_dimension, Some(8));

    let w = build_superpotential(&fp).unwrap();
    let crit = critical_points(&w, &[1.0, 1.0, 1.0], 1e-10).unwrap();
    assert_eq!(crit.points.len(), 8, "{:?}", crit.warning);
}

#[test]
fn psi_generators_match_fan_data() {
    for name in presets::PRESET_NAMES {
        let fp = presets::preset(name).unwrap();
        let psi = build_psi(&fp).unwrap();
        assert_eq!(psi.len(), fp.facets.len());
        let w = build_superpotential(&fp).unwrap();
        for (p, term) in psi.iter().zip(&w.facet_terms) {
            assert_eq!(p.fourier(), *term, "{name}");
        }
    }
}
