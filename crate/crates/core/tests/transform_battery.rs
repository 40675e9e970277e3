//! Exhaustive checks of the kernel transforms: the four structure-form
//! identities, the two-sided inversion on the full constant-coefficient
//! exterior basis, and the coincidence of the toric transform with the
//! Fourier series on functions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use syzkit::forms::{
    exp_i_omega_x, exp_i_omega_y, seeded_spd_matrices, toric_syz_fwd, volume_form_x,
    volume_form_y, DifferentialForm, FiberBlock, GradedForm, PhiMatrix,
};
use syzkit::loops::LoopFunction;
use syzkit::scalar::GaussScalar;

#[test]
fn symplectic_to_volume_identities_up_to_dim_four() {
    for n in 1..=4 {
        let fwd = exp_i_omega_x(n, 0).semiflat_fwd().unwrap();
        assert_eq!(fwd, volume_form_y(n, 0), "forward identity fails at n={n}");
        let inv = volume_form_y(n, 0).semiflat_inv().unwrap();
        assert_eq!(inv, exp_i_omega_x(n, 0), "inverse identity fails at n={n}");
    }
}

#[test]
fn metric_identities_with_random_spd_matrices() {
    for n in 1..=3 {
        let mut matrices = vec![PhiMatrix::identity(n)];
        matrices.extend(seeded_spd_matrices(n, 5, 0xC0FFEE + n as u64));
        for (i, phi) in matrices.iter().enumerate() {
            let fwd = volume_form_x(phi, 0).semiflat_fwd().unwrap();
            assert_eq!(fwd, exp_i_omega_y(phi, 0), "forward metric identity n={n} phi#{i}");
            let inv = exp_i_omega_y(phi, 0).semiflat_inv().unwrap();
            assert_eq!(inv, volume_form_x(phi, 0), "inverse metric identity n={n} phi#{i}");
        }
    }
}

#[test]
fn phi_inverse_relation_is_exact() {
    use num_rational::BigRational;
    use num_traits::{One, Zero};
    for n in 1..=3 {
        for phi in seeded_spd_matrices(n, 5, 99 + n as u64) {
            let inv = phi.inverse();
            for j in 0..n {
                for m in 0..n {
                    let mut s = BigRational::zero();
                    for k in 0..n {
                        s += phi.entry(j, k) * &inv[k][m];
                    }
                    let expected = if j == m { BigRational::one() } else { BigRational::zero() };
                    assert_eq!(s, expected, "phi * phi^-1 entry ({j},{m}) at n={n}");
                }
            }
        }
    }
}

/// The transforms as linear maps on the 2^{2n}-dimensional constant
/// exterior algebras are mutual two-sided inverses.
#[test]
fn transform_matrices_are_mutual_inverses() {
    for n in 1..=4usize {
        let gens = 2 * n;
        for bits in 0..(1u64 << gens) {
            // X-side basis: dx block in the low bits, du block above.
            let x_mask = (bits & ((1 << n) - 1)) | ((bits >> n) << (2 * n));
            let b = DifferentialForm::generator(n, 0, x_mask);
            let round = b.semiflat_fwd().unwrap().semiflat_inv().unwrap();
            assert_eq!(round, b, "inv(fwd) != id at n={n}, mask {x_mask:b}");

            // Y-side basis: dx block and dy block.
            let y_mask = bits & ((1 << (2 * n)) - 1);
            let c = DifferentialForm::generator(n, 0, y_mask);
            let round = c.semiflat_inv().unwrap().semiflat_fwd().unwrap();
            assert_eq!(round, c, "fwd(inv) != id at n={n}, mask {y_mask:b}");
        }
    }
}

#[test]
fn u_integration_annihilates_incomplete_blocks() {
    let n = 3;
    for mask in 0..(1u64 << (3 * n)) {
        let du_block = ((1u64 << n) - 1) << (2 * n);
        if mask & du_block == du_block {
            continue;
        }
        if mask.count_ones() > 4 {
            continue;
        }
        let f = DifferentialForm::generator(n, 0, mask);
        assert!(
            f.fiber_integrate(FiberBlock::U).is_zero(),
            "monomial {mask:b} missing du generators must integrate to zero"
        );
    }
}

#[test]
fn toric_transform_of_psi_powers() {
    for name in ["CP1", "CP2", "CP1xCP1"] {
        let fp = syzkit::presets::preset(name).unwrap();
        let w = syzkit::mirror::build_superpotential(&fp).unwrap();
        let psi = syzkit::loops::psi_total(&fp).unwrap();
        for k in 0..=4usize {
            let image = toric_syz_fwd(&GradedForm::from_loop(&psi.conv_power(k))).unwrap();
            let mut expected = DifferentialForm::zero(fp.dim, fp.kahler_params);
            let poly = w.poly.pow(k as u32).extend_front(1);
            expected = expected.add(&DifferentialForm::one(fp.dim, fp.kahler_params).scale_coeff(&poly));
            assert_eq!(image, expected, "{name}: power {k}");
        }
    }
}

#[test]
fn toric_transform_on_functions_is_fourier() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let n = rng.gen_range(1..=3);
        let mut f = LoopFunction::zero(n, 0);
        for _ in 0..rng.gen_range(1..=8) {
            let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
            let c = GaussScalar::from_int(0, rng.gen_range(-9..=9));
            f = f.add(&LoopFunction::monomial(n, v, c));
        }
        let image = toric_syz_fwd(&GradedForm::from_loop(&f)).unwrap();
        let mut expected = DifferentialForm::zero(n, 0);
        let poly = f.fourier().extend_front(1);
        if !poly.is_zero() {
            expected = expected.add(&{
                let mut single = DifferentialForm::zero(n, 0);
                single = single.add(&DifferentialForm::one(n, 0).scale_coeff(&poly));
                single
            });
        }
        assert_eq!(image, expected);
    }
}
