use proptest::prelude::*;

use steenrod_core::cyclic_resolution::PeriodicResolution;
use steenrod_core::equivariant::CpComplex;
use steenrod_core::fp_linalg::{MatrixFp, PrimeField};
use steenrod_core::simplicial::builders::{bar_skeleton, sphere};
use steenrod_core::simplicial::{chain_cohomology, chain_complex, PowerSpace};
use steenrod_core::steenrod_classical::{
    random_cocycle, random_complex, reduced_theta, run_lemma_suite, shuffle_cross, shuffles, TensorPower,
};

fn f(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

/// Re-expresses a mask on the positions of `within` as a mask on `0..len(within)`.
fn relabel(mask: u32, within: u32) -> u32 {
    let mut out = 0;
    let mut t = 0;
    for i in 0..32 {
        if within >> i & 1 == 1 {
            if mask >> i & 1 == 1 {
                out |= 1 << t;
            }
            t += 1;
        }
    }
    out
}

proptest! {
    #[test]
    fn ternary_shuffles_factor_through_binary(a in 0usize..4, b in 0usize..4, c in 0usize..4) {
        let mut expected: Vec<(Vec<u32>, i64)> = Vec::new();
        for (outer, s_outer) in shuffles(&[a + b, c]) {
            for (inner, s_inner) in shuffles(&[a, b]) {
                let spread = |m: u32| {
                    let mut out = 0;
                    let mut t = 0;
                    for i in 0..32 {
                        if outer[0] >> i & 1 == 1 {
                            if m >> t & 1 == 1 {
                                out |= 1 << i;
                            }
                            t += 1;
                        }
                    }
                    out
                };
                expected.push((vec![spread(inner[0]), spread(inner[1]), outer[1]], s_outer * s_inner));
            }
        }
        let mut got = shuffles(&[a, b, c]);
        expected.sort();
        got.sort();
        prop_assert_eq!(&got, &expected);
        for (masks, _) in &got {
            prop_assert_eq!(relabel(masks[0], masks[0] | masks[1]).count_ones() as usize, a);
        }
    }
}

#[test]
fn shuffle_map_is_an_equivariant_quasi_isomorphism() {
    for (p, x, m_max) in [
        (2u32, bar_skeleton(2, 2).unwrap(), 4),
        (3, bar_skeleton(3, 2).unwrap(), 3),
        (2, sphere(2).unwrap(), 4),
    ] {
        let field = f(p);
        let base = chain_complex(&x, field, m_max + 1);
        let tensor = TensorPower::build(&base, m_max + 1, usize::MAX).unwrap();
        let power = PowerSpace::build(&x, field, m_max + 1, usize::MAX).unwrap();
        let xi = shuffle_cross(&x, &tensor, &power, m_max + 1);
        let t_tensor = tensor.complex();
        for m in 0..=m_max {
            assert_eq!(xi[m].mul(t_tensor.action(m)), power.rotation_chain(m).mul(&xi[m]), "p = {p}, m = {m}");
            if m > 0 {
                assert_eq!(
                    power.chains().boundary(m).mul(&xi[m]),
                    xi[m - 1].mul(&tensor.complex().chains().boundary(m))
                );
            }
            let h_power = chain_cohomology(power.chains(), m).unwrap();
            let h_tensor = chain_cohomology(tensor.complex().chains(), m).unwrap();
            assert_eq!(h_power.dim(), h_tensor.dim(), "p = {p}, m = {m}");
            let rows: Vec<Vec<i64>> = h_power
                .basis()
                .iter()
                .map(|z| {
                    h_tensor
                        .coordinates(&xi[m].left_mul_vec(z))
                        .unwrap()
                        .into_iter()
                        .map(i64::from)
                        .collect()
                })
                .collect();
            let induced = MatrixFp::from_dense(field, h_tensor.dim(), &rows);
            assert_eq!(steenrod_core::fp_linalg::rank(&induced), h_power.dim());
        }
    }
}

#[test]
fn tensor_rotation_has_order_p() {
    for p in [2u32, 3] {
        let x = bar_skeleton(p, 2).unwrap();
        let base = chain_complex(&x, f(p), 3);
        let tensor = TensorPower::build(&base, 3, usize::MAX).unwrap();
        for m in 0..=3 {
            let t = tensor.complex().action(m);
            assert_eq!(t.pow(p as usize), MatrixFp::identity(f(p), tensor.dim(m)));
        }
    }
}

#[test]
fn resolution_exact_through_degree_eight() {
    for p in [2u32, 3, 5] {
        let report = PeriodicResolution::new(f(p), 8).verify_exactness();
        assert!(report.passed(), "p = {p}: {report:?}");
        assert_eq!(PeriodicResolution::new(f(p), 8).group_cohomology_dims(), vec![1; 8]);
    }
}

#[test]
fn equivariant_coboundary_squares_to_zero() {
    for p in [2u32, 3] {
        let x = bar_skeleton(p, 2).unwrap();
        let power = PowerSpace::build(&x, f(p), 3, usize::MAX).unwrap();
        let a = CpComplex::power(&power);
        for m in 0..2 {
            let d0 = a.total_differential(m).unwrap();
            let d1 = a.total_differential(m + 1).unwrap();
            assert!(d1.mul(&d0).is_zero(), "p = {p}, m = {m}");
        }
    }
}

#[test]
fn lemma_drivers_hold_on_random_complexes() {
    for p in [2u32, 3] {
        let report = run_lemma_suite(f(p), 11 + p as u64, 20, 2).unwrap();
        assert!(report.passed(), "{report:?}");
    }
}

#[test]
fn reduced_theta_detects_nonzero_classes() {
    use rand::SeedableRng;
    for p in [2u32, 3] {
        let field = f(p);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        let mut detected = 0;
        for _ in 0..20 {
            let a = random_complex(field, &mut rng, 2, 2);
            let u = random_cocycle(&a, &mut rng, 1);
            let h = chain_cohomology(&a, 1).unwrap();
            let tensor = TensorPower::build(&a, p as usize + 1, usize::MAX).unwrap();
            let theta = reduced_theta(&tensor, 1, &u).unwrap();
            let nonzero_class = h.coordinates(&u).unwrap().iter().any(|&c| c != 0);
            assert_eq!(theta.iter().any(|&c| c != 0), nonzero_class);
            detected += nonzero_class as usize;
        }
        assert!(detected > 0, "p = {p}: no random class was nonzero");
    }
}
