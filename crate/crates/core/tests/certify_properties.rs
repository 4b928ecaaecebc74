mod common;

use std::f64::consts::SQRT_2;

use common::{ensemble_instance, random_frame, random_hermitian};
use proptest::prelude::*;
use tantheta::certify::{
    aposteriori_oracle, apriori_oracle, block_partition, certify_aposteriori, certify_apriori, delta_r,
    enclosure_check, lemma_intersection_check, residual, AprioriCertificate,
};
use tantheta::ensemble::haar_unitary;
use tantheta::linalg::{hermitian_spectrum, spectral_norm, CMatrix};

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(40)
}

fn dims() -> impl Strategy<Value = (usize, usize)> {
    (2usize..=20).prop_flat_map(|n| (Just(n), 1..n))
}

fn same_certificate(a: &AprioriCertificate, b: &AprioriCertificate, tol: f64) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.valid, b.valid);
    prop_assert_eq!(a.failure_reason, b.failure_reason);
    prop_assert!((a.rho - b.rho).abs() <= tol, "rho {} vs {}", a.rho, b.rho);
    let pairs = [
        (a.tan_bound, b.tan_bound),
        (a.delta_r, b.delta_r),
        (a.window.map(|w| w.gap), b.window.map(|w| w.gap)),
        (a.window.map(|w| w.lo), b.window.map(|w| w.lo)),
        (a.window.map(|w| w.hi), b.window.map(|w| w.hi)),
    ];
    for (x, y) in pairs {
        match (x, y) {
            (Some(x), Some(y)) => prop_assert!((x - y).abs() <= tol, "{} vs {}", x, y),
            (None, None) => {}
            _ => prop_assert!(false, "presence differs: {:?} vs {:?}", x, y),
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn residual_is_orthogonal_to_the_frame((n, k) in dims(), seed in any::<u64>()) {
        let a = random_hermitian(n, seed);
        let q1 = random_frame(n, k, seed.wrapping_add(1));
        let r = residual(&a, &q1).unwrap();
        let projected = q1.as_matrix().adjoint_matmul(&r.r);
        prop_assert!(projected.max_abs() <= a.tolerance());
    }

    #[test]
    fn coupling_block_norm_equals_residual_norm((n, k) in dims(), seed in any::<u64>()) {
        let a = random_hermitian(n, seed);
        let q1 = random_frame(n, k, seed.wrapping_add(1));
        let blocks = block_partition(&a, &q1).unwrap();
        let r = residual(&a, &q1).unwrap();
        prop_assert!((spectral_norm(&blocks.b) - r.rho).abs() <= 1e-10);
        // The block form is a unitary similarity of A.
        let q = q1.as_matrix().hstack(blocks.q2.as_matrix());
        let l = q.adjoint_matmul(&a.as_matrix().matmul(&q));
        prop_assert!(blocks.reassemble().max_abs_diff(&l) <= 1e-12 * (1.0 + a.max_abs()) * n as f64);
    }

    #[test]
    fn certificates_are_unitarily_invariant(index in 0usize..200, master in any::<u64>()) {
        let inst = ensemble_instance(master, index);
        let n = inst.a.n();
        let w = haar_unitary(n, master ^ index as u64);
        let a2 = inst.a.conjugate_by(&w).unwrap();
        let q2 = inst.q1.transformed(&w.adjoint()).unwrap();
        let c1 = certify_apriori(&inst.a, &inst.q1).unwrap();
        let c2 = certify_apriori(&a2, &q2).unwrap();
        same_certificate(&c1, &c2, 1e-9)?;
        if c1.valid {
            let o1 = apriori_oracle(&inst.a, &inst.q1, &c1).unwrap();
            let o2 = apriori_oracle(&a2, &q2, &c2).unwrap();
            match (o1.largest_angle, o2.largest_angle) {
                (Some(x), Some(y)) => prop_assert!((x - y).abs() <= 1e-9),
                other => prop_assert!(false, "oracle angle missing: {:?}", other),
            }
        }
    }

    #[test]
    fn shift_moves_only_the_window(index in 0usize..200, master in any::<u64>(), c in -10.0f64..10.0) {
        let inst = ensemble_instance(master, index);
        let base = certify_apriori(&inst.a, &inst.q1).unwrap();
        let shifted = certify_apriori(&inst.a.shifted(c), &inst.q1).unwrap();
        let tol = 1e-9;
        prop_assert!((base.rho - shifted.rho).abs() <= tol);
        if let (Some(w), Some(v)) = (base.window, shifted.window) {
            prop_assert!((w.gap - v.gap).abs() <= tol);
            prop_assert!((w.lo + c - v.lo).abs() <= tol);
            prop_assert!((w.hi + c - v.hi).abs() <= tol);
            prop_assert!((base.tan_bound.unwrap() - shifted.tan_bound.unwrap()).abs() <= tol);
        } else {
            prop_assert!(base.window.is_none() && shifted.window.is_none());
        }
    }

    #[test]
    fn scaling_is_covariant(index in 0usize..200, master in any::<u64>(), log_s in -3.0f64..3.0) {
        let s = 10f64.powf(log_s);
        let inst = ensemble_instance(master, index);
        let base = certify_apriori(&inst.a, &inst.q1).unwrap();
        let scaled = certify_apriori(&inst.a.scaled(s), &inst.q1).unwrap();
        prop_assert!((scaled.rho / s - base.rho).abs() <= 1e-10 * (1.0 + base.rho));
        if let (Some(w), Some(v)) = (base.window, scaled.window) {
            prop_assert!((v.gap / s - w.gap).abs() <= 1e-10 * (1.0 + w.gap));
            prop_assert!((base.tan_bound.unwrap() - scaled.tan_bound.unwrap()).abs() <= 1e-10);
            prop_assert!((base.angle_bound.unwrap() - scaled.angle_bound.unwrap()).abs() <= 1e-10);
        }
    }

    #[test]
    fn apriori_bound_and_counts_hold(index in 0usize..400, master in any::<u64>()) {
        let inst = ensemble_instance(master, index);
        let cert = certify_apriori(&inst.a, &inst.q1).unwrap();
        prop_assume!(cert.valid);
        let oracle = apriori_oracle(&inst.a, &inst.q1, &cert).unwrap();
        prop_assert_eq!(oracle.bound_holds(&cert), Some(true));
        prop_assert_eq!(oracle.exterior_count, Some(cert.k));
        prop_assert_eq!(oracle.enclosed_count, Some(cert.n - cert.k));
        let spec = hermitian_spectrum(&inst.a, false).unwrap();
        prop_assert!(enclosure_check(&spec, &cert));
    }

    #[test]
    fn aposteriori_bound_and_lemma_hold(index in 0usize..400, master in any::<u64>()) {
        let config = tantheta::ensemble::SweepConfig::new(master, index + 1);
        let spec = config.instance_spec(index);
        let inst = tantheta::ensemble::synth_instance(&spec).unwrap();
        let (lo, hi) = spec.interior_hull();
        let cert = certify_aposteriori(&inst.a, &inst.q1, lo, hi).unwrap();
        prop_assume!(cert.valid);
        let oracle = aposteriori_oracle(&inst.a, &inst.q1, &cert).unwrap();
        prop_assert_eq!(oracle.bound_holds(&cert), Some(true));
        prop_assert!(oracle.lemma_cosine.unwrap() > 0.0);
        prop_assert!(lemma_intersection_check(&inst.q1, &inst.x1).unwrap() > 0.0);
    }

    #[test]
    fn delta_r_is_below_the_gap(d in 1e-6f64..1e6, frac in 0.0f64..0.999_999) {
        let rho = frac * SQRT_2 * d;
        let r = delta_r(rho, d).unwrap();
        prop_assert!(r >= 0.0 && r < d);
        // Independent closed form ρ·tan(½·arctan(2ρ/d)).
        let literal = rho * (0.5 * (2.0 * rho / d).atan()).tan();
        prop_assert!((r - literal).abs() <= 1e-12 * d);
        // δ_R ≤ ρ²/d: from tan(x/2) ≤ tan(x)/2 on [0, π/2).
        prop_assert!(r <= rho * rho / d * (1.0 + 1e-12));
    }

    #[test]
    fn delta_r_is_monotone(d in 1e-3f64..1e3, a in 0.0f64..1.4, b in 0.0f64..1.4) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(delta_r(lo * d, d).unwrap() <= delta_r(hi * d, d).unwrap());
    }
}

#[test]
fn delta_r_hits_the_gap_at_the_boundary() {
    for d in [1e-3, 1.0, 1e3, 7.25] {
        let r = delta_r(SQRT_2 * d, d).unwrap();
        assert!((r - d).abs() <= 1e-12 * d.max(1.0), "d={d}: {r}");
    }
}

#[test]
fn exact_invariant_frame_gets_a_zero_bound() {
    let w = haar_unitary(9, 4);
    let eigs = [5.0, -4.0, 0.3, -0.2, 0.1, 0.0, 0.5, -0.5, 0.25];
    let a = tantheta::linalg::HermitianMatrix::new(
        CMatrix::from_fn(9, 9, |i, j| w[(i, j)] * eigs[j]).matmul(&w.adjoint()),
    )
    .unwrap();
    let q1 = tantheta::linalg::OrthonormalFrame::new(w.select_columns(&[0, 1])).unwrap();
    let cert = certify_apriori(&a, &q1).unwrap();
    assert!(cert.valid);
    assert!(cert.rho < 1e-13);
    assert!(cert.tan_bound.unwrap() < 1e-13);
    let gap = cert.window.unwrap().gap;
    assert!((gap - 3.5).abs() < 1e-12, "gap {gap}");
}
