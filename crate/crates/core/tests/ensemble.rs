mod common;

use tantheta::ensemble::{
    derive_seed, haar_unitary, run_sweep, sharpness_probe, synth_instance, InstanceSpec, SweepCase, SweepConfig,
};
use tantheta::linalg::{principal_angles, CMatrix};

#[test]
fn haar_first_entry_moments() {
    // For Haar U of order n, u₀₀ is uniform on the unit sphere of Cⁿ
    // projected to one coordinate: E u₀₀ = 0, E|u₀₀|² = 1/n,
    // E|u₀₀|⁴ = 2/(n(n+1)).
    let n = 4;
    let draws = 4000;
    let mut mean = (0.0, 0.0);
    let mut second = 0.0;
    let mut fourth = 0.0;
    for i in 0..draws {
        let u = haar_unitary(n, derive_seed(2024, i));
        let z = u[(0, 0)];
        mean.0 += z.re;
        mean.1 += z.im;
        second += z.norm_sqr();
        fourth += z.norm_sqr().powi(2);
    }
    let m = draws as f64;
    let (mean_re, mean_im) = (mean.0 / m, mean.1 / m);
    // Each of Re, Im has variance 1/(2n); allow five standard errors.
    let se = (1.0 / (2.0 * n as f64) / m).sqrt();
    assert!(mean_re.abs() < 5.0 * se && mean_im.abs() < 5.0 * se, "{mean_re} {mean_im}");
    let second = second / m;
    let fourth = fourth / m;
    let expected_fourth = 2.0 / (n * (n + 1)) as f64;
    // Var|u₀₀|² = E|u₀₀|⁴ − 1/n².
    let se2 = ((expected_fourth - 1.0 / (n * n) as f64) / m).sqrt();
    assert!((second - 1.0 / n as f64).abs() < 5.0 * se2, "{second}");
    assert!((fourth - expected_fourth).abs() < 0.1 * expected_fourth, "{fourth}");
}

#[test]
fn haar_phase_is_not_biased() {
    // A QR routine without phase normalization leaves u₀₀ real and positive.
    let negatives = (0..400)
        .filter(|&i| haar_unitary(6, derive_seed(5, i))[(0, 0)].re < 0.0)
        .count();
    assert!((140..=260).contains(&negatives), "{negatives}");
}

#[test]
fn haar_matrices_are_unitary() {
    for n in [1, 2, 7, 64] {
        let u = haar_unitary(n, n as u64);
        assert!(u.adjoint_matmul(&u).max_abs_diff(&CMatrix::identity(n)) < 1e-12);
    }
}

#[test]
fn sweeps_are_deterministic_across_thread_counts() {
    let cases = SweepConfig::new(77, 40).cases().unwrap();
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let many = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let a = single.install(|| run_sweep(&cases).unwrap());
    let b = many.install(|| run_sweep(&cases).unwrap());
    assert_eq!(a, b);
    assert_eq!(a.instances, 40);
    assert_eq!(a.violations, 0);
    let c = run_sweep(&SweepConfig::new(78, 40).cases().unwrap()).unwrap();
    assert_ne!(a.records, c.records);
}

#[test]
fn counterexample_is_a_failure_in_every_sweep() {
    let mut config = SweepConfig::new(3, 10);
    config.include_counterexample = true;
    let result = run_sweep(&config.cases().unwrap()).unwrap();
    assert_eq!(result.instances, 11);
    assert_eq!(result.violations, 0);
    assert!(result.failures_by_reason.get("RHO_TOO_LARGE").copied().unwrap_or(0) >= 1);
    let last = result.records.last().unwrap();
    assert_eq!(last.status, "RHO_TOO_LARGE");
    assert_eq!(run_sweep(&[SweepCase::counterexample()]).unwrap().violations, 0);
}

#[test]
fn sharpness_family_ratio() {
    let grid: Vec<f64> = (0..40).map(|i| 10f64.powf(-8.0 + 0.2 * i as f64)).collect();
    for row in sharpness_probe(&grid).unwrap() {
        // Closed form for [[2, ε], [ε, 0]]: tan∠ = tan(½ arctan ε), bound ε/2.
        let exact = (0.5 * row.eps.atan()).tan();
        assert!((row.exact_tan - exact).abs() <= 1e-12 * exact.max(1e-300) + 1e-300, "{row:?}");
        assert!((row.tan_bound - row.eps / 2.0).abs() <= 1e-15 * row.eps);
        assert!(row.ratio <= 1.0 + 1e-9, "{row:?}");
    }
    let at = sharpness_probe(&[1e-3]).unwrap()[0].ratio;
    assert!(at >= 0.999999, "{at}");
    assert!(sharpness_probe(&[0.0]).is_err());
    assert!(sharpness_probe(&[1.5]).is_err());
}

#[test]
fn perturbation_size_tracks_epsilon() {
    for (i, eps) in [1e-6, 1e-4, 1e-2].into_iter().enumerate() {
        let spec = InstanceSpec {
            n: 30,
            k: 4,
            exterior_eigs: vec![5.0, -5.0, 6.0, -6.5],
            interior_eigs: (0..26).map(|j| -1.0 + j as f64 / 13.0).collect(),
            perturbation_eps: eps,
            seed: 100 + i as u64,
        };
        let inst = synth_instance(&spec).unwrap();
        let angle = principal_angles(&inst.q1, &inst.x1).unwrap().largest;
        assert!(angle > 0.05 * eps && angle < 20.0 * eps, "eps {eps}: angle {angle}");
    }
}

#[test]
fn config_json_defaults_and_rejections() {
    let config: SweepConfig = serde_json::from_str(r#"{"master_seed": 9, "instances": 5}"#).unwrap();
    assert_eq!(config, SweepConfig::new(9, 5));
    assert!(serde_json::from_str::<SweepConfig>(r#"{"master_seed": 9, "instances": 5, "nmax": 3}"#).is_err());
    let mut bad = SweepConfig::new(1, 5);
    bad.n_min = 1;
    assert!(bad.cases().is_err());
    let mut bad = SweepConfig::new(1, 0);
    bad.include_counterexample = false;
    assert!(bad.cases().is_err() || run_sweep(&bad.cases().unwrap()).is_err());
}
