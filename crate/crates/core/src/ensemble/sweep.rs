//! Batch certification against the exact-eigendecomposition oracle.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::instance::{synth_instance, InstanceSpec};
use super::random::{derive_seed, seeded_rng};
use super::EnsembleError;
use crate::certify::{
    aposteriori_oracle_from_spectrum, apriori_oracle_from_spectrum, canonical_counterexample,
    certify_aposteriori_with_spectrum, certify_apriori, CertifyError,
};
use crate::linalg::{hermitian_spectrum, HermitianMatrix, OrthonormalFrame};

/// Bounds below this are at rounding level; their tightness ratio is reported as 0.
pub const TIGHTNESS_FLOOR: f64 = 1e-10;

/// One sweep input: a synthetic recipe or an explicit operand pair.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepCase {
    Synthetic(InstanceSpec),
    Explicit {
        seed: u64,
        a: HermitianMatrix,
        q1: OrthonormalFrame,
    },
}

impl SweepCase {
    pub fn counterexample() -> Self {
        let (a, q1) = canonical_counterexample();
        Self::Explicit { seed: 0, a, q1 }
    }
}

/// Violation tallies, all counted with the soundness tolerance `1e-9·(1 + bound)`
/// or the matrix tolerance `1e-9·(1 + ‖A‖_max)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationCounts {
    pub apriori_bound: usize,
    pub aposteriori_bound: usize,
    pub enclosure: usize,
    pub eigenvalue_count: usize,
    pub lemma: usize,
}

impl ViolationCounts {
    pub fn total(&self) -> usize {
        self.apriori_bound + self.aposteriori_bound + self.enclosure + self.eigenvalue_count + self.lemma
    }

    fn merge(&mut self, other: &Self) {
        self.apriori_bound += other.apriori_bound;
        self.aposteriori_bound += other.aposteriori_bound;
        self.enclosure += other.enclosure;
        self.eigenvalue_count += other.eigenvalue_count;
        self.lemma += other.lemma;
    }
}

/// Per-instance line of the sweep table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub instance: usize,
    pub seed: u64,
    pub n: usize,
    pub k: usize,
    pub rho: Option<f64>,
    pub gap: Option<f64>,
    pub tan_bound: Option<f64>,
    pub exact_tan: Option<f64>,
    pub ratio: Option<f64>,
    /// `valid`, `violation`, a failure reason code, or `error:<code>`.
    pub status: String,
    pub aposteriori_tan_bound: Option<f64>,
    pub aposteriori_exact_tan: Option<f64>,
    pub aposteriori_status: Option<String>,
    pub violations: ViolationCounts,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub instances: usize,
    /// Total of all violation kinds.
    pub violations: usize,
    pub violation_counts: ViolationCounts,
    pub valid_apriori: usize,
    pub valid_aposteriori: usize,
    /// Max of `exact_tan / tan_bound` over valid a priori certificates.
    pub max_tightness: f64,
    pub max_tightness_aposteriori: f64,
    pub failures_by_reason: BTreeMap<String, usize>,
    pub aposteriori_failures_by_reason: BTreeMap<String, usize>,
    pub records: Vec<InstanceRecord>,
}

fn tightness(exact_tan: f64, bound: f64) -> f64 {
    if bound <= TIGHTNESS_FLOOR {
        0.0
    } else {
        exact_tan / bound
    }
}

fn within_bound(exact: f64, bound: f64) -> bool {
    exact <= bound + 1e-9 * (1.0 + bound)
}

fn evaluate(index: usize, case: &SweepCase) -> InstanceRecord {
    let (seed, n, k) = match case {
        SweepCase::Synthetic(s) => (s.seed, s.n, s.k),
        SweepCase::Explicit { seed, a, q1 } => (*seed, a.n(), q1.k()),
    };
    let mut record = InstanceRecord {
        instance: index,
        seed,
        n,
        k,
        rho: None,
        gap: None,
        tan_bound: None,
        exact_tan: None,
        ratio: None,
        status: String::new(),
        aposteriori_tan_bound: None,
        aposteriori_exact_tan: None,
        aposteriori_status: None,
        violations: ViolationCounts::default(),
    };
    if let Err(e) = evaluate_into(case, &mut record) {
        record.status = format!("error:{}", e.code());
    }
    record
}

fn evaluate_into(case: &SweepCase, rec: &mut InstanceRecord) -> Result<(), EnsembleError> {
    let (a, q1, interior) = match case {
        SweepCase::Synthetic(spec) => {
            let inst = synth_instance(spec)?;
            (inst.a, inst.q1, Some(spec.interior_hull()))
        }
        SweepCase::Explicit { a, q1, .. } => (a.clone(), q1.clone(), None),
    };

    // One eigendecomposition of A serves every oracle below.
    let spec = hermitian_spectrum(&a, true)?;
    let cert = certify_apriori(&a, &q1)?;
    rec.rho = Some(cert.rho);
    rec.gap = cert.window.map(|w| w.gap);
    rec.tan_bound = cert.tan_bound;
    if cert.valid {
        let oracle = apriori_oracle_from_spectrum(&q1, &cert, &spec)?;
        let bound = cert.tan_bound.expect("valid certificate has a bound");
        let v = &mut rec.violations;
        match oracle.exact_tan {
            Some(t) => {
                rec.exact_tan = Some(t);
                rec.ratio = Some(tightness(t, bound));
                if !within_bound(t, bound) {
                    v.apriori_bound += 1;
                }
            }
            // The exterior selection did not have rank k.
            None => v.apriori_bound += 1,
        }
        if !oracle.enclosure_verdict {
            v.enclosure += 1;
        }
        let radius = cert.delta_r.expect("valid certificate has δ_R");
        if oracle.max_interior_excursion.is_some_and(|x| x > radius + cert.tolerance) {
            v.enclosure += 1;
        }
        if oracle.exterior_count != Some(cert.k) {
            v.eigenvalue_count += 1;
        }
        if !oracle.lemma_cosine.is_some_and(|c| c > 0.0) {
            v.lemma += 1;
        }
        rec.status = if v.total() == 0 { "valid".into() } else { "violation".into() };
    } else {
        rec.status = cert
            .failure_reason
            .map_or_else(|| "invalid".to_string(), |r| r.code().to_string());
    }

    if let Some((lo, hi)) = interior {
        let post = certify_aposteriori_with_spectrum(&a, &q1, lo, hi, &spec)?;
        rec.aposteriori_tan_bound = post.tan_bound;
        if post.valid {
            let oracle = aposteriori_oracle_from_spectrum(&q1, &post, &spec)?;
            rec.aposteriori_exact_tan = oracle.exact_tan;
            let ok = oracle.bound_holds(&post).unwrap_or(false);
            if !ok {
                rec.violations.aposteriori_bound += 1;
            }
            if !oracle.lemma_cosine.is_some_and(|c| c > 0.0) {
                rec.violations.lemma += 1;
            }
            rec.aposteriori_status = Some(if ok { "valid".into() } else { "violation".into() });
            if !ok && rec.status == "valid" {
                rec.status = "violation".into();
            }
        } else {
            rec.aposteriori_status = post.failure_reason.map(|r| r.code().to_string());
        }
    }
    Ok(())
}

/// Certifies every case and checks each valid certificate against the oracle.
///
/// Cases run in parallel; the result depends only on the inputs.
pub fn run_sweep(cases: &[SweepCase]) -> Result<SweepResult, EnsembleError> {
    if cases.is_empty() {
        return Err(EnsembleError::EmptySweep);
    }
    let records: Vec<InstanceRecord> = cases.par_iter().enumerate().map(|(i, c)| evaluate(i, c)).collect();

    let mut result = SweepResult {
        instances: records.len(),
        violations: 0,
        violation_counts: ViolationCounts::default(),
        valid_apriori: 0,
        valid_aposteriori: 0,
        max_tightness: 0.0,
        max_tightness_aposteriori: 0.0,
        failures_by_reason: BTreeMap::new(),
        aposteriori_failures_by_reason: BTreeMap::new(),
        records: Vec::new(),
    };
    for rec in &records {
        result.violation_counts.merge(&rec.violations);
        match rec.status.as_str() {
            "valid" | "violation" => {
                result.valid_apriori += 1;
                if let Some(r) = rec.ratio {
                    result.max_tightness = result.max_tightness.max(r);
                }
            }
            reason => *result.failures_by_reason.entry(reason.to_string()).or_default() += 1,
        }
        match rec.aposteriori_status.as_deref() {
            Some("valid") | Some("violation") => {
                result.valid_aposteriori += 1;
                if let (Some(t), Some(b)) = (rec.aposteriori_exact_tan, rec.aposteriori_tan_bound) {
                    result.max_tightness_aposteriori = result.max_tightness_aposteriori.max(tightness(t, b));
                }
            }
            Some(reason) => *result.aposteriori_failures_by_reason.entry(reason.to_string()).or_default() += 1,
            None => {}
        }
    }
    result.violations = result.violation_counts.total();
    result.records = records;
    Ok(result)
}

/// Random-ensemble recipe, as read from a sweep configuration file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub master_seed: u64,
    pub instances: usize,
    #[serde(default = "defaults::n_min")]
    pub n_min: usize,
    #[serde(default = "defaults::n_max")]
    pub n_max: usize,
    #[serde(default = "defaults::eps_min")]
    pub eps_min: f64,
    #[serde(default = "defaults::eps_max")]
    pub eps_max: f64,
    /// Interior targets are uniform in `[-interior_radius, interior_radius]`.
    #[serde(default = "defaults::interior_radius")]
    pub interior_radius: f64,
    /// Minimum distance of exterior targets from the interior interval.
    #[serde(default = "defaults::gap_target")]
    pub gap_target: f64,
    /// Exterior targets lie up to this far beyond `gap_target`.
    #[serde(default = "defaults::exterior_spread")]
    pub exterior_spread: f64,
    /// Append the canonical 3×3 counterexample as the last case.
    #[serde(default)]
    pub include_counterexample: bool,
}

mod defaults {
    pub fn n_min() -> usize {
        4
    }
    pub fn n_max() -> usize {
        64
    }
    pub fn eps_min() -> f64 {
        1e-6
    }
    pub fn eps_max() -> f64 {
        0.3
    }
    pub fn interior_radius() -> f64 {
        1.0
    }
    pub fn gap_target() -> f64 {
        1.0
    }
    pub fn exterior_spread() -> f64 {
        4.0
    }
}

impl SweepConfig {
    pub fn new(master_seed: u64, instances: usize) -> Self {
        Self {
            master_seed,
            instances,
            n_min: defaults::n_min(),
            n_max: defaults::n_max(),
            eps_min: defaults::eps_min(),
            eps_max: defaults::eps_max(),
            interior_radius: defaults::interior_radius(),
            gap_target: defaults::gap_target(),
            exterior_spread: defaults::exterior_spread(),
            include_counterexample: false,
        }
    }

    fn validate(&self) -> Result<(), EnsembleError> {
        let bad = |m: &str| Err(EnsembleError::InvalidConfig(m.to_string()));
        if self.instances == 0 && !self.include_counterexample {
            return bad("instances must be positive");
        }
        if self.n_min < 2 || self.n_min > self.n_max {
            return bad("need 2 <= n_min <= n_max");
        }
        if !(self.eps_min > 0.0 && self.eps_min <= self.eps_max && self.eps_max.is_finite()) {
            return bad("need 0 < eps_min <= eps_max");
        }
        if !(self.interior_radius >= 0.0 && self.gap_target > 0.0 && self.exterior_spread >= 0.0) {
            return bad("interior_radius, gap_target, exterior_spread must be non-negative (gap_target positive)");
        }
        Ok(())
    }

    /// Per-instance seed `derive_seed(master_seed, index)`; parameters are drawn
    /// from a stream keyed by that seed, so every case is reproducible alone.
    pub fn cases(&self) -> Result<Vec<SweepCase>, EnsembleError> {
        self.validate()?;
        let mut cases: Vec<SweepCase> = (0..self.instances)
            .map(|i| SweepCase::Synthetic(self.instance_spec(i)))
            .collect();
        if self.include_counterexample {
            cases.push(SweepCase::counterexample());
        }
        Ok(cases)
    }

    pub fn instance_spec(&self, index: usize) -> InstanceSpec {
        let seed = derive_seed(self.master_seed, index as u64);
        let mut rng = seeded_rng(derive_seed(seed, 2));
        let n = rng.random_range(self.n_min..=self.n_max);
        let k = rng.random_range(1..n);
        let log_eps = rng.random_range(self.eps_min.ln()..=self.eps_max.ln());
        let r = self.interior_radius;
        let interior_eigs = (0..n - k).map(|_| rng.random_range(-r..=r)).collect();
        let exterior_eigs = (0..k)
            .map(|_| {
                let offset = r + self.gap_target + rng.random_range(0.0..=self.exterior_spread);
                if rng.random_bool(0.5) {
                    offset
                } else {
                    -offset
                }
            })
            .collect();
        InstanceSpec {
            n,
            k,
            exterior_eigs,
            interior_eigs,
            perturbation_eps: log_eps.exp(),
            seed,
        }
    }
}

impl From<CertifyError> for EnsembleError {
    fn from(e: CertifyError) -> Self {
        EnsembleError::Certify(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unperturbed_instances_are_exact() {
        let mut cfg = SweepConfig::new(5, 20);
        cfg.n_max = 12;
        let cases: Vec<SweepCase> = (0..20)
            .map(|i| {
                let mut s = cfg.instance_spec(i);
                s.perturbation_eps = 0.0;
                SweepCase::Synthetic(s)
            })
            .collect();
        let res = run_sweep(&cases).unwrap();
        assert_eq!(res.violations, 0);
        assert_eq!(res.valid_apriori, 20);
        assert_eq!(res.max_tightness, 0.0);
    }

    #[test]
    fn counterexample_is_a_failure_not_a_violation() {
        let res = run_sweep(&[SweepCase::counterexample()]).unwrap();
        assert_eq!(res.violations, 0);
        assert_eq!(res.failures_by_reason.get("RHO_TOO_LARGE"), Some(&1));
    }

    #[test]
    fn empty_sweep_is_rejected() {
        assert!(matches!(run_sweep(&[]), Err(EnsembleError::EmptySweep)));
    }

    #[test]
    fn config_specs_respect_ranges() {
        let cfg = SweepConfig::new(1, 50);
        for i in 0..50 {
            let s = cfg.instance_spec(i);
            assert!((4..=64).contains(&s.n));
            assert!(s.k >= 1 && s.k < s.n);
            assert!(s.perturbation_eps >= 1e-6 * (1.0 - 1e-12) && s.perturbation_eps <= 0.3 * (1.0 + 1e-12));
            s.validate().unwrap();
        }
    }
}
