//! Seeded property-test campaigns over the checkers.
//!
//! A campaign runs `trials` instances of each requested suite at each
//! requested dimension and aggregates min-slack statistics. Per-trial seeds
//! are `campaign_seed XOR trial_index`, salted per (suite, dimension), so
//! trials are independent streams and may run on any number of threads with
//! bit-identical aggregates: min/max/count merging is order-independent,
//! and ties on the minimum keep the earliest trial.
//!
//! The `LOEWNER_LAB_THREADS` environment variable caps worker threads.

use crate::checkers::{self, CheckError};
use crate::funcatalog::{self, FunctionDescriptor};
use crate::generators as gen;
use crate::matcore::{MAX_DIM, MIN_DIM};
use crate::prng::{derive_seed, Prng};
use crate::report::{CampaignReport, ConfigEcho, SuiteAggregate, REPORT_SCHEMA_VERSION};
use crate::result::{CheckId, CheckKind, CheckResult};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("no suites selected")]
    NoSuites,
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("dimension {0} outside [{MIN_DIM}, {MAX_DIM}]")]
    BadDimension(usize),
    #[error("no dimensions selected")]
    NoDimensions,
    #[error("trials must be ≥ 1")]
    NoTrials,
    #[error("tolerances must be > 0")]
    BadTolerance,
    #[error("invalid spectrum ({0}, {1})")]
    BadSpectrum(f64, f64),
    #[error("exponents ({0}, {1}) are not conjugate with p, q > 1")]
    BadExponents(f64, f64),
}

#[derive(Debug, Clone)]
pub struct CampaignConfig {
    pub suites: Vec<CheckId>,
    pub dims: Vec<usize>,
    pub trials: u64,
    pub seed: u64,
    pub tol_matrix: f64,
    pub tol_scalar: f64,
    pub spectrum: (f64, f64),
    pub exponents: Vec<(f64, f64)>,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            suites: CheckId::ALL.to_vec(),
            dims: vec![2, 3, 5, 8],
            trials: 100,
            seed: 42,
            tol_matrix: checkers::TOL_MATRIX,
            tol_scalar: checkers::TOL_SCALAR,
            spectrum: gen::DEFAULT_SPECTRUM,
            exponents: vec![(2.0, 2.0), (3.0, 1.5)],
        }
    }
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.suites.is_empty() {
            return Err(ConfigError::NoSuites);
        }
        if self.dims.is_empty() {
            return Err(ConfigError::NoDimensions);
        }
        for &n in &self.dims {
            if !(MIN_DIM..=MAX_DIM).contains(&n) {
                return Err(ConfigError::BadDimension(n));
            }
        }
        if self.trials == 0 {
            return Err(ConfigError::NoTrials);
        }
        if !(self.tol_matrix > 0.0 && self.tol_scalar > 0.0) {
            return Err(ConfigError::BadTolerance);
        }
        if !(self.spectrum.0 > 0.0 && self.spectrum.1 >= self.spectrum.0) {
            return Err(ConfigError::BadSpectrum(self.spectrum.0, self.spectrum.1));
        }
        if self.exponents.is_empty() {
            return Err(ConfigError::BadExponents(0.0, 0.0));
        }
        for &(p, q) in &self.exponents {
            if !(p > 1.0 && q > 1.0 && (1.0 / p + 1.0 / q - 1.0).abs() <= 1e-12) {
                return Err(ConfigError::BadExponents(p, q));
            }
        }
        Ok(())
    }

    fn tol_for(&self, kind: CheckKind) -> f64 {
        match kind {
            CheckKind::Matrix => self.tol_matrix,
            CheckKind::Scalar => self.tol_scalar,
        }
    }
}

/// Worker-thread cap: `LOEWNER_LAB_THREADS`, else min(4, available cores).
pub fn thread_cap() -> usize {
    if let Ok(v) = std::env::var("LOEWNER_LAB_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            return n.max(1);
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get().min(4))
        .unwrap_or(1)
}

/// Run the campaign. The returned report's aggregates depend only on the
/// configuration and seed, not on thread count or timing.
pub fn run(config: &CampaignConfig) -> Result<CampaignReport, ConfigError> {
    config.validate()?;
    let start = std::time::Instant::now();
    let threads = thread_cap();
    let mut rows = Vec::new();
    for &suite in &config.suites {
        for &n in &config.dims {
            rows.push(run_suite(config, suite, n, threads));
        }
    }
    let all_pass = rows.iter().all(|r| r.pass);
    Ok(CampaignReport {
        schema_version: REPORT_SCHEMA_VERSION,
        tool: "loewner-lab".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config: ConfigEcho {
            suites: config.suites.clone(),
            dims: config.dims.clone(),
            trials: config.trials,
            seed: config.seed,
            tol_matrix: config.tol_matrix,
            tol_scalar: config.tol_scalar,
            spectrum: config.spectrum,
            exponents: config.exponents.clone(),
        },
        all_pass,
        wall_time_s: start.elapsed().as_secs_f64(),
        rows,
    })
}

#[derive(Debug, Clone)]
struct Partial {
    trials: u64,
    min_slack: f64,
    argmin_seed: u64,
    constant_min: f64,
    constant_max: f64,
    worst_ratio: Option<f64>,
    regenerations: u64,
    errors: u64,
    first_error: Option<String>,
}

impl Partial {
    fn new() -> Self {
        Self {
            trials: 0,
            min_slack: f64::INFINITY,
            argmin_seed: 0,
            constant_min: f64::INFINITY,
            constant_max: f64::NEG_INFINITY,
            worst_ratio: None,
            regenerations: 0,
            errors: 0,
            first_error: None,
        }
    }

    fn absorb(&mut self, outcome: TrialOutcome) {
        self.trials += 1;
        self.regenerations += outcome.regenerations;
        match outcome.result {
            Ok(res) => {
                if !res.slack.is_finite() {
                    self.errors += 1;
                    if self.first_error.is_none() {
                        self.first_error = Some("non-finite slack".into());
                    }
                    return;
                }
                if res.slack < self.min_slack {
                    self.min_slack = res.slack;
                    self.argmin_seed = outcome.trial_seed;
                }
                self.constant_min = self.constant_min.min(res.constant_used);
                self.constant_max = self.constant_max.max(res.constant_used);
                if let Some(r) = res.observed_ratio {
                    self.worst_ratio = Some(self.worst_ratio.map_or(r, |w| w.max(r)));
                }
            }
            Err(e) => {
                self.errors += 1;
                if self.first_error.is_none() {
                    self.first_error = Some(e.to_string());
                }
            }
        }
    }

    /// Merge a later chunk into an earlier one; strict `<` keeps the
    /// earliest argmin on ties, so chunked and sequential runs agree.
    fn merge(&mut self, later: Partial) {
        self.trials += later.trials;
        if later.min_slack < self.min_slack {
            self.min_slack = later.min_slack;
            self.argmin_seed = later.argmin_seed;
        }
        self.constant_min = self.constant_min.min(later.constant_min);
        self.constant_max = self.constant_max.max(later.constant_max);
        self.worst_ratio = match (self.worst_ratio, later.worst_ratio) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        self.regenerations += later.regenerations;
        if later.errors > 0 {
            self.errors += later.errors;
            if self.first_error.is_none() {
                self.first_error = later.first_error;
            }
        }
    }
}

struct TrialOutcome {
    trial_seed: u64,
    regenerations: u64,
    result: Result<CheckResult, CheckError>,
}

fn run_suite(config: &CampaignConfig, suite: CheckId, n: usize, threads: usize) -> SuiteAggregate {
    let trials = config.trials;
    let run_range = |lo: u64, hi: u64| -> Partial {
        let mut part = Partial::new();
        for trial in lo..hi {
            part.absorb(run_trial(config, suite, n, trial));
        }
        part
    };

    let partial = if threads <= 1 || trials < 64 {
        run_range(0, trials)
    } else {
        let workers = threads.min(trials as usize).max(1);
        let chunk = trials.div_ceil(workers as u64);
        let partials: Vec<Partial> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers as u64)
                .map(|w| {
                    let lo = w * chunk;
                    let hi = ((w + 1) * chunk).min(trials);
                    let run_range = &run_range;
                    scope.spawn(move || if lo < hi { run_range(lo, hi) } else { Partial::new() })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker")).collect()
        });
        let mut merged = Partial::new();
        for p in partials {
            merged.merge(p);
        }
        merged
    };

    let tol = config.tol_for(suite.kind());
    let pass = partial.errors == 0 && partial.min_slack >= -tol;
    SuiteAggregate {
        check_id: suite,
        kind: suite.kind(),
        n,
        trials: partial.trials,
        min_slack: partial.min_slack,
        argmin_seed: partial.argmin_seed,
        tol,
        pass,
        constant_min: partial.constant_min,
        constant_max: partial.constant_max,
        worst_ratio: partial.worst_ratio,
        regenerations: partial.regenerations,
        errors: partial.errors,
        first_error: partial.first_error,
    }
}

/// Suite-distinguishing salt mixed into per-trial seeds.
fn suite_salt(suite: CheckId, n: usize) -> u64 {
    let idx = CheckId::ALL
        .iter()
        .position(|&c| c == suite)
        .expect("suite registered") as u64;
    (idx << 8) | n as u64
}

fn run_trial(config: &CampaignConfig, suite: CheckId, n: usize, trial: u64) -> TrialOutcome {
    let trial_seed = config.seed ^ trial;
    let base = derive_seed(trial_seed, suite_salt(suite, n));
    // Hypothesis misses are regenerated deterministically, never recorded.
    let mut regenerations = 0u64;
    for attempt in 0..64u64 {
        let seed = derive_seed(base, attempt);
        let result = dispatch(config, suite, n, trial, seed);
        if let Err(CheckError::HypothesisUnsatisfied(_)) = result {
            regenerations += 1;
            continue;
        }
        return TrialOutcome {
            trial_seed,
            regenerations,
            result,
        };
    }
    TrialOutcome {
        trial_seed,
        regenerations,
        result: Err(CheckError::HypothesisUnsatisfied(
            "hypothesis regeneration budget exhausted",
        )),
    }
}

fn fetch(name: &str) -> FunctionDescriptor {
    funcatalog::catalog_fn(name).expect("builtin catalog entry")
}

fn cycle<'a>(names: &'a [&'a str], trial: u64) -> FunctionDescriptor {
    fetch(names[(trial % names.len() as u64) as usize])
}

/// The proof-technique function of the Aczél counterpart: t − 1/m on
/// (1/m, ∞), increasing, affine (concave), non-negative on the generated
/// instances.
fn shifted_by_count(m: usize) -> FunctionDescriptor {
    let inv_m = 1.0 / m as f64;
    FunctionDescriptor::new(
        "shift_by_count",
        crate::matcore::Domain::from_open(inv_m),
        funcatalog::Monotonicity::Increasing,
        funcatalog::Curvature::Concave,
        funcatalog::GeoCurvature::Neither,
        false,
        move |t| t - inv_m,
    )
}

fn dispatch(
    config: &CampaignConfig,
    suite: CheckId,
    n: usize,
    trial: u64,
    seed: u64,
) -> Result<CheckResult, CheckError> {
    let mut rng = Prng::from_seed(seed);
    let spectrum = config.spectrum;
    let exps = &config.exponents;
    let (p, q) = exps[(trial % exps.len() as u64) as usize];
    // Shared draw order: suite parameters first, then generator sub-seeds.
    let alpha = rng.uniform(0.0, 1.0);
    let s_target = rng.log_uniform(0.3, 1.0);
    let t_target = s_target * rng.log_uniform(1.0, 6.0);
    let gen_seed = rng.next_u64();
    let probe_seed = rng.next_u64();

    let probes = |count: usize, n: usize, seed: u64| -> Vec<Vec<f64>> {
        let mut prng = Prng::from_seed(seed);
        (0..count).map(|_| gen::probe_stream(n, &mut prng)).collect()
    };
    let to_check = |e: gen::GenError| -> CheckError {
        match e {
            gen::GenError::Mat(m) => CheckError::Mat(m),
            other => CheckError::HypothesisUnsatisfied(match other {
                gen::GenError::InvalidRange(_, _) => "generator range",
                gen::GenError::InvalidExponent(_) => "generator exponent",
                gen::GenError::NotConjugate(_, _) => "generator exponents",
                gen::GenError::NotInvertible(_) => "generator inverse",
                gen::GenError::Mat(_) => unreachable!(),
            }),
        }
    };

    match suite {
        CheckId::CheckYoung => {
            let pair =
                gen::rand_sandwich_pair(n, spectrum, s_target, t_target, gen_seed).map_err(to_check)?;
            checkers::check_young(&pair, alpha, seed)
        }
        CheckId::CheckReverseYoung => {
            let pair =
                gen::rand_sandwich_pair(n, spectrum, s_target, t_target, gen_seed).map_err(to_check)?;
            checkers::check_reverse_young(&pair, alpha, seed)
        }
        CheckId::CheckLemmaGdec => {
            let g = cycle(&["inverse", "inv_shift"], trial);
            let pair =
                gen::rand_sandwich_pair(n, spectrum, s_target, t_target, gen_seed).map_err(to_check)?;
            checkers::check_lemma_gdec(&pair, alpha, &g, seed)
        }
        CheckId::CheckLemmaFmono => {
            let f = cycle(&["sqrt", "pow_quarter", "saturate"], trial);
            let pair =
                gen::rand_sandwich_pair(n, spectrum, s_target, t_target, gen_seed).map_err(to_check)?;
            checkers::check_lemma_fmono(&pair, alpha, &f, seed)
        }
        CheckId::CheckAczelVariant => {
            let f = cycle(&["sqrt", "saturate"], trial);
            let pair =
                gen::rand_sandwich_pair(n, spectrum, s_target, t_target, gen_seed).map_err(to_check)?;
            checkers::check_aczel_variant(&pair, p, q, &f, &probes(3, n, probe_seed), seed)
        }
        CheckId::CheckScalarSandwich => {
            let pair =
                gen::rand_sandwich_pair(n, spectrum, s_target, t_target, gen_seed).map_err(to_check)?;
            checkers::check_scalar_sandwich(&pair, alpha, &probes(3, n, probe_seed), seed)
        }
        CheckId::CheckEigDoublyConcave => {
            let f = cycle(&["sqrt", "saturate", "exp_saturate", "saturate_sqrt"], trial);
            let pair =
                gen::rand_sandwich_pair(n, spectrum, s_target, t_target, gen_seed).map_err(to_check)?;
            checkers::check_eig_doubly_concave(&pair, alpha, &f, seed)
        }
        CheckId::CheckUnitaryFormConcave => {
            let f = cycle(&["sqrt", "saturate", "exp_saturate", "saturate_sqrt"], trial);
            let pair =
                gen::rand_sandwich_pair(n, spectrum, s_target, t_target, gen_seed).map_err(to_check)?;
            checkers::check_unitary_form_concave(&pair, alpha, &f, seed)
        }
        CheckId::CheckAczelGenKantorovich => {
            let f = cycle(&["sqrt", "saturate"], trial);
            let pair = gen::rand_sandwich_straddle(n, spectrum, gen_seed).map_err(to_check)?;
            checkers::check_aczel_gen_kantorovich(&pair, p, q, &f, &probes(3, n, probe_seed), seed)
        }
        CheckId::CheckEigDoublyConvex => {
            let g = cycle(&["square", "pow_3half", "poly_convex"], trial);
            let pair = gen::rand_gimage_sandwich(n, &g, spectrum, s_target, t_target, gen_seed)
                .map_err(to_check)?;
            checkers::check_eig_doubly_convex(&pair, alpha, &g, seed)
        }
        CheckId::CheckReverseAczel => {
            let g = cycle(&["square", "poly_convex"], trial);
            let pair = gen::rand_gimage_sandwich(n, &g, spectrum, s_target, t_target, gen_seed)
                .map_err(to_check)?;
            checkers::check_reverse_aczel(&pair, p, q, &g, &probes(3, n, probe_seed), seed)
        }
        CheckId::CheckEigDecGeoconvex => {
            // Restricted to g with doubly concave reciprocal; see the
            // divergence witness test in `checkers`.
            let g = cycle(&["inverse", "inv_sqrt"], trial);
            let pair =
                gen::rand_sandwich_pair(n, spectrum, s_target, t_target, gen_seed).map_err(to_check)?;
            checkers::check_eig_dec_geoconvex(&pair, alpha, &g, seed)
        }
        CheckId::CheckReverseAczelDec => {
            let g = cycle(&["inverse", "inv_sqrt"], trial);
            let pair =
                gen::rand_sandwich_pair(n, spectrum, s_target, t_target, gen_seed).map_err(to_check)?;
            checkers::check_reverse_aczel_dec(&pair, p, q, &g, &probes(3, n, probe_seed), seed)
        }
        CheckId::CheckAczelClassic => {
            let m = 2 + (trial % 6) as usize;
            let (a, b) = gen::rand_admissible_pair(m, 2.0, 2.0, gen_seed).map_err(to_check)?;
            checkers::check_aczel_classic(&a, &b, seed)
        }
        CheckId::CheckPopoviciu => {
            let m = 1 + (trial % 8) as usize;
            let (a, b) = gen::rand_admissible_pair(m, p, q, gen_seed).map_err(to_check)?;
            checkers::check_popoviciu(&a, &b, p, q, seed)
        }
        CheckId::CheckSumCounterpart => {
            let inst = gen::rand_scalar_instance(8, p, (0.65, 2.0), 0.7, 1.5, gen_seed)
                .map_err(to_check)?;
            if trial.is_multiple_of(2) {
                checkers::check_sum_counterpart(&inst, &fetch("identity"), seed)
            } else {
                checkers::check_sum_counterpart(&inst, &shifted_by_count(8), seed)
            }
        }
        CheckId::CheckAczelCounterpart => {
            let inst = gen::rand_counterpart_instance(8, p, gen_seed).map_err(to_check)?;
            checkers::check_aczel_counterpart(&inst, seed)
        }
        CheckId::CheckCommutingProduct => {
            let f = cycle(&["sqrt", "shift_down"], trial);
            let pair = gen::rand_commuting_ratio_pair(n, (1.3, 6.0), (0.9, 1.6), p, q, gen_seed)
                .map_err(to_check)?;
            checkers::check_commuting_product(&pair, p, q, &f, seed)
        }
        CheckId::GmeanIdentities => {
            let a = gen::rand_spd(n, spectrum, gen_seed).map_err(to_check)?;
            let b = gen::rand_spd(n, spectrum, probe_seed).map_err(to_check)?;
            let w = crate::means::MeanWeight::from_alpha(alpha).expect("alpha in range");
            Ok(crate::means::gmean_identities_check(&a, &b, w)?)
        }
        CheckId::ValidateConvexity | CheckId::ValidateGeoConvexity | CheckId::ValidateOpMonotone => {
            unreachable!("validators are not campaign suites")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        let mut cfg = CampaignConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.dims = vec![1];
        assert!(matches!(cfg.validate(), Err(ConfigError::BadDimension(1))));
        cfg.dims = vec![2];
        cfg.trials = 0;
        assert!(matches!(cfg.validate(), Err(ConfigError::NoTrials)));
        cfg.trials = 1;
        cfg.exponents = vec![(2.0, 3.0)];
        assert!(matches!(cfg.validate(), Err(ConfigError::BadExponents(_, _))));
    }

    #[test]
    fn smoke_campaign_passes() {
        let cfg = CampaignConfig {
            suites: vec![CheckId::CheckYoung, CheckId::CheckAczelClassic],
            dims: vec![2, 3],
            trials: 25,
            seed: 1,
            ..CampaignConfig::default()
        };
        let report = run(&cfg).unwrap();
        assert!(report.all_pass);
        assert_eq!(report.rows.len(), 4);
        for row in &report.rows {
            assert_eq!(row.trials, 25);
            assert_eq!(row.errors, 0);
            assert!(row.min_slack >= -row.tol);
        }
    }

    #[test]
    fn aggregates_reproduce_and_ignore_thread_count() {
        let cfg = CampaignConfig {
            suites: vec![CheckId::CheckReverseYoung],
            dims: vec![3],
            trials: 80,
            seed: 7,
            ..CampaignConfig::default()
        };
        let sequential = {
            std::env::set_var("LOEWNER_LAB_THREADS", "1");
            run(&cfg).unwrap()
        };
        let parallel = {
            std::env::set_var("LOEWNER_LAB_THREADS", "4");
            run(&cfg).unwrap()
        };
        std::env::remove_var("LOEWNER_LAB_THREADS");
        assert_eq!(sequential.rows[0].min_slack, parallel.rows[0].min_slack);
        assert_eq!(sequential.rows[0].argmin_seed, parallel.rows[0].argmin_seed);
        assert_eq!(sequential.rows[0].constant_max, parallel.rows[0].constant_max);
    }

    #[test]
    fn every_suite_runs_clean_at_small_scale() {
        let cfg = CampaignConfig {
            trials: 6,
            dims: vec![2, 4],
            seed: 3,
            ..CampaignConfig::default()
        };
        let report = run(&cfg).unwrap();
        for row in &report.rows {
            assert_eq!(row.errors, 0, "{} n={} failed: {:?}", row.check_id, row.n, row.first_error);
            assert!(
                row.pass,
                "{} n={}: min_slack {} vs tol {}",
                row.check_id, row.n, row.min_slack, row.tol
            );
        }
    }
}
