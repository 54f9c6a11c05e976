//! Monte-Carlo experiment driver.
//!
//! Each trial derives its own seed from the base seed, builds one
//! [`Scenario`], and runs every selected scheduler on that same scenario so
//! results are paired across schedulers. Trials are independent and may run
//! concurrently; results are always collected in trial order.

use std::path::PathBuf;

use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::par::{map_range, Parallelism};
use crate::scenario::{stream_rng, streams, Scenario};
use crate::schedulers::{
    exhaustive_search, greedy_schedule, learning_schedule, random_scheduler, ScheduleOutcome,
    SchedulerKind, DEFAULT_EXHAUSTIVE_BUDGET,
};

mod cdf;
mod output;
mod seed;

pub use cdf::empirical_cdf;
pub use output::{LoadedResults, SummaryRow};
pub use seed::trial_seed;

#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub config: SystemConfig,
    pub schedulers: Vec<SchedulerKind>,
    pub trials: usize,
    /// Trial `i` runs with [`trial_seed`]`(base_seed, i)`.
    pub base_seed: u64,
    pub exhaustive_budget: u128,
    pub parallelism: Parallelism,
    /// When set, [`run_experiment`] also writes the result files here.
    pub output_dir: Option<PathBuf>,
}

impl ExperimentSpec {
    /// All four schedulers, seeded from `config.rng_seed`.
    pub fn new(config: SystemConfig, trials: usize) -> Self {
        Self {
            base_seed: config.rng_seed,
            config,
            schedulers: SchedulerKind::ALL.to_vec(),
            trials,
            exhaustive_budget: DEFAULT_EXHAUSTIVE_BUDGET,
            parallelism: Parallelism::default(),
            output_dir: None,
        }
    }

    pub fn with_schedulers(mut self, schedulers: &[SchedulerKind]) -> Self {
        self.schedulers = schedulers.to_vec();
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.base_seed = seed;
        self
    }

    pub fn with_parallelism(mut self, parallelism: Parallelism) -> Self {
        self.parallelism = parallelism;
        self
    }

    pub fn exhaustive_fits(&self) -> bool {
        self.config.joint_schedule_count() <= self.exhaustive_budget
    }

    pub fn validate(&self) -> Result<()> {
        self.config.validate()?;
        if self.trials == 0 {
            return Err(Error::InvalidExperiment("at least one trial is required".into()));
        }
        if self.schedulers.is_empty() {
            return Err(Error::InvalidExperiment("no scheduler selected".into()));
        }
        if self.schedulers.contains(&SchedulerKind::Exhaustive) && !self.exhaustive_fits() {
            return Err(Error::BudgetExceeded {
                size: self.config.joint_schedule_count(),
                budget: self.exhaustive_budget,
            });
        }
        Ok(())
    }

    /// Sorted, de-duplicated scheduler list.
    fn scheduler_set(&self) -> Vec<SchedulerKind> {
        let mut kinds = self.schedulers.clone();
        kinds.sort();
        kinds.dedup();
        kinds
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialResult {
    pub trial: usize,
    pub seed: u64,
    /// One outcome per scheduler, in [`ResultSet::schedulers`] order.
    pub outcomes: Vec<ScheduleOutcome>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Summary {
    pub trials: usize,
    pub mean: f64,
    /// Sample variance (n − 1 denominator); 0 for a single trial.
    pub variance: f64,
    pub min: f64,
    pub max: f64,
    pub total_evaluations: u64,
}

impl Summary {
    pub fn from_samples(utilities: &[f64], evaluations: &[u64]) -> Self {
        let n = utilities.len();
        let mean = utilities.iter().sum::<f64>() / n as f64;
        let variance = if n > 1 {
            utilities.iter().map(|u| (u - mean).powi(2)).sum::<f64>() / (n - 1) as f64
        } else {
            0.0
        };
        Self {
            trials: n,
            mean,
            variance,
            min: utilities.iter().cloned().fold(f64::INFINITY, f64::min),
            max: utilities.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
            total_evaluations: evaluations.iter().sum(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResultSet {
    pub config: SystemConfig,
    pub base_seed: u64,
    pub schedulers: Vec<SchedulerKind>,
    pub trials: Vec<TrialResult>,
}

impl ResultSet {
    fn position(&self, kind: SchedulerKind) -> Option<usize> {
        self.schedulers.iter().position(|&k| k == kind)
    }

    /// Outcomes of `kind` in trial order.
    pub fn outcomes(&self, kind: SchedulerKind) -> Vec<&ScheduleOutcome> {
        match self.position(kind) {
            Some(i) => self.trials.iter().map(|t| &t.outcomes[i]).collect(),
            None => Vec::new(),
        }
    }

    pub fn utilities(&self, kind: SchedulerKind) -> Vec<f64> {
        self.outcomes(kind).iter().map(|o| o.network_utility).collect()
    }

    pub fn evaluations(&self, kind: SchedulerKind) -> Vec<u64> {
        self.outcomes(kind).iter().map(|o| o.evaluations).collect()
    }

    pub fn cdf(&self, kind: SchedulerKind) -> Result<Vec<(f64, f64)>> {
        empirical_cdf(&self.utilities(kind))
    }

    pub fn summary(&self, kind: SchedulerKind) -> Option<Summary> {
        self.position(kind)?;
        Some(Summary::from_samples(&self.utilities(kind), &self.evaluations(kind)))
    }
}

/// Runs every selected scheduler on one trial's scenario.
pub fn run_trial(spec: &ExperimentSpec, trial: usize) -> Result<TrialResult> {
    let seed = trial_seed(spec.base_seed, trial as u64);
    let scenario = Scenario::generate(&spec.config, seed)?;
    let c = &spec.config;
    let outcomes = spec
        .scheduler_set()
        .into_iter()
        .map(|kind| match kind {
            SchedulerKind::Random => random_scheduler(&scenario, &mut stream_rng(seed, streams::RANDOM)),
            SchedulerKind::Exhaustive => {
                exhaustive_search(&scenario, spec.exhaustive_budget, spec.parallelism)
            }
            SchedulerKind::Greedy => {
                greedy_schedule(&scenario, c.greedy_iters, &mut stream_rng(seed, streams::GREEDY))
            }
            SchedulerKind::Learning => learning_schedule(
                &scenario,
                c.learning_weight,
                c.max_learning_iters,
                &mut stream_rng(seed, streams::LEARNING),
            )
            .map(|(outcome, _)| outcome),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TrialResult {
        trial,
        seed,
        outcomes,
    })
}

pub fn run_experiment(spec: &ExperimentSpec) -> Result<ResultSet> {
    spec.validate()?;
    let trials = map_range(spec.trials, spec.parallelism, |t| run_trial(spec, t))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let results = ResultSet {
        config: spec.config.clone(),
        base_seed: spec.base_seed,
        schedulers: spec.scheduler_set(),
        trials,
    };
    if let Some(dir) = &spec.output_dir {
        results.write(dir)?;
    }
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(trials: usize) -> ExperimentSpec {
        let config = SystemConfig {
            num_aps: 2,
            num_ues_per_ap: 3,
            max_learning_iters: 50,
            greedy_iters: 3,
            ..SystemConfig::default()
        };
        ExperimentSpec::new(config, trials)
    }

    #[test]
    fn paired_inputs_and_counts() {
        let r = run_experiment(&small(4)).unwrap();
        assert_eq!(r.schedulers, SchedulerKind::ALL.to_vec());
        assert_eq!(r.trials.len(), 4);
        for kind in SchedulerKind::ALL {
            assert_eq!(r.utilities(kind).len(), 4);
        }
        assert!(r.evaluations(SchedulerKind::Exhaustive).iter().all(|&e| e == 36));
        assert!(r.evaluations(SchedulerKind::Greedy).iter().all(|&e| e == 3 * 2 * 6));
        assert!(r.evaluations(SchedulerKind::Learning).iter().all(|&e| e == 100));
        assert!(r.evaluations(SchedulerKind::Random).iter().all(|&e| e == 0));
        // each trial's outcomes re-evaluate identically on the regenerated scenario
        for t in &r.trials {
            let sc = Scenario::generate(&r.config, t.seed).unwrap();
            for o in &t.outcomes {
                assert_eq!(sc.network_utility(&o.joint).unwrap(), o.network_utility);
            }
        }
    }

    #[test]
    fn dedups_and_sorts_schedulers() {
        let spec = small(1).with_schedulers(&[
            SchedulerKind::Learning,
            SchedulerKind::Random,
            SchedulerKind::Learning,
        ]);
        let r = run_experiment(&spec).unwrap();
        assert_eq!(r.schedulers, vec![SchedulerKind::Random, SchedulerKind::Learning]);
        assert!(r.summary(SchedulerKind::Greedy).is_none());
    }

    #[test]
    fn invalid_specs() {
        assert!(run_experiment(&small(0)).is_err());
        assert!(run_experiment(&small(1).with_schedulers(&[])).is_err());
        let mut big = small(1);
        big.config.num_aps = 10;
        assert!(matches!(run_experiment(&big), Err(Error::BudgetExceeded { .. })));
        let big = big.with_schedulers(&[
            SchedulerKind::Random,
            SchedulerKind::Greedy,
            SchedulerKind::Learning,
        ]);
        assert!(run_experiment(&big).is_ok());
    }

    #[test]
    fn modes_are_bit_identical() {
        let a = run_experiment(&small(6).with_parallelism(Parallelism::Sequential)).unwrap();
        let b = run_experiment(&small(6).with_parallelism(Parallelism::Parallel)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn summary_statistics() {
        let s = Summary::from_samples(&[1.0, 2.0, 3.0, 6.0], &[1, 2, 3, 4]);
        assert_eq!(s.mean, 3.0);
        assert!((s.variance - 14.0 / 3.0).abs() < 1e-12);
        assert_eq!((s.min, s.max, s.total_evaluations, s.trials), (1.0, 6.0, 10, 4));
        assert_eq!(Summary::from_samples(&[2.5], &[0]).variance, 0.0);
    }
}
