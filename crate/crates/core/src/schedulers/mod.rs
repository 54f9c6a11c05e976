//! Beam-sequence schedulers.
//!
//! All four take a [`Scenario`] and return a [`ScheduleOutcome`] whose
//! `evaluations` field counts the utility evaluations the algorithm itself
//! performed: one per joint schedule for exhaustive search, one per candidate
//! sequence per block step for greedy, one per AP per iteration for learning,
//! none for the random baseline. Utilities computed only for reporting are
//! not counted.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::Error;
use crate::scenario::Scenario;
use crate::utility::JointSchedule;

mod exhaustive;
mod greedy;
mod learning;
mod lri;
mod random;
mod sequences;

pub use exhaustive::{exhaustive_search, DEFAULT_EXHAUSTIVE_BUDGET};
pub use greedy::{greedy_schedule, GreedyStep};
pub use learning::{learning_schedule, LearningState, LearningStep};
pub use lri::{check_simplex, lri_update, lri_update_in_place, SIMPLEX_TOLERANCE};
pub use random::{random_schedule, random_scheduler};
pub use sequences::{enumerate_sequences, sequence_at, sequence_index};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchedulerKind {
    Random,
    Exhaustive,
    Greedy,
    Learning,
}

impl SchedulerKind {
    pub const ALL: [SchedulerKind; 4] = [
        SchedulerKind::Random,
        SchedulerKind::Exhaustive,
        SchedulerKind::Greedy,
        SchedulerKind::Learning,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchedulerKind::Random => "random",
            SchedulerKind::Exhaustive => "exhaustive",
            SchedulerKind::Greedy => "greedy",
            SchedulerKind::Learning => "learning",
        }
    }
}

impl fmt::Display for SchedulerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchedulerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                Error::InvalidExperiment(format!(
                    "unknown scheduler '{s}' (expected random, exhaustive, greedy or learning)"
                ))
            })
    }
}

/// Number of utility evaluations performed by one scheduler run.
#[derive(Debug, Default)]
pub struct EvalCounter(AtomicU64);

impl EvalCounter {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&self, n: u64) {
        self.0.fetch_add(n, Ordering::Relaxed);
    }

    #[inline]
    pub fn incr(&self) {
        self.add(1);
    }

    pub fn get(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Trace {
    None,
    Greedy(Vec<GreedyStep>),
    Learning(Vec<LearningStep>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScheduleOutcome {
    pub kind: SchedulerKind,
    pub joint: JointSchedule,
    /// Canonical sequence index chosen by each AP.
    pub indices: Vec<u64>,
    pub cycle_utilities: Vec<f64>,
    pub network_utility: f64,
    pub evaluations: u64,
    pub trace: Trace,
}

impl ScheduleOutcome {
    pub(crate) fn new(
        kind: SchedulerKind,
        scenario: &Scenario,
        joint: JointSchedule,
        evaluations: u64,
        trace: Trace,
    ) -> Self {
        let orders = joint.orders();
        let cycle_utilities = (0..scenario.num_aps())
            .map(|ap| scenario.cycle_utility_raw(&orders, ap))
            .collect();
        let network_utility = scenario.network_utility_raw(&orders);
        let indices = joint.sequences().iter().map(sequence_index).collect();
        Self {
            kind,
            joint,
            indices,
            cycle_utilities,
            network_utility,
            evaluations,
            trace,
        }
    }
}
