//! Distributed learning-automaton scheduler.
//!
//! Each AP keeps a probability vector over its `M!` sequences. Within an
//! iteration the APs act one after another: sample a sequence, measure the
//! own cycle utility against the sequences the other APs currently hold,
//! normalize by the best utility seen so far and apply the reward-inaction
//! update. After the last iteration each AP keeps its most probable sequence.

use rand::Rng;

use super::lri::lri_update_in_place;
use super::sequences::enumerate_sequences;
use super::{EvalCounter, ScheduleOutcome, SchedulerKind, Trace};
use crate::error::{Error, Result};
use crate::scenario::Scenario;
use crate::utility::JointSchedule;

#[derive(Clone, Debug, PartialEq)]
pub struct LearningStep {
    /// 1-based.
    pub iteration: usize,
    pub ap: usize,
    /// Sequence played in this step.
    pub index: u64,
    /// Own cycle utility of the played sequence.
    pub utility: f64,
    /// Best own utility seen by this AP up to and including this step.
    pub u_max: f64,
    /// Largest entry of this AP's probability vector after the update.
    pub max_probability: f64,
    /// Network utility of the joint schedule held after this step.
    pub network_utility: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LearningState {
    /// `probabilities[n][k]` over canonical sequence indices.
    pub probabilities: Vec<Vec<f64>>,
    pub u_max: Vec<f64>,
    /// Sequence each AP currently holds.
    pub held: Vec<usize>,
    pub trace: Vec<LearningStep>,
}

impl LearningState {
    fn uniform<R: Rng + ?Sized>(num_aps: usize, num_sequences: usize, rng: &mut R) -> Self {
        let probabilities = vec![vec![1.0 / num_sequences as f64; num_sequences]; num_aps];
        let held = probabilities.iter().map(|p| sample(p, rng)).collect();
        Self {
            probabilities,
            u_max: vec![0.0; num_aps],
            held,
            trace: Vec::new(),
        }
    }

    /// Most probable sequence of `ap`, smallest index on ties.
    pub fn best(&self, ap: usize) -> usize {
        argmax(&self.probabilities[ap])
    }
}

fn argmax(p: &[f64]) -> usize {
    (1..p.len()).fold(0, |best, i| if p[i] > p[best] { i } else { best })
}

/// Inverse-CDF draw from a probability vector.
fn sample<R: Rng + ?Sized>(p: &[f64], rng: &mut R) -> usize {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    for (i, &pi) in p.iter().enumerate() {
        acc += pi;
        if u < acc {
            return i;
        }
    }
    // rounding left u above the running sum; take the last action with mass
    p.iter().rposition(|&x| x > 0.0).unwrap_or(p.len() - 1)
}

pub fn learning_schedule<R: Rng + ?Sized>(
    scenario: &Scenario,
    weight: f64,
    iterations: usize,
    rng: &mut R,
) -> Result<(ScheduleOutcome, LearningState)> {
    if iterations == 0 {
        return Err(Error::InvalidConfig("learning needs at least one iteration".into()));
    }
    if !(weight > 0.0 && weight < 1.0) {
        return Err(Error::InvalidConfig(format!("learning weight {weight} outside (0, 1)")));
    }
    let seqs = enumerate_sequences(scenario.ues_per_ap())?;
    let n = scenario.num_aps();
    // Before its first draw an AP holds a sample from its (uniform) initial vector.
    let mut state = LearningState::uniform(n, seqs.len(), rng);
    state.trace.reserve(iterations * n);
    let counter = EvalCounter::new();

    for iteration in 1..=iterations {
        for ap in 0..n {
            let k = sample(&state.probabilities[ap], rng);
            state.held[ap] = k;
            let orders: Vec<&[usize]> = state.held.iter().map(|&i| seqs[i].order()).collect();
            counter.incr();
            let utility = scenario.cycle_utility_raw(&orders, ap);
            let u_max = state.u_max[ap].max(utility);
            state.u_max[ap] = u_max;
            let beta = if u_max > 0.0 { utility / u_max } else { 0.0 };
            let p = &mut state.probabilities[ap];
            lri_update_in_place(p, k, beta, weight)?;
            let max_probability = p.iter().cloned().fold(0.0, f64::max);
            state.trace.push(LearningStep {
                iteration,
                ap,
                index: k as u64,
                utility,
                u_max,
                max_probability,
                network_utility: scenario.network_utility_raw(&orders),
            });
        }
    }

    let joint = JointSchedule::new((0..n).map(|ap| seqs[state.best(ap)].clone()).collect())?;
    let outcome = ScheduleOutcome::new(
        SchedulerKind::Learning,
        scenario,
        joint,
        counter.get(),
        Trace::Learning(state.trace.clone()),
    );
    Ok((outcome, state))
}
