use rand::Rng;

use super::random::random_schedule;
use super::sequences::{enumerate_sequences, sequence_index};
use super::{EvalCounter, ScheduleOutcome, SchedulerKind, Trace};
use crate::error::{Error, Result};
use crate::scenario::Scenario;

/// One block step: AP `ap` adopted sequence `index` in `iteration`.
#[derive(Clone, Debug, PartialEq)]
pub struct GreedyStep {
    /// 1-based.
    pub iteration: usize,
    pub ap: usize,
    pub index: u64,
    /// AP's own cycle utility after adopting `index`.
    pub utility: f64,
    pub network_utility: f64,
}

/// Block-coordinate ascent: starting from a random joint schedule, each AP in
/// turn scans all `M!` sequences for the best own cycle utility given every
/// other AP's current sequence. Repeats `iterations` times.
pub fn greedy_schedule<R: Rng + ?Sized>(
    scenario: &Scenario,
    iterations: usize,
    rng: &mut R,
) -> Result<ScheduleOutcome> {
    if iterations == 0 {
        return Err(Error::InvalidConfig("greedy needs at least one iteration".into()));
    }
    let seqs = enumerate_sequences(scenario.ues_per_ap())?;
    let start = random_schedule(rng, scenario.ues_per_ap(), scenario.num_aps())?;
    let mut current: Vec<usize> = start
        .sequences()
        .iter()
        .map(|s| sequence_index(s) as usize)
        .collect();
    let counter = EvalCounter::new();
    let mut trace = Vec::with_capacity(iterations * scenario.num_aps());

    for iteration in 1..=iterations {
        for ap in 0..scenario.num_aps() {
            let orders: Vec<&[usize]> = current.iter().map(|&k| seqs[k].order()).collect();
            let mut best = (0usize, f64::NEG_INFINITY);
            for (k, s) in seqs.iter().enumerate() {
                counter.incr();
                let u = scenario.cycle_utility_with(&orders, ap, s.order());
                if u > best.1 {
                    best = (k, u);
                }
            }
            current[ap] = best.0;
            let orders: Vec<&[usize]> = current.iter().map(|&k| seqs[k].order()).collect();
            trace.push(GreedyStep {
                iteration,
                ap,
                index: best.0 as u64,
                utility: best.1,
                network_utility: scenario.network_utility_raw(&orders),
            });
        }
    }

    let joint = crate::utility::JointSchedule::new(current.iter().map(|&k| seqs[k].clone()).collect())?;
    Ok(ScheduleOutcome::new(
        SchedulerKind::Greedy,
        scenario,
        joint,
        counter.get(),
        Trace::Greedy(trace),
    ))
}
