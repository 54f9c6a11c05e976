use super::sequences::enumerate_sequences;
use super::{EvalCounter, ScheduleOutcome, SchedulerKind, Trace};
use crate::error::{Error, Result};
use crate::par::{argmax_range, Parallelism};
use crate::scenario::Scenario;
use crate::utility::JointSchedule;

/// Largest `(M!)^N` exhaustive search will attempt by default.
pub const DEFAULT_EXHAUSTIVE_BUDGET: u128 = 10_000_000;

/// Maximizes network utility over every joint schedule.
///
/// Joint schedule `j` assigns AP `n` the sequence whose canonical index is
/// digit `n` of `j` in base `M!`, AP 0 most significant, so the smallest `j`
/// among equal utilities is also the lexicographically smallest index tuple.
pub fn exhaustive_search(
    scenario: &Scenario,
    budget: u128,
    parallelism: Parallelism,
) -> Result<ScheduleOutcome> {
    let size = scenario.config().joint_schedule_count();
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let seqs = enumerate_sequences(scenario.ues_per_ap())?;
    let (n, radix) = (scenario.num_aps(), seqs.len() as u64);
    let decode = |mut j: u64| -> Vec<usize> {
        let mut digits = vec![0usize; n];
        for d in digits.iter_mut().rev() {
            *d = (j % radix) as usize;
            j /= radix;
        }
        digits
    };
    let counter = EvalCounter::new();
    let (best, _) = argmax_range(size as u64, parallelism, |j| {
        let orders: Vec<&[usize]> = decode(j).into_iter().map(|k| seqs[k].order()).collect();
        counter.incr();
        scenario.network_utility_raw(&orders)
    })
    .expect("joint schedule space is never empty");
    let joint = JointSchedule::new(decode(best).into_iter().map(|k| seqs[k].clone()).collect())?;
    Ok(ScheduleOutcome::new(
        SchedulerKind::Exhaustive,
        scenario,
        joint,
        counter.get(),
        Trace::None,
    ))
}
