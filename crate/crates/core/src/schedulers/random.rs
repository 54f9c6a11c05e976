use rand::Rng;

use super::sequences::sequence_at;
use super::{ScheduleOutcome, SchedulerKind, Trace};
use crate::config::factorial;
use crate::error::Result;
use crate::scenario::Scenario;
use crate::utility::JointSchedule;

/// Independent uniform draw over the `M!` sequences for each of `n` APs.
pub fn random_schedule<R: Rng + ?Sized>(rng: &mut R, m: usize, n: usize) -> Result<JointSchedule> {
    let total = factorial(m);
    let sequences = (0..n)
        .map(|_| sequence_at(m, rng.random_range(0..total)))
        .collect::<Result<Vec<_>>>()?;
    JointSchedule::new(sequences)
}

/// Baseline: a random joint schedule, no search.
pub fn random_scheduler<R: Rng + ?Sized>(scenario: &Scenario, rng: &mut R) -> Result<ScheduleOutcome> {
    let joint = random_schedule(rng, scenario.ues_per_ap(), scenario.num_aps())?;
    Ok(ScheduleOutcome::new(SchedulerKind::Random, scenario, joint, 0, Trace::None))
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::schedulers::sequence_index;
    use crate::utility::BeamSequence;

    #[test]
    fn single_ue_is_forced() {
        let j = random_schedule(&mut ChaCha8Rng::seed_from_u64(1), 1, 4).unwrap();
        assert!(j.sequences().iter().all(|s| *s == BeamSequence::identity(1)));
    }

    #[test]
    fn deterministic() {
        let a = random_schedule(&mut ChaCha8Rng::seed_from_u64(5), 5, 3).unwrap();
        let b = random_schedule(&mut ChaCha8Rng::seed_from_u64(5), 5, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn uniform_over_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let draws = 60_000;
        let mut counts = [0usize; 6];
        for _ in 0..draws {
            let j = random_schedule(&mut rng, 3, 1).unwrap();
            counts[sequence_index(j.sequence(0)) as usize] += 1;
        }
        for c in counts {
            let freq = c as f64 / draws as f64;
            assert!((freq - 1.0 / 6.0).abs() < 0.01, "{counts:?}");
        }
        // chi-square with 5 dof; 20.5 is the 0.999 quantile
        let expected = draws as f64 / 6.0;
        let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
        assert!(chi2 < 20.5, "chi2 = {chi2}");
    }
}
