//! Linear reward-inaction probability update.

use crate::error::{Error, Result};

pub const SIMPLEX_TOLERANCE: f64 = 1e-9;

/// Moves probability toward the played action `k` in proportion to its
/// normalized reward `beta`:
///
/// * `p_k += w·beta·Σ_{i≠k} p_i`
/// * `p_i -= w·beta·p_i` for `i ≠ k`
///
/// The increment equals the total decrement, so the vector stays on the
/// simplex. `beta = 0` leaves `p` untouched.
pub fn lri_update_in_place(p: &mut [f64], k: usize, beta: f64, w: f64) -> Result<()> {
    if k >= p.len() {
        return Err(Error::IndexOutOfRange {
            what: "played action",
            index: k,
            limit: p.len(),
        });
    }
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::InvalidLearningInput(format!("reward {beta} outside [0, 1]")));
    }
    if !(w > 0.0 && w < 1.0) {
        return Err(Error::InvalidLearningInput(format!("weight {w} outside (0, 1)")));
    }
    check_simplex(p)?;
    let step = w * beta;
    let mut others = 0.0;
    for (i, pi) in p.iter_mut().enumerate() {
        if i != k {
            others += *pi;
            *pi -= step * *pi;
        }
    }
    p[k] += step * others;
    Ok(())
}

/// Pure form of [`lri_update_in_place`].
pub fn lri_update(p: &[f64], k: usize, beta: f64, w: f64) -> Result<Vec<f64>> {
    let mut out = p.to_vec();
    lri_update_in_place(&mut out, k, beta, w)?;
    Ok(out)
}

pub fn check_simplex(p: &[f64]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::OffSimplex("empty probability vector".into()));
    }
    if let Some(bad) = p.iter().find(|x| !(-SIMPLEX_TOLERANCE..=1.0 + SIMPLEX_TOLERANCE).contains(*x)) {
        return Err(Error::OffSimplex(format!("entry {bad} outside [0, 1]")));
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > SIMPLEX_TOLERANCE {
        return Err(Error::OffSimplex(format!("entries sum to {sum}")));
    }
    Ok(())
}
