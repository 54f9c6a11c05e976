//! Canonical (lexicographic) enumeration of beam sequences.

use crate::config::{factorial, MAX_UES_PER_AP};
use crate::error::{Error, Result};
use crate::utility::BeamSequence;

fn check_m(m: usize) -> Result<()> {
    if (1..=MAX_UES_PER_AP).contains(&m) {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!(
            "M = {m} outside the supported range 1..={MAX_UES_PER_AP}"
        )))
    }
}

/// Rearranges `v` into the next permutation in lexicographic order.
/// Returns `false` (leaving `v` sorted ascending) after the last one.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        v.reverse();
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// All `M!` orderings of `0..M`; position in the list is the canonical index.
pub fn enumerate_sequences(m: usize) -> Result<Vec<BeamSequence>> {
    check_m(m)?;
    let mut out = Vec::with_capacity(factorial(m) as usize);
    let mut cur: Vec<usize> = (0..m).collect();
    loop {
        out.push(BeamSequence::new_unchecked(cur.clone()));
        if !next_permutation(&mut cur) {
            break;
        }
    }
    Ok(out)
}

/// Sequence at canonical `index` without enumerating the rest.
pub fn sequence_at(m: usize, index: u64) -> Result<BeamSequence> {
    check_m(m)?;
    let total = factorial(m);
    if index >= total {
        return Err(Error::IndexOutOfRange {
            what: "sequence index",
            index: index as usize,
            limit: total as usize,
        });
    }
    let mut pool: Vec<usize> = (0..m).collect();
    let mut rest = index;
    let mut order = Vec::with_capacity(m);
    for pos in (0..m).rev() {
        let block = factorial(pos);
        order.push(pool.remove((rest / block) as usize));
        rest %= block;
    }
    Ok(BeamSequence::new_unchecked(order))
}

/// Canonical index of `seq`; inverse of [`sequence_at`].
pub fn sequence_index(seq: &BeamSequence) -> u64 {
    let order = seq.order();
    let m = order.len();
    (0..m)
        .map(|i| {
            let smaller_later = order[i + 1..].iter().filter(|&&x| x < order[i]).count() as u64;
            smaller_later * factorial(m - 1 - i)
        })
        .sum()
}
