//! Data-parallel helpers. With the `parallel` feature off every mode runs
//! sequentially; results are identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    #[default]
    Parallel,
}

impl Parallelism {
    /// Whether work will actually fan out across threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Parallelism::Parallel
    }
}

/// `(0..n).map(f)`, order preserved.
pub(crate) fn map_range<T, F>(n: usize, mode: Parallelism, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = mode;
    (0..n).map(f).collect()
}

/// Index and value of the largest `f(i)` over `0..n`, smallest index on ties.
/// Returns `None` for an empty range.
pub(crate) fn argmax_range<F>(n: u64, mode: Parallelism, f: F) -> Option<(u64, f64)>
where
    F: Fn(u64) -> f64 + Sync + Send,
{
    fn better(a: (u64, f64), b: (u64, f64)) -> (u64, f64) {
        if b.1 > a.1 || (b.1 == a.1 && b.0 < a.0) {
            b
        } else {
            a
        }
    }
    if n == 0 {
        return None;
    }
    let identity = (u64::MAX, f64::NEG_INFINITY);
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        return Some(
            (0..n)
                .into_par_iter()
                .map(|i| (i, f(i)))
                .reduce(|| identity, better),
        );
    }
    let _ = mode;
    Some((0..n).map(|i| (i, f(i))).fold(identity, better))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let f = |i: u64| ((i * 7919) % 101) as f64;
        let seq = argmax_range(10_000, Parallelism::Sequential, f).unwrap();
        let par = argmax_range(10_000, Parallelism::Parallel, f).unwrap();
        assert_eq!(seq, par);
        assert_eq!(seq.1, 100.0);
        // first i with i*7919 ≡ 100 (mod 101)
        let first = (0..10_000u64).find(|&i| f(i) == 100.0).unwrap();
        assert_eq!(seq.0, first);

        let a = map_range(1000, Parallelism::Sequential, |i| i * i);
        let b = map_range(1000, Parallelism::Parallel, |i| i * i);
        assert_eq!(a, b);
        assert!(argmax_range(0, Parallelism::Parallel, f).is_none());
    }
}
