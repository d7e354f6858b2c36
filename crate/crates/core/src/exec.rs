//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) [`Execution::Parallel`] runs on
//! the rayon global pool. Without it every call runs sequentially. Results never
//! depend on the execution mode: helpers either preserve order or reduce with an
//! associative, commutative operation supplied by the caller.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// True when work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Number of chunks a range is split into; fixed so that chunking (and hence any
/// per-chunk state) is identical across machines.
const CHUNKS: u64 = 64;

fn chunks(range: Range<u64>) -> Vec<Range<u64>> {
    let len = range.end.saturating_sub(range.start);
    if len == 0 {
        return Vec::new();
    }
    let step = len.div_ceil(CHUNKS).max(1);
    let mut out = Vec::new();
    let mut lo = range.start;
    while lo < range.end {
        let hi = (lo + step).min(range.end);
        out.push(lo..hi);
        lo = hi;
    }
    out
}

/// Maps every index of `range` through `f`, preserving order.
pub fn map_range<T, F>(exec: Execution, range: Range<u64>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return range.into_par_iter().map(f).collect();
    }
    let _ = exec;
    range.map(f).collect()
}

/// Folds each fixed chunk of `range` sequentially with `fold` starting from
/// `init()`, then combines chunk results with `reduce`.
pub fn fold_chunks<A, I, F, R>(exec: Execution, range: Range<u64>, init: I, fold: F, reduce: R) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, Range<u64>) -> A + Sync + Send,
    R: Fn(A, A) -> A + Sync + Send,
{
    let parts = chunks(range);
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return parts
            .into_par_iter()
            .map(|c| fold(init(), c))
            .reduce(&init, &reduce);
    }
    let _ = exec;
    parts.into_iter().map(|c| fold(init(), c)).fold(init(), reduce)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunks_cover_range_exactly() {
        for len in [0u64, 1, 5, 63, 64, 65, 1000] {
            let parts = chunks(3..3 + len);
            let total: u64 = parts.iter().map(|r| r.end - r.start).sum();
            assert_eq!(total, len);
            for w in parts.windows(2) {
                assert_eq!(w[0].end, w[1].start);
            }
        }
    }

    #[test]
    fn modes_agree() {
        let f = |i: u64| i * i % 17;
        assert_eq!(
            map_range(Execution::Sequential, 0..500, f),
            map_range(Execution::Parallel, 0..500, f)
        );
        let sum = |exec| fold_chunks(exec, 0..10_000, || 0u64, |a, r| a + r.sum::<u64>(), |a, b| a + b);
        assert_eq!(sum(Execution::Sequential), sum(Execution::Parallel));
        assert_eq!(sum(Execution::Sequential), 49_995_000);
    }
}
