//! Data-parallel helpers.
//!
//! With the `parallel` feature (default) these dispatch to rayon; without it
//! they run the same closures sequentially. Every caller is written so the
//! result is identical either way: maps preserve input order and folds only
//! combine with associative, commutative operations.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Order-preserving map over a slice.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Order-preserving map over an index range.
pub fn map_range<R, F>(range: Range<u64>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        range.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        range.map(f).collect()
    }
}

/// Splits `range` into chunks, folds each chunk from `identity()` with `fold`,
/// then merges chunk results with `merge`.
pub fn fold_range<A, I, F, M>(range: Range<u64>, identity: I, fold: F, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(&mut A, u64) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    const CHUNK: u64 = 1 << 12;
    let start = range.start;
    let len = range.end.saturating_sub(start);
    let chunks = len.div_ceil(CHUNK);
    let run_chunk = |c: u64| {
        let lo = start + c * CHUNK;
        let hi = (lo + CHUNK).min(range.end);
        let mut acc = identity();
        for i in lo..hi {
            fold(&mut acc, i);
        }
        acc
    };
    #[cfg(feature = "parallel")]
    {
        (0..chunks)
            .into_par_iter()
            .map(run_chunk)
            .reduce(&identity, &merge)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..chunks).map(run_chunk).fold(identity(), merge)
    }
}

/// Number of worker threads the helpers will use.
pub fn workers() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}
