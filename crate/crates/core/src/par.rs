//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) these run on rayon's global pool
//! when [`Exec::Parallel`] is selected. Without the feature every call runs
//! sequentially. Both paths produce identical results: work is split into
//! fixed index ranges and combined in index order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution strategy for the data-parallel loops in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Whether this strategy actually runs on multiple threads in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    pub fn name(self) -> &'static str {
        if self.is_parallel() {
            "parallel"
        } else {
            "sequential"
        }
    }
}

/// `(0..len).map(f).collect()`.
pub fn map_indexed<T, F>(exec: Exec, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..len).map(f).collect()
}

/// Calls `f(chunk_index, chunk)` for consecutive chunks of `data`.
pub fn for_each_chunk_mut<T, F>(exec: Exec, data: &mut [T], chunk_len: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    let chunk_len = chunk_len.max(1);
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        data.par_chunks_mut(chunk_len)
            .enumerate()
            .for_each(|(i, c)| f(i, c));
        return;
    }
    let _ = exec;
    data.chunks_mut(chunk_len)
        .enumerate()
        .for_each(|(i, c)| f(i, c));
}

/// Folds each chunk `[start, end)` of `0..len` with `fold`, then merges the
/// per-chunk results left to right with `merge`.
///
/// Chunk boundaries depend only on `len` and `chunk_len`, so the result is
/// the same for both strategies as long as `merge` is associative.
pub fn chunked_reduce<A, F, M>(exec: Exec, len: u64, chunk_len: u64, fold: F, merge: M) -> Option<A>
where
    A: Send,
    F: Fn(u64, u64) -> A + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    let chunk_len = chunk_len.max(1);
    let chunks = len.div_ceil(chunk_len);
    let run = |c: u64| {
        let start = c * chunk_len;
        fold(start, (start + chunk_len).min(len))
    };
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        let parts: Vec<A> = (0..chunks).into_par_iter().map(run).collect();
        return parts.into_iter().reduce(merge);
    }
    let _ = exec;
    (0..chunks).map(run).reduce(merge)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(map_indexed(exec, 5, |i| i * i), vec![0, 1, 4, 9, 16]);
            let mut v = vec![0usize; 10];
            for_each_chunk_mut(exec, &mut v, 3, |c, s| s.iter_mut().for_each(|x| *x = c));
            assert_eq!(v, vec![0, 0, 0, 1, 1, 1, 2, 2, 2, 3]);
            let joined = chunked_reduce(
                exec,
                10,
                4,
                |a, b| vec![(a, b)],
                |mut x, y| {
                    x.extend(y);
                    x
                },
            );
            assert_eq!(joined.unwrap(), vec![(0, 4), (4, 8), (8, 10)]);
            assert!(chunked_reduce(exec, 0, 4, |a, _| a, |a, _| a).is_none());
        }
    }
}
