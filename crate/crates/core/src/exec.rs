//! Data-parallel execution over index ranges.
//!
//! Every scan in the crate (image tables, collision searches, point counts,
//! resultant evaluation points) is expressed as a pure function of an index
//! in `0..len`. [`Exec`] runs such a function either on the calling thread or
//! on a rayon pool of a fixed size. Results are always merged in index order,
//! so the output never depends on the worker count.

use std::ops::Range;

/// How a data-parallel loop is executed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Exec {
    workers: usize,
}

impl Default for Exec {
    fn default() -> Self {
        Exec::with_workers(default_workers())
    }
}

fn default_workers() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

impl Exec {
    /// Run everything on the calling thread.
    pub const fn sequential() -> Self {
        Exec { workers: 1 }
    }

    /// Use `workers` threads. `0` means "all available cores".
    pub fn with_workers(workers: usize) -> Self {
        let workers = if workers == 0 {
            default_workers()
        } else {
            workers
        };
        Exec { workers }
    }

    pub fn workers(&self) -> usize {
        if cfg!(feature = "parallel") {
            self.workers
        } else {
            1
        }
    }

    pub fn is_parallel(&self) -> bool {
        self.workers() > 1
    }

    /// Ordered map over `range`.
    pub fn map<T, F>(&self, range: Range<u64>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return self.install(|| range.into_par_iter().map(&f).collect());
        }
        range.map(f).collect()
    }

    /// Sum of `f` over `range`.
    pub fn sum<F>(&self, range: Range<u64>, f: F) -> u64
    where
        F: Fn(u64) -> u64 + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return self.install(|| range.into_par_iter().map(&f).sum());
        }
        range.map(f).sum()
    }

    /// Smallest index in `range` satisfying `pred`.
    pub fn find_first<F>(&self, range: Range<u64>, pred: F) -> Option<u64>
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return self.install(|| range.into_par_iter().find_first(|&i| pred(i)));
        }
        range.into_iter().find(|&i| pred(i))
    }

    /// Ordered map over contiguous chunks of `range`; used where per-chunk
    /// setup (scratch buffers, power tables) should be amortized.
    pub fn map_chunks<T, F>(&self, range: Range<u64>, chunk: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(Range<u64>) -> T + Sync + Send,
    {
        let chunk = chunk.max(1);
        let len = range.end.saturating_sub(range.start);
        let nchunks = len.div_ceil(chunk);
        self.map(0..nchunks, |c| {
            let lo = range.start + c * chunk;
            let hi = (lo + chunk).min(range.end);
            f(lo..hi)
        })
    }

    #[cfg(feature = "parallel")]
    fn install<R: Send>(&self, op: impl FnOnce() -> R + Send) -> R {
        match rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
        {
            Ok(pool) => pool.install(op),
            Err(_) => op(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_is_ordered_for_any_worker_count() {
        let expect: Vec<u64> = (0..1000).map(|i| i * i).collect();
        for w in [1, 2, 8] {
            assert_eq!(Exec::with_workers(w).map(0..1000, |i| i * i), expect);
        }
    }

    #[test]
    fn find_first_returns_minimum() {
        for w in [1, 3] {
            let e = Exec::with_workers(w);
            assert_eq!(e.find_first(0..10_000, |i| i % 777 == 776), Some(776));
            assert_eq!(e.find_first(0..10, |_| false), None);
        }
    }

    #[test]
    fn chunks_cover_range() {
        let e = Exec::with_workers(4);
        let parts = e.map_chunks(5..105, 7, |r| r.end - r.start);
        assert_eq!(parts.iter().sum::<u64>(), 100);
        assert_eq!(e.sum(0..101, |i| i), 5050);
    }
}
