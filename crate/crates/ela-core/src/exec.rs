//! Execution strategy for the data-parallel stages.
//!
//! Feature extraction and subset validation are embarrassingly parallel over
//! independent jobs. With the `parallel` feature (on by default) those stages
//! fan out over a rayon thread pool; compiled without it, the same code runs
//! on a plain sequential iterator. Results are collected in job order either
//! way, so the output is identical down to the bit.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How a batch of independent jobs is executed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    /// One job at a time, in order.
    Sequential,
    /// Jobs distributed over the global rayon pool.
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for Execution {
    #[cfg(feature = "parallel")]
    fn default() -> Self {
        Execution::Parallel
    }

    #[cfg(not(feature = "parallel"))]
    fn default() -> Self {
        Execution::Sequential
    }
}

/// Maps `f` over `items`, sequentially or in parallel per `exec`.
/// The output order always matches the input order.
pub fn run_jobs<T, U, F>(exec: Execution, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    match exec {
        Execution::Sequential => items.into_iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.into_par_iter().map(f).collect(),
    }
}

/// Caps the global rayon pool at `n` workers. Returns `false` when the pool
/// was already initialized (rayon allows configuring it only once) or when
/// the crate was built without the `parallel` feature.
pub fn configure_workers(n: usize) -> bool {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .is_ok()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = n;
        false
    }
}
