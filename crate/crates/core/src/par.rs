//! Parallel-or-sequential execution of the data-parallel loops.
//!
//! With the `parallel` feature, [`Execution::Parallel`] runs on rayon.
//! Without it, both variants run sequentially on the calling thread.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// Maps `f` over `items`, keeping input order in the output.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    /// Maps each item and folds the results with an associative `combine`.
    pub fn map_reduce<T, R, F, I, C>(self, items: &[T], identity: I, f: F, combine: C) -> R
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
        I: Fn() -> R + Sync + Send,
        C: Fn(R, R) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => items.par_iter().map(f).reduce(identity, combine),
            _ => items.iter().map(f).fold(identity(), combine),
        }
    }
}

/// Runs `job` on a dedicated pool of `threads` workers when the parallel
/// feature is on; otherwise runs it directly.
pub fn with_threads<R, F>(threads: Option<usize>, job: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    #[cfg(feature = "parallel")]
    if let Some(n) = threads {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            return pool.install(job);
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    job()
}
