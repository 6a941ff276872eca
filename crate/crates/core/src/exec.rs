//! Execution-mode switch for the data-parallel inner loops.
//!
//! Scoring and aggregation are independent per occupation / per group, so
//! they can run on a rayon pool. The contract everywhere is determinism:
//! results are collected in input order and reductions happen sequentially
//! over the collected vector, so sequential and parallel runs produce
//! bit-identical output.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How the per-item loops of [`score_all_with`](crate::score_all_with) and
/// [`aggregate_with`](crate::aggregate_with) are driven.
///
/// `Parallel` is the default when the crate is built with the `parallel`
/// feature (on by default). Without the feature it silently degrades to
/// the sequential path so callers keep a stable API.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
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

/// Maps `f` over `items`, preserving input order in the output.
pub(crate) fn map_ordered<T, U, F>(items: &[T], exec: Execution, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match exec {
        Execution::Sequential => items.iter().map(f).collect(),
        Execution::Parallel => {
            #[cfg(feature = "parallel")]
            {
                items.par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                items.iter().map(f).collect()
            }
        }
    }
}
