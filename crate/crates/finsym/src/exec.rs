//! Execution strategy for bulk per-cell loops.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How bulk loops over cells, tuples, or spine systems run.
///
/// `Par` fans out over rayon when the `parallel` feature is enabled and
/// silently degrades to sequential execution otherwise, so `Exec::Par` is
/// always safe to request. Every operation taking an `Exec` produces the
/// same result under both strategies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Seq,
    Par,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Par
        } else {
            Exec::Seq
        }
    }
}

/// Maps `f` over `0..n` under the chosen strategy, preserving index order.
pub(crate) fn map_range<U, F>(exec: Exec, n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    match exec {
        Exec::Seq => (0..n).map(f).collect(),
        #[cfg(feature = "parallel")]
        Exec::Par => (0..n).into_par_iter().map(f).collect(),
        #[cfg(not(feature = "parallel"))]
        Exec::Par => (0..n).map(f).collect(),
    }
}
