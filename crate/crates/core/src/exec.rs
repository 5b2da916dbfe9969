//! Execution strategy for cell-wise kernels.
//!
//! Every kernel in this crate computes output cells independently and with
//! exact arithmetic, so the parallel and sequential strategies produce
//! identical tensors.

/// How independent output cells are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Uses the rayon thread pool. Falls back to sequential evaluation when
    /// the crate is built without the `parallel` feature.
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

/// Default per-tensor cell cap (2^24).
pub const DEFAULT_MAX_CELLS: usize = 1 << 24;

/// Options shared by the tensor-producing network operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalOptions {
    pub max_cells: usize,
    pub execution: Execution,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { max_cells: DEFAULT_MAX_CELLS, execution: Execution::default() }
    }
}

impl EvalOptions {
    pub fn sequential() -> Self {
        EvalOptions { execution: Execution::Sequential, ..Self::default() }
    }

    pub fn with_max_cells(mut self, max_cells: usize) -> Self {
        self.max_cells = max_cells;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }
}

/// Computes `f(0..len)` in index order.
pub(crate) fn map_range<T, F>(len: usize, execution: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..len).into_par_iter().map(f).collect()
        }
        _ => (0..len).map(f).collect(),
    }
}
