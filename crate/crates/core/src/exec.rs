//! Sequential / data-parallel execution switch.
//!
//! Every parallel kernel in the crate goes through [`map_indexed`], so results
//! are identical in both modes: work items are indexed, results are collected
//! in index order and nothing depends on scheduling.

/// Execution strategy for the data-parallel kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, otherwise falls back
    /// to sequential execution.
    Parallel,
}

impl Default for Mode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Mode::Parallel
        } else {
            Mode::Sequential
        }
    }
}

impl Mode {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Mode::Parallel
    }
}

/// Applies `f` to `0..len` and returns the results in index order.
pub fn map_indexed<R, F>(mode: Mode, len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        use rayon::prelude::*;
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = mode;
    (0..len).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree() {
        let a = map_indexed(Mode::Sequential, 100, |i| i * i);
        let b = map_indexed(Mode::Parallel, 100, |i| i * i);
        assert_eq!(a, b);
    }
}
