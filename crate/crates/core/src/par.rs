//! Thin switch between rayon-parallel and sequential execution.
//!
//! The numerical kernels are data-parallel over matrix entries, evaluation
//! points and sweep points. With the `parallel` feature (default) they run
//! on the rayon global pool; without it, or with [`Mode::Sequential`], they
//! run on one thread. Results are written into preallocated disjoint slots,
//! so the output is bit-identical across modes and thread counts.

/// Execution mode for the data-parallel loops.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Use the rayon pool when the `parallel` feature is enabled.
    #[default]
    Auto,
    /// Force single-threaded execution.
    Sequential,
}

/// Map `f` over `0..n`, collecting results in index order.
pub fn map_indexed<T, F>(mode: Mode, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    #[cfg(feature = "parallel")]
    {
        if mode == Mode::Auto {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).collect();
        }
    }
    let _ = mode;
    (0..n).map(f).collect()
}

/// Apply `f` to every element of `items` with its index.
pub fn for_each_mut<T, F>(mode: Mode, items: &mut [T], f: F)
where
    T: Send,
    F: Fn(usize, &mut T) + Sync,
{
    #[cfg(feature = "parallel")]
    {
        if mode == Mode::Auto {
            use rayon::prelude::*;
            items.par_iter_mut().enumerate().for_each(|(i, t)| f(i, t));
            return;
        }
    }
    let _ = mode;
    for (i, t) in items.iter_mut().enumerate() {
        f(i, t);
    }
}
