//! Switch between rayon and plain iteration for the brute-force loops.
//!
//! Every parallel loop maps independent indices to independent outputs, so
//! the parallel and sequential paths produce bit-identical results.

#[cfg(feature = "parallel")]
pub(crate) fn map_indices<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indices<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Sequential twin of [`map_indices`], kept unconditionally so benchmarks can
/// compare both paths in one build.
pub(crate) fn map_indices_seq<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Run `f` over `0..n` with rayon when `parallel` is set (and the feature is
/// enabled), sequentially otherwise.
pub(crate) fn map_indices_switch<U, F>(n: usize, parallel: bool, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    if parallel {
        map_indices(n, f)
    } else {
        map_indices_seq(n, f)
    }
}
