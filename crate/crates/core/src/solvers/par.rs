//! Ordered search over an index range, parallel when the `parallel` feature
//! is enabled and requested.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Returns the result for the smallest index in `0..len` for which `f`
/// yields `Some`, whatever the evaluation schedule.
pub(crate) fn find_map_first<T, F>(len: u64, parallel: bool, f: F) -> Option<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel && len > 1 {
        return (0..len).into_par_iter().find_map_first(f);
    }
    #[cfg(not(feature = "parallel"))]
    let _ = parallel;
    (0..len).find_map(f)
}

/// Maps `items` in order, in parallel when possible.
pub fn map_ordered<I, T, F>(items: Vec<I>, parallel: bool, f: F) -> Vec<T>
where
    I: Send + Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return items.par_iter().map(f).collect();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = parallel;
    items.iter().map(f).collect()
}
