//! Data-parallel helpers with a sequential fallback.
//!
//! Every helper takes an [`Execution`] so callers (and the benches) can pick
//! the strategy at runtime. Without the `parallel` feature both variants run
//! sequentially. All helpers preserve input order in their output.

use std::ops::Range;

/// How a kernel should spread its independent work items.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if is_parallel_available() {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// True when the crate was built with rayon support.
pub const fn is_parallel_available() -> bool {
    cfg!(feature = "parallel")
}

/// Ordered map over `0..count`.
pub fn map_indexed<U, F>(exec: Execution, count: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..count).into_par_iter().map(f).collect()
        }
        _ => (0..count).map(f).collect(),
    }
}

/// Ordered map over a slice.
pub fn map_slice<T, U, F>(exec: Execution, data: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            data.par_iter().map(f).collect()
        }
        _ => data.iter().map(f).collect(),
    }
}

/// First `Some` in index order; identical to the sequential scan.
pub fn find_map_first<U, F>(exec: Execution, range: Range<usize>, f: F) -> Option<U>
where
    U: Send,
    F: Fn(usize) -> Option<U> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            range.into_par_iter().find_map_first(f)
        }
        _ => range.into_iter().find_map(f),
    }
}

/// True if `f` holds for every index.
pub fn all<F>(exec: Execution, range: Range<usize>, f: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            range.into_par_iter().all(f)
        }
        _ => range.into_iter().all(f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            let squares = map_indexed(exec, 100, |i| i * i);
            assert_eq!(squares[7], 49);
            assert_eq!(squares.len(), 100);
            let first = find_map_first(exec, 0..1000, |i| (i % 37 == 36 && i > 100).then_some(i));
            assert_eq!(first, Some(110));
            assert!(all(exec, 0..50, |i| i < 50));
            let doubled = map_slice(exec, &[1, 2, 3], |x| x * 2);
            assert_eq!(doubled, vec![2, 4, 6]);
        }
    }
}
