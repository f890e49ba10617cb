//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) batch work is spread over the rayon
//! pool; without it every helper runs on the calling thread. Results are
//! always returned in input order, so both modes produce identical output.

/// How a batch operation should be scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Falls back to [`Exec::Sequential`] when built without `parallel`.
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }

    /// Maps `f` over `0..n`, preserving order.
    pub fn map_range<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (0..n).into_par_iter().map(f).collect()
            }
            _ => (0..n).map(f).collect(),
        }
    }

    /// Minimum of `f(i)` over `0..n` under the total order `cmp`, skipping
    /// `None`. `cmp` must be a total order for the result to be independent
    /// of scheduling.
    pub fn min_by_range<R, F, C>(self, n: usize, f: F, cmp: C) -> Option<R>
    where
        R: Send,
        F: Fn(usize) -> Option<R> + Sync + Send,
        C: Fn(&R, &R) -> std::cmp::Ordering + Sync + Send,
    {
        let pick = |a: Option<R>, b: Option<R>| match (a, b) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => {
                if cmp(&b, &a).is_lt() {
                    Some(b)
                } else {
                    Some(a)
                }
            }
        };
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (0..n).into_par_iter().map(&f).reduce(|| None, pick)
            }
            _ => (0..n).map(f).fold(None, pick),
        }
    }
}
