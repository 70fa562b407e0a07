//! Ordered range sweeps.
//!
//! A sweep evaluates a check at every `n` in `lo..=hi` and returns the
//! result for the smallest `n` that produced one. With the `parallel`
//! feature the range is split across the rayon pool; the answer does not
//! depend on which worker finishes first.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Smallest-`n` hit of `check` over `lo..=hi`, using the parallel sweep
/// when the `parallel` feature is enabled.
pub fn find_first<T, F>(lo: u64, hi: u64, check: F) -> Option<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        find_first_par(lo, hi, check)
    }
    #[cfg(not(feature = "parallel"))]
    {
        find_first_seq(lo, hi, check)
    }
}

pub fn find_first_seq<T, F>(lo: u64, hi: u64, check: F) -> Option<T>
where
    F: Fn(u64) -> Option<T>,
{
    (lo..=hi).find_map(check)
}

#[cfg(feature = "parallel")]
pub fn find_first_par<T, F>(lo: u64, hi: u64, check: F) -> Option<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    (lo..=hi).into_par_iter().find_map_first(check)
}
