//! Thin indirection over rayon so every data-parallel call site compiles both
//! with and without the `parallel` feature.
//!
//! Call sites use `par::map_indices` / `par::sum_indices` / `par::any_index`
//! rather than touching rayon directly; the sequential fallbacks are
//! observationally identical (same order-insensitive reductions, same
//! results).

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `0..n` and collect results in index order.
pub fn map_indices<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Sum `f` over `0..n`. `T` must form a commutative monoid under `+`.
pub fn sum_indices<T, F>(n: usize, f: F) -> T
where
    T: Send + std::iter::Sum<T>,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).sum()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).sum()
    }
}

/// True iff `f` holds for some index in `0..n`.
pub fn any_index<F>(n: usize, f: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().any(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).any(f)
    }
}

/// Collect `f(i)` for every index where it returns `Some`, in index order.
pub fn filter_map_indices<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().filter_map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).filter_map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_index_order() {
        let v = map_indices(100, |i| i * i);
        assert_eq!(v[7], 49);
        assert_eq!(v.len(), 100);
    }

    #[test]
    fn sum_matches_closed_form() {
        let s: u64 = sum_indices(1001, |i| i as u64);
        assert_eq!(s, 1000 * 1001 / 2);
    }

    #[test]
    fn any_finds_needle() {
        assert!(any_index(1000, |i| i == 937));
        assert!(!any_index(1000, |i| i > 1000));
    }
}
