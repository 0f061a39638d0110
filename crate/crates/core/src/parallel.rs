//! Worker-count control.
//!
//! Every parallel reduction in this crate is commutative and exact
//! (integer counts, lexicographic minima), so results are identical for any
//! worker count.

/// Runs `f` on a dedicated pool of `workers` threads, or on the global pool
/// when `workers` is None.
pub fn with_workers<T, F>(workers: Option<usize>, f: F) -> T
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    match workers {
        Some(n) if n >= 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("failed to build worker pool")
            .install(f),
        _ => f(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pool_sizes_agree() {
        let work = || {
            use rayon::prelude::*;
            (0..1000i64).into_par_iter().map(|x| x * x).sum::<i64>()
        };
        let a = with_workers(Some(1), work);
        let b = with_workers(Some(4), work);
        let c = with_workers(None, work);
        assert_eq!(a, b);
        assert_eq!(b, c);
    }
}
