//! Data-parallel helpers with a sequential fallback.
//!
//! The hot loops of this crate (Caputo operator rows, BVP assembly rows,
//! layer-profile grids, verification checks) are embarrassingly parallel
//! maps over an index range. With the `parallel` feature (default) they run
//! on the rayon pool; without it the same helpers degrade to plain loops.
//!
//! Results are collected in index order, so output is deterministic and
//! byte-identical regardless of feature selection or thread count. All
//! reductions over collected values are performed sequentially by callers.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `0..n`, collecting results in index order.
#[cfg(feature = "parallel")]
pub fn par_map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

/// Sequential fallback for [`par_map_indexed`].
#[cfg(not(feature = "parallel"))]
pub fn par_map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Maps `f` over a slice, collecting results in order.
#[cfg(feature = "parallel")]
pub fn par_map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    items.par_iter().map(f).collect()
}

/// Sequential fallback for [`par_map_slice`].
#[cfg(not(feature = "parallel"))]
pub fn par_map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    items.iter().map(f).collect()
}

/// True when the rayon-backed implementation is compiled in.
pub fn is_parallel_enabled() -> bool {
    cfg!(feature = "parallel")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_indexed_preserves_order() {
        let v = par_map_indexed(1000, |i| i * i);
        assert_eq!(v.len(), 1000);
        assert!(v.iter().enumerate().all(|(i, &x)| x == i * i));
    }

    #[test]
    fn map_slice_preserves_order() {
        let xs = vec![1.0f64, 2.0, 3.0];
        let v = par_map_slice(&xs, |x| x * 2.0);
        assert_eq!(v, vec![2.0, 4.0, 6.0]);
    }
}
