//! Order-preserving map over trials: a rayon pool when the `parallel`
//! feature is on, a plain loop otherwise.

/// Maps `f` over `items`, returning results in input order.
///
/// `threads = Some(1)` always runs on the calling thread; `None` uses the
/// rayon default thread count.
pub fn map_ordered<T, R, F>(items: &[T], threads: Option<usize>, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if threads == Some(1) {
        return items.iter().map(f).collect();
    }
    parallel(items, threads, f)
}

#[cfg(feature = "parallel")]
fn parallel<T, R, F>(items: &[T], threads: Option<usize>, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    match builder.build() {
        Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
        Err(_) => items.iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn parallel<T, R, F>(items: &[T], _threads: Option<usize>, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_order() {
        let xs: Vec<u64> = (0..100).collect();
        let seq = map_ordered(&xs, Some(1), |x| x * x);
        assert_eq!(seq, map_ordered(&xs, Some(4), |x| x * x));
        assert_eq!(seq, map_ordered(&xs, None, |x| x * x));
    }
}
