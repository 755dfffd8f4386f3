//! Shard-level map/reduce with a rayon backend and a sequential fallback.

/// How census shards are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, otherwise runs
    /// sequentially.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Maps every shard index in `0..shards` and folds the results with an
/// associative, commutative `merge`.
pub fn map_reduce<A, M, R>(exec: Execution, shards: usize, identity: A, map: M, merge: R) -> A
where
    A: Send + Sync + Clone,
    M: Fn(usize) -> A + Sync + Send,
    R: Fn(A, A) -> A + Sync + Send,
{
    match exec {
        Execution::Sequential => (0..shards).map(&map).fold(identity, &merge),
        Execution::Parallel => parallel(shards, identity, map, merge),
    }
}

#[cfg(feature = "parallel")]
fn parallel<A, M, R>(shards: usize, identity: A, map: M, merge: R) -> A
where
    A: Send + Sync + Clone,
    M: Fn(usize) -> A + Sync + Send,
    R: Fn(A, A) -> A + Sync + Send,
{
    use rayon::prelude::*;
    (0..shards)
        .into_par_iter()
        .map(&map)
        .reduce(|| identity.clone(), &merge)
}

#[cfg(not(feature = "parallel"))]
fn parallel<A, M, R>(shards: usize, identity: A, map: M, merge: R) -> A
where
    A: Send + Sync + Clone,
    M: Fn(usize) -> A + Sync + Send,
    R: Fn(A, A) -> A + Sync + Send,
{
    (0..shards).map(&map).fold(identity, &merge)
}
