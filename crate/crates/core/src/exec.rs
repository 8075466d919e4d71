//! Execution strategy for independent work items.

use serde::Serialize;

/// How independent items (sample points, components, parameter sets) are processed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Exec {
    Sequential,
    /// Uses the rayon pool when the `parallel` feature is enabled, otherwise sequential.
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
    pub fn map<T, U, F>(self, items: Vec<T>, f: F) -> Vec<U>
    where
        T: Send,
        U: Send,
        F: Fn(T) -> U + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.into_par_iter().map(f).collect()
            }
            _ => items.into_iter().map(f).collect(),
        }
    }

    /// Maps then folds with an associative `combine`, starting from `identity()`.
    pub fn map_reduce<T, U, F, I, C>(self, items: Vec<T>, f: F, identity: I, combine: C) -> U
    where
        T: Send,
        U: Send,
        F: Fn(T) -> U + Sync + Send,
        I: Fn() -> U + Sync + Send,
        C: Fn(U, U) -> U + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.into_par_iter().map(f).reduce(identity, combine)
            }
            _ => items.into_iter().map(f).fold(identity(), combine),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let items: Vec<u64> = (0..100).collect();
        let a = Exec::Sequential.map(items.clone(), |x| x * x);
        let b = Exec::Parallel.map(items.clone(), |x| x * x);
        assert_eq!(a, b);
        let s = Exec::Parallel.map_reduce(items, |x| x, || 0, |a, b| a + b);
        assert_eq!(s, 4950);
    }
}
