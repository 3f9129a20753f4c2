//! Sequential/parallel execution switch.
//!
//! Every data-parallel loop in the crate goes through the helpers here. With the
//! `parallel` feature (on by default) [`Exec::Parallel`] dispatches to rayon;
//! without it both variants run sequentially. Results never depend on the
//! schedule: reductions are only used for exact, commutative sums.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
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
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Ordered map.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    pub fn for_each_mut<T, F>(self, items: &mut [T], f: F)
    where
        T: Send,
        F: Fn(&mut T) + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            items.par_iter_mut().for_each(f);
            return;
        }
        items.iter_mut().for_each(f);
    }

    /// Map every item and fold the results with an associative, commutative `reduce`.
    pub fn map_reduce<T, R, M, I, Red>(self, items: &[T], map: M, identity: I, reduce: Red) -> R
    where
        T: Sync,
        R: Send,
        M: Fn(&T) -> R + Sync + Send,
        I: Fn() -> R + Sync + Send,
        Red: Fn(R, R) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() && items.len() > 1 {
            return items.par_iter().fold(&identity, |acc, t| reduce(acc, map(t))).reduce(&identity, &reduce);
        }
        items.iter().fold(identity(), |acc, t| reduce(acc, map(t)))
    }
}
