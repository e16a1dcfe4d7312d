//! Order-preserving map that runs on the rayon pool when the `parallel`
//! feature is on and sequentially otherwise.

#[cfg(feature = "parallel")]
pub(crate) fn map<I: Sync, U: Send>(items: &[I], f: impl Fn(&I) -> U + Sync + Send) -> Vec<U> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map<I, U>(items: &[I], f: impl Fn(&I) -> U) -> Vec<U> {
    items.iter().map(f).collect()
}
