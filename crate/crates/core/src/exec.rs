use alloc::vec::Vec;

/// How independent estimator fits are scheduled.
///
/// Results are collected in input order in both modes, so the two produce
/// bit-identical output. Without the `parallel` feature, `Parallel` runs
/// sequentially.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Execution::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            Execution::Parallel => items.iter().map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_preserved() {
        let items: Vec<u32> = (0..1000).collect();
        let a = Execution::Sequential.map(&items, |x| x * 2);
        let b = Execution::Parallel.map(&items, |x| x * 2);
        assert_eq!(a, b);
    }
}
