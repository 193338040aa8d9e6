//! Thin shim so call sites can use `par_iter`/`into_par_iter` uniformly.
//! With the `parallel` feature (the default) these come from rayon; without
//! it they alias the sequential iterators, so results are identical.

#[cfg(feature = "parallel")]
pub use rayon::prelude::*;

#[cfg(not(feature = "parallel"))]
mod seq {
    pub trait SeqSlice<T> {
        fn par_iter(&self) -> std::slice::Iter<'_, T>;
    }

    impl<T> SeqSlice<T> for [T] {
        fn par_iter(&self) -> std::slice::Iter<'_, T> {
            self.iter()
        }
    }
}

#[cfg(not(feature = "parallel"))]
pub use seq::SeqSlice;
