//! Finite sets and injections, free FI-modules, presentations and slices.

mod element;
mod injection;
mod presentation;
mod slice;

pub use element::{pushforward, FreeElement, FreeSpec, Term};
pub use injection::{enumerate_injections, Injection};
pub use presentation::FIPresentation;
pub use slice::{clear_slice_cache, evaluate_slice, evaluate_slice_uncached, induced_map, induced_vector, SliceMap, SliceModule};
pub(crate) use slice::relabel_matrix;
