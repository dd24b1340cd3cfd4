//! Signed shift complexes, their homology, and colimit checks of presentation degree.

mod blocks;
mod colimit;
mod homology;
mod shift_slices;

pub use colimit::{check_inductive, find_n, poset_colimit, ColimitMode, InductiveCheck, LowHomology, PosetColimit, PresentationDegreeReport};
pub use homology::{
    complex_homology, fieldwise_homology, x1_kills_homology, FieldwiseRow, FieldwiseTable, HomologyGroup, HomologyMode,
    HomologyResult, SliceComplex, DEFAULT_PRIMES,
};
pub use shift_slices::{
    differential, differential_matrix, homotopy, ordered_face, ordered_free_bijection, ordered_induced, ordered_shift_slice,
    signed_induced, signed_shift_slice, verify_chain_homotopy, HomotopyCheck, OrderedShiftSlice, SignedShiftSlice,
};
