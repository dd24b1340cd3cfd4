//! Application modules: diagonal coinvariant algebras and the cohomology of
//! configuration spaces of the plane.

pub mod arnold;
pub mod coinvariant;

pub use arnold::{admissible_count, arnold_induced_map, arnold_presentation, arnold_slice, arnold_table};
pub use coinvariant::{
    coinvariant_dim, coinvariant_dual_map, coinvariant_table, invariant_basis, CoinvariantRow, CoinvariantSlice, GeneratorPair,
    MonomialBasis, MultiIndex,
};
