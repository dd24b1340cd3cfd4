//! Exact computations with finitely presented FI-modules.
//!
//! An FI-module is given by a presentation `coker(⊕ M(e_j) → ⊕ M(d_i))`
//! over ℚ, a prime field, or ℤ. Every construction here works slice by
//! slice: the module `V_n` is a presented module with the injections
//! `[d_i] ↪ [n]` as ambient basis, and all maps are exact integer or
//! modular matrices.
//!
//! Layout:
//! - [`linalg`]: scalars, sparse matrices, echelon forms, Smith and Hermite
//!   normal forms, presented modules and maps between them.
//! - [`fi`]: injections, free FI-modules, presentations, slices, induced maps.
//! - [`functors`]: `H_0`, positive shifts, `X_a`, `π_a`, torsion, derivative,
//!   saturation of submodules of `M(d)`.
//! - [`complexes`]: ordered and signed negative shifts, the slice complex,
//!   its homology and chain homotopy, poset colimits.
//! - [`dims`]: dimension tables, finite differences, polynomial fits.
//! - [`apps`]: diagonal coinvariant algebras and the Arnold algebra.
//! - [`suite`]: the executable acceptance checks behind `selftest`.

pub mod apps;
pub mod combinat;
pub mod complexes;
pub mod dims;
pub mod error;
pub mod fi;
pub mod functors;
pub mod linalg;
pub mod random;
pub mod suite;

pub use error::{Error, Result};
pub use fi::{
    enumerate_injections, evaluate_slice, induced_map, pushforward, FIPresentation, FreeElement,
    FreeSpec, Injection, SliceMap, SliceModule,
};
pub use linalg::{Matrix, ModuleMap, PresentedModule, RingSpec, Scalar, SmithForm};
