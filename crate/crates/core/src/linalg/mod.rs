//! Exact linear algebra over ℚ, 𝔽_p and ℤ.

pub(crate) mod field;
pub mod integer;
pub mod matrix;
pub mod module;
pub mod ring;
pub mod serde_int;

pub use field::rank_mod_p;
pub use integer::{smith_form, Lattice, SmithForm};
pub use matrix::{Column, Matrix};
pub use module::{cokernel_invariants, rank, rank_cross_check, IsoCertificate, Invariants, Kernel, ModuleMap, PresentedModule, RankCheck, Span};
pub use ring::{is_prime, RingSpec, Scalar};
