//! Fixtures shared by the benchmarks.

use fimod::random::random_presentations;
use fimod::{FIPresentation, RingSpec};

pub const SEED: u64 = 20240101;

/// The seeded random presentations used by the acceptance suite.
pub fn presentations(ring: RingSpec) -> Vec<FIPresentation> {
    random_presentations(SEED, 20, ring)
}

/// `M(d_1) ⊕ … ⊕ M(d_k)`.
pub fn free(ring: RingSpec, degrees: &[usize]) -> FIPresentation {
    FIPresentation::free(ring, degrees.to_vec())
}
