//! Functors on FI-modules evaluated slice by slice.

mod h0;
mod saturate;
mod shift;
mod torsion;

pub use h0::{generation_degree, h0_slice, GenerationReport};
pub use saturate::{saturate, saturation_stage, SaturationReport, SaturationStage, SubmoduleGenerators};
pub use shift::{decomposition_indices, pi_after_x, pi_projection, q_rank, shift_presentation, x_map, DecompositionIndex, Shift};
pub use torsion::{derivative, torsion_slice, TorsionReport};
