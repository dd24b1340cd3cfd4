use serde::Serialize;

use crate::combinat::subsets;
use crate::error::Result;
use crate::fi::{evaluate_slice, induced_map, FIPresentation, Injection};
use crate::linalg::{Invariants, PresentedModule};

/// `H_0(V)_n`: `V_n` modulo the images of `V_S` for the `n` subsets
/// `S ⊂ [n]` of size `n − 1`. Every image of a smaller set factors through
/// one of these.
pub fn h0_slice(p: &FIPresentation, n: usize) -> Result<PresentedModule> {
    let v = evaluate_slice(p, n);
    if n == 0 {
        return Ok(v.module().clone());
    }
    let mut extra = Vec::new();
    for s in subsets(n, n - 1) {
        let f = Injection::increasing(&s, n)?;
        extra.extend(induced_map(p, &f)?.map.matrix().columns());
    }
    v.module().with_relations(extra)
}

#[derive(Clone, Debug, Serialize)]
pub struct GenerationReport {
    pub n_max: usize,
    /// Largest `n ≤ n_max` with `H_0(V)_n ≠ 0`; `None` when all vanish.
    pub degree: Option<usize>,
    pub h0: Vec<(usize, Invariants)>,
    /// Always `certified-up-to-bound`: nothing is claimed beyond `n_max`.
    pub status: &'static str,
}

pub fn generation_degree(p: &FIPresentation, n_max: usize) -> Result<GenerationReport> {
    let mut h0 = Vec::with_capacity(n_max + 1);
    let mut degree = None;
    for n in 0..=n_max {
        let inv = h0_slice(p, n)?.invariants().clone();
        if !inv.is_zero() {
            degree = Some(n);
        }
        h0.push((n, inv));
    }
    Ok(GenerationReport {
        n_max,
        degree,
        h0,
        status: "certified-up-to-bound",
    })
}
