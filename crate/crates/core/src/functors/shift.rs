//! Positive shifts `S_{+a}`, the maps `X_a`, and the splitting
//! `S_{+a}M(d) = M(d) ⊕ Q_a` with its projection `π_a`.

use std::collections::HashMap;

use serde::Serialize;

use crate::combinat::{falling_factorial, injection_images, subsets};
use crate::error::Result;
use crate::fi::{enumerate_injections, evaluate_slice, induced_map, FIPresentation, FreeElement, Injection, Term};
use crate::linalg::{Column, Matrix, ModuleMap, RingSpec};

/// A summand label of `S_{+a}M(d)`: the subset `T ⊆ [d]` sent into `[-a]`
/// and the injection `h: T ↪ [-a]`, with `h(subset[k]) = -labels[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DecompositionIndex {
    pub subset: Vec<usize>,
    pub labels: Vec<usize>,
}

impl DecompositionIndex {
    pub fn is_trivial(&self) -> bool {
        self.subset.is_empty()
    }
}

/// Summand labels of `S_{+a}M(d)` ordered by `|T|`, then `T`, then `h`, all
/// lexicographic. The first one is `T = ∅`.
pub fn decomposition_indices(d: usize, a: usize) -> Vec<DecompositionIndex> {
    let mut out = Vec::new();
    for k in 0..=d.min(a) {
        for subset in subsets(d, k) {
            for labels in injection_images(k, a) {
                out.push(DecompositionIndex {
                    subset: subset.clone(),
                    labels,
                });
            }
        }
    }
    out
}

/// Splits an injection `F: [d] ↪ [n] ⊔ [-a]` (negative values in `[-a]`) into
/// its summand label and the order-preserving reindexing `[d] − T → [n]`.
pub(crate) fn decompose(images: &[i64]) -> (DecompositionIndex, Vec<usize>) {
    let mut subset = Vec::new();
    let mut labels = Vec::new();
    let mut rest = Vec::new();
    for (p, &v) in images.iter().enumerate() {
        if v < 0 {
            subset.push(p + 1);
            labels.push((-v) as usize);
        } else {
            rest.push(v as usize);
        }
    }
    (DecompositionIndex { subset, labels }, rest)
}

/// Reassembles `F: [d] ↪ [n] ⊔ [-a]` from a label and the reindexed rest.
pub(crate) fn assemble(d: usize, idx: &DecompositionIndex, rest: &[usize]) -> Vec<i64> {
    let mut out = Vec::with_capacity(d);
    let (mut s, mut r) = (0, 0);
    for p in 1..=d {
        if s < idx.subset.len() && idx.subset[s] == p {
            out.push(-(idx.labels[s] as i64));
            s += 1;
        } else {
            out.push(rest[r] as i64);
            r += 1;
        }
    }
    out
}

/// `Φ_n: [n] ⊔ [-a] → [n + a]`, identity on `[n]` and `-k ↦ n + k`.
pub(crate) fn relabel_point(v: i64, n: usize) -> usize {
    if v < 0 {
        n + (-v) as usize
    } else {
        v as usize
    }
}

/// A presentation of `S_{+a}V` together with the bookkeeping identifying it
/// with `V` on shifted sets.
#[derive(Clone, Debug)]
pub struct Shift {
    pub a: usize,
    pub original: FIPresentation,
    pub presentation: FIPresentation,
    /// For each shifted generator: the original generator and its label.
    pub summands: Vec<(usize, DecompositionIndex)>,
    index: HashMap<(usize, DecompositionIndex), usize>,
}

impl Shift {
    /// Shifted generator carrying `(original generator, label)`.
    pub fn generator(&self, original: usize, idx: &DecompositionIndex) -> usize {
        self.index[&(original, idx.clone())]
    }

    /// Shifted generators with `T = ∅`, one per original generator.
    pub fn trivial_generator(&self, original: usize) -> usize {
        self.generator(
            original,
            &DecompositionIndex {
                subset: Vec::new(),
                labels: Vec::new(),
            },
        )
    }

    /// `Φ_n` as a basis bijection from `(S_{+a}V)_n` to `V_{n+a}`.
    pub fn relabel(&self, n: usize) -> Result<ModuleMap> {
        let src = evaluate_slice(&self.presentation, n);
        let tgt = evaluate_slice(&self.original, n + self.a);
        let ring = self.original.ring();
        let mut cols: Vec<Column> = Vec::with_capacity(src.ambient_rank());
        for (i, idx) in &self.summands {
            let d = self.original.degrees()[*i];
            for g in enumerate_injections(d - idx.subset.len(), n) {
                let full: Vec<usize> = assemble(d, idx, g.images()).into_iter().map(|v| relabel_point(v, n)).collect();
                cols.push(vec![(tgt.index(*i, &full), ring.one())]);
            }
        }
        let m = Matrix::from_columns(ring, tgt.ambient_rank(), cols)?;
        ModuleMap::new(src.module().clone(), tgt.module().clone(), m)
    }

    /// `Φ_n^{-1}: V_{n+a} → (S_{+a}V)_n` (the transposed permutation).
    pub fn relabel_inverse(&self, n: usize) -> Result<ModuleMap> {
        let phi = self.relabel(n)?;
        ModuleMap::new(phi.target().clone(), phi.source().clone(), phi.matrix().transpose())
    }

    /// `X_a: V_n → (S_{+a}V)_n` in the shifted presentation's basis, through
    /// the `T = ∅` generators.
    pub fn x_map_shifted(&self, n: usize) -> Result<ModuleMap> {
        let src = evaluate_slice(&self.original, n);
        let tgt = evaluate_slice(&self.presentation, n);
        let ring = self.original.ring();
        let mut cols: Vec<Column> = Vec::with_capacity(src.ambient_rank());
        for (i, &d) in self.original.degrees().iter().enumerate() {
            let j = self.trivial_generator(i);
            for g in enumerate_injections(d, n) {
                cols.push(vec![(tgt.index(j, g.images()), ring.one())]);
            }
        }
        let m = Matrix::from_columns(ring, tgt.ambient_rank(), cols)?;
        ModuleMap::new(src.module().clone(), tgt.module().clone(), m)
    }
}

/// `S_{+a}P`: each generator `M(d)` becomes the summands `M(d − |T|)` over
/// [`decomposition_indices`], and each relation `r` of degree `e` becomes one
/// relation per label `(T', h')` of `[e]`, namely the image of `r` under
/// `φ: [e] ↪ [e − |T'|] ⊔ [-a]` re-expressed in the decomposed basis.
pub fn shift_presentation(p: &FIPresentation, a: usize) -> Shift {
    let ring = p.ring();
    let mut summands = Vec::new();
    let mut degrees = Vec::new();
    let mut index = HashMap::new();
    for (i, &d) in p.degrees().iter().enumerate() {
        for idx in decomposition_indices(d, a) {
            index.insert((i, idx.clone()), summands.len());
            degrees.push(d - idx.subset.len());
            summands.push((i, idx));
        }
    }
    let mut relations = Vec::new();
    for r in p.relations() {
        let e = r.degree();
        for rel_idx in decomposition_indices(e, a) {
            let e2 = e - rel_idx.subset.len();
            let phi = assemble(e, &rel_idx, &(1..=e2).collect::<Vec<_>>());
            let terms: Vec<Term> = r
                .terms()
                .iter()
                .map(|t| {
                    let composed: Vec<i64> = t.injection.images().iter().map(|&x| phi[x - 1]).collect();
                    let (gidx, rest) = decompose(&composed);
                    Term {
                        generator: index[&(t.generator, gidx)],
                        injection: Injection::new(rest, e2).expect("injective"),
                        coeff: t.coeff.clone(),
                    }
                })
                .collect();
            relations.push(FreeElement::new(ring, e2, terms).expect("consistent degrees"));
        }
    }
    let presentation = FIPresentation::new(ring, degrees, relations).expect("valid shifted presentation");
    Shift {
        a,
        original: p.clone(),
        presentation,
        summands,
        index,
    }
}

/// `X_a: V_n → V_{n+a}`, the map induced by the standard inclusion
/// `[n] ↪ [n + a]` (the target read as `(S_{+a}V)_n` through `Φ_n`).
pub fn x_map(p: &FIPresentation, a: usize, n: usize) -> Result<ModuleMap> {
    Ok(induced_map(p, &Injection::standard(n, n + a)?)?.map)
}

/// Rank of `(Q_a)_n` for `M(d)`, read off the labels with `T ≠ ∅`.
pub fn q_rank(d: usize, a: usize, n: usize) -> usize {
    decomposition_indices(d, a)
        .iter()
        .filter(|idx| !idx.is_trivial())
        .map(|idx| falling_factorial(n, d - idx.subset.len()))
        .sum()
}

/// `π_a: (S_{+a}M(d))_n → M(d)_n`: the identity on the `T = ∅` summand, zero
/// on every basis injection meeting `[-a]`. Also returns the shift used.
pub fn pi_projection(ring: RingSpec, d: usize, a: usize, n: usize) -> Result<(ModuleMap, Shift)> {
    let free = FIPresentation::free(ring, vec![d]);
    let shift = shift_presentation(&free, a);
    let src = evaluate_slice(&shift.presentation, n);
    let tgt = evaluate_slice(&free, n);
    let mut cols: Vec<Column> = Vec::with_capacity(src.ambient_rank());
    for (_, idx) in &shift.summands {
        for g in enumerate_injections(d - idx.subset.len(), n) {
            if idx.is_trivial() {
                cols.push(vec![(tgt.index(0, g.images()), ring.one())]);
            } else {
                cols.push(Vec::new());
            }
        }
    }
    let m = Matrix::from_columns(ring, tgt.ambient_rank(), cols)?;
    Ok((ModuleMap::new(src.module().clone(), tgt.module().clone(), m)?, shift))
}

/// `π_a ∘ X_a` on `M(d)_n`, with `X_a` taken through `Φ_n^{-1}`.
pub fn pi_after_x(ring: RingSpec, d: usize, a: usize, n: usize) -> Result<ModuleMap> {
    let (pi, shift) = pi_projection(ring, d, a, n)?;
    let x = x_map(&shift.original, a, n)?;
    let back = shift.relabel_inverse(n)?;
    pi.compose(&back.compose(&x)?)
}
