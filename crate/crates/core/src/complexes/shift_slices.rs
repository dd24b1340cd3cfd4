//! The ordered shift `B_a V` and the signed shift `S̃₋ₐ V` at a finite set,
//! with their differentials, the homotopy `G` and the maps induced by
//! injections.

use std::sync::Arc;

use serde::Serialize;

use super::blocks::{positions, BlockMap};
use crate::combinat::{binomial, complement, falling_factorial, injection_images, injection_rank, sort_sign, subset_rank, subsets};
use crate::error::{Error, Result};
use crate::fi::{enumerate_injections, evaluate_slice, FIPresentation, Injection, SliceModule};
use crate::linalg::{Matrix, ModuleMap, PresentedModule, RingSpec};

/// `(B_a V)_n = ⊕_{f: [a] ↪ [n]} V_{[n] − f([a])}`, summands in lexicographic
/// order of `f`, each complement identified with `[n − a]` order-preservingly.
#[derive(Clone, Debug)]
pub struct OrderedShiftSlice {
    pub a: usize,
    pub n: usize,
    pub summands: Vec<Vec<usize>>,
    pub slice: Arc<SliceModule>,
}

/// `(S̃₋ₐ V)_n = ⊕_{T ⊂ [n], |T| = n − a} V_T`, summands in lexicographic
/// order of the complement `C = [n] − T`. The summand of `C` stands for the
/// class of the increasing enumeration of `C` in `B_a V ⊗_{S_a} ε`.
#[derive(Clone, Debug)]
pub struct SignedShiftSlice {
    pub a: usize,
    pub n: usize,
    pub complements: Vec<Vec<usize>>,
    pub slice: Arc<SliceModule>,
}

fn check_level(a: usize, n: usize) -> Result<()> {
    if a > n {
        Err(Error::SizeMismatch(format!("shift level {a} exceeds the set size {n}")))
    } else {
        Ok(())
    }
}

fn summed_module(ring: RingSpec, slice: &SliceModule, copies: usize) -> Result<PresentedModule> {
    PresentedModule::direct_sum(ring, &vec![slice.module().clone(); copies])
}

pub fn ordered_shift_slice(p: &FIPresentation, a: usize, n: usize) -> Result<OrderedShiftSlice> {
    check_level(a, n)?;
    Ok(OrderedShiftSlice {
        a,
        n,
        summands: injection_images(a, n),
        slice: evaluate_slice(p, n - a),
    })
}

pub fn signed_shift_slice(p: &FIPresentation, a: usize, n: usize) -> Result<SignedShiftSlice> {
    check_level(a, n)?;
    Ok(SignedShiftSlice {
        a,
        n,
        complements: subsets(n, a),
        slice: evaluate_slice(p, n - a),
    })
}

impl OrderedShiftSlice {
    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn module(&self) -> Result<PresentedModule> {
        summed_module(self.slice.ring(), &self.slice, self.len())
    }

    pub fn ambient_rank(&self) -> usize {
        self.len() * self.slice.ambient_rank()
    }
}

impl SignedShiftSlice {
    pub fn len(&self) -> usize {
        self.complements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complements.is_empty()
    }

    pub fn module(&self) -> Result<PresentedModule> {
        summed_module(self.slice.ring(), &self.slice, self.len())
    }

    pub fn ambient_rank(&self) -> usize {
        self.len() * self.slice.ambient_rank()
    }

    /// Summand index and sign of the class of the ordered summand `f`.
    pub fn class_of(images: &[usize], n: usize) -> (usize, i64) {
        let mut sorted = images.to_vec();
        sorted.sort_unstable();
        (subset_rank(&sorted, n), sort_sign(images))
    }
}

/// Coordinate map of `g|: [n] − im f → [n'] − im (g ∘ f)`.
fn complement_map(f: &[usize], n: usize, g: &[usize], n2: usize) -> (Vec<usize>, Vec<usize>) {
    let gf: Vec<usize> = f.iter().map(|&x| g[x - 1]).collect();
    let mut gf_sorted = gf.clone();
    gf_sorted.sort_unstable();
    let t = complement(&{
        let mut s = f.to_vec();
        s.sort_unstable();
        s
    }, n);
    let t2 = complement(&gf_sorted, n2);
    let gt: Vec<usize> = t.iter().map(|&x| g[x - 1]).collect();
    (gf, positions(&gt, &t2))
}

/// The face `d_i` on the ordered summand `f`: target `f ∘ s_i` and the
/// coordinate inclusion of complements.
fn face(f: &[usize], i: usize, n: usize) -> (Vec<usize>, Vec<usize>) {
    let mut g = f.to_vec();
    g.remove(i - 1);
    let mut fs = f.to_vec();
    fs.sort_unstable();
    let mut gs = g.clone();
    gs.sort_unstable();
    let t = complement(&fs, n);
    let t2 = complement(&gs, n);
    (g, positions(&t, &t2))
}

pub(crate) fn signed_differential_blocks(a: usize, n: usize) -> BlockMap {
    let complements = subsets(n, a);
    let blocks = complements
        .iter()
        .map(|c| {
            (1..=a)
                .map(|i| {
                    let (g, delta) = face(c, i, n);
                    let (t, s) = SignedShiftSlice::class_of(&g, n);
                    let sign = if i % 2 == 0 { s } else { -s };
                    (t, sign, delta)
                })
                .collect()
        })
        .collect();
    BlockMap {
        src_degree: n - a,
        tgt_degree: n - a + 1,
        src_count: complements.len(),
        tgt_count: binomial(n, a - 1),
        blocks,
    }
}

pub(crate) fn signed_induced_blocks(a: usize, g: &Injection) -> BlockMap {
    let (n, n2) = (g.source(), g.target());
    let complements = subsets(n, a);
    let blocks = complements
        .iter()
        .map(|c| {
            let (gf, delta) = complement_map(c, n, g.images(), n2);
            let (t, s) = SignedShiftSlice::class_of(&gf, n2);
            vec![(t, s, delta)]
        })
        .collect();
    BlockMap {
        src_degree: n - a,
        tgt_degree: n2 - a,
        src_count: complements.len(),
        tgt_count: binomial(n2, a),
        blocks,
    }
}

/// `G̃` on distinguished representatives: `f ↦ f̄` with `f̄(1) = n + 1`
/// (the added point) and `f̄(i) = f(i − 1)`, identity on `V_T`.
pub(crate) fn homotopy_blocks(a: usize, n: usize) -> BlockMap {
    let complements = subsets(n, a);
    let m = n - a;
    let identity: Vec<usize> = (1..=m).collect();
    let blocks = complements
        .iter()
        .map(|c| {
            let mut bar = vec![n + 1];
            bar.extend_from_slice(c);
            let (t, s) = SignedShiftSlice::class_of(&bar, n + 1);
            vec![(t, s, identity.clone())]
        })
        .collect();
    BlockMap {
        src_degree: m,
        tgt_degree: m,
        src_count: complements.len(),
        tgt_count: binomial(n + 1, a + 1),
        blocks,
    }
}

pub(crate) fn ordered_induced_blocks(a: usize, g: &Injection) -> BlockMap {
    let (n, n2) = (g.source(), g.target());
    let summands = injection_images(a, n);
    let blocks = summands
        .iter()
        .map(|f| {
            let (gf, delta) = complement_map(f, n, g.images(), n2);
            vec![(injection_rank(&gf, n2), 1, delta)]
        })
        .collect();
    BlockMap {
        src_degree: n - a,
        tgt_degree: n2 - a,
        src_count: summands.len(),
        tgt_count: falling_factorial(n2, a),
        blocks,
    }
}

pub(crate) fn ordered_face_blocks(a: usize, i: usize, n: usize) -> BlockMap {
    let summands = injection_images(a, n);
    let blocks = summands
        .iter()
        .map(|f| {
            let (g, delta) = face(f, i, n);
            vec![(injection_rank(&g, n), 1, delta)]
        })
        .collect();
    BlockMap {
        src_degree: n - a,
        tgt_degree: n - a + 1,
        src_count: summands.len(),
        tgt_count: falling_factorial(n, a - 1),
        blocks,
    }
}

fn block_module_map(p: &FIPresentation, blocks: &BlockMap) -> Result<ModuleMap> {
    let ring = p.ring();
    let src = evaluate_slice(p, blocks.src_degree);
    let tgt = evaluate_slice(p, blocks.tgt_degree);
    ModuleMap::new(
        summed_module(ring, &src, blocks.src_count)?,
        summed_module(ring, &tgt, blocks.tgt_count)?,
        blocks.ambient(p),
    )
}

/// `d: (S̃₋ₐV)_n → (S̃₋₍ₐ₋₁₎V)_n`, `d = Σ (−1)^i d_i` on ordered
/// representatives, re-expressed in signed representatives. Requires `1 ≤ a ≤ n`.
pub fn differential(p: &FIPresentation, a: usize, n: usize) -> Result<ModuleMap> {
    check_level(a, n)?;
    if a == 0 {
        return Err(Error::SizeMismatch("the differential starts at level 1".into()));
    }
    block_module_map(p, &signed_differential_blocks(a, n))
}

/// Ambient matrix of the differential, without building module presentations.
pub fn differential_matrix(p: &FIPresentation, a: usize, n: usize) -> Result<Matrix> {
    check_level(a, n)?;
    if a == 0 {
        return Err(Error::SizeMismatch("the differential starts at level 1".into()));
    }
    Ok(signed_differential_blocks(a, n).ambient(p))
}

/// The face `d_i: (B_aV)_n → (B_{a−1}V)_n`.
pub fn ordered_face(p: &FIPresentation, a: usize, i: usize, n: usize) -> Result<ModuleMap> {
    check_level(a, n)?;
    if i == 0 || i > a {
        return Err(Error::SizeMismatch(format!("face index {i} outside [1, {a}]")));
    }
    block_module_map(p, &ordered_face_blocks(a, i, n))
}

/// `g_*: (B_aV)_n → (B_aV)_{n'}`.
pub fn ordered_induced(p: &FIPresentation, a: usize, g: &Injection) -> Result<ModuleMap> {
    check_level(a, g.source())?;
    block_module_map(p, &ordered_induced_blocks(a, g))
}

/// `g_*: (S̃₋ₐV)_n → (S̃₋ₐV)_{n'}`.
pub fn signed_induced(p: &FIPresentation, a: usize, g: &Injection) -> Result<ModuleMap> {
    check_level(a, g.source())?;
    block_module_map(p, &signed_induced_blocks(a, g))
}

/// `G: (S̃₋ₐV)_n → (S̃₋₍ₐ₊₁₎V)_{n+1}`, with `[n] ⊔ {−1}` identified with `[n + 1]`.
pub fn homotopy(p: &FIPresentation, a: usize, n: usize) -> Result<ModuleMap> {
    check_level(a, n)?;
    block_module_map(p, &homotopy_blocks(a, n))
}

/// Ambient matrix of `(B_a M(d))_n → M(a + d)_n`, `(f, f') ↦ f ⊔ f'`, where
/// `f'` is read through the order-preserving identification of the complement.
pub fn ordered_free_bijection(ring: RingSpec, d: usize, a: usize, n: usize) -> Result<Matrix> {
    check_level(a, n)?;
    let mut cols = Vec::new();
    for f in injection_images(a, n) {
        let mut fs = f.clone();
        fs.sort_unstable();
        let t = complement(&fs, n);
        for g in enumerate_injections(d, n - a) {
            let mut joint = f.clone();
            joint.extend(g.images().iter().map(|&x| t[x - 1]));
            cols.push(vec![(injection_rank(&joint, n), ring.one())]);
        }
    }
    Matrix::from_columns(ring, falling_factorial(n, a + d), cols)
}

/// Outcome of the exact ambient checks of the chain homotopy at `(a, n)`.
#[derive(Clone, Debug, Serialize)]
pub struct HomotopyCheck {
    pub a: usize,
    pub n: usize,
    pub d_squared_zero: bool,
    pub homotopy_identity: bool,
    pub well_defined: bool,
}

impl HomotopyCheck {
    pub fn passed(&self) -> bool {
        self.d_squared_zero && self.homotopy_identity && self.well_defined
    }
}

/// Checks `d ∘ d = 0` out of level `a` (when `a ≥ 2`) and the matrix identity
/// `dG + Gd = −X₁` on level `a` at `n`, both exactly on ambient bases, plus that
/// `d`, `G` and `X₁` respect relations.
pub fn verify_chain_homotopy(p: &FIPresentation, a: usize, n: usize) -> Result<HomotopyCheck> {
    check_level(a, n)?;
    let x1 = signed_induced(p, a, &Injection::standard(n, n + 1)?)?;
    let g_a = homotopy(p, a, n)?;
    let d_up = differential(p, a + 1, n + 1)?;
    let mut lhs = d_up.matrix().mul(g_a.matrix())?;
    let mut well_defined = x1.is_well_defined() && g_a.is_well_defined() && d_up.is_well_defined();
    let mut d_squared_zero = true;
    if a >= 1 {
        let d_a = differential(p, a, n)?;
        let g_down = homotopy(p, a - 1, n)?;
        lhs = lhs.add(&g_down.matrix().mul(d_a.matrix())?)?;
        well_defined &= d_a.is_well_defined() && g_down.is_well_defined();
        if a >= 2 {
            let d_down = differential_matrix(p, a - 1, n)?;
            d_squared_zero = d_down.mul(d_a.matrix())?.is_zero();
        }
    }
    let homotopy_identity = lhs.add(x1.matrix())?.is_zero();
    Ok(HomotopyCheck {
        a,
        n,
        d_squared_zero,
        homotopy_identity,
        well_defined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank;

    #[test]
    fn homotopy_on_free_modules() {
        for ring in [RingSpec::Rational, RingSpec::Prime(2), RingSpec::Integer] {
            let p = FIPresentation::free(ring, vec![1, 2]);
            for n in 0..4 {
                for a in 0..=n {
                    let c = verify_chain_homotopy(&p, a, n).unwrap();
                    assert!(c.passed(), "{ring} a={a} n={n}: {c:?}");
                }
            }
        }
    }

    #[test]
    fn free_bijection_is_a_permutation() {
        let m = ordered_free_bijection(RingSpec::Rational, 1, 2, 4).unwrap();
        assert_eq!(m.rows(), m.cols());
        assert_eq!(rank(&m), m.rows());
    }

    #[test]
    fn signed_class_sign() {
        assert_eq!(SignedShiftSlice::class_of(&[3, 1, 2], 3), (0, 1));
        assert_eq!(SignedShiftSlice::class_of(&[2, 1], 3), (0, -1));
    }
}
