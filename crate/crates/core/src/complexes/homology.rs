//! Homology of the signed shift complex `… → (S̃₋₂V)_n → (S̃₋₁V)_n → V_n → 0`.

use std::collections::HashMap;

use num_traits::One;
use serde::Serialize;

use super::blocks::QuotientCache;
use super::shift_slices::{signed_differential_blocks, signed_induced_blocks};
use crate::combinat::binomial;
use crate::error::{Error, Result};
use crate::fi::{evaluate_slice, FIPresentation, Injection};
use crate::linalg::field::{with_field, Echelon, Field};
use crate::linalg::{rank, smith_form, Invariants, Matrix, RingSpec};

/// Primes used by fieldwise reports when none are given.
pub const DEFAULT_PRIMES: [u64; 4] = [2, 3, 5, 7];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HomologyMode {
    Field,
    /// ℤ with every slice in the complex torsion-free.
    IntegerFree,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyGroup {
    pub position: usize,
    pub chain_rank: usize,
    pub invariants: Invariants,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyResult {
    pub ring: RingSpec,
    pub n: usize,
    pub mode: HomologyMode,
    pub groups: Vec<HomologyGroup>,
}

impl HomologyResult {
    pub fn group(&self, a: usize) -> Option<&Invariants> {
        self.groups.iter().find(|g| g.position == a).map(|g| &g.invariants)
    }
}

/// The complex at a fixed `n`, differentials in quotient coordinates of the slices.
pub struct SliceComplex {
    p: FIPresentation,
    n: usize,
    cache: QuotientCache,
    differentials: HashMap<usize, Matrix>,
}

impl SliceComplex {
    pub fn new(p: &FIPresentation, n: usize) -> Self {
        SliceComplex {
            p: p.clone(),
            n,
            cache: QuotientCache::default(),
            differentials: HashMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The term at level `a` in quotient coordinates: `C(n, a)` copies of `V_{n−a}`.
    pub fn chain_rank(&self, a: usize) -> Result<usize> {
        if a > self.n {
            return Ok(0);
        }
        self.check_free(a)?;
        Ok(binomial(self.n, a) * evaluate_slice(&self.p, self.n - a).module().quotient_rank()?)
    }

    fn check_free(&self, a: usize) -> Result<()> {
        let slice = evaluate_slice(&self.p, self.n - a);
        if !slice.invariants().torsion().is_empty() {
            return Err(Error::Unsupported(format!(
                "V_{} = {} has torsion, so the complex over Z is not a complex of free modules; \
                 use the fieldwise report over Q and F_p instead (integral homology is then \
                 constrained by universal coefficients but not determined)",
                self.n - a,
                slice.invariants()
            )));
        }
        Ok(())
    }

    /// The differential out of level `a` (`1 ≤ a ≤ n`) in quotient coordinates.
    pub fn quotient_differential(&mut self, a: usize) -> Result<Matrix> {
        if let Some(m) = self.differentials.get(&a) {
            return Ok(m.clone());
        }
        self.check_free(a)?;
        self.check_free(a - 1)?;
        let m = signed_differential_blocks(a, self.n).quotient(&self.p, &mut self.cache)?;
        self.differentials.insert(a, m.clone());
        Ok(m)
    }

    fn differential_rank(&mut self, a: usize) -> Result<usize> {
        if a == 0 || a > self.n {
            Ok(0)
        } else {
            Ok(rank(&self.quotient_differential(a)?))
        }
    }

    pub fn homology(&mut self, positions: &[usize]) -> Result<HomologyResult> {
        let ring = self.p.ring();
        let mode = if ring.is_field() {
            HomologyMode::Field
        } else {
            HomologyMode::IntegerFree
        };
        let mut groups = Vec::new();
        for &a in positions {
            let chain_rank = self.chain_rank(a)?;
            let free = chain_rank - self.differential_rank(a)? - self.differential_rank(a + 1)?;
            let invariants = match mode {
                HomologyMode::Field => Invariants::Field { dim: free },
                HomologyMode::IntegerFree => {
                    let torsion = if a < self.n {
                        let snf = smith_form(&self.quotient_differential(a + 1)?, false)?;
                        snf.factors.into_iter().filter(|d| !d.is_one()).collect()
                    } else {
                        Vec::new()
                    };
                    Invariants::Integer {
                        free_rank: free,
                        torsion,
                    }
                }
            };
            groups.push(HomologyGroup {
                position: a,
                chain_rank,
                invariants,
            });
        }
        Ok(HomologyResult {
            ring,
            n: self.n,
            mode,
            groups,
        })
    }
}

/// `H_a` of the complex at `n` for each requested position. Over ℤ this
/// refuses presentations whose slices have torsion.
pub fn complex_homology(p: &FIPresentation, n: usize, positions: &[usize]) -> Result<HomologyResult> {
    SliceComplex::new(p, n).homology(positions)
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldwiseRow {
    pub ring: RingSpec,
    pub dims: Vec<(usize, usize)>,
}

/// Homology dimensions over ℚ and several `𝔽_p`, for presentations (typically
/// over ℤ) where integral homology is not computed directly.
#[derive(Clone, Debug, Serialize)]
pub struct FieldwiseTable {
    pub n: usize,
    pub rows: Vec<FieldwiseRow>,
    pub caveat: String,
}

pub fn fieldwise_homology(p: &FIPresentation, n: usize, positions: &[usize], primes: &[u64]) -> Result<FieldwiseTable> {
    let mut rings = vec![RingSpec::Rational];
    for &q in primes {
        rings.push(RingSpec::prime_field(q)?);
    }
    let mut rows = Vec::new();
    for ring in rings {
        let h = complex_homology(&p.change_ring(ring)?, n, positions)?;
        rows.push(FieldwiseRow {
            ring,
            dims: h.groups.iter().map(|g| (g.position, g.invariants.rank())).collect(),
        });
    }
    Ok(FieldwiseTable {
        n,
        rows,
        caveat: "dimensions over fields bound the integral homology through universal \
                 coefficients but do not determine it"
            .into(),
    })
}

/// Whether `X₁: (S̃₋ₐV)_n → (S̃₋ₐV)_{n+1}` is zero on `H_a`: every cycle at
/// `n` maps into the boundaries at `n + 1`. Field coefficients only.
pub fn x1_kills_homology(p: &FIPresentation, a: usize, n: usize) -> Result<bool> {
    let ring = p.ring();
    if !ring.is_field() {
        return Err(Error::Unsupported("the homology check of X_1 runs over a field".into()));
    }
    if a > n {
        return Ok(true);
    }
    let mut here = SliceComplex::new(p, n);
    let mut there = SliceComplex::new(p, n + 1);
    let c_a = here.chain_rank(a)?;
    let x = signed_induced_blocks(a, &Injection::standard(n, n + 1)?).quotient(p, &mut QuotientCache::default())?;
    let boundaries = there.quotient_differential(a + 1)?;
    let cycles = if a == 0 { None } else { Some(here.quotient_differential(a)?) };
    Ok(with_field!(ring, |f| {
        let mut span = Echelon::new(f, boundaries.rows());
        for c in 0..boundaries.cols() {
            span.insert(f.import(&boundaries.column(c)));
        }
        let kernel: Vec<Vec<(usize, _)>> = match &cycles {
            None => (0..c_a).map(|k| vec![(k, f.one())]).collect(),
            Some(d) => {
                let cols: Vec<_> = (0..d.cols()).map(|c| f.import(&d.column(c))).collect();
                crate::linalg::field::kernel_of(f, d.rows(), &cols)
            }
        };
        kernel.into_iter().all(|v| {
            let image = x.apply(&f.export(&v));
            span.contains(f.import(&image))
        })
    }))
}
