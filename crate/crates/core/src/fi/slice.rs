use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::element::{pushforward, FreeElement};
use super::injection::{enumerate_injections, Injection};
use super::presentation::FIPresentation;
use crate::combinat::{falling_factorial, injection_rank, injection_unrank};
use crate::error::{Error, Result};
use crate::linalg::{Column, Invariants, Matrix, ModuleMap, PresentedModule, RingSpec};

/// The slice `V_n` of a presentation: ambient basis the pairs `(i, g)` with
/// `g: [d_i] ↪ [n]` (generators in order, injections lexicographic), and one
/// relation column `h_*(r_j)` for every relation `j` and `h: [e_j] ↪ [n]`.
#[derive(Debug)]
pub struct SliceModule {
    n: usize,
    degrees: Vec<usize>,
    offsets: Vec<usize>,
    module: PresentedModule,
}

impl SliceModule {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> RingSpec {
        self.module.ring()
    }

    pub fn module(&self) -> &PresentedModule {
        &self.module
    }

    pub fn ambient_rank(&self) -> usize {
        self.module.ambient_rank()
    }

    pub fn invariants(&self) -> &Invariants {
        self.module.invariants()
    }

    /// Dimension over a field, free rank over ℤ.
    pub fn rank(&self) -> usize {
        self.module.rank()
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Ambient index of `(generator, g)` for an image tuple `g` into `[n]`.
    pub fn index(&self, generator: usize, images: &[usize]) -> usize {
        self.offsets[generator] + injection_rank(images, self.n)
    }

    /// The pair `(i, g)` at ambient index `k`.
    pub fn basis_element(&self, k: usize) -> (usize, Injection) {
        let i = (0..self.degrees.len())
            .rev()
            .find(|&i| self.offsets[i] <= k && k - self.offsets[i] < falling_factorial(self.n, self.degrees[i]))
            .expect("index in range");
        let images = injection_unrank(k - self.offsets[i], self.degrees[i], self.n);
        (i, Injection::new_unchecked(images, self.n))
    }

    /// Ambient coordinates of an element of `(⊕ M(d_i))_n`.
    pub fn vector(&self, e: &FreeElement) -> Result<Column> {
        if e.degree() != self.n {
            return Err(Error::SizeMismatch(format!("element of degree {} in slice {}", e.degree(), self.n)));
        }
        let mut v: Column = e
            .terms()
            .iter()
            .map(|t| (self.index(t.generator, t.injection.images()), t.coeff.clone()))
            .collect();
        v.sort_by_key(|(r, _)| *r);
        Ok(v)
    }
}

fn build_slice(p: &FIPresentation, n: usize) -> SliceModule {
    let spec = p.generators();
    let offsets = spec.offsets(n);
    let ambient = spec.rank_at(n);
    let mut cols = Vec::new();
    for r in p.relations() {
        for h in enumerate_injections(r.degree(), n) {
            let mut col: Column = r
                .terms()
                .iter()
                .map(|t| {
                    let images = h.compose_images(t.injection.images());
                    (offsets[t.generator] + injection_rank(&images, n), t.coeff.clone())
                })
                .collect();
            col.sort_by_key(|(r, _)| *r);
            cols.push(col);
        }
    }
    let relations = Matrix::from_columns(p.ring(), ambient, cols).expect("distinct basis indices");
    SliceModule {
        n,
        degrees: spec.degrees.clone(),
        offsets,
        module: PresentedModule::new(relations),
    }
}

type CacheKey = (String, usize);
type Cache = RwLock<HashMap<CacheKey, Arc<OnceLock<Arc<SliceModule>>>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `V_n`, cached per (content hash, n). Concurrent callers for the same key
/// share one computation.
pub fn evaluate_slice(p: &FIPresentation, n: usize) -> Arc<SliceModule> {
    let key = (p.content_hash().to_string(), n);
    let cell = {
        let read = cache().read().expect("cache lock");
        read.get(&key).cloned()
    };
    let cell = match cell {
        Some(c) => c,
        None => cache().write().expect("cache lock").entry(key).or_default().clone(),
    };
    cell.get_or_init(|| Arc::new(build_slice(p, n))).clone()
}

/// `V_n` computed afresh, bypassing the cache.
pub fn evaluate_slice_uncached(p: &FIPresentation, n: usize) -> SliceModule {
    build_slice(p, n)
}

pub fn clear_slice_cache() {
    cache().write().expect("cache lock").clear();
}

/// `f_*: V_m → V_n` for an injection `f: [m] ↪ [n]`.
#[derive(Clone, Debug)]
pub struct SliceMap {
    pub injection: Injection,
    pub map: ModuleMap,
}

/// Ambient matrix of `(i, g) ↦ (i, f ∘ g)` between slices of the same presentation.
pub(crate) fn relabel_matrix(ring: RingSpec, degrees: &[usize], f: &Injection, source: &SliceModule, target: &SliceModule) -> Matrix {
    let one = ring.one();
    let mut cols: Vec<Column> = Vec::with_capacity(source.ambient_rank());
    for (i, &d) in degrees.iter().enumerate() {
        for g in enumerate_injections(d, f.source()) {
            let images = f.compose_images(g.images());
            cols.push(vec![(target.index(i, &images), one.clone())]);
        }
    }
    Matrix::from_columns(ring, target.ambient_rank(), cols).expect("valid relabeling")
}

pub fn induced_map(p: &FIPresentation, f: &Injection) -> Result<SliceMap> {
    let source = evaluate_slice(p, f.source());
    let target = evaluate_slice(p, f.target());
    let matrix = relabel_matrix(p.ring(), p.degrees(), f, &source, &target);
    Ok(SliceMap {
        injection: f.clone(),
        map: ModuleMap::new(source.module().clone(), target.module().clone(), matrix)?,
    })
}

/// `f_*` applied to an element of `(⊕ M(d_i))_m`, as a vector in `V_n`.
pub fn induced_vector(p: &FIPresentation, f: &Injection, e: &FreeElement) -> Result<Column> {
    evaluate_slice(p, f.target()).vector(&pushforward(e, f)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_and_torsion_slices() {
        let q = RingSpec::Rational;
        assert_eq!(evaluate_slice(&FIPresentation::free(q, vec![2]), 4).rank(), 12);
        let t = FIPresentation::point_torsion(q);
        assert_eq!(evaluate_slice(&t, 0).rank(), 1);
        assert_eq!(evaluate_slice(&t, 2).rank(), 0);
        let z = evaluate_slice(&FIPresentation::free(RingSpec::Integer, vec![1]), 6);
        assert_eq!(
            *z.invariants(),
            Invariants::Integer {
                free_rank: 6,
                torsion: vec![]
            }
        );
    }

    #[test]
    fn basis_round_trip() {
        let p = FIPresentation::free(RingSpec::Rational, vec![2, 0, 3, 1]);
        let s = evaluate_slice(&p, 4);
        for k in 0..s.ambient_rank() {
            let (i, g) = s.basis_element(k);
            assert_eq!(s.index(i, g.images()), k);
        }
    }

    #[test]
    fn induced_map_selects_basis() {
        let p = FIPresentation::free(RingSpec::Rational, vec![1]);
        let f = Injection::new(vec![2], 2).unwrap();
        let m = induced_map(&p, &f).unwrap();
        assert_eq!(m.map.matrix(), &Matrix::from_i64_rows(RingSpec::Rational, &[vec![0], vec![1]]));
        assert!(m.map.is_well_defined());
    }
}
