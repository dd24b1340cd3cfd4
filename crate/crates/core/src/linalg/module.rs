use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::field::{integer_column, kernel_of, rank_of, with_field, Echelon, Field, PrimeField, RationalField};
use super::integer::{fraction_free_rank, cleared_columns, integer_kernel, lattice_factors, smith_form, Lattice};
use super::matrix::{Column, Matrix};
use super::ring::{RingSpec, Scalar};
use super::serde_int;
use crate::error::{Error, Result};

/// Rank over the fraction field of the matrix's ring.
pub fn rank(m: &Matrix) -> usize {
    match m.ring() {
        RingSpec::Prime(p) => super::field::matrix_rank_over_field(PrimeField::new(p), m),
        _ => fraction_free_rank(m.rows(), cleared_columns(m)),
    }
}

/// Advisory cross-check: rank of a ℚ/ℤ matrix against its ranks modulo a few
/// large primes. Modular ranks never exceed the true rank; agreement is
/// evidence, not proof.
#[derive(Clone, Debug, Serialize)]
pub struct RankCheck {
    pub rank: usize,
    pub modular: Vec<(u64, Option<usize>)>,
    pub consistent: bool,
}

pub fn rank_cross_check(m: &Matrix, primes: &[u64]) -> RankCheck {
    let r = rank(m);
    let modular: Vec<(u64, Option<usize>)> = primes.iter().map(|&p| (p, super::field::rank_mod_p(m, p))).collect();
    let consistent = modular.iter().all(|(_, k)| k.is_none_or(|k| k == r));
    RankCheck {
        rank: r,
        modular,
        consistent,
    }
}

fn int_to_column(v: Vec<(usize, BigInt)>) -> Column {
    v.into_iter().map(|(r, x)| (r, Scalar::Integer(x))).collect()
}

#[derive(Clone, Debug)]
enum SpanInner {
    Prime(Echelon<PrimeField>),
    Rational(Echelon<RationalField>),
    Integer(Lattice),
}

/// A submodule of `R^dim` given by generators, kept in a canonical
/// elimination form: a semi-echelon basis over a field, a triangular lattice
/// basis over ℤ.
#[derive(Clone, Debug)]
pub struct Span {
    ring: RingSpec,
    dim: usize,
    inner: SpanInner,
}

impl Span {
    pub fn new(ring: RingSpec, dim: usize) -> Self {
        let inner = match ring {
            RingSpec::Prime(p) => SpanInner::Prime(Echelon::new(PrimeField::new(p), dim)),
            RingSpec::Rational => SpanInner::Rational(Echelon::new(RationalField, dim)),
            RingSpec::Integer => SpanInner::Integer(Lattice::new(dim)),
        };
        Span { ring, dim, inner }
    }

    pub fn from_columns<'a>(ring: RingSpec, dim: usize, cols: impl IntoIterator<Item = &'a [(usize, Scalar)]>) -> Self {
        let mut s = Span::new(ring, dim);
        for c in cols {
            s.insert(c);
        }
        s
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        let mut s = Span::new(m.ring(), m.rows());
        for c in 0..m.cols() {
            s.insert(&m.column(c));
        }
        s
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        match &self.inner {
            SpanInner::Prime(e) => e.rank(),
            SpanInner::Rational(e) => e.rank(),
            SpanInner::Integer(l) => l.rank(),
        }
    }

    /// Adds a generator; returns whether the span grew.
    pub fn insert(&mut self, v: &[(usize, Scalar)]) -> bool {
        match &mut self.inner {
            SpanInner::Prime(e) => {
                let w = e.field().import(v);
                e.insert(w)
            }
            SpanInner::Rational(e) => {
                let w = e.field().import(v);
                e.insert(w)
            }
            SpanInner::Integer(l) => {
                let w = integer_column(v);
                if l.contains(w.clone()) {
                    false
                } else {
                    l.insert(w);
                    true
                }
            }
        }
    }

    /// Canonical representative of `v` modulo the span.
    pub fn reduce(&self, v: &[(usize, Scalar)]) -> Column {
        match &self.inner {
            SpanInner::Prime(e) => e.field().export(&e.reduce(e.field().import(v))),
            SpanInner::Rational(e) => e.field().export(&e.reduce(e.field().import(v))),
            SpanInner::Integer(l) => int_to_column(l.reduce(integer_column(v))),
        }
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn contains_span(&self, other: &Span) -> bool {
        other.basis().iter().all(|b| self.contains(b))
    }

    /// Whether the span is all of `R^dim`.
    pub fn is_full(&self) -> bool {
        match &self.inner {
            SpanInner::Integer(l) => l.is_full(),
            _ => self.rank() == self.dim,
        }
    }

    pub fn basis(&self) -> Vec<Column> {
        match &self.inner {
            SpanInner::Prime(e) => e.basis().iter().map(|b| e.field().export(b)).collect(),
            SpanInner::Rational(e) => e.basis().iter().map(|b| e.field().export(b)).collect(),
            SpanInner::Integer(l) => {
                let mut l = l.clone();
                l.canonicalize();
                l.basis_vectors().map(|b| int_to_column(b.clone())).collect()
            }
        }
    }

    pub(crate) fn lattice(&self) -> Option<&Lattice> {
        match &self.inner {
            SpanInner::Integer(l) => Some(l),
            _ => None,
        }
    }

    /// Rows carrying no pivot (field spans only).
    pub(crate) fn free_rows(&self) -> Option<Vec<usize>> {
        match &self.inner {
            SpanInner::Prime(e) => Some(e.free_rows()),
            SpanInner::Rational(e) => Some(e.free_rows()),
            SpanInner::Integer(_) => None,
        }
    }
}

impl PartialEq for Span {
    fn eq(&self, other: &Self) -> bool {
        if self.ring != other.ring || self.dim != other.dim || self.rank() != other.rank() {
            return false;
        }
        match (&self.inner, &other.inner) {
            (SpanInner::Integer(a), SpanInner::Integer(b)) => a == b,
            _ => self.contains_span(other),
        }
    }
}

/// Isomorphism type of a finitely generated module: a dimension over a field,
/// free rank plus torsion invariant factors over ℤ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Invariants {
    Field {
        dim: usize,
    },
    Integer {
        free_rank: usize,
        #[serde(with = "serde_int::list")]
        torsion: Vec<BigInt>,
    },
}

impl Invariants {
    /// Dimension, or free rank over ℤ.
    pub fn rank(&self) -> usize {
        match self {
            Invariants::Field { dim } => *dim,
            Invariants::Integer { free_rank, .. } => *free_rank,
        }
    }

    pub fn torsion(&self) -> &[BigInt] {
        match self {
            Invariants::Field { .. } => &[],
            Invariants::Integer { torsion, .. } => torsion,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0 && self.torsion().is_empty()
    }

    pub(crate) fn from_factors(ambient: usize, factors: &[BigInt]) -> Self {
        Invariants::Integer {
            free_rank: ambient - factors.len(),
            torsion: factors.iter().filter(|d| !d.is_one()).cloned().collect(),
        }
    }
}

impl fmt::Display for Invariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Invariants::Field { dim } => write!(f, "dim {dim}"),
            Invariants::Integer { free_rank, torsion } => {
                write!(f, "Z^{free_rank}")?;
                for t in torsion {
                    write!(f, " + Z/{t}")?;
                }
                Ok(())
            }
        }
    }
}

/// Explicit coordinates on a free quotient `R^ambient / relations`.
#[derive(Debug)]
enum Coordinates {
    /// Over a field the non-pivot rows of the relation echelon form a basis.
    Field { free_rows: Vec<usize>, index: Vec<Option<usize>> },
    /// Over ℤ (torsion-free quotient) from the Smith transforms of the
    /// relation lattice: `x ↦ (U x)[r..]`, lift `k ↦ U⁻¹ e_{r+k}`.
    Integer { project: Matrix, lift: Vec<Column> },
}

#[derive(Debug)]
struct Inner {
    ring: RingSpec,
    ambient: usize,
    relations: Matrix,
    span: OnceLock<Span>,
    invariants: OnceLock<Invariants>,
    coordinates: OnceLock<std::result::Result<Coordinates, Error>>,
}

/// The module `R^ambient / (column span of relations)`. Cheap to clone;
/// derived data is computed once on first use.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    inner: Arc<Inner>,
}

impl PresentedModule {
    pub fn new(relations: Matrix) -> Self {
        PresentedModule {
            inner: Arc::new(Inner {
                ring: relations.ring(),
                ambient: relations.rows(),
                relations,
                span: OnceLock::new(),
                invariants: OnceLock::new(),
                coordinates: OnceLock::new(),
            }),
        }
    }

    pub fn from_columns(ring: RingSpec, ambient: usize, relations: Vec<Column>) -> Result<Self> {
        Ok(Self::new(Matrix::from_columns(ring, ambient, relations)?))
    }

    pub fn free(ring: RingSpec, rank: usize) -> Self {
        Self::new(Matrix::zeros(ring, rank, 0))
    }

    pub fn ring(&self) -> RingSpec {
        self.inner.ring
    }

    pub fn ambient_rank(&self) -> usize {
        self.inner.ambient
    }

    pub fn relations(&self) -> &Matrix {
        &self.inner.relations
    }

    pub fn same(&self, other: &PresentedModule) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    /// Canonical elimination form of the relation span.
    pub fn relation_span(&self) -> &Span {
        self.inner.span.get_or_init(|| Span::from_matrix(&self.inner.relations))
    }

    pub fn invariants(&self) -> &Invariants {
        self.inner.invariants.get_or_init(|| self.compute_invariants())
    }

    /// Recomputes the invariants from the relation matrix alone.
    pub fn compute_invariants(&self) -> Invariants {
        let rels = &self.inner.relations;
        match self.inner.ring {
            RingSpec::Integer => {
                let l = Lattice::from_matrix(rels).expect("integer relations");
                Invariants::from_factors(self.inner.ambient, &lattice_factors(&l))
            }
            _ => Invariants::Field {
                dim: self.inner.ambient - rank(rels),
            },
        }
    }

    /// Dimension over a field, free rank over ℤ.
    pub fn rank(&self) -> usize {
        self.invariants().rank()
    }

    pub fn is_zero(&self) -> bool {
        self.invariants().is_zero()
    }

    pub fn normal_form(&self, v: &[(usize, Scalar)]) -> Column {
        self.relation_span().reduce(v)
    }

    pub fn is_relation(&self, v: &[(usize, Scalar)]) -> bool {
        self.relation_span().contains(v)
    }

    fn coordinates(&self) -> Result<&Coordinates> {
        self.inner
            .coordinates
            .get_or_init(|| self.build_coordinates())
            .as_ref()
            .map_err(Clone::clone)
    }

    fn build_coordinates(&self) -> std::result::Result<Coordinates, Error> {
        let span = self.relation_span();
        if let Some(free_rows) = span.free_rows() {
            let mut index = vec![None; self.inner.ambient];
            for (k, &r) in free_rows.iter().enumerate() {
                index[r] = Some(k);
            }
            return Ok(Coordinates::Field { free_rows, index });
        }
        let lattice = span.lattice().expect("integer span");
        let basis = lattice.basis_matrix();
        let snf = smith_form(&basis, true)?;
        if snf.factors.iter().any(|d| !d.is_one()) {
            return Err(Error::Unsupported(format!(
                "module has torsion ({}); quotient coordinates need a free quotient",
                self.invariants()
            )));
        }
        let r = snf.rank();
        let u = snf.left.expect("requested");
        let ui = snf.left_inverse.expect("requested");
        let rows: Vec<Vec<Scalar>> = u.to_dense_rows().into_iter().skip(r).collect();
        let project = if rows.is_empty() {
            Matrix::zeros(RingSpec::Integer, 0, self.inner.ambient)
        } else {
            Matrix::from_rows(RingSpec::Integer, rows)?
        };
        let lift = (r..self.inner.ambient).map(|c| ui.column(c).into_owned()).collect();
        Ok(Coordinates::Integer { project, lift })
    }

    /// Number of quotient coordinates; errors over ℤ when torsion is present.
    pub fn quotient_rank(&self) -> Result<usize> {
        Ok(match self.coordinates()? {
            Coordinates::Field { free_rows, .. } => free_rows.len(),
            Coordinates::Integer { lift, .. } => lift.len(),
        })
    }

    /// Coordinates of the class of `v` in the free quotient.
    pub fn project(&self, v: &[(usize, Scalar)]) -> Result<Column> {
        Ok(match self.coordinates()? {
            Coordinates::Field { index, .. } => self
                .normal_form(v)
                .into_iter()
                .map(|(r, x)| (index[r].expect("normal forms live on free rows"), x))
                .collect(),
            Coordinates::Integer { project, .. } => project.apply(v),
        })
    }

    /// An ambient representative of the `k`-th quotient basis vector.
    pub fn lift(&self, k: usize) -> Result<Column> {
        Ok(match self.coordinates()? {
            Coordinates::Field { free_rows, .. } => vec![(free_rows[k], self.inner.ring.one())],
            Coordinates::Integer { lift, .. } => lift[k].clone(),
        })
    }

    /// `⊕ modules`, ambient bases concatenated in order.
    pub fn direct_sum(ring: RingSpec, parts: &[PresentedModule]) -> Result<Self> {
        let mut offset = 0;
        let mut cols = Vec::new();
        for p in parts {
            if p.ring() != ring {
                return Err(Error::RingMismatch {
                    expected: ring,
                    found: p.ring(),
                });
            }
            for c in 0..p.relations().cols() {
                cols.push(p.relations().column(c).iter().map(|(r, x)| (r + offset, x.clone())).collect());
            }
            offset += p.ambient_rank();
        }
        Ok(Self::new(Matrix::from_normalized_columns(ring, offset, cols)))
    }

    /// The same ambient with extra relations appended.
    pub fn with_relations(&self, extra: impl IntoIterator<Item = Column>) -> Result<Self> {
        let mut cols = self.relations().columns();
        cols.extend(extra);
        Self::from_columns(self.ring(), self.ambient_rank(), cols)
    }
}

pub fn cokernel_invariants(pm: &PresentedModule) -> Invariants {
    pm.invariants().clone()
}

/// An `R`-linear map between presented modules, given on ambient bases.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    source: PresentedModule,
    target: PresentedModule,
    matrix: Matrix,
}

/// Outcome of an isomorphism test with the data it was decided on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoCertificate {
    pub surjective: bool,
    pub source: Invariants,
    pub target: Invariants,
    pub isomorphism: bool,
}

/// Kernel of a module map as a submodule of the source: `generators`
/// together with the source relations span the preimage of the target
/// relations.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub generators: Vec<Column>,
    pub invariants: Invariants,
}

impl ModuleMap {
    pub fn new(source: PresentedModule, target: PresentedModule, matrix: Matrix) -> Result<Self> {
        if source.ring() != target.ring() || matrix.ring() != source.ring() {
            return Err(Error::RingMismatch {
                expected: source.ring(),
                found: if target.ring() != source.ring() { target.ring() } else { matrix.ring() },
            });
        }
        if matrix.rows() != target.ambient_rank() || matrix.cols() != source.ambient_rank() {
            return Err(Error::SizeMismatch(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.ambient_rank(),
                source.ambient_rank()
            )));
        }
        Ok(ModuleMap { source, target, matrix })
    }

    pub fn identity(m: &PresentedModule) -> Self {
        ModuleMap {
            source: m.clone(),
            target: m.clone(),
            matrix: Matrix::identity(m.ring(), m.ambient_rank()),
        }
    }

    pub fn source(&self) -> &PresentedModule {
        &self.source
    }

    pub fn target(&self) -> &PresentedModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Whether every source relation maps into the target relation span.
    pub fn is_well_defined(&self) -> bool {
        let rels = self.source.relations();
        (0..rels.cols()).all(|c| self.target.is_relation(&self.matrix.apply(&rels.column(c))))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ModuleMap) -> Result<ModuleMap> {
        if first.target.ambient_rank() != self.source.ambient_rank() {
            return Err(Error::SizeMismatch("composition of non-composable maps".into()));
        }
        ModuleMap::new(first.source.clone(), self.target.clone(), self.matrix.mul(&first.matrix)?)
    }

    /// Whether two maps with the same source and target ambient agree as maps
    /// of modules (their difference lands in the target relations).
    pub fn agrees_with(&self, other: &ModuleMap) -> bool {
        if self.matrix.rows() != other.matrix.rows() || self.matrix.cols() != other.matrix.cols() {
            return false;
        }
        (0..self.matrix.cols()).all(|c| {
            let a = self.matrix.column(c);
            let b = other.matrix.column(c);
            let diff: Column = merge_sub(&a, &b);
            self.target.is_relation(&diff)
        })
    }

    /// The map in quotient coordinates (requires free quotients over ℤ).
    pub fn quotient_matrix(&self) -> Result<Matrix> {
        let qs = self.source.quotient_rank()?;
        let qt = self.target.quotient_rank()?;
        let mut cols = Vec::with_capacity(qs);
        for k in 0..qs {
            let img = self.matrix.apply(&self.source.lift(k)?);
            cols.push(self.target.project(&img)?);
        }
        Matrix::from_columns(self.source.ring(), qt, cols)
    }

    pub fn is_surjective(&self) -> bool {
        let mut span = self.target.relation_span().clone();
        for c in 0..self.matrix.cols() {
            span.insert(&self.matrix.column(c));
        }
        span.is_full()
    }

    pub fn is_isomorphism(&self) -> Result<IsoCertificate> {
        if self.source.ring() != self.target.ring() {
            return Err(Error::RingMismatch {
                expected: self.source.ring(),
                found: self.target.ring(),
            });
        }
        let surjective = self.is_surjective();
        let source = self.source.invariants().clone();
        let target = self.target.invariants().clone();
        let isomorphism = surjective && source == target;
        Ok(IsoCertificate {
            surjective,
            source,
            target,
            isomorphism,
        })
    }

    pub fn cokernel(&self) -> Result<PresentedModule> {
        self.target.with_relations(self.matrix.columns())
    }

    pub fn kernel(&self) -> Result<Kernel> {
        let ring = self.source.ring();
        if ring == RingSpec::Integer {
            return self.integer_kernel();
        }
        let q = self.quotient_matrix()?;
        let qs = q.cols();
        let (vectors, rank) = with_field!(ring, |f| {
            let cols: Vec<_> = (0..qs).map(|c| f.import(&q.column(c))).collect();
            let ker = kernel_of(f, q.rows(), &cols);
            let r = rank_of(f, q.rows(), cols);
            (ker.iter().map(|v| f.export(v)).collect::<Vec<Column>>(), r)
        });
        let mut generators = Vec::with_capacity(vectors.len());
        for v in vectors {
            let mut acc: Column = Vec::new();
            for (k, x) in v {
                let l = self.source.lift(k)?;
                let scaled: Column = l.iter().map(|(r, y)| (*r, &x * y)).collect();
                acc = merge_add(&acc, &scaled);
            }
            generators.push(acc);
        }
        Ok(Kernel {
            generators,
            invariants: Invariants::Field { dim: qs - rank },
        })
    }

    fn integer_kernel(&self) -> Result<Kernel> {
        let na = self.source.ambient_rank();
        let mut cols: Vec<Vec<(usize, BigInt)>> = (0..na).map(|c| integer_column(&self.matrix.column(c))).collect();
        let trels = self.target.relations();
        cols.extend((0..trels.cols()).map(|c| integer_column(&trels.column(c))));
        let full = integer_kernel(self.target.ambient_rank(), &cols);
        let mut pre = Lattice::new(na);
        for b in full.basis_vectors() {
            pre.insert(b.iter().filter(|(i, _)| *i < na).cloned().collect());
        }
        let srels = self.source.relations();
        for c in 0..srels.cols() {
            pre.insert(integer_column(&srels.column(c)));
        }
        // K / L_s: express the source relation lattice in the basis of K
        let ls = Lattice::from_matrix(srels)?;
        let k = pre.rank();
        let mut coeff_cols = Vec::new();
        for b in ls.basis_vectors() {
            let c = pre.coefficients(b.clone()).expect("relations lie in the preimage");
            coeff_cols.push(
                c.into_iter()
                    .enumerate()
                    .filter(|(_, x)| !num_traits::Zero::is_zero(x))
                    .map(|(i, x)| (i, Scalar::Integer(x)))
                    .collect(),
            );
        }
        let cm = Matrix::from_columns(RingSpec::Integer, k, coeff_cols)?;
        let factors = smith_form(&cm, false)?.factors;
        Ok(Kernel {
            generators: pre.basis_vectors().map(|b| int_to_column(b.clone())).collect(),
            invariants: Invariants::from_factors(k, &factors),
        })
    }
}

pub(crate) fn merge_add(a: &[(usize, Scalar)], b: &[(usize, Scalar)]) -> Column {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push(b[j].clone());
            j += 1;
        } else {
            let s = &a[i].1 + &b[j].1;
            if !s.is_zero() {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub(crate) fn merge_sub(a: &[(usize, Scalar)], b: &[(usize, Scalar)]) -> Column {
    let nb: Column = b.iter().map(|(r, x)| (*r, -x)).collect();
    merge_add(a, &nb)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cokernel_examples() {
        let z = RingSpec::Integer;
        let m = PresentedModule::new(Matrix::from_i64_rows(z, &[vec![2]]));
        assert_eq!(
            *m.invariants(),
            Invariants::Integer {
                free_rank: 0,
                torsion: vec![BigInt::from(2)]
            }
        );
        assert_eq!(PresentedModule::free(RingSpec::Prime(5), 4).rank(), 4);
        let q = RingSpec::Rational;
        let m = PresentedModule::new(Matrix::from_i64_rows(q, &[vec![1, 0, 1], vec![0, 1, 1], vec![0, 0, 0]]));
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn isomorphism_examples() {
        let z = RingSpec::Integer;
        let f = PresentedModule::free(z, 1);
        let two = ModuleMap::new(f.clone(), f.clone(), Matrix::from_i64_rows(z, &[vec![2]])).unwrap();
        assert!(!two.is_isomorphism().unwrap().isomorphism);
        let q2 = PresentedModule::free(RingSpec::Rational, 2);
        let m = Matrix::from_i64_rows(RingSpec::Rational, &[vec![1, 1], vec![0, 1]]);
        assert!(ModuleMap::new(q2.clone(), q2.clone(), m).unwrap().is_isomorphism().unwrap().isomorphism);
        assert!(ModuleMap::identity(&f).is_isomorphism().unwrap().isomorphism);
    }

    #[test]
    fn integer_quotient_coordinates() {
        let z = RingSpec::Integer;
        // Z^2 / <(2,1)> ≅ Z
        let m = PresentedModule::new(Matrix::from_i64_rows(z, &[vec![2], vec![1]]));
        assert_eq!(m.quotient_rank().unwrap(), 1);
        let l = m.lift(0).unwrap();
        assert_eq!(m.project(&l).unwrap(), vec![(0, z.one())]);
        assert!(m.project(&[(0, z.from_i64(2)), (1, z.one())]).unwrap().is_empty());
        let t = PresentedModule::new(Matrix::from_i64_rows(z, &[vec![2]]));
        assert!(t.quotient_rank().is_err());
    }

    #[test]
    fn kernels() {
        let z = RingSpec::Integer;
        // Z/4 --2--> Z/4 has kernel Z/2
        let m = PresentedModule::new(Matrix::from_i64_rows(z, &[vec![4]]));
        let f = ModuleMap::new(m.clone(), m.clone(), Matrix::from_i64_rows(z, &[vec![2]])).unwrap();
        assert!(f.is_well_defined());
        assert_eq!(f.kernel().unwrap().invariants.torsion(), &[BigInt::from(2)]);
        let q = RingSpec::Rational;
        let s = PresentedModule::free(q, 2);
        let t = PresentedModule::free(q, 1);
        let g = ModuleMap::new(s, t, Matrix::from_i64_rows(q, &[vec![1, 1]])).unwrap();
        assert_eq!(g.kernel().unwrap().invariants, Invariants::Field { dim: 1 });
    }
}
