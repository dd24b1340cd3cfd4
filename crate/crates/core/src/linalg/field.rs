//! Elimination over 𝔽_p (machine residues) and ℚ (big rationals).

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::{Column, Matrix};
use super::ring::{mul_mod, pow_mod, RingSpec, Scalar};

pub(crate) type SparseVec<E> = Vec<(usize, E)>;

pub(crate) trait Field: Clone + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_scalar(&self, s: &Scalar) -> Self::Elem;
    fn to_scalar(&self, e: &Self::Elem) -> Scalar;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn import(&self, col: &[(usize, Scalar)]) -> SparseVec<Self::Elem> {
        col.iter()
            .map(|(r, v)| (*r, self.from_scalar(v)))
            .filter(|(_, v)| !self.is_zero(v))
            .collect()
    }

    fn export(&self, v: &[(usize, Self::Elem)]) -> Column {
        v.iter().map(|(r, e)| (*r, self.to_scalar(e))).collect()
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        PrimeField { p }
    }
}

impl Field for PrimeField {
    type Elem = u64;
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        pow_mod(*a, self.p - 2, self.p)
    }
    fn from_scalar(&self, s: &Scalar) -> u64 {
        match s {
            Scalar::Residue { value, modulus } => {
                assert_eq!(*modulus, self.p, "residue from a different field");
                *value
            }
            other => match other.convert(RingSpec::Prime(self.p)).expect("reducible mod p") {
                Scalar::Residue { value, .. } => value,
                _ => unreachable!(),
            },
        }
    }
    fn to_scalar(&self, e: &u64) -> Scalar {
        Scalar::Residue {
            value: *e,
            modulus: self.p,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct RationalField;

impl Field for RationalField {
    type Elem = BigRational;
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn from_scalar(&self, s: &Scalar) -> BigRational {
        match s {
            Scalar::Rational(q) => q.clone(),
            Scalar::Integer(z) => BigRational::from_integer(z.clone()),
            Scalar::Residue { .. } => panic!("residues have no rational value"),
        }
    }
    fn to_scalar(&self, e: &BigRational) -> Scalar {
        Scalar::Rational(e.clone())
    }
}

/// Runs `$body` with `$f` bound to the elimination field of `$ring`:
/// 𝔽_p for prime rings, ℚ for ℚ and for ℤ (its fraction field).
macro_rules! with_field {
    ($ring:expr, |$f:ident| $body:expr) => {{
        match $ring {
            $crate::linalg::RingSpec::Prime(p) => {
                let $f = $crate::linalg::field::PrimeField::new(p);
                $body
            }
            _ => {
                let $f = $crate::linalg::field::RationalField;
                $body
            }
        }
    }};
}
pub(crate) use with_field;

/// Semi-echelon basis of a subspace of `F^dim`. Each basis vector has
/// leading coefficient 1 at a distinct row, all its other entries below it.
#[derive(Clone, Debug)]
pub(crate) struct Echelon<F: Field> {
    field: F,
    dim: usize,
    basis: Vec<SparseVec<F::Elem>>,
    pivot: Vec<Option<usize>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, dim: usize) -> Self {
        Echelon {
            field,
            dim,
            basis: Vec::new(),
            pivot: vec![None; dim],
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec<F::Elem>] {
        &self.basis
    }

    /// Normal form of `v` modulo the span: zero on every pivot row.
    pub fn reduce(&self, v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        if v.iter().all(|(r, _)| self.pivot[*r].is_none()) {
            return v;
        }
        let mut w: BTreeMap<usize, F::Elem> = v.into_iter().collect();
        let mut cursor = 0;
        loop {
            let next = w.range(cursor..).next().map(|(r, _)| *r);
            let Some(r) = next else { break };
            cursor = r + 1;
            if let Some(b) = self.pivot[r] {
                let c = w.remove(&r).expect("present");
                for (row, val) in self.basis[b].iter().skip(1) {
                    let term = f.mul(&c, val);
                    match w.get_mut(row) {
                        Some(e) => {
                            *e = f.sub(e, &term);
                            if f.is_zero(e) {
                                w.remove(row);
                            }
                        }
                        None => {
                            w.insert(*row, f.neg(&term));
                        }
                    }
                }
            }
        }
        w.into_iter().collect()
    }

    /// Adds an already reduced nonzero vector to the basis.
    fn push_reduced(&mut self, w: SparseVec<F::Elem>) {
        let lead = w[0].0;
        let inv = self.field.inv(&w[0].1);
        let normalized: SparseVec<F::Elem> = w.into_iter().map(|(r, e)| (r, self.field.mul(&e, &inv))).collect();
        self.pivot[lead] = Some(self.basis.len());
        self.basis.push(normalized);
    }

    /// Inserts `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: SparseVec<F::Elem>) -> bool {
        let w = self.reduce(v);
        if w.is_empty() {
            false
        } else {
            self.push_reduced(w);
            true
        }
    }

    pub fn contains(&self, v: SparseVec<F::Elem>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Rows without a pivot, increasing: they index a basis of the quotient.
    pub fn free_rows(&self) -> Vec<usize> {
        (0..self.dim).filter(|r| self.pivot[*r].is_none()).collect()
    }
}

pub(crate) fn rank_of<F: Field>(field: F, rows: usize, cols: impl IntoIterator<Item = SparseVec<F::Elem>>) -> usize {
    let mut e = Echelon::new(field, rows);
    for c in cols {
        e.insert(c);
    }
    e.rank()
}

/// Basis of `{x : Σ x_j col_j = 0}`, as sparse vectors indexed by column.
pub(crate) fn kernel_of<F: Field>(field: F, rows: usize, cols: &[SparseVec<F::Elem>]) -> Vec<SparseVec<F::Elem>> {
    let n = cols.len();
    let mut e = Echelon::new(field.clone(), rows + n);
    let mut out = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        let mut v = c.clone();
        v.push((rows + j, field.one()));
        let w = e.reduce(v);
        if w[0].0 >= rows {
            out.push(w.into_iter().map(|(r, x)| (r - rows, x)).collect());
        } else {
            e.push_reduced(w);
        }
    }
    out
}

pub(crate) fn matrix_rank_over_field<F: Field>(field: F, m: &Matrix) -> usize {
    let f2 = field.clone();
    rank_of(field, m.rows(), (0..m.cols()).map(|c| f2.import(&m.column(c))))
}

/// Rank of a ℚ or ℤ matrix after reduction mod `p`; `None` when some entry
/// has a denominator divisible by `p`.
pub fn rank_mod_p(m: &Matrix, p: u64) -> Option<usize> {
    let reduced = m.convert(RingSpec::Prime(p)).ok()?;
    Some(matrix_rank_over_field(PrimeField::new(p), &reduced))
}

pub(crate) fn integer_column(col: &[(usize, Scalar)]) -> SparseVec<BigInt> {
    col.iter().map(|(r, v)| (*r, v.to_bigint().expect("integral entry"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_rank_over_f7() {
        let f = PrimeField::new(7);
        // columns (1,2), (2,4), (0,1)
        let cols = vec![vec![(0, 1), (1, 2)], vec![(0, 2), (1, 4)], vec![(1, 1)]];
        assert_eq!(rank_of(f, 2, cols.clone()), 2);
        let k = kernel_of(f, 2, &cols);
        assert_eq!(k.len(), 1);
        // col1 - 2*col0 = 0
        assert_eq!(k[0], vec![(0, 5), (1, 1)]);
    }

    #[test]
    fn normal_forms_are_canonical() {
        let q = RationalField;
        let mut e = Echelon::new(q, 3);
        let r = |v: i64| BigRational::from_integer(v.into());
        e.insert(vec![(0, r(2)), (1, r(2))]);
        let a = e.reduce(vec![(0, r(1))]);
        let b = e.reduce(vec![(1, r(-1))]);
        assert_eq!(a, b);
        assert_eq!(e.free_rows(), vec![1, 2]);
    }
}
