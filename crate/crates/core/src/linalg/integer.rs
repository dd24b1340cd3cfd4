//! Integer elimination: fraction-free rank, Smith normal form with optional
//! unimodular transforms, and Hermite-style canonical bases of lattices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::field::SparseVec;
use super::matrix::Matrix;
use super::ring::{RingSpec, Scalar};
use crate::error::{Error, Result};

type IntVec = SparseVec<BigInt>;

fn to_map(v: IntVec) -> BTreeMap<usize, BigInt> {
    v.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

/// `w -= q * b` on a sparse map.
fn sub_multiple(w: &mut BTreeMap<usize, BigInt>, q: &BigInt, b: &[(usize, BigInt)]) {
    for (r, x) in b {
        let e = w.entry(*r).or_insert_with(BigInt::zero);
        *e -= q * x;
        if e.is_zero() {
            w.remove(r);
        }
    }
}

fn content(v: &BTreeMap<usize, BigInt>) -> BigInt {
    v.values().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Integer columns of a ℚ or ℤ matrix, each column scaled by the lcm of its
/// denominators (which preserves rank and column span over ℚ).
pub(crate) fn cleared_columns(m: &Matrix) -> Vec<IntVec> {
    (0..m.cols())
        .map(|c| {
            let col = m.column(c);
            let lcm = col.iter().fold(BigInt::one(), |l, (_, v)| match v {
                Scalar::Rational(q) => l.lcm(q.denom()),
                _ => l,
            });
            col.iter()
                .map(|(r, v)| {
                    let z = match v {
                        Scalar::Rational(q) => q.numer() * (&lcm / q.denom()),
                        other => other.to_bigint().expect("integral"),
                    };
                    (*r, z)
                })
                .collect()
        })
        .collect()
}

/// Rank over ℚ by fraction-free elimination. Every stored pivot vector is
/// primitive (content 1), which keeps entries from growing between steps.
pub(crate) fn fraction_free_rank(rows: usize, cols: Vec<IntVec>) -> usize {
    let mut pivots: Vec<Option<IntVec>> = vec![None; rows];
    let mut rank = 0;
    for v in cols {
        let mut w = to_map(v);
        while let Some((&r, _)) = w.iter().next() {
            match &pivots[r] {
                None => {
                    let g = content(&w);
                    let prim: IntVec = w.into_iter().map(|(i, x)| (i, x / &g)).collect();
                    pivots[r] = Some(prim);
                    rank += 1;
                    break;
                }
                Some(b) => {
                    let a = &b[0].1;
                    let c = w[&r].clone();
                    let g = a.gcd(&c);
                    let (fa, fc) = (a / &g, &c / &g);
                    for x in w.values_mut() {
                        *x *= &fa;
                    }
                    sub_multiple(&mut w, &fc, b);
                    let g = content(&w);
                    if !g.is_zero() && !g.is_one() {
                        for x in w.values_mut() {
                            *x /= &g;
                        }
                    }
                }
            }
        }
    }
    rank
}

/// A sublattice of ℤ^dim with a triangular basis: one vector per pivot row,
/// leading (lowest-index) entry positive. `canonicalize` reduces every
/// vector's entries at later pivot rows into `[0, lead)`, giving the column
/// Hermite normal form, a canonical invariant of the lattice.
#[derive(Clone, Debug)]
pub struct Lattice {
    dim: usize,
    basis: BTreeMap<usize, IntVec>,
    canonical: bool,
}

impl Lattice {
    pub fn new(dim: usize) -> Self {
        Lattice {
            dim,
            basis: BTreeMap::new(),
            canonical: true,
        }
    }

    /// Lattice spanned by the columns of a ℤ matrix (ℚ matrices with
    /// integral entries are accepted too).
    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        if m.ring() == RingSpec::Rational {
            for c in 0..m.cols() {
                if m.column(c).iter().any(|(_, v)| v.to_bigint().is_none()) {
                    return Err(Error::Unsupported("lattice of a non-integral matrix".into()));
                }
            }
        } else if m.ring() != RingSpec::Integer {
            return Err(Error::RingMismatch {
                expected: RingSpec::Integer,
                found: m.ring(),
            });
        }
        let mut l = Lattice::new(m.rows());
        for c in 0..m.cols() {
            l.insert(super::field::integer_column(&m.column(c)));
        }
        Ok(l)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn insert(&mut self, v: IntVec) {
        let mut w = to_map(v);
        while let Some((&r, _)) = w.iter().next() {
            let Some(b) = self.basis.get(&r) else {
                if w[&r].is_negative() {
                    for x in w.values_mut() {
                        *x = -&*x;
                    }
                }
                self.basis.insert(r, w.into_iter().collect());
                self.canonical = false;
                return;
            };
            let a = b[0].1.clone();
            let c = w[&r].clone();
            if c.is_multiple_of(&a) {
                let q = &c / &a;
                sub_multiple(&mut w, &q, b);
                continue;
            }
            let e = a.extended_gcd(&c);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let mut nb: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (i, x) in b {
                *nb.entry(*i).or_insert_with(BigInt::zero) += &s * x;
            }
            for (i, x) in &w {
                *nb.entry(*i).or_insert_with(BigInt::zero) += &t * x;
            }
            nb.retain(|_, x| !x.is_zero());
            let (ca, cc) = (&c / &g, &a / &g);
            let mut rest: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (i, x) in b {
                *rest.entry(*i).or_insert_with(BigInt::zero) += &ca * x;
            }
            for (i, x) in &w {
                *rest.entry(*i).or_insert_with(BigInt::zero) -= &cc * x;
            }
            rest.retain(|_, x| !x.is_zero());
            if nb[&r].is_negative() {
                for x in nb.values_mut() {
                    *x = -&*x;
                }
            }
            self.basis.insert(r, nb.into_iter().collect());
            self.canonical = false;
            w = rest;
        }
    }

    pub fn canonicalize(&mut self) {
        if self.canonical {
            return;
        }
        let pivots: Vec<usize> = self.basis.keys().copied().collect();
        for (k, &r) in pivots.iter().enumerate() {
            let mut w = to_map(self.basis[&r].clone());
            for &s in &pivots[k + 1..] {
                let Some(x) = w.get(&s) else { continue };
                let b = &self.basis[&s];
                let q = x.div_floor(&b[0].1);
                if !q.is_zero() {
                    sub_multiple(&mut w, &q, b);
                }
            }
            self.basis.insert(r, w.into_iter().collect());
        }
        self.canonical = true;
    }

    /// Canonical representative of `v` modulo the lattice: entries at pivot
    /// rows reduced into `[0, lead)`.
    pub fn reduce(&self, v: IntVec) -> IntVec {
        let mut w = to_map(v);
        for (&r, b) in &self.basis {
            if let Some(x) = w.get(&r) {
                let q = x.div_floor(&b[0].1);
                if !q.is_zero() {
                    sub_multiple(&mut w, &q, b);
                }
            }
        }
        w.into_iter().collect()
    }

    pub fn contains(&self, v: IntVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.values().all(|b| self.contains(b.clone()))
    }

    /// Whether the lattice is all of ℤ^dim.
    pub fn is_full(&self) -> bool {
        self.rank() == self.dim && self.basis.values().all(|b| b[0].1.is_one())
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.basis.keys().copied()
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &IntVec> {
        self.basis.values()
    }

    pub fn basis_matrix(&self) -> Matrix {
        let cols = self
            .basis
            .values()
            .map(|b| b.iter().map(|(r, x)| (*r, Scalar::Integer(x.clone()))).collect())
            .collect();
        Matrix::from_normalized_columns(RingSpec::Integer, self.dim, cols)
    }

    /// Solves `basis · c = v` for `v` in the lattice (coefficients in pivot order).
    pub fn coefficients(&self, v: IntVec) -> Option<Vec<BigInt>> {
        let mut w = to_map(v);
        let mut out = Vec::with_capacity(self.rank());
        for (&r, b) in &self.basis {
            let c = match w.get(&r) {
                Some(x) => {
                    if !x.is_multiple_of(&b[0].1) {
                        return None;
                    }
                    x / &b[0].1
                }
                None => BigInt::zero(),
            };
            if !c.is_zero() {
                sub_multiple(&mut w, &c, b);
            }
            out.push(c);
        }
        w.is_empty().then_some(out)
    }
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        if self.dim != other.dim || self.rank() != other.rank() {
            return false;
        }
        let mut a = self.clone();
        let mut b = other.clone();
        a.canonicalize();
        b.canonicalize();
        a.basis == b.basis
    }
}

impl Eq for Lattice {}

/// Integer kernel of a matrix given by integer columns: a basis of
/// `{x ∈ ℤ^cols : Σ x_j col_j = 0}`.
pub(crate) fn integer_kernel(rows: usize, cols: &[IntVec]) -> Lattice {
    let n = cols.len();
    let mut aug = Lattice::new(rows + n);
    for (j, c) in cols.iter().enumerate() {
        let mut v = c.clone();
        v.push((rows + j, BigInt::one()));
        aug.insert(v);
    }
    let mut ker = Lattice::new(n);
    for (&r, b) in &aug.basis {
        if r >= rows {
            ker.insert(b.iter().map(|(i, x)| (i - rows, x.clone())).collect());
        }
    }
    ker
}

/// Smith normal form `left · A · right = diag(factors)` over ℤ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    /// Nonzero invariant factors, positive, each dividing the next.
    #[serde(with = "super::serde_int::list")]
    pub factors: Vec<BigInt>,
    #[serde(skip)]
    pub left: Option<Matrix>,
    #[serde(skip)]
    pub left_inverse: Option<Matrix>,
    #[serde(skip)]
    pub right: Option<Matrix>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Factors different from 1.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn diagonal(&self) -> Matrix {
        let cols = (0..self.cols)
            .map(|c| match self.factors.get(c) {
                Some(d) => vec![(c, Scalar::Integer(d.clone()))],
                None => Vec::new(),
            })
            .collect();
        Matrix::from_normalized_columns(RingSpec::Integer, self.rows, cols)
    }

    /// Checks `left · a · right = diagonal` exactly; false without transforms.
    pub fn verify(&self, a: &Matrix) -> bool {
        let (Some(l), Some(r)) = (&self.left, &self.right) else {
            return false;
        };
        match l.mul(a).and_then(|la| la.mul(r)) {
            Ok(d) => d == self.diagonal(),
            Err(_) => false,
        }
    }
}

struct Dense {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    uinv: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn axpy_row(m: &mut [Vec<BigInt>], dst: usize, q: &BigInt, src: usize) {
    // row dst -= q row src
    let (s, d) = if src < dst {
        let (lo, hi) = m.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    };
    for (x, y) in d.iter_mut().zip(s) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn axpy_col(m: &mut [Vec<BigInt>], dst: usize, q: &BigInt, src: usize) {
    // col dst -= q col src
    for row in m.iter_mut() {
        if !row[src].is_zero() {
            let t = q * &row[src];
            row[dst] -= t;
        }
    }
}

impl Dense {
    fn row_sub(&mut self, dst: usize, q: &BigInt, src: usize) {
        axpy_row(&mut self.a, dst, q, src);
        if let Some(u) = &mut self.u {
            axpy_row(u, dst, q, src);
        }
        if let Some(ui) = &mut self.uinv {
            // U⁻¹ ← U⁻¹ E⁻¹: column src += q column dst
            axpy_col(ui, src, &-q, dst);
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
        if let Some(ui) = &mut self.uinv {
            for row in ui.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn row_negate(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in u[i].iter_mut() {
                *x = -&*x;
            }
        }
        if let Some(ui) = &mut self.uinv {
            for row in ui.iter_mut() {
                row[i] = -&row[i];
            }
        }
    }

    fn col_sub(&mut self, dst: usize, q: &BigInt, src: usize) {
        axpy_col(&mut self.a, dst, q, src);
        if let Some(v) = &mut self.v {
            axpy_col(v, dst, q, src);
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }
}

fn dense_to_matrix(m: Vec<Vec<BigInt>>, rows: usize, cols: usize) -> Matrix {
    let mut columns: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); cols];
    for (r, row) in m.into_iter().enumerate() {
        for (c, x) in row.into_iter().enumerate() {
            if !x.is_zero() {
                columns[c].push((r, Scalar::Integer(x)));
            }
        }
    }
    Matrix::from_normalized_columns(RingSpec::Integer, rows, columns)
}

/// Smith normal form of an integer matrix, pivoting on the entry of least
/// absolute value. Transforms are computed only when requested.
pub fn smith_form(m: &Matrix, transforms: bool) -> Result<SmithForm> {
    if m.ring() != RingSpec::Integer {
        return Err(Error::RingMismatch {
            expected: RingSpec::Integer,
            found: m.ring(),
        });
    }
    let (rows, cols) = (m.rows(), m.cols());
    let a: Vec<Vec<BigInt>> = m
        .to_dense_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|s| s.to_bigint().expect("integer")).collect())
        .collect();
    let mut st = Dense {
        a,
        u: transforms.then(|| identity(rows)),
        uinv: transforms.then(|| identity(rows)),
        v: transforms.then(|| identity(cols)),
    };
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // least nonzero |entry| in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &st.a[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < st.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        st.row_swap(t, bi);
        st.col_swap(t, bj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !st.a[i][t].is_zero() {
                    let q = st.a[i][t].div_floor(&st.a[t][t]);
                    st.row_sub(i, &q, t);
                    if !st.a[i][t].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !st.a[t][j].is_zero() {
                    let q = st.a[t][j].div_floor(&st.a[t][t]);
                    st.col_sub(j, &q, t);
                    if !st.a[t][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // move a smaller remainder into the pivot slot
                let mut best = (t, t);
                for i in t..rows {
                    let x = &st.a[i][t];
                    if !x.is_zero() && x.abs() < st.a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t..cols {
                    let x = &st.a[t][j];
                    if !x.is_zero() && x.abs() < st.a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                st.row_swap(t, best.0);
                st.col_swap(t, best.1);
                continue;
            }
            // divisibility of the trailing block by the pivot
            let p = st.a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !st.a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    st.row_sub(t, &BigInt::from(-1), i);
                }
                None => break,
            }
        }
        if st.a[t][t].is_negative() {
            st.row_negate(t);
        }
        factors.push(st.a[t][t].clone());
        t += 1;
    }
    Ok(SmithForm {
        rows,
        cols,
        factors,
        left: st.u.map(|u| dense_to_matrix(u, rows, rows)),
        left_inverse: st.uinv.map(|u| dense_to_matrix(u, rows, rows)),
        right: st.v.map(|v| dense_to_matrix(v, cols, cols)),
    })
}

/// Invariant factors of `ℤ^dim / L` for a lattice `L` (SNF of its basis).
pub(crate) fn lattice_factors(l: &Lattice) -> Vec<BigInt> {
    smith_form(&l.basis_matrix(), false).expect("integer matrix").factors
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_i64_rows(RingSpec::Integer, rows)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn smith_examples() {
        let s = smith_form(&z(&[vec![2, 0], vec![0, 3]]), true).unwrap();
        assert_eq!(s.factors, ints(&[1, 6]));
        assert!(s.verify(&z(&[vec![2, 0], vec![0, 3]])));
        assert!(smith_form(&z(&[vec![0, 0], vec![0, 0]]), false).unwrap().factors.is_empty());
        assert_eq!(smith_form(&z(&[vec![2, 0], vec![0, 2]]), false).unwrap().factors, ints(&[2, 2]));
        let a = z(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith_form(&a, true).unwrap();
        assert_eq!(s.factors, ints(&[2, 6, 12]));
        assert!(s.verify(&a));
        let ui = s.left_inverse.as_ref().unwrap();
        assert_eq!(s.left.as_ref().unwrap().mul(ui).unwrap(), Matrix::identity(RingSpec::Integer, 3));
    }

    #[test]
    fn lattice_equality_and_membership() {
        let a = Lattice::from_matrix(&z(&[vec![2, 0], vec![1, 3]])).unwrap();
        let b = Lattice::from_matrix(&z(&[vec![2, 2], vec![1, 4]])).unwrap();
        assert_eq!(a, b);
        assert!(a.contains(vec![(0, BigInt::from(4)), (1, BigInt::from(5))]));
        assert!(!a.contains(vec![(0, BigInt::from(1))]));
        assert!(!a.is_full());
        assert!(Lattice::from_matrix(&z(&[vec![2, 3]])).unwrap().is_full());
    }

    #[test]
    fn kernel_over_z() {
        let cols = vec![vec![(0, BigInt::from(2))], vec![(0, BigInt::from(3))]];
        let k = integer_kernel(1, &cols);
        assert_eq!(k.rank(), 1);
        assert!(k.contains(vec![(0, BigInt::from(3)), (1, BigInt::from(-2))]));
    }

    #[test]
    fn fraction_free_rank_small() {
        let m = z(&[vec![2, 4], vec![1, 2]]);
        assert_eq!(fraction_free_rank(2, cleared_columns(&m)), 1);
        let m = z(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]);
        assert_eq!(fraction_free_rank(3, cleared_columns(&m)), 3);
    }
}
