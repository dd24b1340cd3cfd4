//! Multigraded diagonal coinvariant algebras `R^{(r)}_J(n)` by direct linear
//! algebra: polynomial slices, invariant subspaces and the ideal they generate.

use std::collections::HashMap;

use serde::Serialize;

use crate::dims::DimensionTable;
use crate::error::{Error, Result};
use crate::fi::Injection;
use crate::linalg::field::{kernel_of, with_field, Field};
use crate::linalg::{Column, Matrix, RingSpec, Span};

/// `r` groups of variables and a multidegree `J = (j_1, …, j_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MultiIndex {
    pub r: usize,
    pub j: Vec<usize>,
}

impl MultiIndex {
    pub fn new(j: Vec<usize>) -> Result<Self> {
        if j.is_empty() {
            return Err(Error::SizeMismatch("a multi-index needs r >= 1".into()));
        }
        Ok(MultiIndex { r: j.len(), j })
    }

    pub fn total(&self) -> usize {
        self.j.iter().sum()
    }

    /// All `J'` with `0 < J' ≤ J` componentwise.
    fn positive_parts(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for &ji in &self.j {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=ji).map(move |x| {
                        let mut v = prefix.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        out.retain(|v| v.iter().any(|&x| x > 0));
        out
    }
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for rest in compositions(total - first, parts - 1) {
            let mut v = Vec::with_capacity(parts);
            v.push(first);
            v.extend(rest);
            out.push(v);
        }
    }
    out
}

/// Monomials of multidegree `J` in `r × n` variables `x_{(i,t)}`, as
/// row-major exponent matrices in lexicographic order.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    pub n: usize,
    pub j: Vec<usize>,
    pub monomials: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl MonomialBasis {
    pub fn new(j: &[usize], n: usize) -> Self {
        let mut monomials: Vec<Vec<usize>> = vec![Vec::new()];
        for &ji in j {
            let rows = compositions(ji, n);
            monomials = monomials
                .iter()
                .flat_map(|prefix| {
                    rows.iter().map(move |row| {
                        let mut v = prefix.clone();
                        v.extend_from_slice(row);
                        v
                    })
                })
                .collect();
        }
        let index = monomials.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
        MonomialBasis {
            n,
            j: j.to_vec(),
            monomials,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index(&self, exponents: &[usize]) -> usize {
        self.index[exponents]
    }

    /// Column permutation `x_{(i,t)} ↦ x_{(i,σ(t))}` on monomial indices.
    fn permute(&self, sigma: &[usize]) -> Vec<usize> {
        let n = self.n;
        self.monomials
            .iter()
            .map(|e| {
                let mut out = vec![0; e.len()];
                for (k, &x) in e.iter().enumerate() {
                    let (i, t) = (k / n, k % n);
                    out[i * n + sigma[t] - 1] = x;
                }
                self.index(&out)
            })
            .collect()
    }
}

/// Which pair of generators of `S_n` defines the invariants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorPair {
    /// `(1 2)` and `(1 2 … n)`.
    Standard,
    /// `(n−1 n)` and `(n n−1 … 1)`.
    Alternative,
}

fn generators(n: usize, pair: GeneratorPair) -> Vec<Vec<usize>> {
    if n < 2 {
        return Vec::new();
    }
    let mut t: Vec<usize> = (1..=n).collect();
    let mut c: Vec<usize> = (1..=n).collect();
    match pair {
        GeneratorPair::Standard => {
            t.swap(0, 1);
            c.rotate_left(1);
        }
        GeneratorPair::Alternative => {
            t.swap(n - 2, n - 1);
            c.rotate_right(1);
        }
    }
    vec![t, c]
}

fn require_field(ring: RingSpec) -> Result<()> {
    if ring.is_field() {
        Ok(())
    } else {
        Err(Error::Unsupported(
            "coinvariant computations run over a field; use Q or F_p one prime at a time".into(),
        ))
    }
}

/// Basis of the `S_n`-invariants in `Poly_J(n)`: the joint kernel of `σ − id`
/// over the chosen generators.
pub fn invariant_basis(j: &[usize], n: usize, ring: RingSpec, pair: GeneratorPair) -> Result<Vec<Column>> {
    require_field(ring)?;
    let basis = MonomialBasis::new(j, n);
    let dim = basis.len();
    let perms: Vec<Vec<usize>> = generators(n, pair).iter().map(|s| basis.permute(s)).collect();
    Ok(with_field!(ring, |f| {
        let cols: Vec<_> = (0..dim)
            .map(|k| {
                let mut entries = Vec::new();
                for (b, perm) in perms.iter().enumerate() {
                    if perm[k] != k {
                        entries.push((b * dim + perm[k], f.one()));
                        entries.push((b * dim + k, f.neg(&f.one())));
                    }
                }
                entries.sort_by_key(|e| e.0);
                entries
            })
            .collect();
        kernel_of(f, perms.len() * dim, &cols).into_iter().map(|v| f.export(&v)).collect()
    }))
}

#[derive(Clone, Debug, Serialize)]
pub struct CoinvariantRow {
    pub n: usize,
    pub poly_dim: usize,
    pub ideal_dim: usize,
    pub dim: usize,
}

/// The degree-`J` piece of `R^{(r)}_J(n)` with its ideal span.
pub struct CoinvariantSlice {
    pub spec: MultiIndex,
    pub n: usize,
    pub ring: RingSpec,
    pub basis: MonomialBasis,
    pub ideal: Span,
    /// Monomial indices outside the ideal's pivots; they form a basis of the quotient.
    pub standard: Vec<usize>,
}

impl CoinvariantSlice {
    pub fn new(spec: &MultiIndex, n: usize, ring: RingSpec, pair: GeneratorPair) -> Result<Self> {
        require_field(ring)?;
        let basis = MonomialBasis::new(&spec.j, n);
        let mut ideal = Span::new(ring, basis.len());
        let one = ring.one();
        for jp in spec.positive_parts() {
            let inv = invariant_basis(&jp, n, ring, pair)?;
            if inv.is_empty() {
                continue;
            }
            let inv_basis = MonomialBasis::new(&jp, n);
            let rest: Vec<usize> = spec.j.iter().zip(&jp).map(|(a, b)| a - b).collect();
            let cofactors = MonomialBasis::new(&rest, n);
            for v in &inv {
                for u in &cofactors.monomials {
                    let mut col: Column = v
                        .iter()
                        .map(|(k, c)| {
                            let e: Vec<usize> = inv_basis.monomials[*k].iter().zip(u).map(|(a, b)| a + b).collect();
                            (basis.index(&e), &c.clone() * &one)
                        })
                        .collect();
                    col.sort_by_key(|e| e.0);
                    ideal.insert(&col);
                }
            }
        }
        let standard = ideal.free_rows().expect("field span");
        Ok(CoinvariantSlice {
            spec: spec.clone(),
            n,
            ring,
            basis,
            ideal,
            standard,
        })
    }

    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    pub fn row(&self) -> CoinvariantRow {
        CoinvariantRow {
            n: self.n,
            poly_dim: self.basis.len(),
            ideal_dim: self.ideal.rank(),
            dim: self.dim(),
        }
    }

    /// Coordinates in the standard-monomial basis of the class of `v`.
    fn coordinates(&self, v: &[(usize, crate::linalg::Scalar)]) -> Column {
        let nf = self.ideal.reduce(v);
        nf.into_iter()
            .map(|(r, x)| (self.standard.binary_search(&r).expect("normal form on standard monomials"), x))
            .collect()
    }
}

pub fn coinvariant_dim(spec: &MultiIndex, n: usize, ring: RingSpec) -> Result<CoinvariantRow> {
    Ok(CoinvariantSlice::new(spec, n, ring, GeneratorPair::Standard)?.row())
}

pub fn coinvariant_table(spec: &MultiIndex, range: std::ops::RangeInclusive<usize>, ring: RingSpec) -> Result<DimensionTable> {
    require_field(ring)?;
    let start = *range.start();
    let dims = range
        .map(|n| coinvariant_dim(spec, n, ring).map(|r| r.dim))
        .collect::<Result<Vec<_>>>()?;
    Ok(DimensionTable::from_values(ring, start, &dims))
}

/// `f^*: Poly_J(n) → Poly_J(m)` on one monomial: `x_{(i,t)} ↦ x_{(i,f^{-1}(t))}`,
/// and zero when some variable with `t ∉ im f` occurs.
fn pull_back(e: &[usize], f: &Injection) -> Option<Vec<usize>> {
    let (m, n) = (f.source(), f.target());
    let rows = e.len() / n.max(1);
    let mut out = vec![0; rows * m];
    let mut used = 0;
    for i in 0..rows {
        for s in 1..=m {
            let x = e[i * n + f.apply(s) - 1];
            out[i * m + s - 1] = x;
            used += x;
        }
    }
    (used == e.iter().sum::<usize>()).then_some(out)
}

/// Matrix of `R_J(m)^∨ → R_J(n)^∨`, the transpose of `f^*: R_J(n) → R_J(m)` on
/// standard-monomial bases.
pub fn coinvariant_dual_map(spec: &MultiIndex, f: &Injection, ring: RingSpec) -> Result<Matrix> {
    let small = CoinvariantSlice::new(spec, f.source(), ring, GeneratorPair::Standard)?;
    let big = CoinvariantSlice::new(spec, f.target(), ring, GeneratorPair::Standard)?;
    dual_map_between(&small, &big, f)
}

pub fn dual_map_between(small: &CoinvariantSlice, big: &CoinvariantSlice, f: &Injection) -> Result<Matrix> {
    if small.n != f.source() || big.n != f.target() || small.spec != big.spec {
        return Err(Error::SizeMismatch("coinvariant slices do not match the injection".into()));
    }
    let ring = small.ring;
    let cols: Vec<Column> = big
        .standard
        .iter()
        .map(|&k| match pull_back(&big.basis.monomials[k], f) {
            Some(e) => small.coordinates(&[(small.basis.index(&e), ring.one())]),
            None => Vec::new(),
        })
        .collect();
    Ok(Matrix::from_columns(ring, small.dim(), cols)?.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let j1 = MultiIndex::new(vec![1]).unwrap();
        assert_eq!(coinvariant_dim(&j1, 3, RingSpec::Rational).unwrap().dim, 2);
        let j11 = MultiIndex::new(vec![1, 1]).unwrap();
        assert_eq!(coinvariant_dim(&j11, 2, RingSpec::Rational).unwrap().dim, 0);
        let j0 = MultiIndex::new(vec![0]).unwrap();
        assert_eq!(coinvariant_dim(&j0, 0, RingSpec::Prime(2)).unwrap().dim, 1);
        assert_eq!(coinvariant_dim(&j1, 0, RingSpec::Prime(2)).unwrap().dim, 0);
        assert!(coinvariant_dim(&j1, 2, RingSpec::Integer).is_err());
    }

    #[test]
    fn generators_are_permutations() {
        for pair in [GeneratorPair::Standard, GeneratorPair::Alternative] {
            for g in generators(4, pair) {
                let mut s = g.clone();
                s.sort_unstable();
                assert_eq!(s, vec![1, 2, 3, 4]);
            }
        }
        assert_eq!(generators(3, GeneratorPair::Standard)[1], vec![2, 3, 1]);
        assert_eq!(generators(3, GeneratorPair::Alternative)[1], vec![3, 1, 2]);
    }

    #[test]
    fn dual_map_shapes() {
        let j1 = MultiIndex::new(vec![1]).unwrap();
        let f = Injection::standard(1, 2).unwrap();
        let m = coinvariant_dual_map(&j1, &f, RingSpec::Rational).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 0));
        let id = Injection::identity(3);
        let m = coinvariant_dual_map(&MultiIndex::new(vec![2]).unwrap(), &id, RingSpec::Rational).unwrap();
        assert_eq!(m, Matrix::identity(RingSpec::Rational, 2));
    }
}
