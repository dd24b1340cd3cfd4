use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;

use super::ring::{RingSpec, Scalar};
use crate::error::{Error, Result};

/// A sparse column: `(row, value)` pairs, rows strictly increasing, values nonzero.
pub type Column = Vec<(usize, Scalar)>;

/// Matrix over one [`RingSpec`]. Stored as sparse columns; switches to a
/// dense column-major layout once more than half the entries are nonzero.
#[derive(Clone)]
pub struct Matrix {
    ring: RingSpec,
    rows: usize,
    cols: usize,
    storage: Storage,
}

#[derive(Clone)]
enum Storage {
    Sparse(Vec<Column>),
    Dense(Vec<Scalar>),
}

fn normalize_column(ring: RingSpec, rows: usize, mut col: Column) -> Result<Column> {
    col.sort_by_key(|(r, _)| *r);
    let mut out: Column = Vec::with_capacity(col.len());
    for (r, v) in col {
        if r >= rows {
            return Err(Error::SizeMismatch(format!("row index {r} out of range for {rows} rows")));
        }
        if v.ring() != ring {
            return Err(Error::RingMismatch {
                expected: ring,
                found: v.ring(),
            });
        }
        match out.last_mut() {
            Some((lr, lv)) if *lr == r => *lv = &*lv + &v,
            _ => out.push((r, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    Ok(out)
}

impl Matrix {
    pub fn zeros(ring: RingSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            ring,
            rows,
            cols,
            storage: Storage::Sparse(vec![Vec::new(); cols]),
        }
    }

    pub fn identity(ring: RingSpec, n: usize) -> Self {
        let cols = (0..n).map(|i| vec![(i, ring.one())]).collect();
        Matrix {
            ring,
            rows: n,
            cols: n,
            storage: Storage::Sparse(cols),
        }
        .settle()
    }

    pub fn from_columns(ring: RingSpec, rows: usize, columns: Vec<Column>) -> Result<Self> {
        let cols = columns.len();
        let columns = columns
            .into_iter()
            .map(|c| normalize_column(ring, rows, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            ring,
            rows,
            cols,
            storage: Storage::Sparse(columns),
        }
        .settle())
    }

    /// Builds from columns already sorted, merged and nonzero. Used on hot paths.
    pub(crate) fn from_normalized_columns(ring: RingSpec, rows: usize, columns: Vec<Column>) -> Self {
        debug_assert!(columns
            .iter()
            .all(|c| c.windows(2).all(|w| w[0].0 < w[1].0) && c.iter().all(|(r, v)| *r < rows && !v.is_zero())));
        Matrix {
            ring,
            rows,
            cols: columns.len(),
            storage: Storage::Sparse(columns),
        }
        .settle()
    }

    pub fn from_rows(ring: RingSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::SizeMismatch("ragged rows".into()));
        }
        let mut columns = vec![Vec::new(); ncols];
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                columns[j].push((i, v));
            }
        }
        Self::from_columns(ring, nrows, columns)
    }

    pub fn from_i64_rows(ring: RingSpec, rows: &[Vec<i64>]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| ring.from_i64(v)).collect())
            .collect();
        Self::from_rows(ring, rows).expect("well-formed integer rows")
    }

    fn settle(self) -> Self {
        let area = self.rows * self.cols;
        let nnz = self.nnz();
        let want_dense = area > 0 && 2 * nnz > area;
        match (&self.storage, want_dense) {
            (Storage::Sparse(cols), true) => {
                let mut data = vec![self.ring.zero(); area];
                for (c, col) in cols.iter().enumerate() {
                    for (r, v) in col {
                        data[c * self.rows + r] = v.clone();
                    }
                }
                Matrix {
                    storage: Storage::Dense(data),
                    ..self
                }
            }
            (Storage::Dense(data), false) => {
                let cols = (0..self.cols)
                    .map(|c| {
                        (0..self.rows)
                            .filter_map(|r| {
                                let v = &data[c * self.rows + r];
                                (!v.is_zero()).then(|| (r, v.clone()))
                            })
                            .collect()
                    })
                    .collect();
                Matrix {
                    storage: Storage::Sparse(cols),
                    ..self
                }
            }
            _ => self,
        }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.storage, Storage::Dense(_))
    }

    pub fn nnz(&self) -> usize {
        match &self.storage {
            Storage::Sparse(cols) => cols.iter().map(|c| c.len()).sum(),
            Storage::Dense(data) => data.iter().filter(|v| !v.is_zero()).count(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        assert!(r < self.rows && c < self.cols, "index out of range");
        match &self.storage {
            Storage::Sparse(cols) => match cols[c].binary_search_by_key(&r, |(i, _)| *i) {
                Ok(k) => cols[c][k].1.clone(),
                Err(_) => self.ring.zero(),
            },
            Storage::Dense(data) => data[c * self.rows + r].clone(),
        }
    }

    pub fn column(&self, c: usize) -> Cow<'_, [(usize, Scalar)]> {
        match &self.storage {
            Storage::Sparse(cols) => Cow::Borrowed(&cols[c]),
            Storage::Dense(data) => Cow::Owned(
                (0..self.rows)
                    .filter_map(|r| {
                        let v = &data[c * self.rows + r];
                        (!v.is_zero()).then(|| (r, v.clone()))
                    })
                    .collect(),
            ),
        }
    }

    pub fn columns(&self) -> Vec<Column> {
        (0..self.cols).map(|c| self.column(c).into_owned()).collect()
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![self.ring.zero(); self.cols]; self.rows];
        for c in 0..self.cols {
            for (r, v) in self.column(c).iter() {
                out[*r][c] = v.clone();
            }
        }
        out
    }

    /// `self · v` for a sparse vector `v` indexed by columns.
    pub fn apply(&self, v: &[(usize, Scalar)]) -> Column {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (k, coeff) in v {
            for (r, x) in self.column(*k).iter() {
                let term = coeff * x;
                match acc.get_mut(r) {
                    Some(e) => *e = &*e + &term,
                    None => {
                        acc.insert(*r, term);
                    }
                }
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_ring(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::SizeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let cols = (0..rhs.cols).map(|c| self.apply(&rhs.column(c))).collect();
        Ok(Matrix::from_normalized_columns(self.ring, self.rows, cols))
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_ring(rhs)?;
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::SizeMismatch("cannot add matrices of different shapes".into()));
        }
        let cols = (0..self.cols)
            .map(|c| {
                let mut col = self.column(c).into_owned();
                col.extend(rhs.column(c).iter().cloned());
                normalize_column(self.ring, self.rows, col)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_normalized_columns(self.ring, self.rows, cols))
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&-&self.ring.one())
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let cols = (0..self.cols)
            .map(|c| {
                self.column(c)
                    .iter()
                    .map(|(r, v)| (*r, v * s))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        Matrix::from_normalized_columns(self.ring, self.rows, cols)
    }

    pub fn transpose(&self) -> Matrix {
        let mut cols = vec![Vec::new(); self.rows];
        for c in 0..self.cols {
            for (r, v) in self.column(c).iter() {
                cols[*r].push((c, v.clone()));
            }
        }
        Matrix::from_normalized_columns(self.ring, self.cols, cols)
    }

    /// Columns of all blocks side by side.
    pub fn hstack(ring: RingSpec, rows: usize, blocks: &[&Matrix]) -> Result<Matrix> {
        let mut cols = Vec::new();
        for b in blocks {
            if b.ring != ring {
                return Err(Error::RingMismatch {
                    expected: ring,
                    found: b.ring,
                });
            }
            if b.rows != rows {
                return Err(Error::SizeMismatch("hstack row counts differ".into()));
            }
            cols.extend(b.columns());
        }
        Ok(Matrix::from_normalized_columns(ring, rows, cols))
    }

    pub fn block_diagonal(ring: RingSpec, blocks: &[&Matrix]) -> Result<Matrix> {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut cols = Vec::new();
        let mut offset = 0;
        for b in blocks {
            if b.ring != ring {
                return Err(Error::RingMismatch {
                    expected: ring,
                    found: b.ring,
                });
            }
            for c in 0..b.cols {
                cols.push(b.column(c).iter().map(|(r, v)| (r + offset, v.clone())).collect());
            }
            offset += b.rows;
        }
        Ok(Matrix::from_normalized_columns(ring, rows, cols))
    }

    pub fn select_columns(&self, which: &[usize]) -> Matrix {
        let cols = which.iter().map(|&c| self.column(c).into_owned()).collect();
        Matrix::from_normalized_columns(self.ring, self.rows, cols)
    }

    /// Reinterprets every entry in another ring (entries must be integral
    /// unless the target is ℚ).
    pub fn convert(&self, ring: RingSpec) -> Result<Matrix> {
        let cols = (0..self.cols)
            .map(|c| {
                self.column(c)
                    .iter()
                    .map(|(r, v)| Ok((*r, v.convert(ring)?)))
                    .collect::<Result<Column>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(ring, self.rows, cols)
    }

    fn check_ring(&self, rhs: &Matrix) -> Result<()> {
        if self.ring != rhs.ring {
            return Err(Error::RingMismatch {
                expected: self.ring,
                found: rhs.ring,
            });
        }
        Ok(())
    }
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.rows == other.rows
            && self.cols == other.cols
            && (0..self.cols).all(|c| self.column(c) == other.column(c))
    }
}

impl Eq for Matrix {}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.ring)?;
        if self.rows * self.cols <= 400 {
            for row in self.to_dense_rows() {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                writeln!(f, "  [{}]", cells.join(", "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_fallback_switches_on_fill() {
        let q = RingSpec::Rational;
        let sparse = Matrix::identity(q, 4);
        assert!(!sparse.is_dense());
        let full = Matrix::from_i64_rows(q, &[vec![1, 2], vec![3, 4]]);
        assert!(full.is_dense());
        assert_eq!(full.get(1, 0), q.from_i64(3));
        let diff = full.sub(&full).unwrap();
        assert!(!diff.is_dense());
        assert!(diff.is_zero());
    }

    #[test]
    fn products_and_transpose() {
        let z = RingSpec::Integer;
        let a = Matrix::from_i64_rows(z, &[vec![1, 2, 0], vec![0, 1, 3]]);
        let b = Matrix::from_i64_rows(z, &[vec![1, 0], vec![0, 1], vec![1, 1]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, Matrix::from_i64_rows(z, &[vec![1, 2], vec![3, 4]]));
        assert_eq!(a.transpose().transpose(), a);
        assert!(a.mul(&a).is_err());
    }

    #[test]
    fn ring_mismatch_rejected() {
        let a = Matrix::identity(RingSpec::Rational, 2);
        let b = Matrix::identity(RingSpec::Integer, 2);
        assert!(matches!(a.mul(&b), Err(Error::RingMismatch { .. })));
        let bad = Matrix::from_columns(RingSpec::Rational, 2, vec![vec![(0, RingSpec::Integer.one())]]);
        assert!(bad.is_err());
    }
}
