//! Dimension tables, finite differences and eventually-polynomial fits.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::combinat::binomial;
use crate::error::{Error, Result};
use crate::fi::{evaluate_slice, FIPresentation};
use crate::linalg::{serde_int, Invariants, RingSpec};

/// Default number of trailing vanishing differences a fit must see.
pub const DEFAULT_MIN_TAIL: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimRow {
    pub n: usize,
    /// Dimension over a field, free rank over ℤ.
    pub rank: usize,
    #[serde(with = "serde_int::list", default, skip_serializing_if = "Vec::is_empty")]
    pub torsion: Vec<BigInt>,
}

/// Rows `(n, dim)` over a field or `(n, free rank, torsion)` over ℤ, with
/// `n` strictly increasing and contiguous.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionTable {
    pub ring: RingSpec,
    pub rows: Vec<DimRow>,
}

impl DimensionTable {
    pub fn new(ring: RingSpec, rows: Vec<DimRow>) -> Result<Self> {
        for w in rows.windows(2) {
            if w[1].n != w[0].n + 1 {
                return Err(Error::SizeMismatch(format!("table rows jump from n = {} to n = {}", w[0].n, w[1].n)));
            }
        }
        if ring.is_field() && rows.iter().any(|r| !r.torsion.is_empty()) {
            return Err(Error::SizeMismatch("torsion entries in a table over a field".into()));
        }
        Ok(DimensionTable { ring, rows })
    }

    pub fn from_values(ring: RingSpec, start: usize, values: &[usize]) -> Self {
        let rows = values
            .iter()
            .enumerate()
            .map(|(k, &v)| DimRow {
                n: start + k,
                rank: v,
                torsion: Vec::new(),
            })
            .collect();
        DimensionTable { ring, rows }
    }

    pub fn from_invariants(ring: RingSpec, start: usize, invariants: &[Invariants]) -> Self {
        let rows = invariants
            .iter()
            .enumerate()
            .map(|(k, inv)| DimRow {
                n: start + k,
                rank: inv.rank(),
                torsion: inv.torsion().to_vec(),
            })
            .collect();
        DimensionTable { ring, rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn start(&self) -> Option<usize> {
        self.rows.first().map(|r| r.n)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.rank).collect()
    }

    pub fn has_torsion(&self) -> bool {
        self.rows.iter().any(|r| !r.torsion.is_empty())
    }

    /// The rows with `n ≥ from`.
    pub fn from_n(&self, from: usize) -> Self {
        DimensionTable {
            ring: self.ring,
            rows: self.rows.iter().filter(|r| r.n >= from).cloned().collect(),
        }
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(e.to_string());
        if self.ring.is_field() {
            w.write_record(["n", "dim"]).map_err(io)?;
            for r in &self.rows {
                w.write_record([r.n.to_string(), r.rank.to_string()]).map_err(io)?;
            }
        } else {
            w.write_record(["n", "free_rank", "torsion"]).map_err(io)?;
            for r in &self.rows {
                let t: Vec<String> = r.torsion.iter().map(|x| x.to_string()).collect();
                w.write_record([r.n.to_string(), r.rank.to_string(), t.join(";")]).map_err(io)?;
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Reads `n,dim` (field) or `n,free_rank,torsion` (ℤ) CSV.
    pub fn from_csv(text: &str, ring: RingSpec) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
        let parse_err = |line: usize, message: String| Error::Parse { line, column: 1, message };
        let headers: Vec<String> = rdr
            .headers()
            .map_err(|e| parse_err(1, e.to_string()))?
            .iter()
            .map(str::to_string)
            .collect();
        let integral = match headers.iter().map(String::as_str).collect::<Vec<_>>().as_slice() {
            ["n", "dim"] => false,
            ["n", "free_rank", "torsion"] => true,
            _ => return Err(parse_err(1, format!("unexpected header {}", headers.join(",")))),
        };
        if integral == ring.is_field() {
            return Err(parse_err(1, format!("header {} does not match ring {ring}", headers.join(","))));
        }
        let mut rows = Vec::new();
        for (k, rec) in rdr.records().enumerate() {
            let line = k + 2;
            let rec = rec.map_err(|e| parse_err(line, e.to_string()))?;
            let field = |i: usize| rec.get(i).unwrap_or("");
            let num = |s: &str| s.parse::<usize>().map_err(|_| parse_err(line, format!("{s:?} is not a nonnegative integer")));
            let torsion = if integral && !field(2).is_empty() {
                field(2)
                    .split(';')
                    .map(|t| t.trim().parse::<BigInt>().map_err(|_| parse_err(line, format!("bad invariant factor {t:?}"))))
                    .collect::<Result<Vec<_>>>()?
            } else {
                Vec::new()
            };
            rows.push(DimRow {
                n: num(field(0))?,
                rank: num(field(1))?,
                torsion,
            });
        }
        Self::new(ring, rows)
    }
}

/// `n ↦ rank of V_n` over the given range.
pub fn dimension_table(p: &FIPresentation, range: std::ops::RangeInclusive<usize>) -> Result<DimensionTable> {
    if range.is_empty() {
        return Err(Error::SizeMismatch("empty degree range".into()));
    }
    let start = *range.start();
    let invariants: Vec<Invariants> = range.map(|n| evaluate_slice(p, n).invariants().clone()).collect();
    Ok(DimensionTable::from_invariants(p.ring(), start, &invariants))
}

/// Rows `(n, f(n + 1) − f(n))`. Values may be negative, so the result is a
/// plain integer sequence.
pub fn finite_difference(t: &DimensionTable) -> Result<Vec<(usize, i128)>> {
    if t.has_torsion() {
        return Err(Error::Unsupported("finite differences of tables with torsion are not defined".into()));
    }
    if t.len() < 2 {
        return Err(Error::SizeMismatch("finite differences need at least two rows".into()));
    }
    Ok(t.rows.windows(2).map(|w| (w[0].n, w[1].rank as i128 - w[0].rank as i128)).collect())
}

/// `Σ c_k binom(n, k)` with integer `c_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerValuedPolynomial {
    #[serde(with = "serde_int::list")]
    pub coefficients: Vec<BigInt>,
}

impl IntegerValuedPolynomial {
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        IntegerValuedPolynomial { coefficients }
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coefficients.last().cloned().unwrap_or_default()
    }

    pub fn value(&self, n: usize) -> BigInt {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(k, c)| c * BigInt::from(binomial(n, k)))
            .sum()
    }

    /// `P(n + 1) − P(n) = Σ c_{k+1} binom(n, k)`.
    pub fn difference(&self) -> Self {
        Self::new(self.coefficients.iter().skip(1).cloned().collect())
    }
}

impl fmt::Display for IntegerValuedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = if c < &BigInt::zero() { -c } else { c.clone() };
            let sign = c < &BigInt::zero();
            match (first, sign) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let unit = mag == BigInt::from(1);
            match (k, unit) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "binom(n,{k})")?,
                (_, false) => write!(f, "{mag}*binom(n,{k})")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FitStatus {
    CertifiedOnWindow,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FitReport {
    pub polynomial: Option<IntegerValuedPolynomial>,
    pub display: Option<String>,
    /// Least tabulated `n` from which the polynomial matches every row.
    pub onset: Option<usize>,
    /// Length of the vanishing run of the `(D+1)`-st difference.
    pub tail_length: usize,
    pub min_tail: usize,
    pub status: FitStatus,
    pub explanation: String,
}

fn inconclusive(min_tail: usize, tail_length: usize, explanation: String) -> FitReport {
    FitReport {
        polynomial: None,
        display: None,
        onset: None,
        tail_length,
        min_tail,
        status: FitStatus::Inconclusive,
        explanation,
    }
}

fn differences(v: &[i128]) -> Option<Vec<i128>> {
    v.windows(2).map(|w| w[1].checked_sub(w[0])).collect()
}

/// Least `D` whose `(D+1)`-st difference vanishes on a tail of length at
/// least `min_tail`; the polynomial is rebuilt from that tail. ℤ tables are
/// fitted on their free ranks.
pub fn fit_polynomial(t: &DimensionTable, min_tail: usize) -> FitReport {
    let min_tail = min_tail.max(1);
    if t.len() < min_tail + 1 {
        return inconclusive(
            min_tail,
            0,
            format!("table has {} rows; a fit with tail {min_tail} needs at least {}", t.len(), min_tail + 1),
        );
    }
    let start = t.start().expect("nonempty");
    let values: Vec<i128> = t.rows.iter().map(|r| r.rank as i128).collect();
    let len = values.len();
    let mut diffs = vec![values.clone()];
    loop {
        let d = diffs.len() - 1;
        let Some(next) = differences(&diffs[d]) else {
            return inconclusive(min_tail, 0, "difference overflow".into());
        };
        if next.len() < min_tail {
            return inconclusive(
                min_tail,
                next.iter().rev().take_while(|x| **x == 0).count(),
                format!("no finite difference of order at most {} vanishes on a tail of length {min_tail}", d + 1),
            );
        }
        let zeros = next.iter().rev().take_while(|x| **x == 0).count();
        diffs.push(next);
        if zeros >= min_tail {
            // Values from index s on fit a polynomial of degree ≤ d.
            let s = len - d - 1 - zeros;
            let newton: Vec<i128> = (0..=d).map(|k| diffs[k][s]).collect();
            let base = (start + s) as i128;
            let mut coefficients = vec![BigInt::zero(); d + 1];
            for (k, &nk) in newton.iter().enumerate() {
                for j in 0..=k {
                    let i = k - j;
                    // binom(n − base, k) = Σ_j binom(−base, k − j) binom(n, j)
                    let neg_binom = if i == 0 {
                        BigInt::from(1)
                    } else {
                        let m = BigInt::from(binomial((base + i as i128 - 1) as usize, i));
                        if i % 2 == 0 {
                            m
                        } else {
                            -m
                        }
                    };
                    coefficients[j] += BigInt::from(nk) * neg_binom;
                }
            }
            let poly = IntegerValuedPolynomial::new(coefficients);
            let mut onset = t.rows[len - 1].n;
            for r in t.rows.iter().rev() {
                if poly.value(r.n) == BigInt::from(r.rank) {
                    onset = r.n;
                } else {
                    break;
                }
            }
            return FitReport {
                display: Some(poly.to_string()),
                polynomial: Some(poly),
                onset: Some(onset),
                tail_length: zeros,
                min_tail,
                status: FitStatus::CertifiedOnWindow,
                explanation: format!(
                    "difference of order {} vanishes on the last {zeros} entries; onset is observed, not a proven stable range",
                    d + 1
                ),
            };
        }
    }
}

/// Whether two tables agree on the last `window` values of their common range.
pub fn tail_equal(a: &DimensionTable, b: &DimensionTable, window: usize) -> Result<bool> {
    let (Some(sa), Some(sb)) = (a.start(), b.start()) else {
        return Err(Error::SizeMismatch("empty table".into()));
    };
    let lo = sa.max(sb);
    let hi = (sa + a.len()).min(sb + b.len());
    if hi < lo + window || window == 0 {
        return Err(Error::SizeMismatch(format!(
            "tables overlap on {} values, fewer than the window {window}",
            hi.saturating_sub(lo)
        )));
    }
    Ok((hi - window..hi).all(|n| {
        let ra = &a.rows[n - sa];
        let rb = &b.rows[n - sb];
        ra.rank == rb.rank && ra.torsion == rb.torsion
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::falling_factorial;

    #[test]
    fn fits_free_module_dimensions() {
        let t = DimensionTable::from_values(RingSpec::Rational, 0, &(0..=8).map(|n| falling_factorial(n, 2)).collect::<Vec<_>>());
        let r = fit_polynomial(&t, 3);
        assert_eq!(r.status, FitStatus::CertifiedOnWindow);
        assert_eq!(r.polynomial.unwrap().coefficients, vec![0.into(), 0.into(), 2.into()]);
        assert_eq!(r.onset, Some(0));
        assert_eq!(r.display.unwrap(), "2*binom(n,2)");
    }

    #[test]
    fn shifted_base_and_onset() {
        let t = DimensionTable::from_values(RingSpec::Rational, 1, &[0, 1, 2, 3, 4, 5, 6, 7]);
        let r = fit_polynomial(&t, 3);
        assert_eq!(r.display.as_deref(), Some("binom(n,1) - 1"));
        assert_eq!(r.onset, Some(1));
        let late = DimensionTable::from_values(RingSpec::Rational, 0, &[5, 0, 2, 4, 6, 8, 10]);
        let r = fit_polynomial(&late, 3);
        assert_eq!(r.onset, Some(1));
        assert_eq!(r.polynomial.unwrap().coefficients, vec![(-2).into(), 2.into()]);
    }

    #[test]
    fn factorials_are_inconclusive() {
        let t = DimensionTable::from_values(RingSpec::Rational, 0, &[1, 1, 2, 6, 24, 120, 720, 5040]);
        assert_eq!(fit_polynomial(&t, 3).status, FitStatus::Inconclusive);
        let short = DimensionTable::from_values(RingSpec::Rational, 0, &[1, 1]);
        assert_eq!(fit_polynomial(&short, 3).status, FitStatus::Inconclusive);
    }

    #[test]
    fn csv_round_trip() {
        let t = DimensionTable::new(
            RingSpec::Integer,
            vec![
                DimRow { n: 0, rank: 1, torsion: vec![] },
                DimRow { n: 1, rank: 0, torsion: vec![2.into(), 6.into()] },
            ],
        )
        .unwrap();
        let text = t.to_csv().unwrap();
        assert_eq!(text, "n,free_rank,torsion\n0,1,\n1,0,2;6\n");
        assert_eq!(DimensionTable::from_csv(&text, RingSpec::Integer).unwrap(), t);
        assert!(DimensionTable::from_csv(&text, RingSpec::Rational).is_err());
        let q = DimensionTable::from_values(RingSpec::Rational, 3, &[4, 5]);
        assert_eq!(DimensionTable::from_csv(&q.to_csv().unwrap(), RingSpec::Rational).unwrap(), q);
    }

    #[test]
    fn tails() {
        let a = DimensionTable::from_values(RingSpec::Rational, 0, &[1, 0, 0, 0]);
        let z = DimensionTable::from_values(RingSpec::Rational, 1, &[0, 0, 0, 0]);
        assert!(tail_equal(&a, &z, 3).unwrap());
        assert!(tail_equal(&a, &z, 4).is_err());
        assert!(finite_difference(&a).unwrap().iter().map(|x| x.1).eq([-1, 0, 0]));
    }
}
