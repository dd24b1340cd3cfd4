//! The ascending chain `W^a_d = π_a(S_{+a}W)_d ⊆ M(d)_d` for a submodule
//! `W ⊆ M(d)` given by generators, and its stabilization degree.

use serde::Serialize;

use crate::combinat::injection_rank;
use crate::error::{Error, Result};
use crate::fi::{enumerate_injections, FreeElement};
use crate::linalg::{Column, RingSpec, Span};

/// Generators `w_s ∈ M(d)_{m_s}` of a sub-FI-module of `M(d)`.
#[derive(Clone, Debug)]
pub struct SubmoduleGenerators {
    pub ring: RingSpec,
    pub d: usize,
    pub generators: Vec<FreeElement>,
}

impl SubmoduleGenerators {
    pub fn new(ring: RingSpec, d: usize, generators: Vec<FreeElement>) -> Result<Self> {
        for w in &generators {
            if w.ring() != ring {
                return Err(Error::RingMismatch {
                    expected: ring,
                    found: w.ring(),
                });
            }
            for t in w.terms() {
                if t.generator != 0 || t.injection.source() != d {
                    return Err(Error::InvalidPresentation(format!(
                        "generator term ({}, {}) is not a basis element of M({d})",
                        t.generator, t.injection
                    )));
                }
            }
        }
        Ok(SubmoduleGenerators { ring, d, generators })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SaturationStage {
    pub a: usize,
    /// Rank of `W^a_d` (dimension over a field, lattice rank over ℤ).
    pub rank: usize,
    /// A basis of `W^a_d` in the basis of `M(d)_d` (permutations of `[d]`,
    /// lexicographic), as coefficient strings.
    pub basis: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SaturationReport {
    pub d: usize,
    pub a_max: usize,
    pub slack: usize,
    pub stages: Vec<SaturationStage>,
    pub ascending: bool,
    /// Least `a` with `W^a_d = W^{a+j}_d` for `1 ≤ j ≤ slack`.
    pub n: Option<usize>,
    pub status: &'static str,
    /// `W^N_d` is all of `M(d)_d`.
    pub stabilized_is_full: Option<bool>,
    pub warnings: Vec<String>,
}

/// `W^a_d`: span of `π_a(f_*(w_s))` over all `f: [m_s] ↪ [d] ⊔ [-a]`. The
/// points `d+1..=d+a` stand for `-1..=-a`; `π_a` keeps a term exactly when
/// its injection lands in `[d]`.
pub fn saturation_stage(w: &SubmoduleGenerators, a: usize) -> Span {
    let d = w.d;
    let mut span = Span::new(w.ring, crate::combinat::factorial(d));
    for g in &w.generators {
        for f in enumerate_injections(g.degree(), d + a) {
            let mut v: Column = Vec::new();
            for t in g.terms() {
                let images: Vec<usize> = t.injection.images().iter().map(|&x| f.apply(x)).collect();
                if images.iter().all(|&x| x <= d) {
                    v.push((injection_rank(&images, d), t.coeff.clone()));
                }
            }
            v.sort_by_key(|(r, _)| *r);
            let mut merged: Column = Vec::with_capacity(v.len());
            for (r, c) in v {
                match merged.last_mut() {
                    Some((lr, lc)) if *lr == r => *lc = &*lc + &c,
                    _ => merged.push((r, c)),
                }
            }
            merged.retain(|(_, c)| !c.is_zero());
            span.insert(&merged);
        }
    }
    span
}

fn dense(col: &Column, dim: usize, ring: RingSpec) -> Vec<String> {
    let mut row = vec![ring.zero().to_string(); dim];
    for (r, c) in col {
        row[*r] = c.to_string();
    }
    row
}

pub fn saturate(w: &SubmoduleGenerators, a_max: usize, slack: usize) -> SaturationReport {
    let d = w.d;
    let warnings = w
        .generators
        .iter()
        .enumerate()
        .filter(|(_, g)| g.degree() > d + a_max)
        .map(|(s, g)| {
            format!(
                "generator {s} has degree {} > d + a_max = {}; it maps into no tested shift and is ignored",
                g.degree(),
                d + a_max
            )
        })
        .collect();
    let spans: Vec<Span> = (0..=a_max).map(|a| saturation_stage(w, a)).collect();
    let dim = crate::combinat::factorial(d);
    let stages = spans
        .iter()
        .enumerate()
        .map(|(a, s)| SaturationStage {
            a,
            rank: s.rank(),
            basis: s.basis().iter().map(|b| dense(b, dim, w.ring)).collect(),
        })
        .collect();
    let ascending = spans.windows(2).all(|p| p[1].contains_span(&p[0]));
    let n = (0..=a_max)
        .filter(|&a| a + slack <= a_max)
        .find(|&a| (1..=slack).all(|j| spans[a] == spans[a + j]));
    SaturationReport {
        d,
        a_max,
        slack,
        stages,
        ascending,
        n,
        status: if n.is_some() { "certified-on-window" } else { "inconclusive" },
        stabilized_is_full: n.map(|a| spans[a].is_full()),
        warnings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fi::{Injection, Term};

    fn sum_of_points(ring: RingSpec) -> SubmoduleGenerators {
        let term = |v| Term {
            generator: 0,
            injection: Injection::new(vec![v], 2).unwrap(),
            coeff: ring.one(),
        };
        let w = FreeElement::new(ring, 2, vec![term(1), term(2)]).unwrap();
        SubmoduleGenerators::new(ring, 1, vec![w]).unwrap()
    }

    #[test]
    fn sum_of_two_points_saturates_at_one() {
        for ring in [RingSpec::Rational, RingSpec::Integer] {
            let r = saturate(&sum_of_points(ring), 5, 3);
            assert_eq!(r.stages[0].rank, 0);
            assert_eq!(r.n, Some(1));
            assert_eq!(r.stabilized_is_full, Some(true));
            assert!(r.ascending);
        }
    }

    #[test]
    fn scaled_generator_stays_scaled() {
        let z = RingSpec::Integer;
        let w = FreeElement::basis(z, 0, Injection::identity(1)).scale(&z.from_i64(2));
        let r = saturate(&SubmoduleGenerators::new(z, 1, vec![w]).unwrap(), 4, 3);
        assert_eq!(r.n, Some(0));
        assert_eq!(r.stabilized_is_full, Some(false));
        assert_eq!(r.stages[0].basis, vec![vec!["2".to_string()]]);
    }
}
