//! The Arnold algebra `H^*(Conf_n(ℝ²))`: exterior algebra on edges `ω_{ij}`
//! of the complete graph modulo the three-term relations.

use std::collections::{BTreeSet, HashMap};

use crate::combinat::{binomial, permutations, sort_sign, subsets};
use crate::dims::DimensionTable;
use crate::error::Result;
use crate::fi::{FIPresentation, FreeElement, Injection, Term};
use crate::linalg::{Column, Matrix, ModuleMap, PresentedModule, RingSpec};

pub type Edge = (usize, usize);

/// Edges `{i < j}` of the complete graph on `[n]` in lexicographic order.
pub fn edges(n: usize) -> Vec<Edge> {
    subsets(n, 2).into_iter().map(|s| (s[0], s[1])).collect()
}

fn edge(a: usize, b: usize) -> Edge {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A wedge of edges as a signed sorted edge set, or `None` if an edge repeats.
fn normalize(list: &[Edge]) -> Option<(i64, Vec<Edge>)> {
    let mut sorted = list.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sort_sign(list), sorted))
}

/// `ω_{ij}ω_{jk} + ω_{jk}ω_{ki} + ω_{ki}ω_{ij}` for `i < j < k`, as wedges.
fn triple_terms(i: usize, j: usize, k: usize) -> [[Edge; 2]; 3] {
    [
        [edge(i, j), edge(j, k)],
        [edge(j, k), edge(k, i)],
        [edge(k, i), edge(i, j)],
    ]
}

/// Ambient basis of `Λ^m` on the edges of `[n]`: sorted `m`-edge sets, lexicographic.
struct EdgeSets {
    sets: Vec<Vec<Edge>>,
    index: HashMap<Vec<Edge>, usize>,
}

impl EdgeSets {
    fn new(m: usize, n: usize) -> Self {
        let all = edges(n);
        let sets: Vec<Vec<Edge>> = subsets(all.len(), m)
            .into_iter()
            .map(|s| s.into_iter().map(|e| all[e - 1]).collect())
            .collect();
        let index = sets.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect();
        EdgeSets { sets, index }
    }
}

/// The Arnold relations in degree `m` on `[n]`, in ambient coordinates.
fn relation_columns(m: usize, n: usize, ring: RingSpec, basis: &EdgeSets) -> Vec<Column> {
    if m < 2 {
        return Vec::new();
    }
    let rest = EdgeSets::new(m - 2, n);
    let mut cols = Vec::new();
    for t in subsets(n, 3) {
        for u in &rest.sets {
            let mut col: Column = Vec::new();
            for pair in triple_terms(t[0], t[1], t[2]) {
                let mut list = pair.to_vec();
                list.extend_from_slice(u);
                if let Some((s, sorted)) = normalize(&list) {
                    col.push((basis.index[&sorted], ring.from_i64(s)));
                }
            }
            col.sort_by_key(|e| e.0);
            let mut merged: Column = Vec::new();
            for (r, x) in col {
                match merged.last_mut() {
                    Some((lr, lx)) if *lr == r => *lx = &*lx + &x,
                    _ => merged.push((r, x)),
                }
            }
            merged.retain(|(_, x)| !x.is_zero());
            if !merged.is_empty() {
                cols.push(merged);
            }
        }
    }
    cols
}

/// `H^m(Conf_n(ℝ²); R)` presented on `m`-edge sets.
pub fn arnold_slice(m: usize, n: usize, ring: RingSpec) -> Result<PresentedModule> {
    let basis = EdgeSets::new(m, n);
    let rels = relation_columns(m, n, ring, &basis);
    PresentedModule::from_columns(ring, basis.sets.len(), rels)
}

/// `f_*: H^m_n → H^m_{n'}`, edges `{i, j} ↦ {f(i), f(j)}` with the re-sorting sign.
pub fn arnold_induced_map(m: usize, f: &Injection, ring: RingSpec) -> Result<ModuleMap> {
    let src = EdgeSets::new(m, f.source());
    let tgt = EdgeSets::new(m, f.target());
    let cols = src
        .sets
        .iter()
        .map(|s| {
            let image: Vec<Edge> = s.iter().map(|&(a, b)| edge(f.apply(a), f.apply(b))).collect();
            let (sign, sorted) = normalize(&image).expect("injective on edges");
            vec![(tgt.index[&sorted], ring.from_i64(sign))]
        })
        .collect();
    let matrix = Matrix::from_columns(ring, tgt.sets.len(), cols)?;
    ModuleMap::new(arnold_slice(m, f.source(), ring)?, arnold_slice(m, f.target(), ring)?, matrix)
}

/// Independent count: monomials `ω_{i_1 j_1} ⋯ ω_{i_m j_m}` with `i_k < j_k`
/// and `j_1 < ⋯ < j_m`.
pub fn admissible_count(m: usize, n: usize) -> usize {
    subsets(n, m)
        .iter()
        .map(|js| js.iter().map(|&j| j - 1).product::<usize>())
        .sum()
}

pub fn arnold_table(m: usize, range: std::ops::RangeInclusive<usize>, ring: RingSpec) -> Result<DimensionTable> {
    let start = *range.start();
    let invariants = range
        .map(|n| arnold_slice(m, n, ring).map(|pm| pm.invariants().clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(DimensionTable::from_invariants(ring, start, &invariants))
}

fn vertices(list: &[Edge]) -> BTreeSet<usize> {
    list.iter().flat_map(|&(a, b)| [a, b]).collect()
}

/// Orbit representative of a vertex-covering edge set on `[k]`: the
/// lexicographically least sorted edge list over all relabelings.
fn canonical(graph: &[Edge], k: usize) -> Vec<Edge> {
    permutations(k)
        .iter()
        .map(|p| {
            let mut g: Vec<Edge> = graph.iter().map(|&(a, b)| edge(p[a - 1], p[b - 1])).collect();
            g.sort_unstable();
            g
        })
        .min()
        .expect("nonempty")
}

/// An FI-presentation of `H^m(Conf(ℝ²))`: one generator per isomorphism class
/// of `m`-edge graphs without isolated vertices (degree = its vertex count),
/// stabilizer relations `(Γ, σ) − ε(σ)(Γ, id)` for automorphisms `σ`, and the
/// three-term relations on every wedge whose vertices cover `[k]`.
pub fn arnold_presentation(m: usize, ring: RingSpec) -> Result<FIPresentation> {
    let mut reps: Vec<(usize, Vec<Edge>)> = Vec::new();
    for k in 0..=2 * m {
        for s in &EdgeSets::new(m, k).sets {
            if vertices(s).len() == k && canonical(s, k) == *s && !reps.iter().any(|(_, r)| r == s) {
                reps.push((k, s.clone()));
            }
        }
    }
    let degrees: Vec<usize> = reps.iter().map(|(k, _)| *k).collect();

    // ω_E = sign · g_*(ω_Γ) for the orbit representative Γ of E.
    let express = |list: &[Edge]| -> Option<Term> {
        let (s0, sorted) = normalize(list)?;
        let verts: Vec<usize> = vertices(&sorted).into_iter().collect();
        let k = verts.len();
        let local: Vec<Edge> = sorted
            .iter()
            .map(|&(a, b)| {
                let pa = verts.binary_search(&a).expect("vertex") + 1;
                let pb = verts.binary_search(&b).expect("vertex") + 1;
                (pa, pb)
            })
            .collect();
        let rep = canonical(&local, k);
        let gen = reps.iter().position(|(d, r)| *d == k && *r == rep).expect("representative");
        for p in permutations(k) {
            let image: Vec<Edge> = rep.iter().map(|&(a, b)| edge(verts[p[a - 1] - 1], verts[p[b - 1] - 1])).collect();
            let (s1, sorted_image) = normalize(&image).expect("simple");
            if sorted_image == sorted {
                let target = verts.iter().max().copied().unwrap_or(0);
                let inj = Injection::new(p.iter().map(|&x| verts[x - 1]).collect(), target).expect("injective");
                return Some(Term {
                    generator: gen,
                    injection: inj,
                    coeff: ring.from_i64(s0 * s1),
                });
            }
        }
        unreachable!("representative relabels onto its orbit")
    };

    let mut relations = Vec::new();
    for (g, (k, rep)) in reps.iter().enumerate() {
        for p in permutations(*k) {
            if p.iter().enumerate().all(|(i, &x)| x == i + 1) {
                continue;
            }
            let image: Vec<Edge> = rep.iter().map(|&(a, b)| edge(p[a - 1], p[b - 1])).collect();
            let (sign, sorted) = normalize(&image).expect("simple");
            if sorted != *rep {
                continue;
            }
            let terms = vec![
                Term {
                    generator: g,
                    injection: Injection::new(p.clone(), *k)?,
                    coeff: ring.one(),
                },
                Term {
                    generator: g,
                    injection: Injection::identity(*k),
                    coeff: ring.from_i64(-sign),
                },
            ];
            relations.push(FreeElement::new(ring, *k, terms)?);
        }
    }
    if m >= 2 {
        for k in 3..=2 * m - 1 {
            let rest = EdgeSets::new(m - 2, k);
            for t in subsets(k, 3) {
                for u in &rest.sets {
                    let mut cover = vertices(u);
                    cover.extend(t.iter().copied());
                    if cover.len() != k {
                        continue;
                    }
                    let mut terms = Vec::new();
                    for pair in triple_terms(t[0], t[1], t[2]) {
                        let mut list = pair.to_vec();
                        list.extend_from_slice(u);
                        if let Some(mut term) = express(&list) {
                            term.injection = widen(&term.injection, k);
                            terms.push(term);
                        }
                    }
                    let rel = FreeElement::new(ring, k, terms)?;
                    if !rel.is_zero() {
                        relations.push(rel);
                    }
                }
            }
        }
    }
    FIPresentation::new(ring, degrees, relations)
}

fn widen(f: &Injection, n: usize) -> Injection {
    Injection::new(f.images().to_vec(), n).expect("images within range")
}

/// `binom(binom(n, 2), m)`, the ambient size of the slice.
pub fn generator_count(m: usize, n: usize) -> usize {
    binomial(binomial(n, 2), m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fi::evaluate_slice;

    #[test]
    fn low_degrees() {
        for n in 0..5 {
            assert_eq!(arnold_slice(0, n, RingSpec::Rational).unwrap().rank(), 1);
        }
        assert_eq!(arnold_slice(1, 4, RingSpec::Rational).unwrap().rank(), 6);
        assert_eq!(arnold_slice(2, 4, RingSpec::Integer).unwrap().rank(), 11);
        assert_eq!(admissible_count(2, 4), 11);
        assert_eq!(generator_count(2, 4), 15);
    }

    #[test]
    fn presentation_matches_slices() {
        for m in 0..=2 {
            let p = arnold_presentation(m, RingSpec::Rational).unwrap();
            for n in 0..=5 {
                assert_eq!(evaluate_slice(&p, n).rank(), admissible_count(m, n), "m={m} n={n}");
            }
        }
        let p2 = arnold_presentation(2, RingSpec::Integer).unwrap();
        assert_eq!(p2.degrees(), &[3, 4]);
    }
}
