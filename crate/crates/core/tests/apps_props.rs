use std::collections::BTreeMap;

use fimod::apps::coinvariant::{dual_map_between, CoinvariantSlice};
use fimod::apps::*;
use fimod::fi::Injection;
use fimod::linalg::{rank, Matrix, RingSpec, Span};
use fimod::random::{random_injection, rng};
use proptest::prelude::*;

/// Independent oracle for `r = 1`: invariants are spanned by orbit sums of
/// monomials (monomial symmetric polynomials); the ideal slice is spanned by
/// their products with monomials.
fn oracle_dim(j: usize, n: usize, ring: RingSpec) -> usize {
    let Some(monos) = exponents(j, n) else { return 0 };
    let index: BTreeMap<Vec<usize>, usize> = monos.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
    let mut cols = Vec::new();
    for d in 1..=j {
        let sym = exponents(d, n).unwrap_or_default();
        let mut orbits: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
        for e in sym {
            let mut key = e.clone();
            key.sort_unstable();
            orbits.entry(key).or_default().push(e);
        }
        for orbit in orbits.values() {
            for u in exponents(j - d, n).unwrap_or_default() {
                let mut col: Vec<(usize, fimod::Scalar)> = orbit
                    .iter()
                    .map(|e| {
                        let prod: Vec<usize> = e.iter().zip(&u).map(|(a, b)| a + b).collect();
                        (index[&prod], ring.one())
                    })
                    .collect();
                col.sort_by_key(|c| c.0);
                cols.push(col);
            }
        }
    }
    let r = if cols.is_empty() { 0 } else { rank(&Matrix::from_columns(ring, monos.len(), cols).unwrap()) };
    monos.len() - r
}

fn exponents(total: usize, n: usize) -> Option<Vec<Vec<usize>>> {
    if n == 0 {
        return (total == 0).then(|| vec![Vec::new()]);
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in exponents(total - first, n - 1).unwrap_or_default() {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    Some(out)
}

fn spec(j: Vec<usize>) -> MultiIndex {
    MultiIndex::new(j).unwrap()
}

#[test]
fn coinvariants_match_the_orbit_sum_oracle() {
    for ring in [RingSpec::Rational, RingSpec::Prime(2), RingSpec::Prime(3)] {
        for j in 0..=3 {
            for n in 0..=6 {
                assert_eq!(coinvariant_dim(&spec(vec![j]), n, ring).unwrap().dim, oracle_dim(j, n, ring), "{ring} J={j} n={n}");
            }
        }
    }
}

#[test]
fn classical_dimensions() {
    let q = RingSpec::Rational;
    for n in 1..=7 {
        assert_eq!(coinvariant_dim(&spec(vec![1]), n, q).unwrap().dim, n - 1);
    }
    for n in 2..=7 {
        assert_eq!(coinvariant_dim(&spec(vec![2]), n, q).unwrap().dim, (n - 2) * (n + 1) / 2);
    }
    for n in 3..=7 {
        assert_eq!(coinvariant_dim(&spec(vec![3]), n, q).unwrap().dim, n * (n * n - 7) / 6);
    }
    for n in 1..=4usize {
        let top = n * (n - 1) / 2;
        let total: usize = (0..=top).map(|j| coinvariant_dim(&spec(vec![j]), n, q).unwrap().dim).sum();
        assert_eq!(total, (1..=n).product::<usize>());
    }
    assert_eq!(coinvariant_dim(&spec(vec![1, 1]), 2, q).unwrap().dim, 0);
}

#[test]
fn generator_pairs_give_the_same_invariants() {
    for ring in [RingSpec::Rational, RingSpec::Prime(2)] {
        for (j, n) in [(vec![2], 4), (vec![1, 1], 3), (vec![3], 3)] {
            let a = invariant_basis(&j, n, ring, GeneratorPair::Standard).unwrap();
            let b = invariant_basis(&j, n, ring, GeneratorPair::Alternative).unwrap();
            let dim = MonomialBasis::new(&j, n).len();
            let sa = Span::from_columns(ring, dim, a.iter().map(|c| c.as_slice()));
            let sb = Span::from_columns(ring, dim, b.iter().map(|c| c.as_slice()));
            assert_eq!(sa, sb);
        }
    }
}

#[test]
fn rational_dimension_is_at_most_modular() {
    for j in [vec![2], vec![1, 1], vec![3], vec![2, 1]] {
        for n in 1..=4 {
            let q = coinvariant_dim(&spec(j.clone()), n, RingSpec::Rational).unwrap().dim;
            for p in [2, 3, 5] {
                assert!(q <= coinvariant_dim(&spec(j.clone()), n, RingSpec::Prime(p)).unwrap().dim);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dual_maps_are_functorial(seed in any::<u64>(), j in 0usize..=2, ring in prop::sample::select(vec![RingSpec::Rational, RingSpec::Prime(2)])) {
        let mut r = rng(seed);
        let l = 1 + (seed % 2) as usize;
        let f = random_injection(&mut r, l, l + 1);
        let g = random_injection(&mut r, l + 1, 4);
        let s = spec(vec![j]);
        let pair = GeneratorPair::Standard;
        let (a, b, c) = (
            CoinvariantSlice::new(&s, l, ring, pair).unwrap(),
            CoinvariantSlice::new(&s, l + 1, ring, pair).unwrap(),
            CoinvariantSlice::new(&s, 4, ring, pair).unwrap(),
        );
        let gf = dual_map_between(&a, &c, &g.compose(&f).unwrap()).unwrap();
        let composite = dual_map_between(&b, &c, &g).unwrap().mul(&dual_map_between(&a, &b, &f).unwrap()).unwrap();
        prop_assert_eq!(gf, composite);
    }

    #[test]
    fn arnold_maps_are_functorial(seed in any::<u64>(), m in 0usize..=2) {
        let mut r = rng(seed);
        let f = random_injection(&mut r, 3, 4);
        let g = random_injection(&mut r, 4, 6);
        let q = RingSpec::Integer;
        let gf = arnold_induced_map(m, &g.compose(&f).unwrap(), q).unwrap();
        let composite = arnold_induced_map(m, &g, q).unwrap().compose(&arnold_induced_map(m, &f, q).unwrap()).unwrap();
        prop_assert!(gf.agrees_with(&composite));
        prop_assert!(gf.is_well_defined());
        prop_assert!(arnold_induced_map(m, &g, q).unwrap().is_well_defined());
    }
}

#[test]
fn arnold_dimensions_match_admissible_monomials() {
    for m in 0..=3 {
        for n in 0..=6 {
            assert_eq!(arnold_slice(m, n, RingSpec::Integer).unwrap().rank(), admissible_count(m, n), "m={m} n={n}");
        }
    }
    let id = arnold_induced_map(2, &Injection::identity(4), RingSpec::Rational).unwrap();
    assert!(id.is_isomorphism().unwrap().isomorphism);
}
