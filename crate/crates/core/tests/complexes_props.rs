use fimod::combinat::{binomial, falling_factorial};
use fimod::complexes::{
    check_inductive, complex_homology, fieldwise_homology, find_n, poset_colimit, signed_shift_slice, verify_chain_homotopy,
    x1_kills_homology, ColimitMode, DEFAULT_PRIMES,
};
use fimod::fi::{evaluate_slice, FIPresentation, FreeElement, Injection, Term};
use fimod::functors::h0_slice;
use fimod::linalg::{Invariants, RingSpec};
use fimod::random::random_presentations;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn homotopy_identity_on_random_presentations(seed in any::<u64>(), ring in prop::sample::select(vec![RingSpec::Rational, RingSpec::Prime(2), RingSpec::Integer])) {
        let p = &random_presentations(seed, 1, ring)[0];
        for n in 0..=4 {
            for a in 0..=n.min(3) {
                let h = verify_chain_homotopy(p, a, n).unwrap();
                prop_assert!(h.passed(), "{:?}", h);
            }
        }
    }

    #[test]
    fn low_homology_matches_colimit_map(seed in any::<u64>()) {
        let p = &random_presentations(seed, 1, RingSpec::Prime(5))[0];
        for n in 1..=4 {
            let h = complex_homology(p, n, &[0, 1]).unwrap();
            let colim = poset_colimit(p, n, n - 1, ColimitMode::Full).unwrap();
            let coker = colim.canonical.cokernel().unwrap().rank();
            let kernel = colim.canonical.kernel().unwrap().invariants.rank();
            prop_assert_eq!(h.group(0).unwrap().rank(), coker);
            prop_assert_eq!(h.group(1).unwrap().rank(), kernel);
            prop_assert_eq!(h.group(0).unwrap().rank(), h0_slice(p, n).unwrap().rank());
        }
    }

    #[test]
    fn final_layers_agree_with_full_poset(seed in any::<u64>()) {
        let p = &random_presentations(seed, 1, RingSpec::Prime(3))[0];
        for n in 1..=4 {
            for bound in 0..=n {
                let a = poset_colimit(p, n, bound, ColimitMode::Full).unwrap();
                let b = poset_colimit(p, n, bound, ColimitMode::FinalLayers).unwrap();
                prop_assert_eq!(a.module.rank(), b.module.rank());
                prop_assert_eq!(a.canonical.is_isomorphism().unwrap().isomorphism, b.canonical.is_isomorphism().unwrap().isomorphism);
            }
        }
    }

    #[test]
    fn x1_is_zero_on_homology(seed in any::<u64>()) {
        let p = &random_presentations(seed, 1, RingSpec::Prime(3))[0];
        for n in 0..=3 {
            for a in 0..=n.min(2) {
                prop_assert!(x1_kills_homology(p, a, n).unwrap());
            }
        }
    }
}

#[test]
fn signed_shift_rank_bookkeeping() {
    for d in 0..=2 {
        let p = FIPresentation::free(RingSpec::Rational, vec![d]);
        for n in 0..=6 {
            for a in 0..=n {
                let s = signed_shift_slice(&p, a, n).unwrap();
                assert_eq!(s.ambient_rank(), binomial(n, a) * falling_factorial(n - a, d));
            }
        }
    }
}

#[test]
fn free_module_complexes() {
    for d in 0..=3 {
        let p = FIPresentation::free(RingSpec::Integer, vec![d]);
        for n in 0..=6 {
            let h = complex_homology(&p, n, &[0, 1]).unwrap();
            let expected = if n == d { falling_factorial(d, d) } else { 0 };
            assert_eq!(h.group(0).unwrap(), &Invariants::Integer { free_rank: expected, torsion: vec![] });
            assert!(h.group(1).unwrap().is_zero());
        }
    }
}

#[test]
fn integral_torsion_in_free_slices() {
    // generators x (degree 0), y (degree 1); relation 2y = x in degree 1.
    let z = RingSpec::Integer;
    let rel = FreeElement::new(
        z,
        1,
        vec![
            Term { generator: 1, injection: Injection::identity(1), coeff: z.from_i64(2) },
            Term { generator: 0, injection: Injection::new(vec![], 1).unwrap(), coeff: z.from_i64(-1) },
        ],
    )
    .unwrap();
    let p = FIPresentation::new(z, vec![0, 1], vec![rel]).unwrap();
    assert!(evaluate_slice(&p, 1).invariants().torsion().is_empty());
    let h = complex_homology(&p, 1, &[0]).unwrap();
    assert_eq!(h.group(0).unwrap(), &Invariants::Integer { free_rank: 0, torsion: vec![2.into()] });
    let t = fieldwise_homology(&p, 1, &[0], &DEFAULT_PRIMES).unwrap();
    let dims: Vec<(String, usize)> = t.rows.iter().map(|r| (r.ring.to_string(), r.dims[0].1)).collect();
    assert_eq!(dims[0], ("Q".into(), 0));
    assert_eq!(dims[1], ("F2".into(), 1));
    assert_eq!(dims[2], ("F3".into(), 0));
}

#[test]
fn find_n_examples() {
    let m2 = FIPresentation::free(RingSpec::Rational, vec![2]);
    let r = find_n(&m2, 6, true).unwrap();
    assert_eq!(r.bound, 2);
    assert!(r.checks.iter().all(|c| c.passed()));
    assert_eq!(r.status, "certified-up-to-bound");
    let m0 = FIPresentation::free(RingSpec::Rational, vec![0]);
    assert_eq!(find_n(&m0, 5, false).unwrap().bound, 0);
    let pt = FIPresentation::point_torsion(RingSpec::Rational);
    assert_eq!(find_n(&pt, 5, false).unwrap().bound, 1);
    assert!(!check_inductive(&pt, 0, 1, ColimitMode::Full).unwrap().passed());
    for n in 2..=5 {
        assert!(check_inductive(&pt, 1, n, ColimitMode::FinalLayers).unwrap().passed());
    }
}
