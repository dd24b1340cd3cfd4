use fimod::combinat::{factorial, falling_factorial};
use fimod::fi::{evaluate_slice, FIPresentation, FreeElement, Injection};
use fimod::functors::{derivative, generation_degree, h0_slice, saturate, shift_presentation, x_map, SubmoduleGenerators};
use fimod::linalg::RingSpec;
use fimod::random::random_presentations;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn shifted_slices_are_later_slices(seed in any::<u64>(), a in 0usize..=2) {
        let p = &random_presentations(seed, 1, RingSpec::Prime(3))[0];
        let s = shift_presentation(p, a);
        for n in 0..=3 {
            prop_assert_eq!(evaluate_slice(&s.presentation, n).rank(), evaluate_slice(p, n + a).rank());
            let phi = s.relabel(n).unwrap();
            prop_assert!(phi.is_isomorphism().unwrap().isomorphism);
        }
    }

    #[test]
    fn h0_is_a_quotient(seed in any::<u64>()) {
        let p = &random_presentations(seed, 1, RingSpec::Rational)[0];
        for n in 0..=4 {
            prop_assert!(h0_slice(p, n).unwrap().rank() <= evaluate_slice(p, n).rank());
        }
        let g = generation_degree(p, 4).unwrap();
        prop_assert!(g.degree.unwrap_or(0) <= *p.degrees().iter().max().unwrap());
    }

    #[test]
    fn x_maps_are_well_defined(seed in any::<u64>()) {
        let p = &random_presentations(seed, 1, RingSpec::Integer)[0];
        for n in 0..=3 {
            prop_assert!(x_map(p, 1, n).unwrap().is_well_defined());
        }
    }
}

#[test]
fn derivative_lowers_free_degree() {
    for d in 1..=3 {
        let dp = derivative(&FIPresentation::free(RingSpec::Rational, vec![d]));
        for n in 0..=5 {
            assert_eq!(evaluate_slice(&dp, n).rank(), d * falling_factorial(n, d - 1), "d={d} n={n}");
        }
    }
}

#[test]
fn h0_of_free_modules() {
    for d in 0..=3 {
        let p = FIPresentation::free(RingSpec::Integer, vec![d]);
        let g = generation_degree(&p, 6).unwrap();
        assert_eq!(g.degree, Some(d));
        assert_eq!(h0_slice(&p, d).unwrap().rank(), factorial(d));
    }
}

#[test]
fn saturation_of_a_sum() {
    let q = RingSpec::Rational;
    let x1 = FreeElement::basis(q, 0, Injection::new(vec![1], 2).unwrap());
    let x2 = FreeElement::basis(q, 0, Injection::new(vec![2], 2).unwrap());
    let w = SubmoduleGenerators::new(q, 1, vec![x1.add(&x2).unwrap()]).unwrap();
    let r = saturate(&w, 4, 2);
    assert_eq!(r.stages[0].rank, 0);
    assert!(r.stages[1..].iter().all(|s| s.rank == 1));
    assert_eq!(r.n, Some(1));
}
