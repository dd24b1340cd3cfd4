use fimod::dims::{dimension_table, finite_difference, fit_polynomial, tail_equal, DimensionTable, FitStatus, IntegerValuedPolynomial};
use fimod::fi::FIPresentation;
use fimod::linalg::RingSpec;
use num_bigint::BigInt;
use proptest::prelude::*;

/// A nonnegative table: a binomial-basis polynomial from index `noise.len()` on,
/// arbitrary values before it.
fn table() -> impl Strategy<Value = (Vec<i64>, Vec<usize>, usize)> {
    (prop::collection::vec(0i64..4, 1..=4), prop::collection::vec(0usize..50, 0..3), 0usize..3)
}

fn build(coeffs: &[i64], noise: &[usize], start: usize, len: usize) -> (IntegerValuedPolynomial, DimensionTable) {
    let p = IntegerValuedPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect());
    let mut values = noise.to_vec();
    for n in start + noise.len()..start + len {
        values.push(usize::try_from(p.value(n)).unwrap());
    }
    (p, DimensionTable::from_values(RingSpec::Rational, start, &values))
}

proptest! {
    #[test]
    fn fits_recover_polynomials((coeffs, noise, start) in table()) {
        let (p, t) = build(&coeffs, &noise, start, 12);
        let r = fit_polynomial(&t, 3);
        prop_assert_eq!(r.status, FitStatus::CertifiedOnWindow);
        let q = r.polynomial.unwrap();
        prop_assert_eq!(&q, &p);
        let onset = r.onset.unwrap();
        prop_assert!(onset <= start + noise.len());
        for row in t.rows.iter().filter(|row| row.n >= onset) {
            prop_assert_eq!(q.value(row.n), BigInt::from(row.rank));
        }
    }

    #[test]
    fn differencing_commutes_with_fitting((coeffs, start) in (prop::collection::vec(0i64..4, 2..=4), 0usize..3)) {
        let (p, t) = build(&coeffs, &[], start, 12);
        let diffs = finite_difference(&t).unwrap();
        prop_assume!(diffs.iter().all(|d| d.1 >= 0));
        let dt = DimensionTable::from_values(RingSpec::Rational, start, &diffs.iter().map(|d| d.1 as usize).collect::<Vec<_>>());
        prop_assert_eq!(fit_polynomial(&dt, 3).polynomial.unwrap(), p.difference());
    }

    #[test]
    fn dropping_a_row_keeps_the_fit((coeffs, noise, start) in table()) {
        let (_, t) = build(&coeffs, &noise, start, 12);
        let r = fit_polynomial(&t, 3);
        let onset = r.onset.unwrap();
        let later = t.from_n(t.start().unwrap() + 1);
        if onset >= later.start().unwrap() {
            prop_assert_eq!(fit_polynomial(&later, 3).polynomial, r.polynomial);
        }
    }

    #[test]
    fn csv_round_trip(values in prop::collection::vec(0usize..1000, 1..10), start in 0usize..5) {
        let t = DimensionTable::from_values(RingSpec::Prime(3), start, &values);
        prop_assert_eq!(DimensionTable::from_csv(&t.to_csv().unwrap(), RingSpec::Prime(3)).unwrap(), t);
    }
}

#[test]
fn spec_examples() {
    let q = RingSpec::Rational;
    let m2 = dimension_table(&FIPresentation::free(q, vec![2]), 0..=5).unwrap();
    assert_eq!(m2.ranks(), vec![0, 0, 2, 6, 12, 20]);
    assert_eq!(finite_difference(&m2).unwrap().iter().map(|d| d.1).collect::<Vec<_>>(), vec![0, 2, 4, 6, 8]);
    let pt = dimension_table(&FIPresentation::point_torsion(q), 0..=6).unwrap();
    let m0 = dimension_table(&FIPresentation::free(q, vec![0]), 0..=6).unwrap();
    let zero = DimensionTable::from_values(q, 1, &[0; 6]);
    assert!(!tail_equal(&m0.from_n(1), &pt.from_n(1), 6).unwrap());
    assert!(tail_equal(&pt.from_n(1), &zero, 6).unwrap());
    assert!(tail_equal(&m2, &m2, 6).unwrap());
    let fact = DimensionTable::from_values(q, 0, &[1, 1, 2, 6, 24, 120, 720, 5040, 40320]);
    assert_eq!(fit_polynomial(&fact, 3).status, FitStatus::Inconclusive);
}

#[test]
fn torsion_tables_refuse_differences() {
    let t = DimensionTable::from_csv("n,free_rank,torsion\n0,1,2\n1,1,\n", RingSpec::Integer).unwrap();
    assert!(finite_difference(&t).is_err());
    assert!(DimensionTable::from_csv("n,dim\n0,1\n2,1\n", RingSpec::Rational).is_err());
}
