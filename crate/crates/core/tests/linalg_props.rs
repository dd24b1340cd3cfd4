use fimod::linalg::{rank, rank_mod_p, smith_form, Matrix, PresentedModule, RingSpec, Span};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..=4, c), r))
}

/// Rank by Gaussian elimination over ℚ on a dense copy, kept independent of the library.
fn oracle_rank(rows: &[Vec<i64>]) -> usize {
    use num_rational::BigRational;
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let (m, n) = (a.len(), a[0].len());
    let mut rk = 0;
    for c in 0..n {
        let Some(p) = (rk..m).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rk, p);
        for i in 0..m {
            if i != rk && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[rk][c];
                for j in 0..n {
                    let t = &f * &a[rk][j];
                    a[i][j] -= t;
                }
            }
        }
        rk += 1;
    }
    rk
}

proptest! {
    #[test]
    fn rank_matches_oracle(rows in int_matrix()) {
        let q = Matrix::from_i64_rows(RingSpec::Rational, &rows);
        let z = Matrix::from_i64_rows(RingSpec::Integer, &rows);
        prop_assert_eq!(rank(&q), oracle_rank(&rows));
        prop_assert_eq!(rank(&z), oracle_rank(&rows));
        prop_assert_eq!(rank(&q.transpose()), rank(&q));
    }

    #[test]
    fn rank_drops_only_mod_p(rows in int_matrix(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let z = Matrix::from_i64_rows(RingSpec::Integer, &rows);
        let rp = rank_mod_p(&z, p).unwrap();
        prop_assert!(rp <= rank(&z));
    }

    #[test]
    fn smith_form_is_verified(rows in int_matrix()) {
        let z = Matrix::from_i64_rows(RingSpec::Integer, &rows);
        let snf = smith_form(&z, true).unwrap();
        prop_assert!(snf.verify(&z));
        prop_assert_eq!(snf.rank(), oracle_rank(&rows));
        for w in snf.factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(snf.factors.iter().all(|d| d > &BigInt::zero()));
    }

    #[test]
    fn cokernel_order_matches_smith(rows in int_matrix()) {
        let z = Matrix::from_i64_rows(RingSpec::Integer, &rows);
        let pm = PresentedModule::new(z.clone());
        let inv = pm.invariants();
        let snf = smith_form(&z, false).unwrap();
        prop_assert_eq!(inv.rank(), z.rows() - snf.rank());
        let t: BigInt = inv.torsion().iter().product();
        let s: BigInt = snf.factors.iter().product();
        prop_assert_eq!(t, if snf.factors.is_empty() { BigInt::one() } else { s });
    }

    #[test]
    fn spans_contain_their_columns(rows in int_matrix()) {
        for ring in [RingSpec::Rational, RingSpec::Prime(3), RingSpec::Integer] {
            let m = Matrix::from_i64_rows(ring, &rows);
            let s = Span::from_matrix(&m);
            for c in 0..m.cols() {
                prop_assert!(s.contains(&m.column(c)));
                prop_assert!(s.reduce(&m.column(c)).is_empty());
            }
        }
    }
}

#[test]
fn quotient_coordinates_round_trip() {
    let rows = vec![vec![2, 0], vec![1, 1], vec![0, 0]];
    let pm = PresentedModule::new(Matrix::from_i64_rows(RingSpec::Integer, &rows));
    assert!(pm.quotient_rank().is_err());
    let free = PresentedModule::new(Matrix::from_i64_rows(RingSpec::Integer, &[vec![1], vec![1], vec![0]]));
    assert_eq!(free.quotient_rank().unwrap(), 2);
    for k in 0..2 {
        let v = free.lift(k).unwrap();
        let back = free.project(&v).unwrap();
        assert_eq!(back, vec![(k, RingSpec::Integer.one())]);
    }
}
