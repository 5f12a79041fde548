use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use schur_core::zlinalg::{cokernel_invariants, smith_normal_form, SparseIntMatrix};

/// Determinant by cofactor expansion along the first row.
fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for (j, a) in m[0].iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = a * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        prop::collection::vec(
            prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -12i64..=12], c),
            r,
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn smith_form_is_certified(rows in matrix()) {
        let a = SparseIntMatrix::from_dense(&rows).unwrap();
        let s = smith_normal_form(&a, true);
        for d in &s.diagonal {
            prop_assert!(d.is_positive());
        }
        for w in s.diagonal.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero(), "{} does not divide {}", w[0], w[1]);
        }
        let (u, v) = s.transforms.clone().unwrap();
        let uav = u.mul(&a).unwrap().mul(&v).unwrap();
        prop_assert_eq!(uav.to_dense(), s.diagonal_matrix(a.nrows(), a.ncols()).to_dense());
        prop_assert_eq!(det(&u.to_dense()).abs(), BigInt::one());
        prop_assert_eq!(det(&v.to_dense()).abs(), BigInt::one());
        if a.nrows() == a.ncols() {
            let prod = if s.rank == a.nrows() {
                s.diagonal.iter().product::<BigInt>()
            } else {
                BigInt::zero()
            };
            prop_assert_eq!(det(&a.to_dense()).abs(), prod);
        }
        let plain = smith_normal_form(&a, false);
        prop_assert_eq!(plain.diagonal, s.diagonal);
    }

    #[test]
    fn transpose_keeps_invariants(rows in matrix()) {
        let a = SparseIntMatrix::from_dense(&rows).unwrap();
        prop_assert_eq!(smith_normal_form(&a, false).diagonal, smith_normal_form(&a.transpose(), false).diagonal);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Large sparse inputs take the unit-pivot path; the dense path with
    /// transforms must agree.
    #[test]
    fn sparse_path_matches_dense(entries in prop::collection::vec((0usize..70, 0usize..80, -3i64..=3), 150..260)) {
        let a = SparseIntMatrix::from_triplets(70, 80, entries.into_iter().map(|(r, c, v)| (r, c, BigInt::from(v)))).unwrap();
        let sparse = smith_normal_form(&a, false);
        let dense = smith_normal_form(&a, true);
        prop_assert_eq!(&sparse.diagonal, &dense.diagonal);
        let (free, torsion) = cokernel_invariants(&a).unwrap();
        prop_assert_eq!(free, 80 - dense.rank);
        let expected: Vec<BigInt> = dense.diagonal.iter().filter(|d| !d.is_one()).cloned().collect();
        let got: Vec<BigInt> = torsion.factors().iter().map(|&d| BigInt::from(d)).collect();
        prop_assert_eq!(got, expected);
    }
}
