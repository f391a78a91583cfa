use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use weylhom::linalg::{rank_mod_p, smith_normal_form, SparseIntMatrix};

fn det(m: &[Vec<i64>]) -> BigInt {
    match m.len() {
        0 => BigInt::from(1),
        1 => BigInt::from(m[0][0]),
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| [&row[..j], &row[j + 1..]].concat())
                    .collect();
                let term = BigInt::from(m[0][j]) * det(&minor);
                if j % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k - 1..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// Determinantal divisors: gcd of all k x k minors, for k = 1..=min(r, c).
fn minor_gcds(m: &[Vec<i64>], cols: usize) -> Vec<BigInt> {
    let rows = m.len();
    (1..=rows.min(cols))
        .map(|k| {
            let mut g = BigInt::zero();
            for rs in subsets(rows, k) {
                for cs in subsets(cols, k) {
                    let sub: Vec<Vec<i64>> = rs
                        .iter()
                        .map(|&i| cs.iter().map(|&j| m[i][j]).collect())
                        .collect();
                    g = g.gcd(&det(&sub));
                }
            }
            g
        })
        .collect()
}

fn matrix() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        (
            Just(c),
            prop::collection::vec(prop::collection::vec(-3i64..=3, c), r),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn diagonal_matches_minor_gcds((cols, rows) in matrix()) {
        let snf = smith_normal_form(&SparseIntMatrix::from_dense(&rows));
        let divisors = minor_gcds(&rows, cols);
        let mut prefix = BigInt::from(1);
        for (k, d) in divisors.iter().enumerate() {
            if d.is_zero() {
                prop_assert!(snf.rank <= k);
                break;
            }
            prop_assert!(k < snf.rank);
            prefix *= &snf.diagonal[k];
            prop_assert_eq!(&prefix, d);
        }
        for w in snf.diagonal.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(snf.diagonal.iter().all(|d| d.is_positive()));
    }

    #[test]
    fn invariant_under_permutation(
        (cols, rows) in matrix(),
        seed in any::<u64>(),
    ) {
        let m = SparseIntMatrix::from_dense(&rows);
        let mut rp: Vec<usize> = (0..rows.len()).collect();
        let mut cp: Vec<usize> = (0..cols).collect();
        let mut s = seed;
        for v in [&mut rp, &mut cp] {
            for i in (1..v.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                v.swap(i, (s >> 33) as usize % (i + 1));
            }
        }
        let a = smith_normal_form(&m);
        let b = smith_normal_form(&m.permuted(&rp, &cp));
        prop_assert_eq!(a.diagonal, b.diagonal);
    }

    #[test]
    fn rank_mod_p_agrees_with_smith(
        rows in prop::collection::vec(prop::collection::vec(-9i64..=9, 6), 1..8),
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
    ) {
        let m = SparseIntMatrix::from_dense(&rows);
        prop_assert_eq!(rank_mod_p(&m, p).unwrap(), smith_normal_form(&m).rank_mod(p));
    }
}
