//! Smith normal form for small integer matrices.

use crate::error::{Error, Result};

/// Invariant factors `d_1 | d_2 | ...` of an integer matrix (nonzero ones only).
#[allow(clippy::needless_range_loop)]
pub fn invariant_factors(matrix: &[Vec<i64>]) -> Result<Vec<i64>> {
    let mut m: Vec<Vec<i128>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero entry in the remaining block.
        let Some((pr, pc)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| m[i][j].abs())
        else {
            break;
        };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }
        let mut clean = true;
        let p = m[t][t];
        for i in t + 1..rows {
            let f = m[i][t] / p;
            for j in t..cols {
                m[i][j] -= f * m[t][j];
            }
            clean &= m[i][t] == 0;
        }
        for j in t + 1..cols {
            let f = m[t][j] / p;
            for i in t..rows {
                m[i][j] -= f * m[i][t];
            }
            clean &= m[t][j] == 0;
        }
        if !clean {
            continue;
        }
        // The pivot must divide the rest of the block; otherwise fold a row in and retry.
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0)) {
            for j in t..cols {
                m[t][j] += m[i][j];
            }
            continue;
        }
        factors.push(m[t][t].abs());
        t += 1;
    }
    factors
        .into_iter()
        .map(|f| i64::try_from(f).map_err(|_| Error::Overflow("smith normal form")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::gcd;
    use proptest::prelude::*;

    #[test]
    fn small_examples() {
        assert_eq!(
            invariant_factors(&[vec![2, 0], vec![0, 3]]).unwrap(),
            vec![1, 6]
        );
        assert_eq!(
            invariant_factors(&[vec![2, 4, 4], vec![-6, 6, 12]]).unwrap(),
            vec![2, 6]
        );
        assert_eq!(
            invariant_factors(&[vec![0, 0], vec![0, 0]]).unwrap(),
            Vec::<i64>::new()
        );
        assert_eq!(
            invariant_factors(&[vec![-2, 1, 1], vec![1, -2, 1]]).unwrap(),
            vec![1, 3]
        );
    }

    proptest! {
        // For a 2x3 matrix, d1 = gcd of entries and d1*d2 = gcd of 2x2 minors.
        #[test]
        fn two_by_three_matches_minors(e in proptest::collection::vec(-30i64..30, 6)) {
            let m = vec![e[0..3].to_vec(), e[3..6].to_vec()];
            let f = invariant_factors(&m).unwrap();
            let entries_gcd = e.iter().fold(0, |g, &x| gcd(g, x));
            let minor = |i: usize, j: usize| e[i] * e[3 + j] - e[j] * e[3 + i];
            let minors_gcd = gcd(gcd(minor(0, 1), minor(0, 2)), minor(1, 2));
            match (entries_gcd, minors_gcd) {
                (0, _) => prop_assert!(f.is_empty()),
                (g, 0) => prop_assert_eq!(f, vec![g]),
                (g, h) => {
                    prop_assert_eq!(f.len(), 2);
                    prop_assert_eq!(f[0], g);
                    prop_assert_eq!(f[0] * f[1], h);
                }
            }
        }
    }
}
