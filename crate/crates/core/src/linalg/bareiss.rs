use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::ExactMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elimination {
    pub rank: usize,
    pub determinant: BigInt,
}

/// Fraction-free Gaussian elimination (Bareiss).
///
/// Pivot is the first nonzero entry in the current column; columns
/// without a pivot are skipped, which keeps every division exact (each
/// entry after step `k` is a `(k+1)`-minor of the input).
pub fn bareiss_eliminate(m: &ExactMatrix) -> Elimination {
    let n = m.dim();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| m.row(i).iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut prev = BigInt::one();
    let mut negate = false;
    let mut rank = 0;

    for col in 0..n {
        if rank == n {
            break;
        }
        let Some(p) = (rank..n).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            negate = !negate;
        }
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = &pivot_row[col];
        tail.par_iter_mut().for_each(|row| {
            let factor = std::mem::take(&mut row[col]);
            for j in col + 1..n {
                let mut v = &row[j] * pivot;
                if !factor.is_zero() {
                    v -= &factor * &pivot_row[j];
                }
                row[j] = v / &prev;
            }
        });
        prev = a[rank][col].clone();
        rank += 1;
    }

    let determinant = if rank == n {
        let d = a[n - 1][n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    } else {
        BigInt::zero()
    };
    Elimination { rank, determinant }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn examples() {
        let k4 = ExactMatrix::from_fn(4, |i, j| if i == j { 3 } else { -1 }).unwrap();
        assert_eq!(
            bareiss_eliminate(&k4),
            Elimination {
                rank: 3,
                determinant: 0.into()
            }
        );
        assert_eq!(
            bareiss_eliminate(&ExactMatrix::zeros(3).unwrap()),
            Elimination {
                rank: 0,
                determinant: 0.into()
            }
        );
        assert_eq!(
            bareiss_eliminate(&m(&[&[2, 1], &[1, 2]])),
            Elimination {
                rank: 2,
                determinant: 3.into()
            }
        );
    }

    #[test]
    fn row_swaps_flip_sign() {
        assert_eq!(bareiss_eliminate(&m(&[&[0, 1], &[1, 0]])).determinant, BigInt::from(-1));
        assert_eq!(
            bareiss_eliminate(&m(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])).determinant,
            BigInt::from(-1)
        );
        assert_eq!(
            bareiss_eliminate(&m(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]])).determinant,
            BigInt::from(1)
        );
    }

    #[test]
    fn rank_with_skipped_columns() {
        // first column zero, rank 2
        let e = bareiss_eliminate(&m(&[&[0, 1, 2], &[0, 2, 4], &[0, 1, 3]]));
        assert_eq!(e.rank, 2);
        assert!(e.determinant.is_zero());
        let e = bareiss_eliminate(&m(&[&[1, 2, 3], &[2, 4, 6], &[3, 6, 9]]));
        assert_eq!(e.rank, 1);
    }
}
