use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::poly::{ExponentVector, Polynomial};

/// Coefficients of a list of polynomials over the union of their supports.
/// Columns follow the canonical monomial order, largest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientMatrix {
    pub columns: Vec<ExponentVector>,
    /// Each row scaled by the LCM of its denominators, so entries are
    /// integers with the same row space.
    pub rows: Vec<Vec<BigInt>>,
}

impl CoefficientMatrix {
    pub fn from_polynomials(polys: &[Polynomial]) -> Self {
        let support: BTreeSet<&ExponentVector> = polys.iter().flat_map(|p| p.monomials()).collect();
        let columns: Vec<ExponentVector> = support.into_iter().rev().cloned().collect();
        let rows = polys
            .iter()
            .map(|p| {
                let lcm = p
                    .terms()
                    .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
                columns
                    .iter()
                    .map(|e| {
                        let c = p.coeff(e);
                        c.numer() * (&lcm / c.denom())
                    })
                    .collect()
            })
            .collect();
        CoefficientMatrix { columns, rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn rank(&self) -> usize {
        bareiss_rank(self.rows.clone())
    }
}

/// Rank by fraction-free elimination. The pivot is the first row with a
/// nonzero entry in the leftmost remaining column.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut r = 0usize;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                let v = pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn rational_rank(m: &[Vec<i64>]) -> usize {
        let mut a: Vec<Vec<BigRational>> = m
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        let ncols = a.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..ncols {
            let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for i in 0..a.len() {
                if i != rank && !a[i][c].is_zero() {
                    let f = &a[i][c] / &a[rank][c];
                    for j in 0..ncols {
                        let s = &f * &a[rank][j];
                        a[i][j] -= s;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
        m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(bareiss_rank(to_big(&[vec![1, 2], vec![2, 4]])), 1);
        assert_eq!(bareiss_rank(to_big(&[vec![0, 1, 0], vec![0, 0, 1], vec![0, 1, 1]])), 2);
        assert_eq!(bareiss_rank(to_big(&[vec![2, 3, 5], vec![7, 11, 13], vec![17, 19, 23]])), 3);
        assert_eq!(bareiss_rank(vec![]), 0);
    }

    #[test]
    fn matrix_from_polynomials() {
        let x = Polynomial::var(2, 0).unwrap();
        let y = Polynomial::var(2, 1).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        let p = (&(&x * &x).scale(&half)) - &(&x * &y);
        let q = &x * &y;
        let m = CoefficientMatrix::from_polynomials(&[p.clone(), q, p]);
        assert_eq!(m.ncols(), 2);
        assert_eq!(m.rows[0], vec![BigInt::from(1), BigInt::from(-2)]);
        assert_eq!(m.rank(), 2);
    }

    proptest! {
        #[test]
        fn agrees_with_rational_elimination(
            m in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..7)
        ) {
            prop_assert_eq!(bareiss_rank(to_big(&m)), rational_rank(&m));
        }

        #[test]
        fn rank_one_products(
            u in prop::collection::vec(-4i64..=4, 1..6),
            v in prop::collection::vec(-4i64..=4, 1..6),
        ) {
            let m: Vec<Vec<i64>> = u.iter().map(|a| v.iter().map(|b| a * b).collect()).collect();
            let expect = usize::from(u.iter().any(|&a| a != 0) && v.iter().any(|&b| b != 0));
            prop_assert_eq!(bareiss_rank(to_big(&m)), expect);
        }
    }
}
