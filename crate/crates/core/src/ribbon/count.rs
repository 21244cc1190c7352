use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::SkewPartition;
use crate::poly::{factorial, inv_factorial};

/// Determinant over the rationals by Gaussian elimination.
pub fn rational_determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let factor = &m[r][c] / &pivot;
            let (top, bottom) = m.split_at_mut(r);
            for (x, p) in bottom[0][c..].iter_mut().zip(&top[c][c..]) {
                *x -= &factor * p;
            }
        }
    }
    det
}

/// Standard fillings of `lambda / mu` by Aitken's determinant
/// `n! det[1 / (lambda_i - mu_j - i + j)!]`.
pub fn count_syt(sp: &SkewPartition) -> u128 {
    let l = sp.lambda.len();
    if l == 0 {
        return 1;
    }
    let m: Vec<Vec<BigRational>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| {
                    let a = sp.lambda[i] as i64 - sp.mu_at(j) as i64 - i as i64 + j as i64;
                    if a < 0 {
                        BigRational::zero()
                    } else {
                        inv_factorial(a as u32)
                    }
                })
                .collect()
        })
        .collect();
    let v = rational_determinant(m) * BigRational::from_integer(factorial(sp.size() as u32));
    assert!(v.is_integer(), "Aitken determinant must be integral");
    let n: BigInt = v.to_integer();
    n.to_u128().expect("count fits in u128")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cvform::TypeVector;
    use crate::ribbon::{class_to_ribbon, enumerate_ribbons, ribbons_of_degree};

    fn sp(lambda: &[u32], mu: &[u32]) -> SkewPartition {
        SkewPartition {
            lambda: lambda.to_vec(),
            mu: mu.to_vec(),
        }
    }

    #[test]
    fn straight_shapes() {
        assert_eq!(count_syt(&sp(&[5], &[])), 1);
        assert_eq!(count_syt(&sp(&[1, 1, 1], &[])), 1);
        assert_eq!(count_syt(&sp(&[2, 1], &[])), 2);
        assert_eq!(count_syt(&sp(&[3, 2, 1], &[])), 16);
        assert_eq!(count_syt(&sp(&[2, 1], &[1])), 2);
    }

    #[test]
    fn figure_one_shape() {
        assert_eq!(count_syt(&sp(&[4, 4, 2, 2, 2], &[3, 1, 1, 1])), 315);
        let r = class_to_ribbon(&TypeVector::parse("44321110").unwrap()).unwrap();
        assert_eq!(count_syt(&r.to_skew_partition()), 315);
    }

    #[test]
    fn degree_sixteen_decomposition() {
        let counts: Vec<u128> = ribbons_of_degree(8, 16)
            .unwrap()
            .iter()
            .map(|r| count_syt(&r.to_skew_partition()))
            .collect();
        assert_eq!(counts, [105, 589, 315, 315, 1385, 181, 245, 315]);
        assert_eq!(counts.iter().sum::<u128>(), 3450);

        let flipped: Vec<u128> = ribbons_of_degree(8, 12)
            .unwrap()
            .iter()
            .map(|r| count_syt(&r.to_skew_partition()))
            .collect();
        assert_eq!(flipped, [315, 245, 181, 1385, 315, 315, 589, 105]);
    }

    #[test]
    fn counts_refine_the_mahonian_numbers() {
        for n in 1..=8 {
            let t = crate::series::q_factorial(n);
            let mut total = 0u128;
            for d in 0..=n * (n - 1) / 2 {
                let s: u128 = ribbons_of_degree(n, d as i64)
                    .unwrap()
                    .iter()
                    .map(|r| count_syt(&r.to_skew_partition()))
                    .sum();
                assert_eq!(s, t.coeff(d) as u128, "N = {n}, d = {d}");
                total += s;
            }
            let all: u128 = enumerate_ribbons(n).iter().map(|r| count_syt(&r.to_skew_partition())).sum();
            assert_eq!(all, total);
            assert_eq!(total, (1..=n as u128).product::<u128>());
        }
    }

    #[test]
    fn singular_determinant() {
        let one = BigRational::one();
        let m = vec![vec![one.clone(), one.clone()], vec![one.clone(), one]];
        assert!(rational_determinant(m).is_zero());
    }
}
