//! Reference evaluations that do not use the row-block machinery.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cvform::CvForm;
use crate::poly::{inv_factorial, ExponentVector, Polynomial};

/// The `N x N` matrix of a form: row `r`, column `j` holds
/// `t_j^(n_j - r) / (n_j - r)!`, or zero when the exponent is negative.
pub fn form_matrix(f: &CvForm) -> Vec<Vec<Polynomial>> {
    let n = f.n();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|j| {
                    let nj = f.entries()[j] as usize;
                    if nj < r {
                        return Polynomial::zero(n);
                    }
                    let p = (nj - r) as u32;
                    let mut e = vec![0u32; n];
                    e[j] = p;
                    Polynomial::monomial(ExponentVector::new(e), inv_factorial(p))
                })
                .collect()
        })
        .collect()
}

/// Determinant of a square polynomial matrix by cofactor expansion along
/// columns, memoized over row subsets.
pub fn determinant(matrix: &[Vec<Polynomial>]) -> Polynomial {
    let n = matrix.len();
    assert!(n > 0 && n < usize::BITS as usize, "unsupported matrix size {n}");
    assert!(matrix.iter().all(|row| row.len() == n), "matrix must be square");
    let nvars = matrix[0][0].nvars();
    let full = (1usize << n) - 1;
    let mut table: Vec<Option<Polynomial>> = vec![None; 1 << n];
    table[0] = Some(Polynomial::one(nvars));
    // masks in order of popcount so that every submask is ready
    let mut masks: Vec<usize> = (1..=full).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        let col = mask.count_ones() as usize - 1;
        let mut acc = Polynomial::zero(nvars);
        let mut below = 0usize;
        for r in 0..n {
            if mask & (1 << r) == 0 {
                continue;
            }
            let entry = &matrix[r][col];
            if !entry.is_zero() {
                let sub = table[mask & !(1 << r)].as_ref().expect("submask computed");
                if !sub.is_zero() {
                    let mut term = entry * sub;
                    if (below + col) % 2 == 1 {
                        term = -term;
                    }
                    acc.add_assign_poly(&term).expect("same variable count");
                }
            }
            below += 1;
        }
        table[mask] = Some(acc);
    }
    table[full].take().expect("full mask computed")
}

/// Direct determinant of the form's matrix.
pub fn naive_oracle(f: &CvForm) -> Polynomial {
    determinant(&form_matrix(f))
}

/// `prod_{i<j} (t_i - t_j) / (j - i)`.
pub fn normalized_vandermonde(n: usize) -> Polynomial {
    let mut out = Polynomial::one(n);
    for i in 0..n {
        for j in i + 1..n {
            let ti = Polynomial::var(n, i).expect("index in range");
            let tj = Polynomial::var(n, j).expect("index in range");
            let scale = BigRational::new(BigInt::from(1), BigInt::from(j - i));
            out = &out * &(&ti - &tj).scale(&scale);
        }
    }
    out
}

/// Differentiates the normalized Vandermonde `N - n_i - 1` times in `t_i`.
pub fn derivative_oracle(f: &CvForm) -> Polynomial {
    let n = f.n();
    let mut p = normalized_vandermonde(n);
    for (i, &e) in f.entries().iter().enumerate() {
        let order = (n - 1) as u32 - e;
        p = p.differentiate(i, order).expect("index in range");
        if p.is_zero() {
            break;
        }
    }
    p
}

/// Number of nonzero products in the Leibniz expansion of the form's matrix.
pub fn leibniz_nonzero_terms(f: &CvForm) -> u128 {
    let n = f.n();
    let mut count = vec![0u128; 1 << n];
    count[0] = 1;
    for mask in 1usize..(1 << n) {
        let col = mask.count_ones() as usize - 1;
        let nj = f.entries()[col] as usize;
        let mut c = 0u128;
        for r in 0..=nj.min(n - 1) {
            if mask & (1 << r) != 0 {
                c += count[mask & !(1 << r)];
            }
        }
        count[mask] = c;
    }
    count[(1 << n) - 1]
}
