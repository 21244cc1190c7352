//! Integer counting series: q-factorials, q-binomials and the bivariate
//! ribbon generating function.

use std::fmt;

use serde::Serialize;

/// Coefficients `c_0, c_1, ...` of a univariate counting polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountSeries {
    pub coeffs: Vec<u64>,
}

impl CountSeries {
    pub fn one() -> Self {
        CountSeries { coeffs: vec![1] }
    }

    pub fn coeff(&self, d: usize) -> u64 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn total(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    pub fn mul(&self, other: &CountSeries) -> CountSeries {
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j]
                    .checked_add(a.checked_mul(b).expect("count overflow"))
                    .expect("count overflow");
            }
        }
        CountSeries { coeffs: out }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.len() > 1 && self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        self
    }

    /// Renders as a polynomial in `var` with descending powers, e.g.
    /// `t^5 + 5t^4 + 2t^3`.
    pub fn render(&self, var: &str) -> String {
        let mut parts = Vec::new();
        for (d, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match d {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{d}"),
            };
            parts.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for CountSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Coefficients `c[d][l]` of a polynomial in `q` (index `d`) and `t` (index `l`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BivariateSeries {
    pub coeffs: Vec<Vec<u64>>,
}

impl BivariateSeries {
    pub fn coeff(&self, d: usize, l: usize) -> u64 {
        self.coeffs
            .get(d)
            .and_then(|row| row.get(l))
            .copied()
            .unwrap_or(0)
    }

    /// The coefficient of `q^d` as a polynomial in `t`.
    pub fn at_q(&self, d: usize) -> CountSeries {
        let row = self.coeffs.get(d).cloned().unwrap_or_else(|| vec![0]);
        CountSeries { coeffs: row }.trimmed()
    }

    /// Value at `q = t = 1`.
    pub fn total(&self) -> u64 {
        self.coeffs.iter().flatten().sum()
    }
}

/// `[N]_q! = prod_{i=1}^{N-1} (1 + q + ... + q^i)`, the Mahonian numbers
/// `T(N, d)`.
pub fn q_factorial(n: usize) -> CountSeries {
    (1..n).fold(CountSeries::one(), |acc, i| {
        acc.mul(&CountSeries {
            coeffs: vec![1; i + 1],
        })
    })
}

/// Gaussian binomial `[n choose k]_q` by the q-Pascal recurrence.
pub fn q_binomial(n: usize, k: usize) -> CountSeries {
    if k > n {
        return CountSeries { coeffs: vec![0] };
    }
    // row[j] = [i choose j]_q
    let mut row: Vec<Vec<u64>> = vec![vec![1]];
    for i in 1..=n {
        let mut next: Vec<Vec<u64>> = Vec::with_capacity(i + 1);
        for j in 0..=i {
            if j == 0 || j == i {
                next.push(vec![1]);
                continue;
            }
            // [i, j] = [i-1, j-1] + q^j [i-1, j]
            let a = &row[j - 1];
            let b = &row[j];
            let len = a.len().max(b.len() + j);
            let mut c = vec![0u64; len];
            for (d, &x) in a.iter().enumerate() {
                c[d] += x;
            }
            for (d, &x) in b.iter().enumerate() {
                c[d + j] += x;
            }
            next.push(c);
        }
        row = next;
    }
    CountSeries {
        coeffs: row[k].clone(),
    }
    .trimmed()
}

/// `R(N; q, t) = prod_{k=1}^{N-1} (1 + q^k t)`: the coefficient of
/// `q^d t^l` counts `N`-box ribbons of index `d` and height `l + 1`.
pub fn ribbon_generating_function(n: usize) -> BivariateSeries {
    let top = n * n.saturating_sub(1) / 2;
    let mut c = vec![vec![0u64; n.max(1)]; top + 1];
    c[0][0] = 1;
    for k in 1..n {
        let mut next = c.clone();
        for d in 0..=top {
            for l in 0..n {
                let v = c[d][l];
                if v != 0 && d + k <= top && l + 1 < n {
                    next[d + k][l + 1] += v;
                }
            }
        }
        c = next;
    }
    BivariateSeries { coeffs: c }
}

/// The same series as `sum_l [N-1 choose l]_q q^(l(l+1)/2) t^l`.
pub fn ribbon_generating_function_by_qbinomials(n: usize) -> BivariateSeries {
    let top = n * n.saturating_sub(1) / 2;
    let mut c = vec![vec![0u64; n.max(1)]; top + 1];
    for l in 0..n {
        let shift = l * (l + 1) / 2;
        for (d, &v) in q_binomial(n - 1, l).coeffs.iter().enumerate() {
            if v != 0 {
                c[d + shift][l] += v;
            }
        }
    }
    BivariateSeries { coeffs: c }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mahonian_numbers() {
        assert_eq!(q_factorial(4).coeffs, vec![1, 3, 5, 6, 5, 3, 1]);
        assert_eq!(q_factorial(2).coeffs, vec![1, 1]);
        assert_eq!(q_factorial(1).coeffs, vec![1]);
        let t8 = q_factorial(8);
        assert_eq!(t8.coeff(16), 3450);
        assert_eq!(t8.coeff(12), 3450);
        assert_eq!(t8.total(), 40320);
        assert_eq!(t8.degree(), 28);
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(q_binomial(4, 2).coeffs, vec![1, 1, 2, 1, 1]);
        assert_eq!(q_binomial(5, 0).coeffs, vec![1]);
        assert_eq!(q_binomial(5, 5).coeffs, vec![1]);
        assert_eq!(q_binomial(2, 3).coeffs, vec![0]);
        assert_eq!(q_binomial(7, 3).total(), 35);
    }

    #[test]
    fn ribbon_series_examples() {
        let r = ribbon_generating_function(8);
        assert_eq!(r.at_q(16).render("t"), "t^5 + 5t^4 + 2t^3");
        assert_eq!(r.at_q(12).render("t"), "2t^4 + 5t^3 + t^2");
        assert_eq!(r.coeff(28, 7), 1);
        assert_eq!(r.coeff(0, 0), 1);
        for n in 1..=10 {
            assert_eq!(ribbon_generating_function(n).total(), 1 << (n - 1));
        }
    }

    #[test]
    fn q_binomial_theorem() {
        for n in 1..=9 {
            assert_eq!(
                ribbon_generating_function(n),
                ribbon_generating_function_by_qbinomials(n),
                "N = {n}"
            );
        }
    }

    #[test]
    fn rendering() {
        assert_eq!(CountSeries { coeffs: vec![3, 0, 1] }.render("q"), "q^2 + 3");
        assert_eq!(CountSeries { coeffs: vec![0, 2] }.render("t"), "2t");
        assert_eq!(CountSeries { coeffs: vec![0] }.render("t"), "0");
        assert_eq!(q_factorial(3).to_string(), "1 2 2 1");
    }
}
