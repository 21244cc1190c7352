//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are `t1, ..., tN`; a [`Polynomial`] always knows its variable
//! count `N`, including the zero polynomial. Coefficients are
//! [`BigRational`] and are kept reduced, zero coefficients are never stored.
//!
//! The canonical monomial order is graded, then lexicographic descending with
//! `t1 > t2 > ... > tN`. It drives [`Polynomial::canonical_text`], the JSON
//! form and the column order of coefficient matrices.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    VarOutOfRange { index: usize, nvars: usize },
    #[error("exponent vector has length {len}, expected {nvars}")]
    BadExponentLength { len: usize, nvars: usize },
    #[error("invalid coefficient: {0}")]
    BadCoefficient(String),
    #[error("polynomial needs at least one variable")]
    NoVariables,
}

/// Powers of `t1..tN` in one monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        ExponentVector(exponents)
    }

    pub fn zeros(nvars: usize) -> Self {
        ExponentVector(vec![0; nvars])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    fn mul(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl std::ops::Index<usize> for ExponentVector {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

// Ascending graded-lex order: total degree first, then lexicographic on the
// exponents. Canonical output walks this order backwards.
impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<ExponentVector, BigRational>,
}

fn check_same(p: &Polynomial, q: &Polynomial) -> Result<(), PolyError> {
    if p.nvars != q.nvars {
        return Err(PolyError::VarCountMismatch {
            left: p.nvars,
            right: q.nvars,
        });
    }
    Ok(())
}

/// `n! / (n-k)!`
fn falling_factorial(n: u32, k: u32) -> BigInt {
    (n - k + 1..=n).fold(BigInt::one(), |acc, x| acc * BigInt::from(x))
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::monomial(ExponentVector::zeros(nvars), c)
    }

    /// The variable `t_{index+1}`.
    pub fn var(nvars: usize, index: usize) -> Result<Self, PolyError> {
        if index >= nvars {
            return Err(PolyError::VarOutOfRange { index, nvars });
        }
        let mut e = vec![0; nvars];
        e[index] = 1;
        Ok(Self::monomial(ExponentVector(e), BigRational::one()))
    }

    pub fn monomial(exp: ExponentVector, coeff: BigRational) -> Self {
        let mut p = Polynomial::zero(exp.len());
        if !coeff.is_zero() {
            p.terms.insert(exp, coeff);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (ExponentVector, BigRational)>,
    {
        let mut p = Polynomial::zero(nvars);
        for (exp, c) in terms {
            if exp.len() != nvars {
                return Err(PolyError::BadExponentLength {
                    len: exp.len(),
                    nvars,
                });
            }
            p.add_term(exp, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coeff(&self, exp: &ExponentVector) -> BigRational {
        self.terms.get(exp).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Terms in canonical order (largest monomial first).
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &ExponentVector> {
        self.terms.keys().rev()
    }

    /// Total degree of the leading monomial, `None` for zero.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().map(|e| e.total_degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.total_degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub(crate) fn add_term(&mut self, exp: ExponentVector, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        check_same(self, other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        check_same(self, other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        check_same(self, other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.mul(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// In-place `self += other`.
    pub fn add_assign_poly(&mut self, other: &Polynomial) -> Result<(), PolyError> {
        check_same(self, other)?;
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
        Ok(())
    }

    pub fn scale(&self, factor: &BigRational) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * factor))
                .collect(),
        }
    }

    /// Partial derivative of the given order with respect to `t_{var+1}`.
    pub fn differentiate(&self, var: usize, order: u32) -> Result<Polynomial, PolyError> {
        if var >= self.nvars {
            return Err(PolyError::VarOutOfRange {
                index: var,
                nvars: self.nvars,
            });
        }
        if order == 0 {
            return Ok(self.clone());
        }
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            let p = e.0[var];
            if p < order {
                continue;
            }
            let mut ne = e.clone();
            ne.0[var] = p - order;
            let f = BigRational::from_integer(falling_factorial(p, order));
            out.add_term(ne, c * f);
        }
        Ok(out)
    }

    /// `sum_i d^k/dt_i^k`.
    pub fn symmetrized_derivative(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for var in 0..self.nvars {
            let d = self
                .differentiate(var, k)
                .expect("variable index within range");
            out.add_assign_poly(&d).expect("same variable count");
        }
        out
    }

    /// Deterministic text rendering, e.g. `1/2*t2^2 - t2*t4 - 1/2*t3^2 + t3*t4`.
    pub fn canonical_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let a = c.abs();
            let mono = monomial_text(e);
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&a.to_string());
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }

    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson {
            nvars: self.nvars,
            terms: self
                .terms()
                .map(|(e, c)| TermJson {
                    exp: e.0.clone(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolynomialJson) -> Result<Polynomial, PolyError> {
        let terms = json
            .terms
            .iter()
            .map(|t| {
                let num: BigInt = t
                    .num
                    .parse()
                    .map_err(|_| PolyError::BadCoefficient(t.num.clone()))?;
                let den: BigInt = t
                    .den
                    .parse()
                    .map_err(|_| PolyError::BadCoefficient(t.den.clone()))?;
                if den.is_zero() {
                    return Err(PolyError::BadCoefficient("zero denominator".into()));
                }
                Ok((ExponentVector(t.exp.clone()), BigRational::new(num, den)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Polynomial::from_terms(json.nvars, terms)
    }
}

fn monomial_text(e: &ExponentVector) -> String {
    let mut parts = Vec::new();
    for (i, &p) in e.0.iter().enumerate() {
        match p {
            0 => {}
            1 => parts.push(format!("t{}", i + 1)),
            _ => parts.push(format!("t{}^{}", i + 1, p)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_text())
    }
}

/// Serialized polynomial: `{"nvars": N, "terms": [{"exp": [..], "num": "..", "den": ".."}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub nvars: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub num: String,
    pub den: String,
}

// Operator forms panic on a variable-count mismatch; use the `try_*`
// methods when the operands come from untrusted input.

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial add")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self.add_assign_poly(&rhs).expect("polynomial add");
        self
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial sub")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial mul")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// `1/n!` as an exact rational.
pub fn inv_factorial(n: u32) -> BigRational {
    BigRational::new(BigInt::one(), falling_factorial(n, n))
}

pub fn factorial(n: u32) -> BigInt {
    falling_factorial(n, n)
}
