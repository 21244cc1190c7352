//! Confluent Vandermonde forms `[n1 ... nN]` and their combinatorial labels.
//!
//! Entry `n_i` says that the normalized Vandermonde determinant is
//! differentiated `N - n_i - 1` times with respect to `t_i`, so every entry
//! lies in `0..N`. Column `i` of the underlying determinant holds
//! `t_i^(n_i - r) / (n_i - r)!` in row `r = 0, 1, ...` and zero once the
//! exponent would go negative.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{sign_of_sequence, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("a form needs at least one entry")]
    Empty,
    #[error("entry {value} at position {position} is outside 0..{n}")]
    EntryOutOfRange {
        position: usize,
        value: i64,
        n: usize,
    },
    #[error("cannot parse form literal {0:?}")]
    Parse(String),
    #[error("form {0} is not regular; class is defined for regular forms only")]
    NotRegular(CvForm),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "FormJson", into = "FormJson")]
pub struct CvForm {
    entries: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct FormJson {
    entries: Vec<i64>,
}

impl TryFrom<FormJson> for CvForm {
    type Error = FormError;
    fn try_from(j: FormJson) -> Result<Self, FormError> {
        CvForm::from_signed(&j.entries)
    }
}

impl From<CvForm> for FormJson {
    fn from(f: CvForm) -> Self {
        FormJson {
            entries: f.entries.iter().map(|&e| e as i64).collect(),
        }
    }
}

/// Outcome of repeatedly applying the zero-removal rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroRemoval {
    /// `original = sign * form`, and `form` has no zero entry.
    Form { sign: i8, form: CvForm, steps: usize },
    /// The form is the constant `0`, `1` or `-1`.
    Scalar(i8),
}

/// A type (or class) vector `(k1 ... kN)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TypeVector {
    pub entries: Vec<i64>,
    pub is_class: bool,
}

impl TypeVector {
    pub fn new(entries: Vec<i64>) -> Self {
        let is_class = entries.windows(2).all(|w| w[0] >= w[1]);
        TypeVector { entries, is_class }
    }

    pub fn sum(&self) -> i64 {
        self.entries.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Parses `(k1 k2 ...)`, `k1,k2,...` or a run of single digits such as
    /// `44321110`.
    pub fn parse(s: &str) -> Result<Self, FormError> {
        let inner = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']'])
            .trim();
        let tokens: Vec<&str> = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        let entries: Option<Vec<i64>> = if tokens.len() == 1 && tokens[0].len() > 1 {
            tokens[0]
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as i64))
                .collect()
        } else {
            tokens.iter().map(|t| t.parse().ok()).collect()
        };
        match entries {
            Some(e) if !e.is_empty() => Ok(TypeVector::new(e)),
            _ => Err(FormError::Parse(s.to_string())),
        }
    }
}

impl fmt::Display for TypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(" "))
    }
}

impl CvForm {
    pub fn new(entries: Vec<u32>) -> Result<Self, FormError> {
        let n = entries.len();
        if n == 0 {
            return Err(FormError::Empty);
        }
        if let Some((position, &v)) = entries.iter().enumerate().find(|(_, &v)| v as usize >= n) {
            return Err(FormError::EntryOutOfRange {
                position,
                value: v as i64,
                n,
            });
        }
        Ok(CvForm { entries })
    }

    pub fn from_signed(entries: &[i64]) -> Result<Self, FormError> {
        let n = entries.len();
        if n == 0 {
            return Err(FormError::Empty);
        }
        if let Some((position, &value)) = entries
            .iter()
            .enumerate()
            .find(|(_, &v)| v < 0 || v as usize >= n)
        {
            return Err(FormError::EntryOutOfRange { position, value, n });
        }
        Ok(CvForm {
            entries: entries.iter().map(|&v| v as u32).collect(),
        })
    }

    /// The top form `[N-1 ... N-1]`, the normalized Vandermonde itself.
    pub fn vandermonde(n: usize) -> Self {
        CvForm {
            entries: vec![n as u32 - 1; n],
        }
    }

    /// The unit form `[0 1 ... N-1]`.
    pub fn unit(n: usize) -> Self {
        CvForm {
            entries: (0..n as u32).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Sum of entries minus `N(N-1)/2`. Negative only for forms that vanish.
    pub fn degree(&self) -> i64 {
        let n = self.n() as i64;
        self.entries.iter().map(|&e| e as i64).sum::<i64>() - n * (n - 1) / 2
    }

    /// Applies `[.. 0 ..] = (-1)^(N-1) [.. N-1 ..]` (all other entries
    /// decremented) to the leftmost zero until no zero is left or the value
    /// is known to be a scalar.
    pub fn remove_zeros(&self) -> ZeroRemoval {
        let n = self.n();
        let step_sign: i8 = if n % 2 == 1 { 1 } else { -1 };
        let mut sign = 1i8;
        let mut cur = self.entries.clone();
        let mut steps = 0usize;
        loop {
            let zeros = cur.iter().filter(|&&e| e == 0).count();
            if zeros == 0 {
                return ZeroRemoval::Form {
                    sign,
                    form: CvForm { entries: cur },
                    steps,
                };
            }
            if zeros >= 2 {
                return ZeroRemoval::Scalar(0);
            }
            if all_distinct(&cur) {
                // a permutation of 0..N-1; the sorted form is triangular with unit diagonal
                return ZeroRemoval::Scalar(sign * sign_of_sequence(&cur));
            }
            let k = cur.iter().position(|&e| e == 0).unwrap();
            for (i, e) in cur.iter_mut().enumerate() {
                if i == k {
                    *e = n as u32 - 1;
                } else {
                    *e -= 1;
                }
            }
            sign *= step_sign;
            steps += 1;
        }
    }

    /// Ranks of the entries, ties broken left to right.
    pub fn standard_permutation(&self) -> Permutation {
        let order = self.stable_order();
        let mut ranks = vec![0usize; self.n()];
        for (rank, &i) in order.iter().enumerate() {
            ranks[i] = rank;
        }
        Permutation::from_zero_based(ranks).expect("ranks form a permutation")
    }

    /// `k_i = n_i - s_i + 1` against the standard permutation.
    pub fn type_of(&self) -> TypeVector {
        let s = self.standard_permutation();
        TypeVector::new(
            self.entries
                .iter()
                .zip(s.as_slice())
                .map(|(&n, &s0)| n as i64 - s0 as i64)
                .collect(),
        )
    }

    pub fn is_regular(&self) -> bool {
        let mut sorted = self.entries.clone();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// The type sorted nonincreasing; regular forms only.
    pub fn class_of(&self) -> Result<TypeVector, FormError> {
        if !self.is_regular() {
            return Err(FormError::NotRegular(self.clone()));
        }
        let mut k = self.type_of().entries;
        k.sort_unstable_by(|a, b| b.cmp(a));
        Ok(TypeVector::new(k))
    }

    /// Stable sort of the entries. `perm` lists, for each sorted position,
    /// the original variable; `sign` is the sign of that relabeling.
    pub fn sort_entries(&self) -> SortedForm {
        let order = self.stable_order();
        let entries = order.iter().map(|&i| self.entries[i]).collect();
        let perm = Permutation::from_zero_based(order).expect("stable order is a permutation");
        let sign = perm.sign();
        SortedForm {
            form: CvForm { entries },
            perm,
            sign,
        }
    }

    fn stable_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.n()).collect();
        idx.sort_by_key(|&i| self.entries[i]);
        idx
    }

    /// The form with entry `i` lowered by `k`, `None` when it would go
    /// negative (the differentiated column is zero).
    pub fn lowered(&self, i: usize, k: u32) -> Option<CvForm> {
        let e = self.entries[i].checked_sub(k)?;
        let mut entries = self.entries.clone();
        entries[i] = e;
        Some(CvForm { entries })
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] <= w[1])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortedForm {
    pub form: CvForm,
    pub perm: Permutation,
    pub sign: i8,
}

fn all_distinct(v: &[u32]) -> bool {
    let mut seen = vec![false; v.len()];
    v.iter()
        .all(|&e| (e as usize) < seen.len() && !std::mem::replace(&mut seen[e as usize], true))
}

impl fmt::Display for CvForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

impl FromStr for CvForm {
    type Err = FormError;

    /// Accepts `[2 2 3 3]`, `2,2,3,3` and mixtures of commas and whitespace.
    fn from_str(s: &str) -> Result<Self, FormError> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .unwrap_or(t);
        if inner.contains(['[', ']']) {
            return Err(FormError::Parse(s.to_string()));
        }
        let values: Result<Vec<i64>, _> = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|x| !x.is_empty())
            .map(|x| x.parse::<i64>())
            .collect();
        match values {
            Ok(v) if !v.is_empty() => CvForm::from_signed(&v),
            Ok(_) => Err(FormError::Empty),
            Err(_) => Err(FormError::Parse(s.to_string())),
        }
    }
}
