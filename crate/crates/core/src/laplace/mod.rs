//! Laplace block expansion of cv-forms.
//!
//! After sorting the entries nondecreasingly, the columns of a form fall into
//! blocks of equal entries. Expanding the determinant along those column
//! blocks gives a sum of products of minors, one minor per block. A row `r`
//! (0-based) placed into the block of entry `a` contributes the power
//! `a - r`, so only rows `r <= a` can enter that block; every other shuffle
//! contains a zero row and drops out. Each surviving term is a [`RowBlock`],
//! written like `+|2 1|2 1|1 0|`.
//!
//! A minor with powers `p_1 > ... > p_m` on variables `t_c1 .. t_cm` is the
//! alternant `det(t_c^p)` divided by `p_1! ... p_m!`, i.e. a Schur
//! polynomial times the Vandermonde of its variables over those factorials.

pub mod oracle;
pub mod shuffle;

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cvform::{CvForm, SortedForm, TypeVector, ZeroRemoval};
use crate::perm::{sign_of_sequence, Permutation};
use crate::poly::{inv_factorial, ExponentVector, Polynomial};

pub use oracle::{derivative_oracle, determinant, form_matrix, naive_oracle, normalized_vandermonde};
pub use shuffle::{block_expand_matrix, shuffles, Shuffle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaplaceError {
    #[error("invalid composition {0:?}")]
    InvalidComposition(Vec<usize>),
    #[error("decoding table needs nondecreasing entries without zeros, got {0}")]
    NotDecodable(CvForm),
    #[error("row-blocks come from different expansions")]
    Incompatible,
    #[error("{0} is not a valid class")]
    InvalidClass(TypeVector),
}

/// Distinct entries of a sorted form, each with its descending power run and
/// the variables of its column block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecodingTable {
    /// Variable indices (0-based) per block of equal entries.
    pub header: Vec<Vec<usize>>,
    /// Distinct entry values `a_1 < ... < a_r`.
    pub entries: Vec<u32>,
    /// Row `j` is `a_j, a_j - 1, ..., 0`.
    pub rows: Vec<Vec<u32>>,
}

impl DecodingTable {
    fn from_parts(values: &[u32], vars: &[usize]) -> Self {
        let mut header: Vec<Vec<usize>> = Vec::new();
        let mut entries: Vec<u32> = Vec::new();
        for (i, &v) in values.iter().enumerate() {
            if entries.last() == Some(&v) {
                header.last_mut().unwrap().push(vars[i]);
            } else {
                entries.push(v);
                header.push(vec![vars[i]]);
            }
        }
        let rows = entries.iter().map(|&a| (0..=a).rev().collect()).collect();
        DecodingTable {
            header,
            entries,
            rows,
        }
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.header.iter().map(|b| b.len()).collect()
    }
}

impl fmt::Display for DecodingTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<String> = self
            .header
            .iter()
            .map(|b| {
                b.iter()
                    .map(|v| format!("t{}", v + 1))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        let head = head.join(" | ");
        writeln!(f, "{head}")?;
        writeln!(f, "{}", "-".repeat(head.len()))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Decoding table of a nondecreasing, zero-free form on variables `t1..tN`.
pub fn build_decoding_table(sorted: &CvForm) -> Result<DecodingTable, LaplaceError> {
    if !sorted.is_nondecreasing() || sorted.entries().contains(&0) {
        return Err(LaplaceError::NotDecodable(sorted.clone()));
    }
    let vars: Vec<usize> = (0..sorted.n()).collect();
    Ok(DecodingTable::from_parts(sorted.entries(), &vars))
}

/// One term of the block expansion.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RowBlock {
    /// Powers per block, strictly decreasing inside a block.
    pub blocks: Vec<Vec<u32>>,
    /// Variable indices (0-based) per block, in column order.
    pub var_partition: Vec<Vec<usize>>,
    /// Source rows (0-based) per block; empty when not tracked.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<Vec<usize>>,
    pub total_sign: i8,
}

impl RowBlock {
    pub fn nvars(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }

    pub fn flat(&self) -> Vec<u32> {
        self.blocks.iter().flatten().copied().collect()
    }

    /// `|2 1|2 1|1 0|` without the sign.
    pub fn bars(&self) -> String {
        let mut s = String::from("|");
        for b in &self.blocks {
            let parts: Vec<String> = b.iter().map(|p| p.to_string()).collect();
            s.push_str(&parts.join(" "));
            s.push('|');
        }
        s
    }

    /// Row shuffle in the `(1 2|4 5|3 6)` notation, when rows are tracked.
    pub fn shuffle_text(&self) -> Option<String> {
        if self.rows.is_empty() {
            return None;
        }
        let parts: Vec<String> = self
            .rows
            .iter()
            .map(|b| {
                b.iter()
                    .map(|r| (r + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        Some(format!("({})", parts.join("|")))
    }

    /// Each minor as `s[lambda](vars)/(p1!p2!..)`; the Vandermonde factor of
    /// each block is implied.
    pub fn schur_annotation(&self) -> String {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .zip(&self.var_partition)
            .map(|(powers, vars)| {
                let m = powers.len() as u32;
                let mut lambda: Vec<u32> = powers
                    .iter()
                    .enumerate()
                    .map(|(r, &p)| p - (m - 1 - r as u32))
                    .collect();
                while lambda.len() > 1 && lambda.last() == Some(&0) {
                    lambda.pop();
                }
                let lam: Vec<String> = lambda.iter().map(|x| x.to_string()).collect();
                let vs: Vec<String> = vars.iter().map(|v| format!("t{}", v + 1)).collect();
                let fac: String = powers.iter().map(|p| format!("{p}!")).collect();
                format!("s[{}]({})/({})", lam.join(","), vs.join(","), fac)
            })
            .collect();
        parts.join(" * ")
    }
}

impl fmt::Display for RowBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.total_sign < 0 { '-' } else { '+' };
        write!(f, "{sign}{}", self.bars())
    }
}

/// The variable groups whose Vandermonde factors divide every row-block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockFactorization {
    pub nvars: usize,
    pub vandermonde_blocks: Vec<Vec<usize>>,
    /// Set when the form is identically zero; then there are no terms.
    pub vanishes: bool,
}

impl BlockFactorization {
    /// `prod_blocks prod_{i<j} (t_i - t_j)` over the variable groups.
    pub fn vandermonde_product(&self) -> Polynomial {
        if self.vanishes {
            return Polynomial::zero(self.nvars);
        }
        let mut out = Polynomial::one(self.nvars);
        for group in &self.vandermonde_blocks {
            for (a, &i) in group.iter().enumerate() {
                for &j in &group[a + 1..] {
                    let d = &Polynomial::var(self.nvars, i).unwrap()
                        - &Polynomial::var(self.nvars, j).unwrap();
                    out = &out * &d;
                }
            }
        }
        out
    }
}

/// Full pruned expansion of one form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub form: CvForm,
    /// Result of zero removal applied before sorting.
    pub normalized: ZeroRemoval,
    /// Sorted zero-free form, when there is one.
    pub sorted: Option<SortedForm>,
    pub factor: BlockFactorization,
    /// Terms in decreasing row-block order.
    pub terms: Vec<RowBlock>,
}

impl Expansion {
    pub fn decoding_table(&self) -> Option<DecodingTable> {
        let s = self.sorted.as_ref()?;
        Some(DecodingTable::from_parts(s.form.entries(), s.perm.as_slice()))
    }

    pub fn leading(&self) -> Option<&RowBlock> {
        self.terms.first()
    }

    pub fn value(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.factor.nvars);
        for rb in &self.terms {
            let v = rowblock_value(rb, &self.factor);
            if rb.total_sign < 0 {
                out.add_assign_poly(&-v).expect("same variable count");
            } else {
                out.add_assign_poly(&v).expect("same variable count");
            }
        }
        out
    }
}

/// Zero removal, column sort and the pruned block expansion.
pub fn expand_rowblocks(f: &CvForm) -> Expansion {
    let n = f.n();
    let normalized = f.remove_zeros();
    let (zsign, zform) = match &normalized {
        ZeroRemoval::Scalar(0) => {
            return Expansion {
                form: f.clone(),
                normalized,
                sorted: None,
                factor: BlockFactorization {
                    nvars: n,
                    vandermonde_blocks: Vec::new(),
                    vanishes: true,
                },
                terms: Vec::new(),
            };
        }
        ZeroRemoval::Scalar(s) => {
            // the unit form: all blocks are 1x1 with power 0
            let singletons: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
            let rb = RowBlock {
                blocks: vec![vec![0]; n],
                var_partition: singletons.clone(),
                rows: singletons.clone(),
                total_sign: *s,
            };
            return Expansion {
                form: f.clone(),
                normalized,
                sorted: None,
                factor: BlockFactorization {
                    nvars: n,
                    vandermonde_blocks: singletons,
                    vanishes: false,
                },
                terms: vec![rb],
            };
        }
        ZeroRemoval::Form { sign, form, .. } => (*sign, form.clone()),
    };

    let sorted = zform.sort_entries();
    let table = DecodingTable::from_parts(sorted.form.entries(), sorted.perm.as_slice());
    let outer_sign = zsign * sorted.sign;

    let mut terms = Vec::new();
    let mut chosen: Vec<Vec<usize>> = Vec::new();
    let all_rows: Vec<usize> = (0..n).collect();
    enumerate_pruned(&table, 0, &all_rows, &mut chosen, &mut |rows| {
        let seq: Vec<usize> = rows.iter().flatten().copied().collect();
        let blocks = rows
            .iter()
            .zip(&table.entries)
            .map(|(rs, &a)| rs.iter().map(|&r| a - r as u32).collect())
            .collect();
        terms.push(RowBlock {
            blocks,
            var_partition: table.header.clone(),
            rows: rows.to_vec(),
            total_sign: outer_sign * sign_of_sequence(&seq),
        });
    });
    // enumeration order is lexicographic in rows; present in row-block order
    terms.sort_by(|a, b| cmp_unchecked(b, a));

    let vanishes = terms.is_empty();
    Expansion {
        form: f.clone(),
        normalized,
        factor: BlockFactorization {
            nvars: n,
            vandermonde_blocks: if vanishes { Vec::new() } else { table.header.clone() },
            vanishes,
        },
        sorted: Some(sorted),
        terms,
    }
}

fn enumerate_pruned(
    table: &DecodingTable,
    block: usize,
    remaining: &[usize],
    chosen: &mut Vec<Vec<usize>>,
    emit: &mut dyn FnMut(&[Vec<usize>]),
) {
    if block == table.header.len() {
        emit(chosen);
        return;
    }
    let a = table.entries[block] as usize;
    let m = table.header[block].len();
    let admissible: Vec<usize> = remaining.iter().copied().filter(|&r| r <= a).collect();
    for combo in shuffle::combinations(&admissible, m) {
        let left: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|r| !combo.contains(r))
            .collect();
        chosen.push(combo);
        enumerate_pruned(table, block + 1, &left, chosen, emit);
        chosen.pop();
    }
}

/// `det(t_c^p)` over one block, divided by the factorials of its powers.
fn minor_value(powers: &[u32], vars: &[usize], nvars: usize) -> Polynomial {
    let m = powers.len();
    let mut scale = BigRational::one();
    for &p in powers {
        scale *= inv_factorial(p);
    }
    let mut out = Polynomial::zero(nvars);
    for perm in Permutation::all(m) {
        let mut e = vec![0u32; nvars];
        for (r, &c) in perm.as_slice().iter().enumerate() {
            e[vars[c]] = powers[r];
        }
        let c = if perm.sign() < 0 { -scale.clone() } else { scale.clone() };
        out.add_term(ExponentVector::new(e), c);
    }
    out
}

/// Unsigned value of a row-block: the product of its minors. The common
/// Vandermonde factors are part of each alternant minor.
pub fn rowblock_value(rb: &RowBlock, factor: &BlockFactorization) -> Polynomial {
    let mut out = Polynomial::one(factor.nvars);
    for (powers, vars) in rb.blocks.iter().zip(&rb.var_partition) {
        out = &out * &minor_value(powers, vars, factor.nvars);
    }
    out
}

/// Exact value of a cv-form through its block expansion.
pub fn evaluate(f: &CvForm) -> Polynomial {
    expand_rowblocks(f).value()
}

fn count_vector(rb: &RowBlock) -> Vec<usize> {
    let flat = rb.flat();
    let max = flat.iter().copied().max().unwrap_or(0) as usize;
    let mut counts = vec![0usize; max + 1];
    for p in flat {
        counts[p as usize] += 1;
    }
    counts
}

fn cmp_unchecked(a: &RowBlock, b: &RowBlock) -> Ordering {
    let ca = count_vector(a);
    let cb = count_vector(b);
    let len = ca.len().max(cb.len());
    for k in 0..len {
        let x = ca.get(k).copied().unwrap_or(0);
        let y = cb.get(k).copied().unwrap_or(0);
        if x != y {
            // fewer copies of the smallest differing power is greater
            return y.cmp(&x);
        }
    }
    a.flat().cmp(&b.flat())
}

/// Row-block order within one expansion: the block with fewer entries `k`
/// is greater when the counts of `0..k` agree; equal multisets fall back to
/// lexicographic order.
pub fn compare_rowblocks(a: &RowBlock, b: &RowBlock) -> Result<Ordering, LaplaceError> {
    let sizes = |r: &RowBlock| r.blocks.iter().map(|x| x.len()).collect::<Vec<_>>();
    if sizes(a) != sizes(b) {
        return Err(LaplaceError::Incompatible);
    }
    Ok(cmp_unchecked(a, b))
}

impl TypeVector {
    /// Nonincreasing, unit steps, last entry zero.
    pub fn is_valid_class(&self) -> bool {
        !self.entries.is_empty()
            && self.entries.last() == Some(&0)
            && self.entries.windows(2).all(|w| w[0] - w[1] == 0 || w[0] - w[1] == 1)
    }
}

/// Leading row-block of a class: the class entries with a bar between every
/// pair of equal neighbours, on variables `t1..tN`.
pub fn leading_rowblock(class: &TypeVector) -> Result<RowBlock, LaplaceError> {
    if !class.is_valid_class() {
        return Err(LaplaceError::InvalidClass(class.clone()));
    }
    let mut blocks: Vec<Vec<u32>> = Vec::new();
    let mut vars: Vec<Vec<usize>> = Vec::new();
    for (i, &k) in class.entries.iter().enumerate() {
        let k = k as u32;
        match blocks.last_mut() {
            Some(b) if b.last() == Some(&(k + 1)) => {
                b.push(k);
                vars.last_mut().unwrap().push(i);
            }
            _ => {
                blocks.push(vec![k]);
                vars.push(vec![i]);
            }
        }
    }
    Ok(RowBlock {
        rows: vars.clone(),
        blocks,
        var_partition: vars,
        total_sign: 1,
    })
}

/// Leading row-block of a regular form on its own variables, without
/// enumerating the expansion: the identity shuffle of the sorted form.
/// Returns `None` for forms that are not regular or whose type has a
/// negative entry (those vanish).
pub fn leading_rowblock_of(f: &CvForm) -> Option<RowBlock> {
    if !f.is_regular() {
        return None;
    }
    let sorted = f.sort_entries();
    let table = DecodingTable::from_parts(sorted.form.entries(), sorted.perm.as_slice());
    let mut blocks = Vec::new();
    let mut rows = Vec::new();
    let mut r = 0usize;
    for (&a, vars) in table.entries.iter().zip(&table.header) {
        let mut b = Vec::new();
        let mut rs = Vec::new();
        for _ in vars {
            b.push((a as usize).checked_sub(r)? as u32);
            rs.push(r);
            r += 1;
        }
        blocks.push(b);
        rows.push(rs);
    }
    Some(RowBlock {
        blocks,
        var_partition: table.header,
        rows,
        total_sign: sorted.sign,
    })
}

/// Exponents of the product of the diagonal terms of every minor.
pub fn characteristic_monomial(rb: &RowBlock) -> ExponentVector {
    let mut e = vec![0u32; rb.nvars()];
    for (powers, vars) in rb.blocks.iter().zip(&rb.var_partition) {
        for (&p, &v) in powers.iter().zip(vars) {
            e[v] = p;
        }
    }
    ExponentVector::new(e)
}
