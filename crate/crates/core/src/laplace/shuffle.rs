use std::fmt;

use super::LaplaceError;
use crate::perm::sign_of_sequence;
use crate::poly::Polynomial;

/// A row shuffle `(pi_1 | pi_2 | ... )`: ascending row lists over a set
/// partition of `1..=N`, one list per block. Rows are stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shuffle {
    pub blocks: Vec<Vec<usize>>,
    pub sign: i8,
}

impl fmt::Display for Shuffle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|r| (r + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "({})", parts.join("|"))
    }
}

/// All shuffles for a composition of `N`, in lexicographic order of the
/// concatenated row sequence.
pub fn shuffles(composition: &[usize]) -> Result<Vec<Shuffle>, LaplaceError> {
    if composition.is_empty() || composition.contains(&0) {
        return Err(LaplaceError::InvalidComposition(composition.to_vec()));
    }
    let n: usize = composition.iter().sum();
    let mut out = Vec::new();
    let mut chosen: Vec<Vec<usize>> = Vec::new();
    let all: Vec<usize> = (0..n).collect();
    shuffle_rec(composition, &all, &mut chosen, &mut out);
    Ok(out)
}

fn shuffle_rec(
    sizes: &[usize],
    remaining: &[usize],
    chosen: &mut Vec<Vec<usize>>,
    out: &mut Vec<Shuffle>,
) {
    let Some((&m, rest)) = sizes.split_first() else {
        let seq: Vec<usize> = chosen.iter().flatten().copied().collect();
        out.push(Shuffle {
            blocks: chosen.clone(),
            sign: sign_of_sequence(&seq),
        });
        return;
    };
    for combo in combinations(remaining, m) {
        let left: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|r| !combo.contains(r))
            .collect();
        chosen.push(combo);
        shuffle_rec(rest, &left, chosen, out);
        chosen.pop();
    }
}

/// `k`-subsets of `items` in lexicographic order (items assumed ascending).
pub(crate) fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    combo_rec(items, k, 0, &mut cur, &mut out);
    out
}

fn combo_rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    let need = k - cur.len();
    for i in start..items.len() {
        if items.len() - i < need {
            break;
        }
        cur.push(items[i]);
        combo_rec(items, k, i + 1, cur, out);
        cur.pop();
    }
}

/// Laplace expansion of a square polynomial matrix into column blocks of the
/// given sizes, with no pruning. Minors are evaluated by
/// [`super::oracle::determinant`].
pub fn block_expand_matrix(
    matrix: &[Vec<Polynomial>],
    composition: &[usize],
) -> Result<Polynomial, LaplaceError> {
    let n = matrix.len();
    if composition.iter().sum::<usize>() != n {
        return Err(LaplaceError::InvalidComposition(composition.to_vec()));
    }
    let nvars = matrix[0][0].nvars();
    let mut total = Polynomial::zero(nvars);
    for sh in shuffles(composition)? {
        let mut term = Polynomial::one(nvars);
        let mut col = 0usize;
        for rows in &sh.blocks {
            let minor: Vec<Vec<Polynomial>> = rows
                .iter()
                .map(|&r| matrix[r][col..col + rows.len()].to_vec())
                .collect();
            term = &term * &super::oracle::determinant(&minor);
            col += rows.len();
            if term.is_zero() {
                break;
            }
        }
        if sh.sign < 0 {
            term = -term;
        }
        total.add_assign_poly(&term).expect("same variable count");
    }
    Ok(total)
}
