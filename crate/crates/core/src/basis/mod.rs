//! Graded bases of harmonic polynomials built from standard ribbon
//! tableaux, and the checks that certify them.

mod rank;

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cvform::CvForm;
use crate::laplace::{characteristic_monomial, evaluate, leading_rowblock_of, rowblock_value, BlockFactorization};
use crate::perm::Permutation;
use crate::poly::{ExponentVector, Polynomial};
use crate::ribbon::{enumerate_ribbons, enumerate_tableaux, ribbons_of_degree, RibbonError, SkewTableau};

pub use rank::{bareiss_rank, CoefficientMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BasisError {
    #[error("N must be at least 1")]
    EmptyN,
    #[error(transparent)]
    Ribbon(#[from] RibbonError),
    #[error("reading order has length {got}, expected {n}")]
    OrderLength { n: usize, got: usize },
    #[error("characteristic monomials require the backward reading")]
    NotBackward,
    #[error("form {0} has no leading row-block")]
    NoLeading(CvForm),
    #[error("k = {k} out of range 1..={max}")]
    BadOrder { k: u32, max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisForm {
    pub form: CvForm,
    /// Source tableau; absent for hand-assembled form lists.
    pub tableau: Option<SkewTableau>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    pub n: usize,
    pub degree: Option<usize>,
    pub reading_order: Permutation,
    pub forms: Vec<BasisForm>,
}

impl Basis {
    /// A form list without tableau provenance, read backwards.
    pub fn from_forms(n: usize, forms: Vec<CvForm>) -> Self {
        Basis {
            n,
            degree: None,
            reading_order: Permutation::reversal(n),
            forms: forms
                .into_iter()
                .map(|form| BasisForm { form, tableau: None })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn cvforms(&self) -> Vec<CvForm> {
        self.forms.iter().map(|b| b.form.clone()).collect()
    }

    pub fn is_backward(&self) -> bool {
        self.reading_order == Permutation::reversal(self.n)
    }

    /// Number of forms of each degree `0..=N(N-1)/2`.
    pub fn degree_census(&self) -> Vec<u64> {
        let mut c = vec![0u64; self.n * (self.n - 1) / 2 + 1];
        for b in &self.forms {
            c[b.form.degree() as usize] += 1;
        }
        c
    }

    pub fn to_json(&self) -> serde_json::Value {
        let backward = self.is_backward();
        let forms: Vec<serde_json::Value> = self
            .forms
            .iter()
            .map(|b| {
                let mut o = serde_json::Map::new();
                o.insert("entries".into(), serde_json::json!(b.form.entries()));
                if backward {
                    o.insert("type".into(), serde_json::json!(b.form.type_of().entries));
                }
                if let Ok(c) = b.form.class_of() {
                    o.insert("class".into(), serde_json::json!(c.entries));
                }
                if let Some(t) = &b.tableau {
                    o.insert("tableau".into(), serde_json::to_value(t).expect("tableau serializes"));
                }
                serde_json::Value::Object(o)
            })
            .collect();
        serde_json::json!({
            "N": self.n,
            "d": self.degree,
            "reading_order": self.reading_order.one_based(),
            "forms": forms,
        })
    }
}

/// Forms of all standard tableaux on the ribbons of degree `d` (every
/// ribbon when `d` is `None`), each read in `reading_order`.
pub fn generate_basis(n: usize, d: Option<i64>, reading_order: &Permutation) -> Result<Basis, BasisError> {
    if n == 0 {
        return Err(BasisError::EmptyN);
    }
    if reading_order.len() != n {
        return Err(BasisError::OrderLength {
            n,
            got: reading_order.len(),
        });
    }
    let ribbons = match d {
        Some(d) => ribbons_of_degree(n, d)?,
        None => enumerate_ribbons(n),
    };
    let per_ribbon: Vec<Vec<BasisForm>> = ribbons
        .par_iter()
        .map(|r| {
            enumerate_tableaux(r)
                .into_iter()
                .map(|t| BasisForm {
                    form: t
                        .to_cvform_with_order(reading_order)
                        .expect("order length checked"),
                    tableau: Some(t),
                })
                .collect()
        })
        .collect();
    Ok(Basis {
        n,
        degree: d.map(|d| d as usize),
        reading_order: reading_order.clone(),
        forms: per_ribbon.into_iter().flatten().collect(),
    })
}

/// The default backward reading.
pub fn generate_standard_basis(n: usize, d: Option<i64>) -> Result<Basis, BasisError> {
    generate_basis(n, d, &Permutation::reversal(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HarmonicCheck {
    pub k: u32,
    /// The symmetrized derivative of the expanded polynomial vanishes.
    pub derivative: bool,
    /// The sum of the forms with one entry lowered by `k` vanishes.
    pub lowered_sum: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HarmonicReport {
    pub form: CvForm,
    pub checks: Vec<HarmonicCheck>,
}

impl HarmonicReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.derivative && c.lowered_sum)
    }

    pub fn first_failure(&self) -> Option<(u32, &'static str)> {
        self.checks.iter().find_map(|c| {
            if !c.derivative {
                Some((c.k, "derivative"))
            } else if !c.lowered_sum {
                Some((c.k, "lowered_sum"))
            } else {
                None
            }
        })
    }
}

/// `sum_i` of the form with entry `i` lowered by `k`; terms that would go
/// negative are zero.
pub fn lowered_sum(f: &CvForm, k: u32) -> Polynomial {
    let mut out = Polynomial::zero(f.n());
    for i in 0..f.n() {
        if let Some(g) = f.lowered(i, k) {
            out.add_assign_poly(&evaluate(&g)).expect("same variable count");
        }
    }
    out
}

pub fn verify_harmonicity(f: &CvForm, kmax: u32) -> Result<HarmonicReport, BasisError> {
    let n = f.n();
    if kmax as usize >= n {
        return Err(BasisError::BadOrder { k: kmax, max: n - 1 });
    }
    let p = evaluate(f);
    let checks = (1..=kmax)
        .map(|k| HarmonicCheck {
            k,
            derivative: p.symmetrized_derivative(k).is_zero(),
            lowered_sum: lowered_sum(f, k).is_zero(),
        })
        .collect();
    Ok(HarmonicReport { form: f.clone(), checks })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RankMode {
    /// Full polynomial expansions.
    Full,
    /// Only the leading row-block of each form.
    Leading,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeSlice {
    pub degree: u64,
    pub forms: usize,
    pub monomials: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndependenceReport {
    pub mode: RankMode,
    pub forms: usize,
    pub rank: usize,
    pub independent: bool,
    /// Index pairs of forms listed more than once.
    pub duplicates: Vec<(usize, usize)>,
    pub slices: Vec<DegreeSlice>,
}

fn duplicates(forms: &[CvForm]) -> Vec<(usize, usize)> {
    let mut first: HashMap<&CvForm, usize> = HashMap::new();
    let mut out = Vec::new();
    for (i, f) in forms.iter().enumerate() {
        if let Some(&j) = first.get(f) {
            out.push((j, i));
        } else {
            first.insert(f, i);
        }
    }
    out
}

fn leading_value(f: &CvForm) -> Polynomial {
    match leading_rowblock_of(f) {
        Some(rb) => {
            let factor = BlockFactorization {
                nvars: f.n(),
                vandermonde_blocks: Vec::new(),
                vanishes: false,
            };
            rowblock_value(&rb, &factor)
        }
        None => Polynomial::zero(f.n()),
    }
}

/// Exact rank of the forms' coefficient matrix. Every form is homogeneous,
/// so the matrix is block diagonal by degree and each slice is reduced on
/// its own.
pub fn verify_independence(b: &Basis, mode: RankMode) -> IndependenceReport {
    let forms = b.cvforms();
    let dups = duplicates(&forms);
    let polys: Vec<Polynomial> = forms
        .par_iter()
        .map(|f| match mode {
            RankMode::Full => evaluate(f),
            RankMode::Leading => leading_value(f),
        })
        .collect();
    let mut by_degree: BTreeMap<u64, Vec<Polynomial>> = BTreeMap::new();
    for p in polys {
        let d = p.degree().unwrap_or(0);
        debug_assert!(p.is_homogeneous());
        by_degree.entry(d).or_default().push(p);
    }
    let slices: Vec<DegreeSlice> = by_degree
        .into_par_iter()
        .map(|(degree, ps)| {
            let m = CoefficientMatrix::from_polynomials(&ps);
            DegreeSlice {
                degree,
                forms: ps.len(),
                monomials: m.ncols(),
                rank: m.rank(),
            }
        })
        .collect();
    let rank = slices.iter().map(|s| s.rank).sum();
    IndependenceReport {
        mode,
        forms: forms.len(),
        rank,
        independent: dups.is_empty() && rank == forms.len(),
        duplicates: dups,
        slices,
    }
}

/// Exponent vector of the diagonal product of each form's leading
/// row-block.
pub fn characteristic_monomials(b: &Basis) -> Result<Vec<ExponentVector>, BasisError> {
    b.forms
        .iter()
        .map(|bf| {
            leading_rowblock_of(&bf.form)
                .map(|rb| characteristic_monomial(&rb))
                .ok_or_else(|| BasisError::NoLeading(bf.form.clone()))
        })
        .collect()
}

/// Whether the characteristic monomials are pairwise distinct.
pub fn verify_characteristic_uniqueness(b: &Basis) -> Result<bool, BasisError> {
    if !b.is_backward() {
        return Err(BasisError::NotBackward);
    }
    let chars = characteristic_monomials(b)?;
    let set: HashSet<&ExponentVector> = chars.iter().collect();
    Ok(set.len() == chars.len())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlipReport {
    pub n: usize,
    pub pairs: usize,
    pub failures: Vec<CvForm>,
}

/// For every tableau of the full basis, its flip encodes a basis form of
/// the complementary degree.
pub fn verify_flip_pairing(n: usize) -> Result<FlipReport, BasisError> {
    let b = generate_standard_basis(n, None)?;
    let top = (n * (n - 1) / 2) as i64;
    let set: HashSet<CvForm> = b.cvforms().into_iter().collect();
    let mut failures = Vec::new();
    for bf in &b.forms {
        let t = bf.tableau.as_ref().expect("generated forms carry tableaux");
        let g = t.flip().to_cvform();
        if g.degree() != top - bf.form.degree() || !set.contains(&g) || t.flip().flip() != *t {
            failures.push(bf.form.clone());
        }
    }
    Ok(FlipReport {
        n,
        pairs: b.len(),
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderSummary {
    pub order: Vec<usize>,
    pub forms: usize,
    pub rank: usize,
    pub independent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisComparison {
    pub n: usize,
    pub bases: Vec<OrderSummary>,
    /// `overlap[i][j]` counts forms shared by bases `i` and `j`.
    pub overlap: Vec<Vec<usize>>,
    /// Number of unordered pairs of bases with identical form sets.
    pub identical_pairs: usize,
}

/// Generates and checks one basis per reading order and tabulates shared
/// forms between them.
pub fn compare_bases(n: usize, orders: &[Permutation], mode: RankMode) -> Result<BasisComparison, BasisError> {
    let bases: Vec<Basis> = orders
        .iter()
        .map(|o| generate_basis(n, None, o))
        .collect::<Result<_, _>>()?;
    let summaries: Vec<OrderSummary> = bases
        .par_iter()
        .map(|b| {
            let r = verify_independence(b, mode);
            OrderSummary {
                order: b.reading_order.one_based(),
                forms: b.len(),
                rank: r.rank,
                independent: r.independent,
            }
        })
        .collect();
    let sets: Vec<HashSet<CvForm>> = bases.iter().map(|b| b.cvforms().into_iter().collect()).collect();
    let overlap: Vec<Vec<usize>> = sets
        .iter()
        .map(|a| sets.iter().map(|b| a.intersection(b).count()).collect())
        .collect();
    let mut identical_pairs = 0;
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if sets[i] == sets[j] {
                identical_pairs += 1;
            }
        }
    }
    Ok(BasisComparison {
        n,
        bases: summaries,
        overlap,
        identical_pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::q_factorial;

    fn forms(list: &[&str]) -> Vec<CvForm> {
        list.iter().map(|s| s.parse().unwrap()).collect()
    }

    fn sorted_text(b: &Basis) -> Vec<String> {
        let mut v: Vec<String> = b.forms.iter().map(|f| f.form.to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn six_forms_of_degree_three() {
        let b = generate_standard_basis(4, Some(3)).unwrap();
        assert_eq!(
            sorted_text(&b),
            ["[2 2 3 2]", "[2 3 2 2]", "[3 2 1 3]", "[3 2 2 2]", "[3 2 3 1]", "[3 3 2 1]"]
        );
        let r = verify_independence(&b, RankMode::Full);
        assert_eq!((r.rank, r.independent), (6, true));
    }

    #[test]
    fn five_types_of_degree_four() {
        let b = generate_standard_basis(4, Some(4)).unwrap();
        assert_eq!(b.len(), 5);
        let types: HashSet<_> = b.forms.iter().map(|f| f.form.type_of()).collect();
        assert_eq!(types.len(), 5);
        assert!(types.iter().any(|t| t.entries == [2, 1, 1, 0]));
        assert!(types.iter().any(|t| t.entries == [1, 2, 1, 0]));
        assert!(verify_characteristic_uniqueness(&b).unwrap());
    }

    #[test]
    fn small_full_bases() {
        for n in 1..=5 {
            let b = generate_standard_basis(n, None).unwrap();
            assert_eq!(b.degree_census(), q_factorial(n).coeffs);
            assert!(duplicates(&b.cvforms()).is_empty());
            assert!(b.forms.iter().all(|f| f.form.is_regular()));
            let r = verify_independence(&b, RankMode::Full);
            assert!(r.independent, "N = {n}: {r:?}");
            let l = verify_independence(&b, RankMode::Leading);
            assert!(l.independent, "N = {n}: {l:?}");
            assert!(verify_characteristic_uniqueness(&b).unwrap());
        }
        assert_eq!(generate_standard_basis(2, None).unwrap().len(), 2);
    }

    #[test]
    fn duplicates_are_caught() {
        let b = Basis::from_forms(4, forms(&["[3 2 2 2]", "[2 3 2 2]", "[3 2 2 2]"]));
        let r = verify_independence(&b, RankMode::Full);
        assert_eq!(r.duplicates, vec![(0, 2)]);
        assert_eq!(r.rank, 2);
        assert!(!r.independent);
        assert!(!verify_characteristic_uniqueness(&b).unwrap());
    }

    #[test]
    fn syzygies_vanish() {
        let sum = |fs: &[&str]| {
            forms(fs).iter().fold(Polynomial::zero(4), |acc, f| &acc + &evaluate(f))
        };
        assert!(sum(&["[2 3 3 3]", "[3 2 3 3]", "[3 3 2 3]", "[3 3 3 2]"]).is_zero());
        assert!(sum(&["[1 3 3 3]", "[3 1 3 3]", "[3 3 1 3]", "[3 3 3 1]"]).is_zero());
        assert!(sum(&["[2 2 3 3]", "[2 3 2 3]", "[2 3 3 2]", "[3 2 2 3]", "[3 2 3 2]", "[3 3 2 2]"]).is_zero());
        let r = verify_harmonicity(&"[3 3 3 3]".parse().unwrap(), 3).unwrap();
        assert!(r.passed());
        assert!(verify_harmonicity(&"[3 3 3 3]".parse().unwrap(), 4).is_err());
    }

    #[test]
    fn standard_forms_are_harmonic() {
        for n in 2..=4 {
            for bf in generate_standard_basis(n, None).unwrap().forms {
                let r = verify_harmonicity(&bf.form, n as u32 - 1).unwrap();
                assert!(r.passed(), "{:?}", r.first_failure());
            }
        }
    }

    #[test]
    fn flip_pairs() {
        for n in 1..=5 {
            let r = verify_flip_pairing(n).unwrap();
            assert!(r.failures.is_empty());
            assert_eq!(r.pairs as u128, (1..=n as u128).product::<u128>());
        }
    }

    #[test]
    fn reading_orders_at_n_three() {
        let orders = Permutation::all(3);
        let c = compare_bases(3, &orders, RankMode::Full).unwrap();
        assert_eq!(c.bases.len(), 6);
        assert!(c.bases.iter().all(|s| s.independent && s.rank == 6));
        assert!(c.overlap.iter().enumerate().all(|(i, row)| row[i] == 6));
        let back = generate_basis(3, None, &Permutation::reversal(3)).unwrap();
        assert_eq!(back, generate_standard_basis(3, None).unwrap());
    }

    #[test]
    fn bad_arguments() {
        assert!(generate_standard_basis(4, Some(7)).is_err());
        assert!(generate_standard_basis(0, None).is_err());
        assert!(generate_basis(4, None, &Permutation::identity(3)).is_err());
        let fwd = generate_basis(3, None, &Permutation::identity(3)).unwrap();
        assert_eq!(verify_characteristic_uniqueness(&fwd), Err(BasisError::NotBackward));
    }

    #[test]
    fn json_shape() {
        let b = generate_standard_basis(2, Some(1)).unwrap();
        let j = b.to_json();
        assert_eq!(j["N"], 2);
        assert_eq!(j["d"], 1);
        assert_eq!(j["reading_order"], serde_json::json!([2, 1]));
        assert_eq!(j["forms"][0]["entries"], serde_json::json!([1, 1]));
        assert_eq!(j["forms"][0]["type"], serde_json::json!([1, 0]));
        assert_eq!(j["forms"][0]["tableau"]["filling"], serde_json::json!([2, 1]));
    }
}
