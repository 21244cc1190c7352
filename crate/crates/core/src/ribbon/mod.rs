//! Ribbon diagrams and their correspondence with classes of regular forms.
//!
//! A ribbon with `N` boxes is stored as its box list `(row, column)` from the
//! lower-left box to the upper-right box, which always sits at `(0, N-1)`.
//! Consecutive boxes are either one step right or one step up. Box `i` of
//! the ribbon of class `(k_1 .. k_N)` sits at `(k_i, k_i + i - 1)`, so the
//! rows read off the class and the columns read off the nondecreasing
//! regular form of that class.

mod count;
mod tableau;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cvform::{CvForm, TypeVector};

pub use count::{count_syt, rational_determinant};
pub use tableau::{enumerate_tableaux, SkewTableau};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RibbonError {
    #[error("{0} is not a valid class (nonincreasing, unit steps, ending in 0)")]
    InvalidClass(TypeVector),
    #[error("invalid ribbon boxes: {0}")]
    InvalidBoxes(String),
    #[error("degree {d} out of range 0..={max} for N = {n}")]
    DegreeOutOfRange { n: usize, d: i64, max: usize },
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("reading order must be a permutation of 1..{0}")]
    BadReadingOrder(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Right,
    Up,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RibbonJson", into = "RibbonJson")]
pub struct Ribbon {
    boxes: Vec<(u32, u32)>,
}

#[derive(Serialize, Deserialize)]
struct RibbonJson {
    boxes: Vec<[u32; 2]>,
}

impl TryFrom<RibbonJson> for Ribbon {
    type Error = RibbonError;
    fn try_from(j: RibbonJson) -> Result<Self, RibbonError> {
        Ribbon::from_boxes(j.boxes.iter().map(|b| (b[0], b[1])).collect())
    }
}

impl From<Ribbon> for RibbonJson {
    fn from(r: Ribbon) -> Self {
        RibbonJson {
            boxes: r.boxes.iter().map(|&(k, n)| [k, n]).collect(),
        }
    }
}

impl Ribbon {
    pub fn from_boxes(boxes: Vec<(u32, u32)>) -> Result<Self, RibbonError> {
        let n = boxes.len();
        if n == 0 {
            return Err(RibbonError::InvalidBoxes("no boxes".into()));
        }
        if boxes[n - 1] != (0, n as u32 - 1) {
            return Err(RibbonError::InvalidBoxes(format!(
                "last box must be (0, {}), got {:?}",
                n - 1,
                boxes[n - 1]
            )));
        }
        for w in boxes.windows(2) {
            let ((k0, n0), (k1, n1)) = (w[0], w[1]);
            let right = k1 == k0 && n1 == n0 + 1;
            let up = k0 == k1 + 1 && n1 == n0;
            if !(right || up) {
                return Err(RibbonError::InvalidBoxes(format!(
                    "{:?} -> {:?} is neither a step right nor up",
                    w[0], w[1]
                )));
            }
        }
        Ok(Ribbon { boxes })
    }

    /// Builds the ribbon from its `N - 1` steps, lower-left to upper-right.
    pub fn from_steps(steps: &[Step]) -> Self {
        let n = steps.len() + 1;
        let mut k = steps.iter().filter(|&&s| s == Step::Up).count() as u32;
        let mut boxes = Vec::with_capacity(n);
        for i in 0..n {
            boxes.push((k, k + i as u32));
            if i < steps.len() && steps[i] == Step::Up {
                k -= 1;
            }
        }
        Ribbon { boxes }
    }

    pub fn n(&self) -> usize {
        self.boxes.len()
    }

    pub fn boxes(&self) -> &[(u32, u32)] {
        &self.boxes
    }

    pub fn steps(&self) -> Vec<Step> {
        self.boxes
            .windows(2)
            .map(|w| if w[0].0 == w[1].0 { Step::Right } else { Step::Up })
            .collect()
    }

    /// Row coordinates in box order: the class.
    pub fn class(&self) -> TypeVector {
        TypeVector::new(self.boxes.iter().map(|&(k, _)| k as i64).collect())
    }

    /// Column coordinates in box order: the nondecreasing regular form.
    pub fn form(&self) -> CvForm {
        CvForm::new(self.boxes.iter().map(|&(_, n)| n).collect()).expect("columns lie in 0..N")
    }

    /// Number of rows minus one.
    pub fn l(&self) -> usize {
        self.boxes[0].0 as usize
    }

    pub fn height(&self) -> usize {
        self.l() + 1
    }

    pub fn width(&self) -> usize {
        self.n() - self.l()
    }

    /// `sum_k m_k k`, the degree of every form the ribbon encodes.
    pub fn index(&self) -> usize {
        self.boxes.iter().map(|&(k, _)| k as usize).sum()
    }

    /// Multiplicities `m_0 .. m_l` of the row coordinates.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0usize; self.height()];
        for &(k, _) in &self.boxes {
            m[k as usize] += 1;
        }
        m
    }

    /// Reflection across the skew diagonal: every right step becomes an up
    /// step and vice versa.
    pub fn flipped(&self) -> Ribbon {
        let steps: Vec<Step> = self
            .steps()
            .into_iter()
            .map(|s| match s {
                Step::Right => Step::Up,
                Step::Up => Step::Right,
            })
            .collect();
        Ribbon::from_steps(&steps)
    }

    /// Left-justified `lambda / mu` with the ribbon's row segments.
    pub fn to_skew_partition(&self) -> SkewPartition {
        let shift = self.boxes[0].1;
        let h = self.height();
        let mut lo = vec![u32::MAX; h];
        let mut hi = vec![0u32; h];
        for &(k, n) in &self.boxes {
            let c = n - shift;
            lo[k as usize] = lo[k as usize].min(c);
            hi[k as usize] = hi[k as usize].max(c + 1);
        }
        let mut mu = lo;
        while mu.last() == Some(&0) {
            mu.pop();
        }
        SkewPartition { lambda: hi, mu }
    }

    /// ASCII diagram, English convention, `#` for a box.
    pub fn render(&self) -> String {
        render_grid(self, |_| "#".to_string())
    }
}

pub(crate) fn render_grid(r: &Ribbon, cell: impl Fn(usize) -> String) -> String {
    let shift = r.boxes[0].1 as usize;
    let labels: Vec<String> = (0..r.width()).map(|c| (c + shift).to_string()).collect();
    let cells: Vec<String> = (0..r.n()).map(&cell).collect();
    let w = cells
        .iter()
        .chain(&labels)
        .map(|s| s.len())
        .max()
        .unwrap_or(1);
    let mut grid = vec![vec![None::<usize>; r.width()]; r.height()];
    for (i, &(k, n)) in r.boxes.iter().enumerate() {
        grid[k as usize][n as usize - shift] = Some(i);
    }
    let mut out = String::new();
    for row in grid {
        let last = row.iter().rposition(|c| c.is_some()).unwrap_or(0);
        let line: Vec<String> = row[..=last]
            .iter()
            .map(|c| match c {
                Some(i) => format!("{:>w$}", cells[*i]),
                None => format!("{:>w$}", "."),
            })
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    let lab: Vec<String> = labels.iter().map(|s| format!("{s:>w$}")).collect();
    out.push_str(&lab.join(" "));
    out.push('\n');
    out
}

impl fmt::Display for Ribbon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ribbon{}", self.class())
    }
}

/// `lambda / mu` with `mu` padded by zeros where shorter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewPartition {
    pub lambda: Vec<u32>,
    pub mu: Vec<u32>,
}

impl SkewPartition {
    pub fn size(&self) -> usize {
        let l: u32 = self.lambda.iter().sum();
        let m: u32 = self.mu.iter().sum();
        (l - m) as usize
    }

    pub fn mu_at(&self, i: usize) -> u32 {
        self.mu.get(i).copied().unwrap_or(0)
    }
}

impl fmt::Display for SkewPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        write!(f, "({})/({})", join(&self.lambda), join(&self.mu))
    }
}

/// The ribbon whose rows read the class: boxes at `(k_i, k_i + i - 1)`.
pub fn class_to_ribbon(class: &TypeVector) -> Result<Ribbon, RibbonError> {
    if !class.is_valid_class() {
        return Err(RibbonError::InvalidClass(class.clone()));
    }
    let boxes = class
        .entries
        .iter()
        .enumerate()
        .map(|(i, &k)| (k as u32, k as u32 + i as u32))
        .collect();
    Ribbon::from_boxes(boxes)
}

pub fn ribbon_to_class(r: &Ribbon) -> TypeVector {
    r.class()
}

pub fn ribbon_index(r: &Ribbon) -> usize {
    r.index()
}

/// All `2^(N-1)` ribbons, ordered by index, then by class descending.
pub fn enumerate_ribbons(n: usize) -> Vec<Ribbon> {
    assert!(n >= 1, "a ribbon has at least one box");
    let mut out: Vec<Ribbon> = (0u64..1 << (n - 1))
        .map(|mask| {
            let steps: Vec<Step> = (0..n - 1)
                .map(|i| if mask >> i & 1 == 1 { Step::Up } else { Step::Right })
                .collect();
            Ribbon::from_steps(&steps)
        })
        .collect();
    out.sort_by(|a, b| a.index().cmp(&b.index()).then_with(|| b.class().cmp(&a.class())));
    out
}

/// `l(l+1)/2` and `l(2N-l-1)/2`, the index range of ribbons of height `l+1`.
pub fn index_bounds(n: usize, l: usize) -> (usize, usize) {
    (l * (l + 1) / 2, l * (2 * n - l - 1) / 2)
}

/// Partitions of `m` into at most `max_parts` parts, each at most
/// `max_part`, as nonincreasing lists.
pub fn bounded_partitions(m: usize, max_parts: usize, max_part: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    partitions_rec(m, max_parts, max_part, &mut cur, &mut out);
    out
}

fn partitions_rec(
    m: usize,
    parts_left: usize,
    max_part: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if m == 0 {
        out.push(cur.clone());
        return;
    }
    if parts_left == 0 || max_part == 0 || m > parts_left * max_part {
        return;
    }
    for p in (1..=max_part.min(m)).rev() {
        cur.push(p);
        partitions_rec(m - p, parts_left - 1, p, cur, out);
        cur.pop();
    }
}

/// Ribbons of index `d`, built from partitions of `d - l(l+1)/2` into at
/// most `N - l - 1` parts no larger than `l`, for each admissible height.
/// Ordered by class, descending.
pub fn ribbons_of_degree(n: usize, d: i64) -> Result<Vec<Ribbon>, RibbonError> {
    let max = n * n.saturating_sub(1) / 2;
    if n == 0 || d < 0 || d as usize > max {
        return Err(RibbonError::DegreeOutOfRange { n, d, max });
    }
    let d = d as usize;
    let mut out = Vec::new();
    for l in 0..n {
        let (lo, hi) = index_bounds(n, l);
        if d < lo || d > hi {
            continue;
        }
        for parts in bounded_partitions(d - lo, n - l - 1, l) {
            let mut mult = vec![1usize; l + 1];
            for &p in &parts {
                mult[p] += 1;
            }
            mult[0] += n - l - 1 - parts.len();
            let class: Vec<i64> = (0..=l)
                .rev()
                .flat_map(|k| std::iter::repeat_n(k as i64, mult[k]))
                .collect();
            out.push(class_to_ribbon(&TypeVector::new(class)).expect("valid class by construction"));
        }
    }
    out.sort_by_key(|r| std::cmp::Reverse(r.class()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(s: &str) -> TypeVector {
        TypeVector::parse(s).unwrap()
    }

    fn classes(rs: &[Ribbon]) -> Vec<String> {
        rs.iter()
            .map(|r| r.class().entries.iter().map(|k| k.to_string()).collect())
            .collect()
    }

    #[test]
    fn figure_one_ribbon() {
        let r = class_to_ribbon(&class("44321110")).unwrap();
        assert_eq!(r.form().to_string(), "[4 5 5 5 5 6 7 7]");
        assert_eq!(r.index(), 16);
        assert_eq!(ribbon_to_class(&r), class("44321110"));
        assert_eq!(r.boxes()[7], (0, 7));
        assert_eq!(r.multiplicities(), vec![1, 3, 1, 1, 2]);
        assert_eq!(
            r.render(),
            ". . . #\n. # # #\n. #\n. #\n# #\n4 5 6 7\n"
        );
    }

    #[test]
    fn simple_ribbons() {
        let flat = class_to_ribbon(&class("0000")).unwrap();
        assert_eq!(flat.form(), CvForm::unit(4));
        assert_eq!(flat.index(), 0);
        assert_eq!(flat.height(), 1);

        let domino = class_to_ribbon(&class("10")).unwrap();
        assert_eq!(domino.form().to_string(), "[1 1]");
        assert_eq!(domino.index(), 1);
        assert_eq!(domino.steps(), vec![Step::Up]);

        let vertical = Ribbon::from_steps(&[Step::Up; 3]);
        assert_eq!(vertical.class().entries, vec![3, 2, 1, 0]);
        assert_eq!(vertical.index(), 6);
        assert_eq!(Ribbon::from_steps(&[Step::Right; 4]).class().entries, vec![0; 5]);
    }

    #[test]
    fn invalid_inputs() {
        assert!(class_to_ribbon(&class("2100")).is_ok());
        assert!(class_to_ribbon(&class("3100")).is_err());
        assert!(class_to_ribbon(&class("0110")).is_err());
        assert!(class_to_ribbon(&class("11")).is_err());
        assert!(Ribbon::from_boxes(vec![(0, 0), (0, 1)]).is_ok());
        assert!(Ribbon::from_boxes(vec![(1, 0), (0, 1)]).is_err());
        assert!(Ribbon::from_boxes(vec![(0, 0), (0, 2)]).is_err());
        assert!(serde_json::from_str::<Ribbon>(r#"{"boxes":[[1,1],[0,1]]}"#).is_ok());
        assert!(serde_json::from_str::<Ribbon>(r#"{"boxes":[[1,0],[0,1]]}"#).is_err());
    }

    #[test]
    fn skew_partitions() {
        let sp = class_to_ribbon(&class("44321110")).unwrap().to_skew_partition();
        assert_eq!(sp.lambda, vec![4, 4, 2, 2, 2]);
        assert_eq!(sp.mu, vec![3, 1, 1, 1]);
        assert_eq!(sp.to_string(), "(4 4 2 2 2)/(3 1 1 1)");

        let sp = class_to_ribbon(&class("32222100")).unwrap().to_skew_partition();
        assert_eq!(sp.lambda, vec![5, 4, 4, 1]);
        assert_eq!(sp.mu, vec![3, 3]);

        let sp = class_to_ribbon(&class("00000")).unwrap().to_skew_partition();
        assert_eq!(sp.lambda, vec![5]);
        assert!(sp.mu.is_empty());
        assert_eq!(sp.size(), 5);
    }

    #[test]
    fn ribbon_counts() {
        assert_eq!(enumerate_ribbons(4).len(), 8);
        let two = enumerate_ribbons(2);
        assert_eq!(classes(&two), ["00", "10"]);
        let eight = enumerate_ribbons(8);
        assert_eq!(eight.len(), 128);
        assert_eq!(eight.first().unwrap().index(), 0);
        assert_eq!(eight.last().unwrap().index(), 28);
    }

    #[test]
    fn round_trip_all_classes() {
        for n in 1..=8 {
            for r in enumerate_ribbons(n) {
                assert_eq!(class_to_ribbon(&ribbon_to_class(&r)).unwrap(), r);
            }
        }
    }

    #[test]
    fn classes_of_degree_sixteen() {
        let rs = ribbons_of_degree(8, 16).unwrap();
        assert_eq!(
            classes(&rs),
            [
                "54321100", "44322100", "44321110", "43332100", "43322110", "43222210", "33332110",
                "33322210"
            ]
        );
        assert!(!classes(&rs).contains(&"33222220".to_string()));
    }

    #[test]
    fn classes_of_degree_twelve() {
        let rs = ribbons_of_degree(8, 12).unwrap();
        assert_eq!(
            classes(&rs),
            [
                "43221000", "43211100", "33321000", "33221100", "33211110", "32222100", "32221110",
                "22222110"
            ]
        );
    }

    #[test]
    fn degree_range_is_checked() {
        assert!(ribbons_of_degree(4, 7).is_err());
        assert!(ribbons_of_degree(4, -1).is_err());
        assert_eq!(ribbons_of_degree(4, 6).unwrap().len(), 1);
        assert_eq!(ribbons_of_degree(1, 0).unwrap().len(), 1);
    }

    #[test]
    fn degree_lists_match_full_enumeration() {
        for n in 1..=8 {
            let all = enumerate_ribbons(n);
            for d in 0..=n * (n - 1) / 2 {
                let mut direct: Vec<Ribbon> = all.iter().filter(|r| r.index() == d).cloned().collect();
                direct.sort_by_key(|r| std::cmp::Reverse(r.class()));
                assert_eq!(ribbons_of_degree(n, d as i64).unwrap(), direct);
            }
        }
    }

    #[test]
    fn height_bounds_hold() {
        for n in 1..=9 {
            for r in enumerate_ribbons(n) {
                let (lo, hi) = index_bounds(n, r.l());
                assert!(lo <= r.index() && r.index() <= hi);
            }
            // the two parabolas meet at the ends of the range
            assert_eq!(index_bounds(n, 0), (0, 0));
            assert_eq!(index_bounds(n, n - 1), (n * (n - 1) / 2, n * (n - 1) / 2));
        }
    }

    #[test]
    fn generating_function_matches_enumeration() {
        for n in 1..=8 {
            let gf = crate::series::ribbon_generating_function(n);
            let mut counts = vec![vec![0u64; n]; n * (n - 1) / 2 + 1];
            for r in enumerate_ribbons(n) {
                counts[r.index()][r.l()] += 1;
            }
            assert_eq!(gf.coeffs, counts, "N = {n}");
        }
    }

    #[test]
    fn flip_complements_the_index() {
        for n in 2..=9 {
            for r in enumerate_ribbons(n) {
                let f = r.flipped();
                assert_eq!(r.index() + f.index(), n * (n - 1) / 2);
                assert_ne!(f, r);
                assert_eq!(f.flipped(), r);
                assert_eq!(f.height(), r.width());
            }
        }
    }

    #[test]
    fn partition_generation() {
        assert_eq!(bounded_partitions(6, 3, 4), vec![vec![4, 2], vec![4, 1, 1], vec![3, 3], vec![3, 2, 1], vec![2, 2, 2]]);
        assert_eq!(bounded_partitions(0, 0, 0), vec![Vec::<usize>::new()]);
        assert!(bounded_partitions(3, 1, 2).is_empty());
    }
}
