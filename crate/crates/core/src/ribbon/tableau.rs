use std::fmt;

use serde::{Deserialize, Serialize};

use super::{class_to_ribbon, render_grid, Ribbon, RibbonError, Step};
use crate::cvform::{CvForm, TypeVector};
use crate::perm::Permutation;

/// A standard filling of a ribbon. `filling[i]` is the value (1-based) in
/// box `i` of the ribbon's box list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TableauJson", into = "TableauJson")]
pub struct SkewTableau {
    ribbon: Ribbon,
    filling: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct TableauJson {
    boxes: Vec<[u32; 2]>,
    filling: Vec<u32>,
}

impl TryFrom<TableauJson> for SkewTableau {
    type Error = RibbonError;
    fn try_from(j: TableauJson) -> Result<Self, RibbonError> {
        let ribbon = Ribbon::from_boxes(j.boxes.iter().map(|b| (b[0], b[1])).collect())?;
        SkewTableau::new(ribbon, j.filling)
    }
}

impl From<SkewTableau> for TableauJson {
    fn from(t: SkewTableau) -> Self {
        TableauJson {
            boxes: t.ribbon.boxes.iter().map(|&(k, n)| [k, n]).collect(),
            filling: t.filling,
        }
    }
}

impl SkewTableau {
    pub fn new(ribbon: Ribbon, filling: Vec<u32>) -> Result<Self, RibbonError> {
        let n = ribbon.n();
        if filling.len() != n {
            return Err(RibbonError::InvalidTableau(format!(
                "{} values for {} boxes",
                filling.len(),
                n
            )));
        }
        let mut seen = vec![false; n];
        for &v in &filling {
            if v == 0 || v as usize > n || seen[v as usize - 1] {
                return Err(RibbonError::InvalidTableau(format!(
                    "filling must be a permutation of 1..{n}"
                )));
            }
            seen[v as usize - 1] = true;
        }
        for (i, s) in ribbon.steps().iter().enumerate() {
            let ok = match s {
                Step::Right => filling[i] < filling[i + 1],
                Step::Up => filling[i] > filling[i + 1],
            };
            if !ok {
                return Err(RibbonError::InvalidTableau(format!(
                    "not standard at boxes {} and {}",
                    i + 1,
                    i + 2
                )));
            }
        }
        Ok(SkewTableau { ribbon, filling })
    }

    pub fn ribbon(&self) -> &Ribbon {
        &self.ribbon
    }

    pub fn filling(&self) -> &[u32] {
        &self.filling
    }

    pub fn n(&self) -> usize {
        self.ribbon.n()
    }

    /// `pos[v - 1]` is the box holding value `v`.
    fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0usize; self.n()];
        for (i, &v) in self.filling.iter().enumerate() {
            pos[v as usize - 1] = i;
        }
        pos
    }

    /// Column coordinates read from the box holding `N` down to the box
    /// holding `1`.
    pub fn to_cvform(&self) -> CvForm {
        self.to_cvform_with_order(&Permutation::reversal(self.n()))
            .expect("reversal has the right length")
    }

    /// Column coordinates read in the given order: entry `j` is the column
    /// of the box holding `order(j)`.
    pub fn to_cvform_with_order(&self, order: &Permutation) -> Result<CvForm, RibbonError> {
        if order.len() != self.n() {
            return Err(RibbonError::BadReadingOrder(self.n()));
        }
        let pos = self.positions();
        let entries = order
            .as_slice()
            .iter()
            .map(|&v| self.ribbon.boxes[pos[v]].1)
            .collect();
        Ok(CvForm::new(entries).expect("columns lie in 0..N"))
    }

    /// Row coordinates read backwards, the type of the standard form.
    pub fn to_type(&self) -> TypeVector {
        let pos = self.positions();
        TypeVector::new(
            pos.iter()
                .rev()
                .map(|&i| self.ribbon.boxes[i].0 as i64)
                .collect(),
        )
    }

    /// Reflection across the skew diagonal with `v -> N + 1 - v`.
    pub fn flip(&self) -> SkewTableau {
        let n = self.n() as u32;
        SkewTableau {
            ribbon: self.ribbon.flipped(),
            filling: self.filling.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    /// Rebuilds the tableau from a form it encodes under the backward
    /// reading.
    pub fn from_standard_form(f: &CvForm) -> Result<SkewTableau, RibbonError> {
        let bad = || RibbonError::InvalidTableau(format!("{f} is not a standard form"));
        let class = f.class_of().map_err(|_| bad())?;
        let ribbon = class_to_ribbon(&class).map_err(|_| bad())?;
        let ty = f.type_of();
        let n = f.n();
        let mut filling = vec![0u32; n];
        for j in 0..n {
            let cell = (ty.entries[j] as u32, f.entries()[j]);
            let i = ribbon.boxes.iter().position(|&b| b == cell).ok_or_else(bad)?;
            if filling[i] != 0 {
                return Err(bad());
            }
            filling[i] = (n - j) as u32;
        }
        let t = SkewTableau::new(ribbon, filling).map_err(|_| bad())?;
        if t.to_cvform() != *f {
            return Err(bad());
        }
        Ok(t)
    }

    pub fn render(&self) -> String {
        render_grid(&self.ribbon, |i| self.filling[i].to_string())
    }
}

impl fmt::Display for SkewTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.filling.iter().map(|v| v.to_string()).collect();
        write!(f, "{} [{}]", self.ribbon, parts.join(" "))
    }
}

/// All standard fillings, lexicographic in the filling read along the box
/// list.
pub fn enumerate_tableaux(r: &Ribbon) -> Vec<SkewTableau> {
    let n = r.n();
    let steps = r.steps();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    fill_rec(r, &steps, &mut cur, &mut used, &mut out);
    out
}

fn fill_rec(
    r: &Ribbon,
    steps: &[Step],
    cur: &mut Vec<u32>,
    used: &mut [bool],
    out: &mut Vec<SkewTableau>,
) {
    let n = r.n();
    let i = cur.len();
    if i == n {
        out.push(SkewTableau {
            ribbon: r.clone(),
            filling: cur.clone(),
        });
        return;
    }
    for v in 1..=n as u32 {
        if used[v as usize] {
            continue;
        }
        if i > 0 {
            let prev = cur[i - 1];
            let ok = match steps[i - 1] {
                Step::Right => prev < v,
                Step::Up => prev > v,
            };
            if !ok {
                continue;
            }
        }
        // a run of k up steps needs k unused values below v, right steps above
        if !completable(steps, i, v, used, n) {
            continue;
        }
        used[v as usize] = true;
        cur.push(v);
        fill_rec(r, steps, cur, used, out);
        cur.pop();
        used[v as usize] = false;
    }
}

fn completable(steps: &[Step], i: usize, v: u32, used: &[bool], n: usize) -> bool {
    let Some(&next) = steps.get(i) else {
        return true;
    };
    let run = steps[i..].iter().take_while(|&&s| s == next).count();
    let free = match next {
        Step::Up => (1..v).filter(|&w| !used[w as usize]).count(),
        Step::Right => (v + 1..=n as u32).filter(|&w| !used[w as usize]).count(),
    };
    free >= run
}
