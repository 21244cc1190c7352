use std::fmt::Write as _;

use clap::ValueEnum;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use cvform::basis::{verify_flip_pairing, RankMode};
use cvform::laplace::oracle::derivative_oracle;
use cvform::{
    compare_bases, evaluate, generate_standard_basis, naive_oracle, verify_characteristic_uniqueness,
    verify_harmonicity, verify_independence, CvForm, Permutation,
};

use crate::output::{usage, CliError, Output};

pub const DEFAULT_SEED: u64 = 20240607;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Every standard form is annihilated by the symmetrized derivatives.
    Harmonic,
    /// Exact rank of the basis.
    Rank,
    /// Block evaluation against the direct determinant.
    Oracle,
    /// Flip pairing of basis tableaux.
    Flip,
    /// Distinct characteristic monomials.
    Chars,
    /// One independent basis per reading order.
    Orders,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Harmonic => "harmonic",
            Suite::Rank => "rank",
            Suite::Oracle => "oracle",
            Suite::Flip => "flip",
            Suite::Chars => "chars",
            Suite::Orders => "orders",
        }
    }

    /// Largest N accepted by the suite.
    fn cap(self, leading: bool) -> usize {
        match self {
            Suite::Harmonic => 6,
            Suite::Rank if leading => 7,
            Suite::Rank => 6,
            Suite::Oracle => 7,
            Suite::Flip => 8,
            Suite::Chars => 8,
            Suite::Orders => 5,
        }
    }
}

pub fn random_form(rng: &mut ChaCha8Rng, n: usize) -> CvForm {
    CvForm::new((0..n).map(|_| rng.gen_range(0..n as u32)).collect()).expect("entries in range")
}

/// A uniformly shuffled regular form whose largest entry is `N - 1`.
pub fn random_regular_form(rng: &mut ChaCha8Rng, n: usize) -> CvForm {
    let mut e = vec![0u32];
    for _ in 1..n {
        let step = rng.gen_range(0..2u32);
        e.push(e.last().unwrap() + step);
    }
    let shift = n as u32 - 1 - e.last().unwrap();
    let mut e: Vec<u32> = e.into_iter().map(|x| x + shift).collect();
    e.shuffle(rng);
    CvForm::new(e).expect("entries in range")
}

fn all_forms(n: usize) -> Vec<CvForm> {
    (0..n.pow(n as u32))
        .map(|mut code| {
            let mut e = vec![0u32; n];
            for x in e.iter_mut().rev() {
                *x = (code % n) as u32;
                code /= n;
            }
            CvForm::new(e).expect("entries in range")
        })
        .collect()
}

pub fn run(
    n: usize,
    suite: Suite,
    samples: usize,
    seed: u64,
    degree: Option<i64>,
    leading: bool,
) -> Result<Output, CliError> {
    let cap = suite.cap(leading);
    if n == 0 || n > cap {
        return Err(usage(format!("{} suite accepts N in 1..={cap}", suite.name())));
    }
    if degree.is_some() && suite != Suite::Rank {
        return Err(usage("--degree applies to the rank suite"));
    }
    let (ok, text, detail) = match suite {
        Suite::Oracle => oracle(n, samples, seed),
        Suite::Harmonic => harmonic(n)?,
        Suite::Rank => rank(n, degree, leading)?,
        Suite::Flip => {
            let r = verify_flip_pairing(n)?;
            let ok = r.failures.is_empty();
            let text = format!("{}/{} tableaux flip onto basis forms of complementary degree", r.pairs - r.failures.len(), r.pairs);
            (ok, text, json!(r))
        }
        Suite::Chars => {
            let b = generate_standard_basis(n, None)?;
            let ok = verify_characteristic_uniqueness(&b)?;
            let text = format!("{} forms, characteristic monomials distinct: {ok}", b.len());
            (ok, text, json!({ "forms": b.len(), "distinct": ok }))
        }
        Suite::Orders => {
            let orders = Permutation::all(n);
            let mode = if leading { RankMode::Leading } else { RankMode::Full };
            let c = compare_bases(n, &orders, mode)?;
            let good = c.bases.iter().filter(|s| s.independent).count();
            let text = format!(
                "{good}/{} reading orders give independent bases of size {}; identical pairs {}",
                c.bases.len(),
                c.bases.first().map_or(0, |s| s.forms),
                c.identical_pairs
            );
            (good == c.bases.len(), text, json!(c))
        }
    };
    let status = if ok { "PASS" } else { "FAIL" };
    let text = format!("{status} {} N={n}: {text}\n", suite.name());
    let j = json!({ "N": n, "suite": suite.name(), "pass": ok, "seed": seed, "detail": detail });
    Ok(Output::new("verify", text, j).with_status(ok))
}

fn oracle(n: usize, samples: usize, seed: u64) -> (bool, String, serde_json::Value) {
    let exhaustive = n <= 4;
    let forms = if exhaustive {
        all_forms(n)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples).map(|_| random_form(&mut rng, n)).collect()
    };
    let failures: Vec<String> = forms
        .par_iter()
        .filter(|f| {
            let v = evaluate(f);
            v != naive_oracle(f) || (n <= 5 && v != derivative_oracle(f))
        })
        .map(|f| f.to_string())
        .collect();
    let matched = forms.len() - failures.len();
    let how = if exhaustive { "exhaustive" } else { "sampled" };
    let text = format!("{matched}/{} forms match the naive determinant ({how})", forms.len());
    let j = json!({ "forms": forms.len(), "matched": matched, "exhaustive": exhaustive, "failures": failures });
    (failures.is_empty(), text, j)
}

fn harmonic(n: usize) -> Result<(bool, String, serde_json::Value), CliError> {
    let b = generate_standard_basis(n, None)?;
    let kmax = n as u32 - 1;
    let reports: Vec<_> = b
        .forms
        .par_iter()
        .map(|bf| verify_harmonicity(&bf.form, kmax).expect("kmax below N"))
        .collect();
    let failures: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
    let mut text = format!(
        "{}/{} standard forms annihilated for k=1..{kmax}",
        reports.len() - failures.len(),
        reports.len()
    );
    for r in &failures {
        if let Some((k, check)) = r.first_failure() {
            write!(text, "\n  {} fails at k={k} ({check})", r.form).unwrap();
        }
    }
    let ok = failures.is_empty();
    let j = json!({
        "forms": reports.len(),
        "kmax": kmax,
        "failures": failures.iter().map(|r| r.form.to_string()).collect::<Vec<_>>(),
    });
    Ok((ok, text, j))
}

fn rank(n: usize, degree: Option<i64>, leading: bool) -> Result<(bool, String, serde_json::Value), CliError> {
    let b = generate_standard_basis(n, degree)?;
    let mode = if leading { RankMode::Leading } else { RankMode::Full };
    let r = verify_independence(&b, mode);
    let mut text = format!("rank {} of {}", r.rank, r.forms);
    if leading {
        text.push_str(" (leading row-blocks)");
    }
    if !r.duplicates.is_empty() {
        write!(text, "; {} duplicate forms", r.duplicates.len()).unwrap();
    }
    Ok((r.independent, text, json!(r)))
}
