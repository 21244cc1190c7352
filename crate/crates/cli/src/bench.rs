use std::fmt::Write as _;
use std::time::Instant;

use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use cvform::laplace::oracle::leibniz_nonzero_terms;
use cvform::{expand_rowblocks, naive_oracle, CvForm};

use crate::commands::parse_form;
use crate::output::{usage, CliError, Output};
use crate::verify::random_regular_form;

/// The naive determinant walks all row subsets; keep it small.
const MAX_BENCH_N: usize = 9;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    Naive,
    Blocks,
    Both,
}

struct Row {
    form: CvForm,
    leibniz_total: u128,
    leibniz_nonzero: u128,
    rowblocks: usize,
    naive_us: Option<u128>,
    blocks_us: Option<u128>,
}

fn measure(f: &CvForm, strategy: Strategy) -> Row {
    let n = f.n() as u128;
    let leibniz_total = (1..=n).product();
    let mut naive_us = None;
    let mut blocks_us = None;
    if strategy != Strategy::Blocks {
        let t = Instant::now();
        std::hint::black_box(naive_oracle(f));
        naive_us = Some(t.elapsed().as_micros());
    }
    let t = Instant::now();
    let e = expand_rowblocks(f);
    let v = e.value();
    if strategy != Strategy::Naive {
        std::hint::black_box(v);
        blocks_us = Some(t.elapsed().as_micros());
    }
    Row {
        form: f.clone(),
        leibniz_total,
        leibniz_nonzero: leibniz_nonzero_terms(f),
        rowblocks: e.terms.len(),
        naive_us,
        blocks_us,
    }
}

pub fn run(forms: &[String], n_max: usize, samples: usize, seed: u64, strategy: Strategy) -> Result<Output, CliError> {
    let inputs: Vec<CvForm> = if forms.is_empty() {
        if !(2..=MAX_BENCH_N).contains(&n_max) {
            return Err(usage(format!("--n-max must lie in 2..={MAX_BENCH_N}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (2..=n_max)
            .flat_map(|n| (0..samples).map(move |_| n))
            .map(|n| random_regular_form(&mut rng, n))
            .collect()
    } else {
        forms.iter().map(|s| parse_form(s)).collect::<Result<_, _>>()?
    };
    if let Some(f) = inputs.iter().find(|f| f.n() > MAX_BENCH_N) {
        return Err(usage(format!("{f} has more than {MAX_BENCH_N} variables")));
    }
    let rows: Vec<Row> = inputs.iter().map(|f| measure(f, strategy)).collect();
    let opt = |x: Option<u128>| x.map_or(String::new(), |v| v.to_string());
    let mut text = String::from("form,n,leibniz_total,leibniz_nonzero,rowblocks,naive_us,blocks_us\n");
    for r in &rows {
        let entries: Vec<String> = r.form.entries().iter().map(|e| e.to_string()).collect();
        writeln!(
            text,
            "{},{},{},{},{},{},{}",
            entries.join(" "),
            r.form.n(),
            r.leibniz_total,
            r.leibniz_nonzero,
            r.rowblocks,
            opt(r.naive_us),
            opt(r.blocks_us)
        )
        .unwrap();
    }
    let j = json!({
        "seed": seed,
        "rows": rows.iter().map(|r| json!({
            "form": r.form.entries(),
            "n": r.form.n(),
            "leibniz_total": r.leibniz_total.to_string(),
            "leibniz_nonzero": r.leibniz_nonzero.to_string(),
            "rowblocks": r.rowblocks,
            "naive_us": r.naive_us.map(|v| v.to_string()),
            "blocks_us": r.blocks_us.map(|v| v.to_string()),
        })).collect::<Vec<_>>(),
    });
    Ok(Output::new("bench", text, j))
}
