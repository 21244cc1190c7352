use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{json, Value};

use cvform::laplace::oracle::leibniz_nonzero_terms;
use cvform::SkewTableau;
use cvform::{
    class_to_ribbon, count_syt, enumerate_ribbons, enumerate_tableaux, expand_rowblocks, generate_basis,
    q_factorial, ribbon_generating_function, ribbons_of_degree, CvForm, Permutation, Ribbon, RowBlock, TypeVector,
    ZeroRemoval,
};

use crate::output::{usage, CliError, Output};

/// Largest N for listings that enumerate every tableau.
pub const MAX_LIST_N: usize = 9;
/// Largest N for the counting series (u64 coefficients).
pub const MAX_COUNT_N: usize = 20;

pub fn parse_form(s: &str) -> Result<CvForm, CliError> {
    s.parse::<CvForm>().map_err(|e| usage(e.to_string()))
}

pub fn parse_class(s: &str) -> Result<TypeVector, CliError> {
    TypeVector::parse(s).map_err(|e| usage(e.to_string()))
}

pub fn parse_order(s: &str, n: usize) -> Result<Permutation, CliError> {
    let images: Result<Vec<usize>, _> = s
        .trim()
        .trim_start_matches(['(', '['])
        .trim_end_matches([')', ']'])
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>())
        .collect();
    let images = images.map_err(|_| usage(format!("cannot parse reading order '{s}'")))?;
    if images.len() != n {
        return Err(usage(format!("reading order must list {n} values")));
    }
    Permutation::from_one_based(&images).ok_or_else(|| usage(format!("'{s}' is not a permutation of 1..{n}")))
}

fn rowblock_json(rb: &RowBlock) -> Value {
    json!({
        "sign": rb.total_sign,
        "powers": rb.blocks,
        "variables": rb.var_partition.iter().map(|b| b.iter().map(|v| v + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "shuffle": rb.shuffle_text(),
        "schur": rb.schur_annotation(),
    })
}

fn rowblock_line(rb: &RowBlock) -> String {
    let mut s = format!("{rb}");
    if let Some(sh) = rb.shuffle_text() {
        write!(s, "  {sh}").unwrap();
    }
    write!(s, "  {}", rb.schur_annotation()).unwrap();
    s
}

pub fn eval(form: &str, trace: bool) -> Result<Output, CliError> {
    let f = parse_form(form)?;
    let e = expand_rowblocks(&f);
    let v = e.value();
    let mut text = v.canonical_text();
    text.push('\n');
    let mut j = json!({
        "form": f.entries(),
        "degree": f.degree(),
        "value": v.canonical_text(),
        "polynomial": v.to_json(),
    });
    if trace {
        writeln!(text, "row-blocks: {}", e.terms.len()).unwrap();
        for rb in &e.terms {
            writeln!(text, "  {}", rowblock_line(rb)).unwrap();
        }
        j["trace"] = Value::Array(e.terms.iter().map(rowblock_json).collect());
    }
    Ok(Output::new("eval", text, j))
}

pub fn expand(form: &str) -> Result<Output, CliError> {
    let f = parse_form(form)?;
    let e = expand_rowblocks(&f);
    let mut text = String::new();
    writeln!(text, "form {f}").unwrap();
    let zr = match &e.normalized {
        ZeroRemoval::Scalar(c) => {
            writeln!(text, "zero removal: constant {c}").unwrap();
            json!({ "scalar": c })
        }
        ZeroRemoval::Form { sign, form, steps } => {
            if *steps > 0 {
                let s = if *sign < 0 { "-" } else { "+" };
                writeln!(text, "zero removal: {s}{form} after {steps} step(s)").unwrap();
            }
            json!({ "sign": sign, "form": form.entries(), "steps": steps })
        }
    };
    let mut sorted_json = Value::Null;
    if let Some(s) = &e.sorted {
        let sign = if s.sign < 0 { "-" } else { "+" };
        writeln!(text, "sorted: {sign}{} by {}", s.form, s.perm).unwrap();
        sorted_json = json!({ "form": s.form.entries(), "perm": s.perm.one_based(), "sign": s.sign });
    }
    if let Some(t) = e.decoding_table() {
        text.push_str("decoding table:\n");
        for line in t.to_string().lines() {
            writeln!(text, "  {line}").unwrap();
        }
    }
    writeln!(text, "row-blocks: {}", e.terms.len()).unwrap();
    for rb in &e.terms {
        writeln!(text, "  {}", rowblock_line(rb)).unwrap();
    }
    let v = e.value();
    writeln!(text, "value: {}", v.canonical_text()).unwrap();
    let j = json!({
        "form": f.entries(),
        "zero_removal": zr,
        "sorted": sorted_json,
        "decoding_table": e.decoding_table(),
        "rowblocks": e.terms.iter().map(rowblock_json).collect::<Vec<_>>(),
        "leibniz_nonzero_terms": leibniz_nonzero_terms(&f).to_string(),
        "value": v.canonical_text(),
    });
    Ok(Output::new("expand", text, j))
}

pub fn type_of(form: &str) -> Result<Output, CliError> {
    let f = parse_form(form)?;
    let t = f.type_of();
    let s = f.standard_permutation();
    let text = format!(
        "type {t}\nstandard permutation {s}\ndegree {}\nregular {}\n",
        f.degree(),
        f.is_regular()
    );
    let j = json!({
        "form": f.entries(),
        "type": t.entries,
        "standard_permutation": s.one_based(),
        "degree": f.degree(),
        "regular": f.is_regular(),
    });
    Ok(Output::new("type", text, j))
}

fn ribbon_json(r: &Ribbon) -> Value {
    let sp = r.to_skew_partition();
    json!({
        "class": r.class().entries,
        "form": r.form().entries(),
        "index": r.index(),
        "height": r.height(),
        "ribbon": r,
        "skew_partition": { "lambda": sp.lambda, "mu": sp.mu },
        "tableaux": count_syt(&sp).to_string(),
    })
}

fn describe_ribbon(r: &Ribbon) -> String {
    let sp = r.to_skew_partition();
    format!(
        "class {}\nform {}\nindex {}\nheight {}\nskew partition {}\ntableaux {}\n{}",
        r.class(),
        r.form(),
        r.index(),
        r.height(),
        sp,
        count_syt(&sp),
        r.render()
    )
}

pub fn class(form: &str) -> Result<Output, CliError> {
    let f = parse_form(form)?;
    let c = f.class_of()?;
    let r = class_to_ribbon(&c).map_err(|_| usage(format!("{f} vanishes: its class {c} has no ribbon")))?;
    let text = describe_ribbon(&r);
    let mut j = ribbon_json(&r);
    j["input"] = json!(f.entries());
    Ok(Output::new("class", text, j))
}

pub fn ribbon(class: Option<&str>, n: Option<usize>, degree: Option<i64>) -> Result<Output, CliError> {
    match (class, n) {
        (Some(c), None) => {
            if degree.is_some() {
                return Err(usage("--degree applies to listings with --n"));
            }
            let r = class_to_ribbon(&parse_class(c)?)?;
            Ok(Output::new("ribbon", describe_ribbon(&r), ribbon_json(&r)))
        }
        (None, Some(n)) => {
            if n == 0 || n > MAX_COUNT_N {
                return Err(usage(format!("N must lie in 1..={MAX_COUNT_N}")));
            }
            let rs = match degree {
                Some(d) => ribbons_of_degree(n, d)?,
                None => enumerate_ribbons(n),
            };
            let mut text = String::new();
            for r in &rs {
                let sp = r.to_skew_partition();
                writeln!(
                    text,
                    "{}  {}  index {}  {}  tableaux {}",
                    r.class(),
                    r.form(),
                    r.index(),
                    sp,
                    count_syt(&sp)
                )
                .unwrap();
            }
            let j = json!({
                "N": n,
                "d": degree,
                "count": rs.len(),
                "ribbons": rs.iter().map(ribbon_json).collect::<Vec<_>>(),
            });
            Ok(Output::new("ribbons", text, j))
        }
        _ => Err(usage("give either a class or --n")),
    }
}

fn tableau_line(t: &SkewTableau) -> String {
    let fill: Vec<String> = t.filling().iter().map(|v| v.to_string()).collect();
    format!("{}  ->  {}  type {}", fill.join(" "), t.to_cvform(), t.to_type())
}

fn tableau_json(t: &SkewTableau) -> Value {
    json!({
        "tableau": t,
        "form": t.to_cvform().entries(),
        "type": t.to_type().entries,
    })
}

pub fn tableaux(class: &str, count_only: bool) -> Result<Output, CliError> {
    let r = class_to_ribbon(&parse_class(class)?)?;
    let sp = r.to_skew_partition();
    if count_only {
        let c = count_syt(&sp);
        let j = json!({ "class": r.class().entries, "skew_partition": sp.to_string(), "count": c.to_string() });
        return Ok(Output::new("tableaux", format!("{c}\n"), j));
    }
    if r.n() > MAX_LIST_N {
        return Err(usage(format!("listing is limited to N <= {MAX_LIST_N}; use --count-only")));
    }
    let ts = enumerate_tableaux(&r);
    let mut text = format!("class {} {} tableaux {}\n", r.class(), sp, ts.len());
    for t in &ts {
        writeln!(text, "{}", tableau_line(t)).unwrap();
    }
    let j = json!({
        "class": r.class().entries,
        "skew_partition": sp.to_string(),
        "count": ts.len(),
        "tableaux": ts.iter().map(tableau_json).collect::<Vec<_>>(),
    });
    Ok(Output::new("tableaux", text, j))
}

pub fn basis(n: usize, degree: Option<i64>, order: Option<&str>, count_only: bool) -> Result<Output, CliError> {
    if n == 0 {
        return Err(usage("N must be at least 1"));
    }
    let order = match order {
        Some(s) => parse_order(s, n)?,
        None => Permutation::reversal(n),
    };
    let ribbons = match degree {
        Some(d) => ribbons_of_degree(n, d)?,
        None => enumerate_ribbons(n),
    };
    let header = |total: u128| {
        let d = degree.map_or("all".to_string(), |d| d.to_string());
        format!("N {n} degree {d} order {order} forms {total}\n")
    };
    if count_only {
        if n > MAX_COUNT_N {
            return Err(usage(format!("N must be at most {MAX_COUNT_N}")));
        }
        let counts: Vec<(String, u128)> = ribbons
            .iter()
            .map(|r| (r.class().to_string(), count_syt(&r.to_skew_partition())))
            .collect();
        let total: u128 = counts.iter().map(|(_, c)| c).sum();
        let mut text = header(total);
        for (c, k) in &counts {
            writeln!(text, "  class {c}: {k}").unwrap();
        }
        let j = json!({
            "N": n,
            "d": degree,
            "reading_order": order.one_based(),
            "count": total.to_string(),
            "classes": counts.iter().map(|(c, k)| json!({"class": c, "count": k.to_string()})).collect::<Vec<_>>(),
        });
        return Ok(Output::new("basis-count", text, j));
    }
    if n > MAX_LIST_N {
        return Err(usage(format!("listing is limited to N <= {MAX_LIST_N}; use --count-only")));
    }
    let b = generate_basis(n, degree, &order)?;
    let backward = b.is_backward();
    let mut text = header(b.len() as u128);
    let mut per_class: Vec<(String, usize)> = Vec::new();
    for bf in &b.forms {
        let t = bf.tableau.as_ref().expect("generated forms carry tableaux");
        let c = t.ribbon().class().to_string();
        match per_class.last_mut() {
            Some((last, k)) if *last == c => *k += 1,
            _ => per_class.push((c, 1)),
        }
        let fill: Vec<String> = t.filling().iter().map(|v| v.to_string()).collect();
        let ty = if backward {
            format!("  type {}", bf.form.type_of())
        } else {
            String::new()
        };
        writeln!(
            text,
            "{}{}  class {}  tableau {}",
            bf.form,
            ty,
            t.ribbon().class(),
            fill.join(" ")
        )
        .unwrap();
    }
    for (c, k) in &per_class {
        writeln!(text, "  class {c}: {k}").unwrap();
    }
    let mut j = b.to_json();
    j["count"] = json!(b.len());
    Ok(Output::new("basis", text, j))
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountKind {
    /// Mahonian numbers, the coefficients of the q-factorial.
    Mahonian,
    /// Number of ribbons, total and by index.
    Ribbons,
    /// Ribbon generating function in q and t.
    Gf,
}

fn parse_power(s: &str) -> Result<usize, CliError> {
    let t = s.trim();
    let t = t.strip_prefix("q^").or_else(|| t.strip_prefix('q').map(|r| if r.is_empty() { "1" } else { r }));
    t.and_then(|x| x.parse().ok())
        .or_else(|| s.trim().parse().ok())
        .ok_or_else(|| usage(format!("cannot parse power '{s}', expected e.g. q^16")))
}

pub fn count(n: usize, what: CountKind, at: Option<&str>) -> Result<Output, CliError> {
    if n == 0 || n > MAX_COUNT_N {
        return Err(usage(format!("N must lie in 1..={MAX_COUNT_N}")));
    }
    if at.is_some() && what != CountKind::Gf {
        return Err(usage("--at applies to gf only"));
    }
    match what {
        CountKind::Mahonian => {
            let q = q_factorial(n);
            let j = json!({ "N": n, "coefficients": q.coeffs, "total": q.total() });
            Ok(Output::new("count-mahonian", format!("{q}\n"), j))
        }
        CountKind::Ribbons => {
            let gf = ribbon_generating_function(n);
            let by_index: Vec<u64> = gf.coeffs.iter().map(|row| row.iter().sum()).collect();
            let parts: Vec<String> = by_index.iter().map(|c| c.to_string()).collect();
            let text = format!("{}\nby index: {}\n", gf.total(), parts.join(" "));
            let j = json!({ "N": n, "total": gf.total(), "by_index": by_index });
            Ok(Output::new("count-ribbons", text, j))
        }
        CountKind::Gf => {
            let gf = ribbon_generating_function(n);
            if let Some(a) = at {
                let d = parse_power(a)?;
                let s = gf.at_q(d);
                let j = json!({ "N": n, "q_power": d, "t_coefficients": s.coeffs, "text": s.render("t") });
                return Ok(Output::new("count-gf", format!("{}\n", s.render("t")), j));
            }
            let mut text = String::new();
            for d in 0..gf.coeffs.len() {
                writeln!(text, "q^{d}: {}", gf.at_q(d).render("t")).unwrap();
            }
            let j = json!({ "N": n, "coefficients": gf.coeffs });
            Ok(Output::new("count-gf", text, j))
        }
    }
}

pub fn flip(input: &str) -> Result<Output, CliError> {
    let t: SkewTableau = if input.trim_start().starts_with('{') {
        serde_json::from_str(input).map_err(|e| usage(format!("invalid tableau: {e}")))?
    } else {
        SkewTableau::from_standard_form(&parse_form(input)?)?
    };
    let g = t.flip();
    let (f, fg) = (t.to_cvform(), g.to_cvform());
    let text = format!(
        "input {}  degree {}\n{}flipped {}  degree {}\n{}",
        f,
        f.degree(),
        t.render(),
        fg,
        fg.degree(),
        g.render()
    );
    let j = json!({
        "input": { "tableau": t, "form": f.entries(), "degree": f.degree() },
        "flipped": { "tableau": g, "form": fg.entries(), "degree": fg.degree() },
    });
    Ok(Output::new("flip", text, j))
}
