//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! with its runtime and budget, and exits non-zero if any fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cvform::basis::{lowered_sum, verify_flip_pairing, HarmonicReport};
use cvform::laplace::oracle::derivative_oracle;
use cvform::ribbon::{index_bounds, SkewTableau};
use cvform::{
    class_to_ribbon, compare_bases, count_syt, enumerate_ribbons, evaluate, expand_rowblocks, generate_basis,
    generate_standard_basis, naive_oracle, q_factorial, ribbon_generating_function, ribbons_of_degree,
    verify_characteristic_uniqueness, verify_harmonicity, verify_independence, CvForm, Permutation, Polynomial,
    RankMode, TypeVector,
};

const SEED: u64 = 20240607;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn form(s: &str) -> CvForm {
    s.parse().expect("valid literal")
}

fn classes(rs: &[cvform::Ribbon]) -> Vec<String> {
    rs.iter()
        .map(|r| r.class().entries.iter().map(|k| k.to_string()).collect())
        .collect()
}

fn mahonian() -> Check {
    let q4 = q_factorial(4);
    ensure(q4.coeffs == [1, 3, 5, 6, 5, 3, 1], format!("T(4, .) = {q4}"))?;
    let q8 = q_factorial(8);
    ensure(q8.coeff(16) == 3450 && q8.coeff(12) == 3450, "T(8,16) or T(8,12) differs from 3450")?;
    Ok("T(4,.) = 1 3 5 6 5 3 1; T(8,16) = T(8,12) = 3450".into())
}

fn class_decomposition() -> Check {
    let d16 = ribbons_of_degree(8, 16).map_err(|e| e.to_string())?;
    let want16 = [
        "54321100", "44322100", "44321110", "43332100", "43322110", "43222210", "33332110", "33322210",
    ];
    ensure(classes(&d16) == want16, format!("degree 16 classes {:?}", classes(&d16)))?;
    let counts: Vec<u128> = d16.iter().map(|r| count_syt(&r.to_skew_partition())).collect();
    ensure(counts == [105, 589, 315, 315, 1385, 181, 245, 315], format!("counts {counts:?}"))?;
    ensure(counts.iter().sum::<u128>() == 3450, "sum differs from 3450")?;
    let d12 = ribbons_of_degree(8, 12).map_err(|e| e.to_string())?;
    let want12 = [
        "43221000", "43211100", "33321000", "33221100", "33211110", "32222100", "32221110", "22222110",
    ];
    ensure(classes(&d12) == want12, format!("degree 12 classes {:?}", classes(&d12)))?;
    Ok("8 classes at d=16 with 105+589+315+315+1385+181+245+315 = 3450; d=12 list matches".into())
}

fn worked_evaluations() -> Check {
    let v = evaluate(&form("[0 1 3 3]"));
    ensure(v.to_string() == "t3 - t4", format!("[0 1 3 3] = {v}"))?;

    let t = |i| Polynomial::var(4, i).unwrap();
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let expected = &(-&(&t(3) * &(&t(1) - &t(2)))) + &(&(&t(1) * &t(1)) - &(&t(2) * &t(2))).scale(&half);
    let v = evaluate(&form("[3 2 2 1]"));
    ensure(v == expected, format!("[3 2 2 1] = {v}"))?;
    ensure(
        v.to_string() == "1/2*t2^2 - t2*t4 - 1/2*t3^2 + t3*t4",
        format!("canonical text {v}"),
    )?;

    let e = expand_rowblocks(&form("[2 2 4 4 5 5]"));
    let signed: Vec<String> = e.terms.iter().map(|rb| rb.to_string()).collect();
    let want = [
        "+|2 1|2 1|1 0|",
        "-|2 1|2 0|2 0|",
        "+|2 1|1 0|3 0|",
        "-|2 0|3 1|1 0|",
        "+|1 0|4 1|1 0|",
        "+|2 0|3 0|2 0|",
        "-|2 0|1 0|4 0|",
        "-|1 0|4 0|2 0|",
        "+|1 0|1 0|5 0|",
    ];
    ensure(signed == want, format!("row-blocks {signed:?}"))?;
    ensure(e.value() == naive_oracle(&form("[2 2 4 4 5 5]")), "row-block sum differs from determinant")?;
    Ok("[0 1 3 3], [3 2 2 1] and the 9 row-blocks of [2 2 4 4 5 5] match".into())
}

fn oracle_equivalence() -> Check {
    let mut forms = Vec::new();
    for code in 0..256u32 {
        forms.push(CvForm::new((0..4).rev().map(|s| code >> (2 * s) & 3).collect()).unwrap());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for n in [5usize, 6] {
        for _ in 0..200 {
            forms.push(CvForm::new((0..n).map(|_| rng.gen_range(0..n as u32)).collect()).unwrap());
        }
    }
    for f in &forms {
        let v = evaluate(f);
        ensure(v == naive_oracle(f), format!("{f}: block expansion differs from determinant"))?;
        ensure(v == derivative_oracle(f), format!("{f}: block expansion differs from derivative"))?;
    }
    Ok(format!("{} forms (256 exhaustive at N=4, 200 each at N=5,6, seed {SEED})", forms.len()))
}

fn syzygies() -> Check {
    let sum = |list: &[&str]| list.iter().fold(Polynomial::zero(4), |acc, s| &acc + &evaluate(&form(s)));
    ensure(sum(&["[2 3 3 3]", "[3 2 3 3]", "[3 3 2 3]", "[3 3 3 2]"]).is_zero(), "first-order sum")?;
    ensure(lowered_sum(&form("[3 3 3 3]"), 1).is_zero(), "lowered sum k=1")?;
    ensure(sum(&["[1 3 3 3]", "[3 1 3 3]", "[3 3 1 3]", "[3 3 3 1]"]).is_zero(), "second-order sum")?;
    ensure(
        sum(&["[2 2 3 3]", "[2 3 2 3]", "[2 3 3 2]", "[3 2 2 3]", "[3 2 3 2]", "[3 3 2 2]"]).is_zero(),
        "six-term sum",
    )?;
    Ok("four-term, second-order and six-term sums vanish".into())
}

fn basis_correctness() -> Check {
    let b = generate_standard_basis(4, Some(3)).map_err(|e| e.to_string())?;
    let got: HashSet<CvForm> = b.cvforms().into_iter().collect();
    let want: HashSet<CvForm> = ["[3 2 2 2]", "[2 3 2 2]", "[2 2 3 2]", "[3 3 2 1]", "[3 2 3 1]", "[3 2 1 3]"]
        .iter()
        .map(|s| form(s))
        .collect();
    ensure(got == want && b.len() == 6, "degree 3 forms differ")?;
    let b = generate_standard_basis(4, Some(4)).map_err(|e| e.to_string())?;
    let types: HashSet<TypeVector> = b.forms.iter().map(|f| f.form.type_of()).collect();
    ensure(b.len() == 5 && types.len() == 5, "degree 4 needs 5 forms with 5 types")?;
    for n in 1..=6 {
        let b = generate_standard_basis(n, None).map_err(|e| e.to_string())?;
        let distinct: HashSet<CvForm> = b.cvforms().into_iter().collect();
        let fact: usize = (1..=n).product();
        ensure(distinct.len() == fact && b.len() == fact, format!("N={n}: {} forms", distinct.len()))?;
        ensure(b.degree_census() == q_factorial(n).coeffs, format!("N={n}: census"))?;
    }
    Ok("degree 3 and 4 sets at N=4; N! distinct forms with Mahonian census for N<=6".into())
}

fn independence() -> Check {
    let mut notes = Vec::new();
    for n in 1..=6 {
        let start = Instant::now();
        let b = generate_standard_basis(n, None).map_err(|e| e.to_string())?;
        let r = verify_independence(&b, RankMode::Full);
        let fact: usize = (1..=n).product();
        ensure(r.independent && r.rank == fact, format!("N={n}: rank {} of {fact}", r.rank))?;
        let q = q_factorial(n);
        for s in &r.slices {
            ensure(
                s.rank as u64 == q.coeff(s.degree as usize) && s.forms == s.rank,
                format!("N={n}, d={}: rank {} of {}", s.degree, s.rank, s.forms),
            )?;
        }
        if n >= 5 {
            notes.push(format!("N={n} rank {} in {:.1}s", r.rank, start.elapsed().as_secs_f64()));
        }
    }
    Ok(format!("full rank N! for N<=6, every slice rank T(N,d); {}", notes.join(", ")))
}

fn harmonicity() -> Check {
    let mut count = 0;
    for n in 2..=5 {
        let b = generate_standard_basis(n, None).map_err(|e| e.to_string())?;
        let reports: Vec<HarmonicReport> = b
            .forms
            .iter()
            .map(|bf| verify_harmonicity(&bf.form, n as u32 - 1).expect("k below N"))
            .collect();
        for r in &reports {
            ensure(r.passed(), format!("{} fails at {:?}", r.form, r.first_failure()))?;
        }
        count += reports.len();
    }
    Ok(format!("{count} standard forms, N<=5, k=1..N-1, both routes"))
}

fn golden_pair() -> Check {
    let r = class_to_ribbon(&TypeVector::parse("44321110").unwrap()).map_err(|e| e.to_string())?;
    let t = SkewTableau::new(r, vec![4, 8, 5, 3, 1, 2, 7, 6]).map_err(|e| e.to_string())?;
    let f = t.to_cvform();
    ensure(f.to_string() == "[5 7 7 5 4 5 6 5]", format!("form {f}"))?;
    ensure(t.to_type().to_string() == "(4 1 0 3 4 2 1 1)", format!("type {}", t.to_type()))?;
    let g = t.flip();
    ensure(g.filling() == [5, 1, 4, 6, 8, 7, 2, 3], "flipped filling")?;
    let fg = g.to_cvform();
    ensure(fg.to_string() == "[6 6 5 3 4 7 6 3]", format!("flipped form {fg}"))?;
    ensure(f.degree() == 16 && fg.degree() == 12, "degrees 16 and 12")?;
    Ok("[5 7 7 5 4 5 6 5] type (4 1 0 3 4 2 1 1) flips to [6 6 5 3 4 7 6 3]; 16 + 12 = 28".into())
}

fn counting_identities() -> Check {
    for n in 1..=8 {
        let rs = enumerate_ribbons(n);
        ensure(rs.len() == 1 << (n - 1), format!("N={n}: {} ribbons", rs.len()))?;
        let total: u128 = rs.iter().map(|r| count_syt(&r.to_skew_partition())).sum();
        ensure(total == (1..=n as u128).product::<u128>(), format!("N={n}: {total} tableaux"))?;
        for r in &rs {
            let (lo, hi) = index_bounds(n, r.l());
            ensure(lo <= r.index() && r.index() <= hi, format!("N={n}: {} out of bounds", r.class()))?;
        }
        ensure(verify_flip_pairing(n).map_err(|e| e.to_string())?.failures.is_empty(), "flip pairing")?;
    }
    let gf = ribbon_generating_function(8);
    ensure(gf.at_q(16).render("t") == "t^5 + 5t^4 + 2t^3", "q^16 coefficient")?;
    ensure(gf.at_q(12).render("t") == "2t^4 + 5t^3 + t^2", "q^12 coefficient")?;
    Ok("sum of #SYT = N!, 2^(N-1) ribbons, height bounds, q^16 and q^12 coefficients".into())
}

fn characteristic_uniqueness() -> Check {
    let b = generate_standard_basis(7, None).map_err(|e| e.to_string())?;
    ensure(b.len() == 5040, "5040 forms")?;
    ensure(verify_characteristic_uniqueness(&b).map_err(|e| e.to_string())?, "repeated monomial")?;
    for n in 1..7 {
        let b = generate_standard_basis(n, None).map_err(|e| e.to_string())?;
        ensure(verify_characteristic_uniqueness(&b).map_err(|e| e.to_string())?, format!("N={n}"))?;
    }
    Ok("5040 distinct characteristic monomials at N=7 (and N<7)".into())
}

fn reading_orders() -> Check {
    let orders = Permutation::all(4);
    let c = compare_bases(4, &orders, RankMode::Full).map_err(|e| e.to_string())?;
    ensure(c.bases.len() == 24, "24 bases")?;
    for s in &c.bases {
        ensure(s.independent && s.rank == 24, format!("order {:?}: rank {}", s.order, s.rank))?;
    }
    let back = generate_basis(4, None, &Permutation::reversal(4)).map_err(|e| e.to_string())?;
    ensure(back == generate_standard_basis(4, None).unwrap(), "backward order is the default")?;
    Ok(format!("24 reading orders, each rank 24; {} identical pairs", c.identical_pairs))
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Check,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "mahonian table", budget: Duration::from_secs(1), run: mahonian },
        Criterion { id: 2, name: "class decomposition", budget: Duration::from_secs(5), run: class_decomposition },
        Criterion { id: 3, name: "worked evaluations", budget: Duration::from_secs(5), run: worked_evaluations },
        Criterion { id: 4, name: "oracle equivalence", budget: Duration::from_secs(60), run: oracle_equivalence },
        Criterion { id: 5, name: "syzygies", budget: Duration::from_secs(1), run: syzygies },
        Criterion { id: 6, name: "basis correctness", budget: Duration::from_secs(30), run: basis_correctness },
        Criterion { id: 7, name: "independence", budget: Duration::from_secs(600), run: independence },
        Criterion { id: 8, name: "harmonicity", budget: Duration::from_secs(120), run: harmonicity },
        Criterion { id: 9, name: "injection and flip", budget: Duration::from_secs(1), run: golden_pair },
        Criterion { id: 10, name: "counting identities", budget: Duration::from_secs(30), run: counting_identities },
        Criterion { id: 11, name: "characteristic monomials", budget: Duration::from_secs(30), run: characteristic_uniqueness },
        Criterion { id: 12, name: "reading orders", budget: Duration::from_secs(120), run: reading_orders },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(d) if elapsed <= c.budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("over budget; {d}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "{status} {:>2} {:<26} {:>8.3}s / {:>4}s  {detail}",
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
