use std::path::PathBuf;

use num_bigint::BigInt;
use serde_json::{json, Value};

use rootmean::exact::format_rational;
use rootmean::fixtures;
use rootmean::gw::power_sum_mean;
use rootmean::numeric::{self, CheckOptions, NumericReport};
use rootmean::phi::{constant_free, factorial_scaling_holds, phi_table, PhiKey};
use rootmean::relations::{self, MiningOptions, RelationVector};
use rootmean::seqmine;

use crate::output::{table, verdict, Doc, Status};
use crate::{Conjecture, Failure, NumericArgs, NumericConjecture, RunConfig};

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value, Failure> {
    serde_json::to_value(v).map_err(|e| Failure::config(e.to_string()))
}

/// Parses `lo..hi` (inclusive) or a single integer.
pub fn parse_range(s: &str) -> Result<(i64, i64), Failure> {
    let bad = || Failure::config(format!("bad range {s:?}; expected lo..hi"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

/// Parses `a@rho` terms separated by commas or whitespace, brackets optional.
pub fn parse_relation(s: &str) -> Result<Vec<(i64, BigInt)>, Failure> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    let mut out = Vec::new();
    for term in s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let (a, rho) = term
            .split_once('@')
            .ok_or_else(|| Failure::config(format!("bad relation term {term:?}; expected a@rho")))?;
        let a: BigInt = a.parse().map_err(|_| Failure::config(format!("bad coefficient {a:?}")))?;
        let rho: i64 = rho.parse().map_err(|_| Failure::config(format!("bad order {rho:?}")))?;
        out.push((rho, a));
    }
    if out.is_empty() {
        return Err(Failure::config("empty relation"));
    }
    Ok(out)
}

pub fn gw(run: &RunConfig, n: u32, max_deg: u32) -> Result<Doc, Failure> {
    if n == 0 {
        return Err(Failure::config("--n must be positive"));
    }
    run.check_degree("--n", n)?;
    run.check_degree("--max-deg", max_deg)?;
    let header = ["j", "mean power sum", "sum+"];
    let mut rows_json = Vec::new();
    let mut doc = Doc::new(Value::Null, &["n", "j", "poly", "sum_positive"]);
    let mut pretty_rows = Vec::new();
    for j in 1..=max_deg {
        let p = power_sum_mean(j, n);
        let sum = format_rational(&p.sum_positive());
        rows_json.push(json!({"j": j, "poly": p.to_json(), "text": p.to_string(), "sum_positive": sum}));
        doc.row(vec![n.to_string(), j.to_string(), p.to_string(), sum.clone()]);
        pretty_rows.push(vec![j.to_string(), p.pretty(), sum]);
    }
    doc.json = json!({"n": n, "max_deg": max_deg, "rows": rows_json});
    doc.line(format!("n = {n}"));
    doc.pretty.push_str(&table(&header, &pretty_rows));
    Ok(doc)
}

pub fn phi(run: &RunConfig, d: u32, delta: i64, rho: Option<&str>) -> Result<Doc, Failure> {
    run.check_degree("--D", d)?;
    let (lo, hi) = match rho {
        Some(s) => parse_range(s)?,
        None => (d as i64 - 10, d as i64 - 1),
    };
    let rows = phi_table(d, delta, lo, hi)?;
    let mut doc = Doc::new(Value::Null, &["D", "delta", "rho", "n", "poly", "sum_positive"]);
    let mut pretty_rows = Vec::new();
    let mut rows_json = Vec::new();
    for r in &rows {
        let k = r.result.key;
        let text = r.result.poly.to_string();
        doc.row(vec![
            d.to_string(),
            delta.to_string(),
            k.rho.to_string(),
            r.result.family_size.to_string(),
            text.clone(),
            r.sum_positive.clone(),
        ]);
        pretty_rows.push(vec![
            k.rho.to_string(),
            r.result.family_size.to_string(),
            r.result.poly.pretty(),
            r.sum_positive.clone(),
        ]);
        let mut v = to_value(r)?;
        v["text"] = text.into();
        rows_json.push(v);
    }
    doc.json = json!({"D": d, "delta": delta, "rho": [lo, hi], "rows": rows_json});
    doc.line(format!("D = {d}, delta = {delta}"));
    doc.pretty.push_str(&table(&["rho", "n", "phi", "sum+"], &pretty_rows));
    Ok(doc)
}

/// Printed relations at `(D, delta)`: how many hold, how many are known typos, and which fail.
fn fixture_check(d: u32, delta: i64) -> Result<(usize, usize, Vec<String>), Failure> {
    let ledger = fixtures::typo_ledger();
    let (mut ok, mut ledgered, mut failed) = (0, 0, Vec::new());
    for r in fixtures::relation_fixtures().relations.iter().filter(|r| r.d == d && r.delta == delta) {
        let holds = relations::combination(d, delta, &r.pairs())?.is_zero() && !fixtures::printed_is_trivial(r);
        let key = fixtures::relation_key(r);
        if holds {
            ok += 1;
        } else if ledger.entries.iter().any(|e| e.table == "relation" && e.key == key) {
            ledgered += 1;
        } else {
            failed.push(key);
        }
    }
    Ok((ok, ledgered, failed))
}

fn rel_rows(doc: &mut Doc, pretty: &mut Vec<Vec<String>>, kind: &str, rels: &[RelationVector]) {
    for r in rels {
        let terms: Vec<String> = r.pairs().iter().map(|(rho, a)| format!("{a}@{rho}")).collect();
        doc.row(vec![kind.into(), r.d.to_string(), r.delta.to_string(), terms.join(" ")]);
        pretty.push(vec![kind.into(), terms.join(" ")]);
    }
}

pub fn relations(run: &RunConfig, d: u32, delta: i64, rho: Option<&str>, minimal: bool) -> Result<Doc, Failure> {
    run.check_degree("--D", d)?;
    let (lo, hi) = match rho {
        Some(s) => parse_range(s)?,
        None => (if delta == 0 { 1 } else { 0 }, d as i64 - 1),
    };
    let rho_set: Vec<i64> = (lo..=hi).collect();
    let opts = MiningOptions {
        minimal_support: minimal,
        max_degree: if run.unsafe_degree { u32::MAX } else { relations::DEFAULT_MINING_CAP },
    };
    let rep = relations::find_relations_with(d, delta, &rho_set, opts)?;
    let (ok, ledgered, failed) = fixture_check(d, delta)?;

    let mut doc = Doc::new(Value::Null, &["kind", "D", "delta", "relation"]);
    let mut pretty = Vec::new();
    rel_rows(&mut doc, &mut pretty, "basis", &rep.basis);
    rel_rows(&mut doc, &mut pretty, "minimal", &rep.minimal_support);
    if let Some(a) = &rep.alternating_binomial {
        rel_rows(&mut doc, &mut pretty, "alternating", std::slice::from_ref(a));
    }
    let mut v = to_value(&rep)?;
    v["fixtures"] = json!({"verified": ok, "ledgered": ledgered, "failed": failed});
    doc.json = v;

    doc.line(format!("D = {d}, delta = {delta}, rho = {lo}..{hi}, dimension {}", rep.dim));
    if pretty.is_empty() {
        doc.line("no relations");
    } else {
        doc.pretty.push_str(&table(&["kind", "relation (alpha@rho)"], &pretty));
    }
    if minimal && !rep.minimal_support_mined {
        doc.line(format!("minimal-support mining skipped above D = {}", relations::DEFAULT_MINING_CAP));
    }
    if let Some(z) = rep.zero_sum_ok {
        doc.line(format!("zero coefficient sum: {}", verdict(z)));
    }
    doc.line(format!("printed relations: {ok} verified, {ledgered} known typos, {} failed", failed.len()));
    for f in &failed {
        doc.line(format!("  FAIL {f}"));
    }
    if !failed.is_empty() {
        doc.worsen(Status::Failed);
    }
    Ok(doc)
}

struct Check {
    name: String,
    pass: bool,
}

fn check(name: impl Into<String>, pass: bool) -> Check {
    Check { name: name.into(), pass }
}

fn verify_checks(c: Conjecture, max: u32) -> Result<Vec<Check>, Failure> {
    let mut out = Vec::new();
    match c {
        Conjecture::OddBinomial => {
            for d in (3..=max).step_by(2) {
                out.push(check(format!("D={d}"), relations::check_odd_binomial(d)?));
            }
        }
        Conjecture::Inheritance => {
            let opts = MiningOptions {
                minimal_support: false,
                max_degree: 0,
            };
            for d in 3..max {
                let rho: Vec<i64> = (1..d as i64).collect();
                for r in relations::find_relations_with(d, 0, &rho, opts)?.basis {
                    let pass = relations::check_inheritance(&r)?;
                    out.push(check(r.to_string(), pass));
                }
            }
        }
        Conjecture::Prop4 => {
            for d in 2..=max {
                for delta in 0..d as i64 {
                    let mut pass = true;
                    for m in 1..=3 {
                        pass &= constant_free(PhiKey::new(d, delta, -m)?)?;
                    }
                    out.push(check(format!("D={d} delta={delta} rho=-1..-3"), pass));
                }
            }
        }
        Conjecture::Prop5 => {
            for d in 2..=max {
                for delta in 1..d {
                    out.push(check(format!("D={d} delta={delta}"), factorial_scaling_holds(d, delta)?));
                }
            }
        }
        Conjecture::Dimension => {
            for (d, k) in relations::dimension_sweep(2, max.max(2))? {
                let want = match d {
                    2 => 0,
                    3 => 1,
                    _ if d % 2 == 0 => 1,
                    _ => 2,
                };
                out.push(check(format!("D={d} dim={k}"), k == want));
            }
        }
    }
    Ok(out)
}

pub fn verify(run: &RunConfig, c: Conjecture, max_degree: u32) -> Result<Doc, Failure> {
    run.check_degree("--max-degree", max_degree)?;
    let checks = verify_checks(c, max_degree)?;
    let pass = checks.iter().all(|k| k.pass);
    let name = format!("{c:?}");
    let mut doc = Doc::new(
        json!({
            "conjecture": name,
            "max_degree": max_degree,
            "pass": pass,
            "checks": checks.iter().map(|k| json!({"case": k.name, "pass": k.pass})).collect::<Vec<_>>(),
        }),
        &["conjecture", "case", "pass"],
    );
    let mut pretty = Vec::new();
    for k in &checks {
        doc.row(vec![name.clone(), k.name.clone(), k.pass.to_string()]);
        pretty.push(vec![k.name.clone(), verdict(k.pass).into()]);
    }
    doc.pretty.push_str(&table(&["case", "result"], &pretty));
    doc.line(format!("{name} up to degree {max_degree}: {}", verdict(pass)));
    if !pass {
        doc.worsen(Status::Failed);
    }
    Ok(doc)
}

fn numeric_reports(run: &RunConfig, a: &NumericArgs, opts: CheckOptions) -> Result<Vec<NumericReport>, Failure> {
    let need_d = || a.d.ok_or_else(|| Failure::config("--D is required"));
    if let Some(spec) = &a.relation {
        let d = need_d()?;
        run.check_degree("--D", d)?;
        let rel = RelationVector::normalized(d, a.delta, &parse_relation(spec)?);
        rel.keys()?;
        return Ok(numeric::check_relations_numeric(&[rel], opts)?);
    }
    if a.auto {
        let d = need_d()?;
        run.check_degree("--D", d)?;
        let lo = if a.delta == 0 { 1 } else { 0 };
        let rho: Vec<i64> = (lo..d as i64).collect();
        let rep = relations::find_relations(d, a.delta, &rho)?;
        let mut rels = rep.basis;
        for r in rep.minimal_support.into_iter().chain(rep.alternating_binomial) {
            if !rels.contains(&r) {
                rels.push(r);
            }
        }
        return Ok(numeric::check_relations_numeric(&rels, opts)?);
    }
    match a.conjecture {
        Some(c) => {
            run.check_degree("--max-degree", a.max_degree)?;
            Ok(match c {
                NumericConjecture::RelativeRates => numeric::relative_rates_suite(a.max_degree, opts),
                NumericConjecture::Translation => numeric::translation_suite(a.max_degree, opts),
            })
        }
        None => Err(Failure::config("one of --relation, --auto or --conjecture is required")),
    }
}

pub fn numeric(run: &RunConfig, a: &NumericArgs) -> Result<Doc, Failure> {
    if !(a.tol > 0.0) {
        return Err(Failure::config("--tol must be positive"));
    }
    let mut doc = Doc::new(Value::Null, &["relation", "samples", "max_rel_residual", "skipped", "pass"]);
    if a.samples == 0 {
        eprintln!("warning: --samples 0 checks nothing; reporting a vacuous PASS");
        doc.json = json!({"pass": true, "vacuous": true, "tol": a.tol, "reports": []});
        doc.line("no samples drawn: vacuous PASS");
        return Ok(doc);
    }
    let opts = CheckOptions {
        samples: a.samples,
        seed: run.seed,
        tol: a.tol,
        ..CheckOptions::default()
    };
    let reports = numeric_reports(run, a, opts)?;
    let pass = reports.iter().all(|r| r.pass);
    let mut pretty = Vec::new();
    for r in &reports {
        let res = format!("{:.3e}", r.max_rel_residual);
        doc.row(vec![
            r.relation.clone(),
            r.samples.to_string(),
            res.clone(),
            r.skipped.to_string(),
            r.pass.to_string(),
        ]);
        pretty.push(vec![r.relation.clone(), res, r.skipped.to_string(), verdict(r.pass).into()]);
        if r.skipped >= r.samples {
            doc.worsen(Status::Numeric);
        }
    }
    let worst = reports.iter().map(|r| r.max_rel_residual).fold(0.0, f64::max);
    doc.json = json!({"pass": pass, "vacuous": false, "tol": a.tol, "max_rel_residual": worst, "reports": to_value(&reports)?});
    doc.pretty.push_str(&table(&["check", "max residual", "skipped", "result"], &pretty));
    doc.line(format!(
        "{} samples, tolerance {:e}, worst residual {worst:.3e}: {}",
        a.samples,
        a.tol,
        verdict(pass)
    ));
    if !pass {
        doc.worsen(Status::Failed);
    }
    Ok(doc)
}

pub fn mine(run: &RunConfig, k_max: u32, d_sweep: Option<u32>, bfiles: &[PathBuf]) -> Result<Doc, Failure> {
    let d_max = d_sweep.unwrap_or(3 * k_max);
    run.check_degree("--d-sweep", d_max)?;
    let rep = seqmine::mine_q_and_norlund(k_max, d_max)?;

    let mut comparisons = Vec::new();
    let mut pretty_cmp = Vec::new();
    let mut unmatched = false;
    for path in bfiles {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::config(format!("{}: {e}", path.display())))?;
        let b = seqmine::parse_bfile(&text)?;
        let mut any = false;
        for seq in [&rep.q, &rep.norlund] {
            let a = seqmine::compare_with_bfile(seq, &b);
            any |= a.matches && a.compared > 0;
            pretty_cmp.push(format!(
                "{} vs {}: {} ({} terms, offset {})",
                seq.name,
                path.display(),
                if a.matches { "match" } else { "no match" },
                a.compared,
                a.offset
            ));
            comparisons.push(json!({"file": path.display().to_string(), "sequence": seq.name, "alignment": to_value(&a)?}));
        }
        unmatched |= !any;
    }

    let mut doc = Doc::new(Value::Null, &["k", "t_k", "Q_k", "N_k"]);
    let mut pretty = Vec::new();
    for (i, s) in rep.series.iter().enumerate() {
        let n = rep.norlund.values[i].to_string();
        doc.row(vec![s.k.to_string(), s.t.to_string_in("D"), s.q.to_string(), n.clone()]);
        pretty.push(vec![s.k.to_string(), s.q.to_string(), n, s.t.to_string_in("D")]);
    }
    let mut v = to_value(&rep)?;
    v["comparisons"] = Value::Array(comparisons);
    doc.json = v;

    doc.line(format!("D = 2..{d_max}, k = 2..{k_max}"));
    doc.pretty.push_str(&table(&["k", "Q_k", "N_k", "t_k(D)"], &pretty));
    let irr: Vec<String> = rep
        .decompositions
        .iter()
        .map(|g| format!("{}:{:?}", g.d, g.irreducible))
        .collect();
    doc.line(format!("g_D: {}", irr.join(" ")));
    doc.line(format!("t_k rebuild every g_D: {}", verdict(rep.round_trip_ok)));
    for l in pretty_cmp {
        doc.line(l);
    }
    if !rep.round_trip_ok || unmatched {
        doc.worsen(Status::Failed);
    }
    Ok(doc)
}
