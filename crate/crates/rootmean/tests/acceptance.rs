//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! Optional OEIS b-files for criterion 10 are read from the paths in
//! `ROOTMEAN_BFILE_A053657` and `ROOTMEAN_BFILE_A260326`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rootmean::exact::{rat, ratio, ExactRational};
use rootmean::fixtures::{self, Discrepancy};
use rootmean::gw::{chebyshev_t, elementary_means, eval_at_means, power_sum_mean};
use rootmean::numeric::{self, CheckOptions};
use rootmean::phi::{constant_free, factorial_scaling_holds, PhiKey};
use rootmean::relations::{self, RelationVector};
use rootmean::seqmine;
use rootmean::symalg::BarSymbol;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn within(t: Instant, limit: Duration) -> Result<Duration, String> {
    let el = t.elapsed();
    ensure(el < limit, format!("took {el:.2?}, limit {limit:?}"))?;
    Ok(el)
}

/// Ledger entries for `tables`, checked to reconcile exactly with `found` and to be
/// confirmed numerically.
fn ledger_check(found: &[Discrepancy], tables: &[&str]) -> Result<usize, String> {
    let mut ledger = fixtures::typo_ledger();
    ledger.entries.retain(|e| tables.contains(&e.table.as_str()));
    let (unexpected, stale) = fixtures::reconcile(found, &ledger);
    ensure(unexpected.is_empty(), format!("{} mismatches outside the ledger: {:?}", unexpected.len(), unexpected.first()))?;
    ensure(stale.is_empty(), format!("{} stale ledger entries", stale.len()))?;
    for e in &ledger.entries {
        let j = fixtures::justify(e, 42).map_err(e2s)?;
        ensure(j.justified, format!("ledger entry not confirmed numerically: {j:?}"))?;
    }
    Ok(ledger.entries.len())
}

fn c1_phi_tables() -> Outcome {
    let t = Instant::now();
    let found = fixtures::compare_phi_tables().map_err(e2s)?;
    let el = within(t, Duration::from_secs(10))?;
    let rows: usize = fixtures::phi_tables().iter().map(|t| t.rows.len()).sum();
    let n = ledger_check(&found, &["phi"])?;
    Ok(format!("{rows} rows, {n} ledgered typos confirmed numerically, {el:.2?}"))
}

fn c2_gw_tables() -> Outcome {
    let t = Instant::now();
    let found = fixtures::compare_gw_tables().map_err(e2s)?;
    for j in 1..=8 {
        let p = power_sum_mean(j, 2);
        let mut row = vec![BigInt::zero(); j as usize + 1];
        for (m, q) in p.terms() {
            row[m.exponent(BarSymbol::Root(1)) as usize] += q.to_integer();
        }
        ensure(row == chebyshev_t(j), format!("n=2 row j={j} is not T_{j}"))?;
    }
    let el = within(t, Duration::from_secs(5))?;
    let g = fixtures::gw_tables();
    let rows: usize = g.by_family_size.iter().map(|f| f.rows.len()).sum::<usize>()
        + g.by_degree.iter().map(|d| d.rows.len()).sum::<usize>();
    let n = ledger_check(&found, &["gw-by-family", "gw-by-degree"])?;
    Ok(format!("{rows} rows, Chebyshev rows j<=8, {n} ledgered typos confirmed, {el:.2?}"))
}

fn rv(d: u32, alpha: &[i64]) -> Result<RelationVector, String> {
    let pairs: Vec<(i64, i64)> = alpha.iter().enumerate().map(|(i, &a)| (i as i64 + 1, a)).collect();
    RelationVector::from_ints(d, 0, &pairs).map_err(e2s)
}

fn inner(d: u32) -> Vec<i64> {
    (1..d as i64).collect()
}

fn c3_fundamental() -> Outcome {
    let t = Instant::now();
    let rep = |d| relations::find_relations(d, 0, &inner(d)).map_err(e2s);
    let unique = |d: u32, alpha: &[i64]| -> Result<(), String> {
        let r = rep(d)?;
        ensure(r.dim == 1 && r.basis[0] == rv(d, alpha)?, format!("D={d}: got {:?}", r.basis))
    };
    unique(3, &[1, -1])?;
    unique(4, &[5, -6, 1])?;
    unique(6, &[77, -120, 60, -20, 3])?;
    unique(8, &[669, -1260, 1050, -700, 315, -84, 10])?;

    let r5 = rep(5)?;
    ensure(r5.dim == 2, "D=5 rank")?;
    let circuits5: BTreeSet<_> = [[1, 0, -3, 2], [0, 2, -5, 3], [3, -4, 1, 0], [5, -6, 0, 1]]
        .iter()
        .map(|a| rv(5, a))
        .collect::<Result<_, _>>()?;
    let mined5: BTreeSet<_> = r5.minimal_support.iter().cloned().collect();
    ensure(circuits5 == mined5, format!("D=5 minimal-support set {mined5:?}"))?;
    let alt5 = rv(5, &[1, -2, 2, -1])?;
    ensure(r5.alternating_binomial.as_ref() == Some(&alt5), "D=5 alternating relation")?;
    ensure(relations::in_span(&r5.basis, &alt5), "D=5 alternating relation not in span")?;

    let r7 = rep(7)?;
    ensure(r7.dim == 2, "D=7 rank")?;
    let fx = fixtures::relation_fixtures();
    let printed7: Vec<RelationVector> = fx
        .relations
        .iter()
        .filter(|r| r.group == "fundamental" && r.d == 7)
        .map(|r| RelationVector::new(7, 0, &r.pairs()).map_err(e2s))
        .collect::<Result<_, _>>()?;
    ensure(printed7.len() >= 6, "D=7 printed relations missing")?;
    ensure(relations::relations_rank(&printed7) == 2, "D=7 printed rank")?;
    for p in &printed7 {
        ensure(relations::in_span(&r7.basis, p), format!("{p} not in the D=7 space"))?;
        let circuit = p.support.len() < 6;
        ensure(!circuit || r7.minimal_support.contains(p), format!("{p} not mined"))?;
    }
    ensure(r7.minimal_support.contains(&rv(7, &[37, 0, -150, 200, -135, 48])?), "D=7 (37,...)")?;
    ensure(r7.alternating_binomial == Some(rv(7, &[1, -3, 5, -5, 3, -1])?), "D=7 alternating")?;
    let el = within(t, Duration::from_secs(30))?;
    Ok(format!("D=3..8 reproduced, D=5/D=7 rank 2 with {} and {} circuits, {el:.2?}", r5.minimal_support.len(), r7.minimal_support.len()))
}

fn c4_dimension() -> Outcome {
    let t = Instant::now();
    let dims = relations::dimension_sweep(4, 21).map_err(e2s)?;
    for (d, k) in &dims {
        let want = if d % 2 == 0 { 1 } else { 2 };
        ensure(*k == want, format!("D={d}: dimension {k}, expected {want}"))?;
    }
    let el = within(t, Duration::from_secs(180))?;
    Ok(format!("dims 1 (even D 4..20) and 2 (odd D 5..21), {} workers, {el:.2?}", rayon::current_num_threads()))
}

fn c5_odd_binomial() -> Outcome {
    let t = Instant::now();
    for d in (3..=21).step_by(2) {
        ensure(relations::check_odd_binomial(d).map_err(e2s)?, format!("D={d}"))?;
    }
    Ok(format!("odd D=3..21 exact zero, {:.2?}", t.elapsed()))
}

fn c6_zero_sum() -> Outcome {
    let mut count = 0;
    for d in 3..=8 {
        let r = relations::find_relations(d, 0, &inner(d)).map_err(e2s)?;
        ensure(r.zero_sum_ok == Some(true), format!("D={d}"))?;
        count += r.basis.len() + r.minimal_support.len();
    }
    for r in fixtures::relation_fixtures().relations.iter().filter(|r| r.group == "fundamental") {
        let s: i64 = r.alpha.iter().map(|p| p.1).sum();
        ensure(s == 0, format!("printed relation D={} sums to {s}", r.d))?;
        count += 1;
    }
    Ok(format!("{count} relations with zero coefficient sum"))
}

fn c7_inheritance() -> Outcome {
    let fx = fixtures::relation_fixtures();
    let ledger = fixtures::typo_ledger();
    let get = |label: &str| -> Result<RelationVector, String> {
        let f = fx.by_label(label).ok_or(format!("no relation ({label})"))?;
        let printed = RelationVector::normalized(f.d, f.delta, &f.pairs());
        match RelationVector::new(f.d, f.delta, &f.pairs()) {
            Ok(r) => Ok(r),
            Err(_) => {
                let in_ledger = ledger.entries.iter().any(|e| e.key.ends_with(&format!("({label})")));
                ensure(in_ledger, format!("({label}) fails and is not ledgered"))?;
                fixtures::suggest_correction(f).map_err(e2s)?.ok_or(format!("({label}) uncorrectable {printed}"))
            }
        }
    };
    let mut pairs = 0;
    for chain in &fx.inheritance_chains {
        for w in chain.windows(2) {
            let (a, b) = (get(&w[0])?, get(&w[1])?);
            ensure(relations::check_inheritance(&a).map_err(e2s)?, format!("({}) does not inherit", w[0]))?;
            ensure(a.shifted() == b, format!("({}) shifted is not ({})", w[0], w[1]))?;
            pairs += 1;
        }
    }
    for label in ["j", "k", "l"] {
        get(label)?;
    }
    Ok(format!("{pairs} labelled pairs across {} chains", fx.inheritance_chains.len()))
}

fn c8_props_4_5() -> Outcome {
    let mut checks = 0;
    for d in 2..=9u32 {
        for delta in 0..d as i64 {
            for m in 1..=3i64 {
                let key = PhiKey::new(d, delta, -m).map_err(e2s)?;
                ensure(constant_free(key).map_err(e2s)?, format!("constants survive in {key:?}"))?;
                checks += 1;
            }
            if delta > 0 {
                ensure(factorial_scaling_holds(d, delta as u32).map_err(e2s)?, format!("scaling D={d} delta={delta}"))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} exact checks for D<=9"))
}

fn c9_numeric() -> Outcome {
    let t = Instant::now();
    let opts = |samples| CheckOptions {
        samples,
        seed: 42,
        ..CheckOptions::default()
    };
    let mut worst: f64 = 0.0;
    let mut nrel = 0;
    for d in 3..=9u32 {
        let (lo, hi) = relations::default_rho_window(d);
        let window: Vec<i64> = (lo..=hi).collect();
        let wide = relations::find_relations_with(
            d,
            0,
            &window,
            relations::MiningOptions {
                minimal_support: false,
                max_degree: 0,
            },
        )
        .map_err(e2s)?;
        let core = relations::find_relations(d, 0, &inner(d)).map_err(e2s)?;
        let mut rels = wide.basis;
        rels.extend(core.basis);
        rels.extend(core.minimal_support);
        rels.extend(core.alternating_binomial);
        for r in numeric::check_relations_numeric(&rels, opts(1000)).map_err(e2s)? {
            ensure(r.pass && r.skipped == 0, format!("{r:?}"))?;
            worst = worst.max(r.max_rel_residual);
            nrel += 1;
        }
    }
    let mut worst_rates: f64 = 0.0;
    for r in numeric::relative_rates_suite(10, opts(500)) {
        ensure(r.pass, format!("{r:?}"))?;
        worst_rates = worst_rates.max(r.max_rel_residual);
    }
    let mut worst_tr: f64 = 0.0;
    for r in numeric::translation_suite(7, opts(100)) {
        ensure(r.pass, format!("{r:?}"))?;
        worst_tr = worst_tr.max(r.max_rel_residual);
    }
    let el = within(t, Duration::from_secs(120))?;
    Ok(format!(
        "{nrel} relations max {worst:.1e}; relative rates max {worst_rates:.1e}; translation max {worst_tr:.1e}; seed 42, {el:.2?}"
    ))
}

fn bfile(var: &str) -> Result<Option<Vec<(i64, BigInt)>>, String> {
    match std::env::var(var) {
        Ok(path) => {
            let text = std::fs::read_to_string(&path).map_err(|e| format!("{path}: {e}"))?;
            seqmine::parse_bfile(&text).map(Some).map_err(e2s)
        }
        Err(_) => Ok(None),
    }
}

fn c10_mining() -> Outcome {
    let t = Instant::now();
    let rep = seqmine::mine_q_and_norlund(8, 24).map_err(e2s)?;
    ensure(rep.decompositions.len() == 23, "structural form failed for some D")?;
    ensure(
        rep.decompositions
            .iter()
            .all(|g| g.irreducible != seqmine::Irreducibility::Reducible),
        "some g_D is reducible",
    )?;
    let t2 = &rep.series[0];
    ensure(t2.k == 2 && t2.t == seqmine::RationalPolynomial::constant(rat(1)), "t_2 is not 1")?;
    for s in &rep.series {
        if s.k % 2 == 1 {
            ensure(s.vanishing_ok == Some(true), format!("t_{} vanishing", s.k))?;
            ensure(s.vanishes_at_k == Some(true), format!("t_{}({}) != 0", s.k, s.k))?;
        }
    }
    ensure(rep.round_trip_ok, "t_k do not rebuild g_D")?;
    let shorter = seqmine::mine_q_and_norlund(8, 23).map_err(e2s)?;
    ensure(shorter.q.values == rep.q.values, "Q_k unstable under sweep extension")?;
    ensure(shorter.norlund.values == rep.norlund.values, "N_k unstable under sweep extension")?;
    let mut notes = Vec::new();
    for (var, seq) in [("ROOTMEAN_BFILE_A053657", &rep.q), ("ROOTMEAN_BFILE_A260326", &rep.norlund)] {
        match bfile(var)? {
            Some(b) => {
                let a = seqmine::compare_with_bfile(seq, &b);
                ensure(a.matches && a.compared == seq.values.len(), format!("{} vs b-file: {a:?}", seq.name))?;
                notes.push(format!("{} matches b-file at offset {}", seq.name, a.offset));
            }
            None => notes.push(format!("{} b-file not provided", seq.name)),
        }
    }
    let el = within(t, Duration::from_secs(300))?;
    let show = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    Ok(format!(
        "D<=24, Q=[{}], N=[{}], stable at D<=23; {}; {el:.2?}",
        show(&rep.q.values),
        show(&rep.norlund.values),
        notes.join("; ")
    ))
}

fn c11_gw_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut checks = 0;
    for n in 1..=6u32 {
        for j in 0..=9u32 {
            let p = power_sum_mean(j, n);
            for _ in 0..50 {
                let vals: Vec<ExactRational> = (0..n)
                    .map(|_| ratio(rng.gen_range(-20..=20), rng.gen_range(1..=9)))
                    .collect();
                let direct: ExactRational = vals.iter().map(|v| num_traits::pow(v.clone(), j as usize)).sum::<ExactRational>() / rat(n as i64);
                let via = eval_at_means(&p, &elementary_means(&vals));
                ensure(via == direct, format!("n={n} j={j} values {vals:?}"))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} exact comparisons, n<=6, j<=9"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("phi tables", c1_phi_tables),
        ("GW tables", c2_gw_tables),
        ("fundamental relations", c3_fundamental),
        ("dimension pattern", c4_dimension),
        ("odd binomial relation", c5_odd_binomial),
        ("zero sum", c6_zero_sum),
        ("inheritance", c7_inheritance),
        ("constants and factorial scaling", c8_props_4_5),
        ("numeric cross-validation", c9_numeric),
        ("sequence mining", c10_mining),
        ("GW oracle equivalence", c11_gw_oracle),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
