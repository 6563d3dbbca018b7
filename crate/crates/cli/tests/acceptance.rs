//! The ten acceptance criteria, one pass/fail line each.
//!
//! Reference answers come from oracles written here: factor sets of a long
//! Fibonacci prefix, word counts by recurrence, cyclic admissibility in the
//! De Bruijn graph, and direct periodic-point censuses.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use effshift::parse_and_run;
use effshift_core::analytics::{
    entropy_interval_si, invariance_check, per_vector_brute, per_vector_transfer, recover_window,
    TransferMatrix, WindowRecovery,
};
use effshift_core::engine::{
    decide_pattern, disjoint_separation_radius, product_colanguage, union_colanguage, Separation, Side,
    UnionEy,
};
use effshift_core::grid::Letter;
use effshift_core::properties::PropertyRefuter;
use effshift_core::streams::{compare_log2, rational, ApproxReal, CoLanguage, Enumeration, Outcome, ScheduleConfig};
use effshift_core::zoo::{lookup, product_shift, sft, SftOracle, ZooShift};
use effshift_core::{Alphabet, Group, Pattern, Rational};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn shift(name: &str) -> ZooShift {
    lookup(name, &|_| Err(effshift_core::ShiftError::Config("no files".into()))).expect(name)
}

fn words(k: usize, n: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k).map(move |a| {
                    let mut v = w.clone();
                    v.push(a as Letter);
                    v
                })
            })
            .collect();
    }
    out
}

fn fmt(w: &[Letter]) -> String {
    w.iter().map(|a| a.to_string()).collect()
}

/// Factors of a long prefix of the Fibonacci word `0 -> 01, 1 -> 0`.
fn fibonacci_factors(max_len: usize) -> BTreeSet<Vec<Letter>> {
    let mut w: Vec<Letter> = vec![0];
    while w.len() < 20_000 {
        w = w.iter().flat_map(|&a| if a == 0 { vec![0, 1] } else { vec![0] }).collect();
    }
    let mut set = BTreeSet::new();
    for n in 0..=max_len {
        for f in w.windows(n.max(1)).take(w.len() - 64) {
            set.insert(f[..n].to_vec());
        }
    }
    set
}

fn no_eleven(w: &[Letter]) -> bool {
    !w.windows(2).any(|p| p == [1, 1])
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("effshift").chain(args.iter().copied());
    let code = parse_and_run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn c1_sturmian_complexity() -> Check {
    let t = Instant::now();
    let (code, out) = run_cli(&["complexity", "--shift", "fibonacci", "--max-n", "15", "--format", "json"]);
    let elapsed = t.elapsed();
    ensure(code == 0, || format!("exit code {code}"))?;
    let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let factors = fibonacci_factors(15);
    let rows = v["rows"].as_array().ok_or("no rows")?;
    ensure(rows.len() == 15, || format!("{} rows", rows.len()))?;
    for r in rows {
        let n = r["n"].as_u64().ok_or("n")?;
        let c = r["count"].as_u64().ok_or("count")?;
        let reference = factors.iter().filter(|f| f.len() as u64 == n).count() as u64;
        ensure(c == n + 1 && c == reference, || format!("n={n}: count {c}, reference {reference}"))?;
    }
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("counts n+1 for n=1..15 in {:.2?}", elapsed))
}

fn phi_convergents() -> (Rational, Rational) {
    let (mut a, mut b) = (1i64, 1i64);
    for _ in 0..40 {
        (a, b) = (b, a + b);
    }
    let (x, y) = (rational(b, a), rational(a + b, b));
    if x < y {
        (x, y)
    } else {
        (y, x)
    }
}

fn c2_golden_entropy() -> Check {
    let t = Instant::now();
    let (code, out) = run_cli(&["complexity", "--shift", "golden-mean", "--min-n", "16", "--max-n", "16", "--format", "json"]);
    ensure(code == 0, || format!("exit code {code}"))?;
    let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let count = v["rows"][0]["count"].as_u64().ok_or("count")?;
    // N_n = F_{n+2}
    let (mut a, mut b) = (1u64, 2u64);
    for _ in 1..16 {
        (a, b) = (b, a + b);
    }
    ensure(count == b, || format!("N_16 = {count}, recurrence gives {b}"))?;
    let i = entropy_interval_si(&BigUint::from(count), 16, 1).map_err(|e| e.to_string())?;
    ensure(i.width() <= rational(1, 20), || format!("width {}", i.width()))?;
    let (lo, hi) = phi_convergents();
    ensure(compare_log2(&lo, &i.lower).unwrap() != Ordering::Less, || "lower above log2 phi".into())?;
    ensure(compare_log2(&hi, &i.upper).unwrap() != Ordering::Greater, || "upper below log2 phi".into())?;
    let elapsed = t.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("[{}, {}] width {} in {:.2?}", i.lower, i.upper, i.width(), elapsed))
}

/// `Per_i` from cyclically admissible words: a word `w` of length `d` gives a
/// point of least period `d` when `w^∞` avoids `forbidden` and `w` is primitive.
fn per_census(k: usize, forbidden: &[Vec<Letter>], i_max: usize) -> Vec<u64> {
    let window = forbidden.iter().map(Vec::len).max().unwrap_or(1);
    let mut least = vec![0u64; i_max + 1];
    for d in 1..=i_max {
        for w in words(k, d) {
            let primitive = (1..d).all(|s| d % s != 0 || (0..d).any(|j| w[j] != w[(j + s) % d]));
            if !primitive {
                continue;
            }
            let cyc: Vec<Letter> = (0..d + window).map(|j| w[j % d]).collect();
            if !forbidden.iter().any(|f| cyc.windows(f.len()).any(|u| u == f.as_slice())) {
                least[d] += 1;
            }
        }
    }
    least[1..]
        .iter()
        .scan(0, |acc, &c| {
            *acc += c;
            Some(*acc)
        })
        .collect()
}

fn c3_periodic_points() -> Check {
    let mut cases: Vec<(String, usize, Vec<Vec<Letter>>)> = vec![
        ("golden mean".into(), 2, vec![vec![1, 1]]),
        ("full 2-shift".into(), 2, vec![]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    for j in 0..3 {
        let k = rng.gen_range(2..=3);
        let forbidden: Vec<Vec<Letter>> = words(k, 2).into_iter().filter(|_| rng.gen_bool(0.3)).collect();
        cases.push((format!("random nn-SFT #{} {:?}", j + 1, forbidden), k, forbidden));
    }
    for (name, k, forbidden) in &cases {
        let oracle = SftOracle::new(*k, forbidden.clone()).map_err(|e| e.to_string())?;
        let brute = per_vector_brute(&oracle, *k, 8).map_err(|e| e.to_string())?;
        let m = TransferMatrix::nearest_neighbour(*k, forbidden).map_err(|e| e.to_string())?;
        let transfer = per_vector_transfer(&m, 8).map_err(|e| e.to_string())?;
        let census = per_census(*k, forbidden, 8);
        ensure(brute == transfer && brute.counts == census, || {
            format!("{name}: brute {:?} transfer {:?} census {census:?}", brute.counts, transfer.counts)
        })?;
        if name == "full 2-shift" {
            ensure(brute.counts[..4] == [2, 4, 10, 22], || format!("full prefix {:?}", brute.counts))?;
        }
    }
    Ok(format!("{} shifts agree for i <= 8; full 2-shift starts 2,4,10,22", cases.len()))
}

fn c4_fibonacci_engine() -> Check {
    let f = shift("fibonacci");
    let factors = fibonacci_factors(6);
    let config = ScheduleConfig::default();
    let (mut yes, mut no, mut max_spent) = (0, 0, 0);
    for n in 1..=6 {
        for w in words(2, n) {
            let run = decide_pattern(
                &f.presentation,
                &PropertyRefuter::Nonempty,
                &Pattern::from_word(&w),
                10_000_000,
                &config,
            )
            .map_err(|e| e.to_string())?;
            let v = run.verdict();
            let want = factors.contains(&w);
            match v.outcome {
                Outcome::Yes if want => yes += 1,
                Outcome::No if !want => no += 1,
                other => return Err(format!("{}: {} but reference says {want}", fmt(&w), other.as_str())),
            }
            max_spent = max_spent.max(v.budget_used);
        }
    }
    Ok(format!("126 words: {yes} yes, {no} no, at most {max_spent} units each"))
}

/// Bi-infinite extendability in the De Bruijn graph of the golden mean:
/// vertices are letters, edges the allowed pairs; a word is in the language
/// when it is a path that can be continued forever in both directions.
fn de_bruijn_accepts(w: &[Letter]) -> bool {
    let edge = |a: Letter, b: Letter| !(a == 1 && b == 1);
    if !w.windows(2).all(|p| edge(p[0], p[1])) {
        return false;
    }
    // Every vertex of this graph lies on a cycle (0 -> 0, 1 -> 0 -> 1).
    true
}

fn c5_period_dense_engine() -> Check {
    let g = shift("golden-mean");
    let refuter = PropertyRefuter::PeriodsAtLeast {
        reference: vec![1, 3, 6, 10, 20, 32, 60, 100],
    };
    let config = ScheduleConfig::default();
    let mut checked = 0;
    for n in 1..=6 {
        for w in words(2, n) {
            let p = Pattern::from_word(&w);
            let want = de_bruijn_accepts(&w);
            let mut earlier: Option<Outcome> = None;
            let mut budget = 64u64;
            while budget <= 1 << 20 {
                let run = decide_pattern(&g.presentation, &refuter, &p, budget, &config).map_err(|e| e.to_string())?;
                let o = run.verdict().outcome;
                if let Some(e) = earlier {
                    ensure(o == e, || format!("{}: {} at {budget}, {} before", fmt(&w), o.as_str(), e.as_str()))?;
                }
                if o.is_resolved() {
                    ensure((o == Outcome::Yes) == want, || format!("{}: {} disagrees", fmt(&w), o.as_str()))?;
                    earlier = Some(o);
                }
                budget *= 2;
            }
            ensure(earlier.is_some(), || format!("{}: unresolved at 2^20", fmt(&w)))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} words agree; verdicts stable from first resolution through budget 2^20"))
}

fn c6_quasi_minimal_engine() -> Check {
    let s = shift("single-one");
    let refuter = PropertyRefuter::ContainsPatterns(vec![Pattern::from_word(&[1])]);
    let config = ScheduleConfig::default();
    let mut max_spent = 0;
    for n in 1..=6 {
        for w in words(2, n) {
            let run = decide_pattern(&s.presentation, &refuter, &Pattern::from_word(&w), 1_000_000, &config)
                .map_err(|e| e.to_string())?;
            let v = run.verdict();
            let want = w.iter().filter(|&&a| a == 1).count() <= 1;
            ensure(v.outcome.is_resolved() && (v.outcome == Outcome::Yes) == want, || {
                format!("{}: {} but reference says {want}", fmt(&w), v.outcome.as_str())
            })?;
            max_spent = max_spent.max(v.budget_used);
        }
    }
    Ok(format!("126 words agree, at most {max_spent} units each"))
}

fn c7_product() -> Check {
    let g = shift("golden-mean");
    let ab = shift("full:ab");
    let xy = product_shift(&g, &ab).map_err(|e| e.to_string())?;
    let mut e = product_colanguage(CoLanguage::new(&xy.presentation, ScheduleConfig::default()), Side::Left, 2, 2);
    e.run(200_000);
    let got: BTreeSet<Vec<Letter>> = e
        .emitted()
        .iter()
        .filter_map(|p| p.as_word())
        .filter(|w| w.len() <= 4)
        .collect();
    let want: BTreeSet<Vec<Letter>> = (1..=4).flat_map(|n| words(2, n)).filter(|w| !no_eleven(w)).collect();
    ensure(got == want, || format!("projected {} words, reference {}", got.len(), want.len()))?;
    // Words of the product not certified are the enumerated language.
    let rejected: BTreeSet<Vec<Letter>> = e.inner().emitted().iter().filter_map(|c| c.pattern.as_word()).collect();
    let mut matched = 0;
    for n in 1..=4 {
        for w in words(4, n) {
            // Every right-hand word is in the full shift, so only the left projection matters.
            let u: Vec<Letter> = w.iter().map(|&c| c / 2).collect();
            let in_product = !rejected.contains(&w);
            ensure(in_product == no_eleven(&u), || format!("pair word {w:?}"))?;
            matched += 1;
        }
    }
    Ok(format!("{} rejected golden-mean words recovered; {matched} product words split as L(X) x L(Y)", got.len()))
}

fn c8_union() -> Check {
    let g = shift("golden-mean");
    let ones = shift("orbit:1");
    let sep = disjoint_separation_radius(&g, &ones, &Group::Integers, 2, 4).map_err(|e| e.to_string())?;
    let n = match sep {
        Separation::Radius(n) if n <= 2 => n,
        other => return Err(format!("separation {other:?}")),
    };
    let u = shift("union:golden-mean,orbit:1");
    let ey = UnionEy::new(&g, &ones, &Group::Integers, sep).map_err(|e| e.to_string())?;
    let mut e = union_colanguage(CoLanguage::new(&u.presentation, ScheduleConfig::default()), ey, Group::Integers, 2);
    e.run(200_000);
    let short = |ps: &mut dyn Iterator<Item = Pattern>| -> BTreeSet<Vec<Letter>> {
        ps.filter_map(|p| p.as_word()).filter(|w| w.len() <= 5).collect()
    };
    let got = short(&mut e.emitted().iter().cloned());
    let mut direct = CoLanguage::new(&g.presentation, ScheduleConfig::default());
    direct.run(200_000);
    let reference = short(&mut direct.emitted().iter().map(|c| c.pattern.clone()));
    let want: BTreeSet<Vec<Letter>> = (1..=5).flat_map(|n| words(2, n)).filter(|w| !no_eleven(w)).collect();
    ensure(got == reference && got == want, || {
        format!("union gave {}, direct {}, reference {}", got.len(), reference.len(), want.len())
    })?;
    Ok(format!("N = {n}; {} words of length <= 5 reproduced", got.len()))
}

fn c9_window() -> Check {
    let mut widths = Vec::new();
    for (p, q) in [(1, 4), (1, 3), (2, 5)] {
        let a = rational(p, q);
        let x = effshift_core::zoo::sturmian_window(
            ApproxReal::rational(a.clone()),
            ApproxReal::rational(&a + rational(1, 2)),
        )
        .map_err(|e| e.to_string())?;
        let mut co = CoLanguage::new(&x.presentation, ScheduleConfig::default());
        let mut rec = WindowRecovery::new();
        let mut last: Option<Rational> = None;
        for _ in 0..20 {
            let b = recover_window(&mut co, &mut rec, 50_000);
            ensure(b.contains(&a), || format!("{p}/{q} escaped {b:?}"))?;
            let w = b.width().ok_or("unbounded after a round")?;
            if let Some(l) = &last {
                ensure(w <= *l, || format!("{p}/{q}: width grew"))?;
            }
            last = Some(w);
        }
        let w = last.unwrap();
        ensure(w <= rational(1, 8), || format!("{p}/{q}: final width {w}"))?;
        widths.push(format!("{p}/{q}: {w}"));
    }
    Ok(format!("final widths {}", widths.join(", ")))
}

fn c10_global_soundness() -> Check {
    let names = [
        "full",
        "full:abc",
        "golden-mean",
        "fibonacci",
        "single-one",
        "orbit:011",
        "sturmian:0,1/3",
        "sturmian:1/4,3/4",
        "product:golden-mean,full:ab",
        "union:golden-mean,orbit:1",
    ];
    let mut emitted = 0;
    for name in names {
        let z = shift(name);
        let mut co = CoLanguage::new(&z.presentation, ScheduleConfig::default());
        co.run(300_000);
        for c in co.emitted().iter().filter(|c| c.pattern.span() <= 8) {
            ensure(!z.accepts(&c.pattern).map_err(|e| e.to_string())?, || {
                format!("{name}: emitted accepted pattern {:?}", c.pattern.as_word())
            })?;
            emitted += 1;
        }
        let bad = invariance_check(&z, &z.group(), z.alphabet().len(), 4).map_err(|e| e.to_string())?;
        ensure(bad.is_empty(), || format!("{name}: {} invariance violations", bad.len()))?;
    }
    // An explicit shift of finite type as well.
    let s = sft(Alphabet::binary(), vec![Pattern::from_word(&[0, 0, 0]), Pattern::from_word(&[1, 0, 1])], "sft")
        .map_err(|e| e.to_string())?;
    ensure(invariance_check(&s, &Group::Integers, 2, 4).map_err(|e| e.to_string())?.is_empty(), || {
        "sft invariance".into()
    })?;
    Ok(format!("{} zoo shifts, {emitted} emissions of span <= 8 all rejected; no invariance violations", names.len() + 1))
}

type Criterion = (&'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Sturmian complexity", c1_sturmian_complexity),
        ("golden-mean entropy localization", c2_golden_entropy),
        ("periodic-point equivalence", c3_periodic_points),
        ("engine, minimal case (Fibonacci)", c4_fibonacci_engine),
        ("engine, period-dense case (golden mean)", c5_period_dense_engine),
        ("engine, quasi-minimal case (single one)", c6_quasi_minimal_engine),
        ("product reduction", c7_product),
        ("disjoint-union reduction", c8_union),
        ("window recovery soundness", c9_window),
        ("global soundness gate", c10_global_soundness),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = check();
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
