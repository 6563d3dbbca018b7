use num_bigint::BigUint;
use serde_json::Value;

use effshift_core::analytics::{
    complexity_count, entropy_interval_si, invariance_check, per_vector_brute, per_vector_transfer,
    recover_slope_max, recover_window, TransferMatrix, WindowRecovery,
};
use effshift_core::grid::Letter;
use effshift_core::streams::{format_rational, CoLanguage, Rational};
use effshift_core::zoo::{registry_names, ZooShift};
use effshift_core::{Result, ShiftError};

use super::{check_budget, load_shift, on_integers, schedule_config};
use crate::args::PeriodMethod;
use crate::certs::Codec;
use crate::report::Report;

fn ratio(r: &Rational) -> Value {
    format_rational(r).into()
}

pub(crate) fn zoo(name: Option<&str>) -> Result<Report> {
    let Some(name) = name else {
        let mut report = Report::new("zoo", &["name"]);
        for n in registry_names() {
            report.row(vec![(*n).into()]);
        }
        return Ok(report);
    };
    let shift = load_shift(name)?;
    let codec = Codec {
        pres: &shift.presentation,
    };
    let m = &shift.metadata;
    let mut report = Report::new("zoo", &[]);
    report.set("shift", shift.label.clone());
    report.set("group", shift.group().name());
    report.set("alphabet", shift.alphabet().symbols().join(" "));
    report.set("finite_type", shift.presentation.is_finite_type());
    report.set("tags", m.tags.join(" "));
    if let Some(per) = &m.per_prefix {
        report.set("per_prefix", per.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "));
    }
    if let Some(h) = &m.entropy {
        report.set("entropy", h.clone());
    }
    if !m.distinguishing.is_empty() {
        let pats: Vec<String> = m.distinguishing.iter().map(|p| codec.pattern(p)).collect();
        report.set("distinguishing", pats.join(" "));
    }
    Ok(report)
}

pub(crate) fn complexity(name: &str, min_n: usize, max_n: usize) -> Result<Report> {
    let shift = load_shift(name)?;
    on_integers(&shift, "complexity")?;
    let k = shift.alphabet().len();
    let mut report = Report::new("complexity", &["n", "count"]);
    report.set("shift", shift.label.clone());
    for n in min_n..=max_n {
        report.row(vec![n.into(), complexity_count(shift.oracle().as_ref(), k, n)?.into()]);
    }
    Ok(report)
}

pub(crate) fn entropy(name: &str, n: u64, gluing: u64) -> Result<Report> {
    let shift = load_shift(name)?;
    on_integers(&shift, "entropy")?;
    let k = shift.alphabet().len();
    let count = complexity_count(shift.oracle().as_ref(), k, n as usize)?;
    let i = entropy_interval_si(&BigUint::from(count), n, gluing)?;
    let mut report = Report::new("entropy", &["n", "count", "lower", "upper"]);
    report.set("shift", shift.label.clone());
    report.set("gluing", gluing);
    report.set("width", ratio(&i.width()));
    report.row(vec![n.into(), count.into(), ratio(&i.lower), ratio(&i.upper)]);
    Ok(report)
}

fn forbidden_words(shift: &ZooShift) -> Result<Vec<Vec<Letter>>> {
    let list = shift.presentation.finite_list().ok_or_else(|| {
        ShiftError::Unsupported("the transfer method needs a finite list of forbidden words".into())
    })?;
    list.iter()
        .map(|p| {
            if p.is_empty() {
                return Ok(Vec::new());
            }
            p.as_interval()
                .map(|(_, w)| w)
                .ok_or_else(|| ShiftError::Unsupported("the transfer method needs forbidden words".into()))
        })
        .collect()
}

pub(crate) fn periods(name: &str, i_max: usize, method: PeriodMethod) -> Result<Report> {
    let shift = load_shift(name)?;
    on_integers(&shift, "periods")?;
    let k = shift.alphabet().len();
    let brute = || per_vector_brute(shift.oracle().as_ref(), k, i_max);
    let transfer = || -> Result<_> {
        let m = TransferMatrix::higher_block(k, &forbidden_words(&shift)?)?;
        per_vector_transfer(&m, i_max)
    };
    let mut report;
    match method {
        PeriodMethod::Brute | PeriodMethod::Transfer => {
            let v = if method == PeriodMethod::Brute { brute()? } else { transfer()? };
            report = Report::new("periods", &["i", "per"]);
            for (i, c) in v.counts.iter().enumerate() {
                report.row(vec![(i + 1).into(), (*c).into()]);
            }
        }
        PeriodMethod::Both => {
            let (b, t) = (brute()?, transfer()?);
            report = Report::new("periods", &["i", "brute", "transfer"]);
            report.set("agree", b == t);
            for (i, (x, y)) in b.counts.iter().zip(&t.counts).enumerate() {
                report.row(vec![(i + 1).into(), (*x).into(), (*y).into()]);
            }
        }
    }
    report.summary.insert(0, ("shift", shift.label.clone().into()));
    Ok(report)
}

fn binary(shift: &ZooShift, what: &str) -> Result<()> {
    on_integers(shift, what)?;
    if shift.alphabet().len() != 2 {
        return Err(ShiftError::Unsupported(format!("{what} needs a binary alphabet")));
    }
    Ok(())
}

pub(crate) fn slope(name: &str, min_n: usize, max_n: usize) -> Result<Report> {
    let shift = load_shift(name)?;
    binary(&shift, "slope")?;
    let mut report = Report::new("slope", &["n", "max_ones", "lower", "upper"]);
    report.set("shift", shift.label.clone());
    for n in min_n.max(1)..=max_n {
        let s = recover_slope_max(shift.oracle().as_ref(), n)?;
        report.row(vec![n.into(), s.m.into(), ratio(&s.lower), ratio(&s.upper)]);
    }
    Ok(report)
}

pub(crate) fn window(name: &str, budget: u64, rounds: usize) -> Result<Report> {
    check_budget(budget)?;
    let shift = load_shift(name)?;
    binary(&shift, "window")?;
    let mut co = CoLanguage::new(&shift.presentation, schedule_config()?);
    let mut rec = WindowRecovery::new();
    let mut report = Report::new("window", &["round", "consumed", "lower", "upper", "width"]);
    report.set("shift", shift.label.clone());
    report.set("budget_per_round", budget);
    for round in 1..=rounds {
        let b = recover_window(&mut co, &mut rec, budget);
        let opt = |r: Option<Rational>| r.as_ref().map(ratio).unwrap_or(Value::Null);
        report.row(vec![
            round.into(),
            rec.consumed().into(),
            opt(b.lower.clone()),
            opt(b.upper.clone()),
            opt(b.width()),
        ]);
    }
    Ok(report)
}

pub(crate) fn invariance(name: &str, n: usize) -> Result<Report> {
    let shift = load_shift(name)?;
    let group = shift.group();
    let codec = Codec {
        pres: &shift.presentation,
    };
    let bad = invariance_check(&shift, &group, shift.alphabet().len(), n)?;
    let mut report = Report::new("invariance", &["pattern", "generator"]);
    report.set("shift", shift.label.clone());
    report.set("radius", n);
    report.set("violations", bad.len());
    for (p, g) in &bad {
        report.row(vec![codec.pattern(p).into(), group.format_element(g).into()]);
    }
    Ok(report)
}
