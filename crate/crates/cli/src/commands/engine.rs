use std::path::Path;

use serde_json::{json, Value};

use effshift_core::engine::{decide_pattern, enumerate_language, verify_decision, DecisionCertificate};
use effshift_core::properties::PropertyRefuter;
use effshift_core::streams::Outcome;
use effshift_core::{Result, ShiftError};

use super::{check_budget, config_error, load_shift, schedule_config};
use crate::args::PropertyArgs;
use crate::certs::{parse_property, Codec, ConfigJson, DecisionJson, DecisionRecord, TraceJson};
use crate::report::Report;

fn parse_params(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| ShiftError::Config(format!("--params is not valid JSON: {e}")))
}

fn evidence(c: &DecisionCertificate) -> String {
    match c {
        DecisionCertificate::Yes(r) => format!("refutation:{}", r.kind()),
        DecisionCertificate::No(c) => format!("colanguage r={} t={}", c.radius, c.prefix_len),
    }
}

fn to_value(r: &DecisionRecord) -> Result<Value> {
    serde_json::to_value(r).map_err(config_error)
}

pub(crate) fn decide(
    shift_name: &str,
    property: &PropertyArgs,
    patterns: &[String],
    budget: u64,
    trace: bool,
) -> Result<Report> {
    check_budget(budget)?;
    let shift = load_shift(shift_name)?;
    let pres = &shift.presentation;
    let params = parse_params(&property.params)?;
    let refuter = parse_property(&property.property, &params, pres)?;
    let config = schedule_config()?;
    let codec = Codec { pres };
    let mut report = Report::new("decide", &["pattern", "verdict", "budget_used", "evidence"]);
    report.set("shift", shift.label.clone());
    report.set("property", refuter.label(pres));
    report.set("budget", budget);
    let mut records = Vec::new();
    for text in patterns {
        let p = codec.parse(text)?;
        let run = decide_pattern(pres, &refuter, &p, budget, &config)?;
        let v = run.verdict();
        report.exhausted |= v.outcome == Outcome::Exhausted;
        report.row(vec![
            codec.pattern(&p).into(),
            v.outcome.as_str().into(),
            v.budget_used.into(),
            v.certificate.as_ref().map(evidence).unwrap_or_default().into(),
        ]);
        let record = DecisionRecord {
            shift: shift_name.to_string(),
            property: property.property.clone(),
            params: params.clone(),
            config: ConfigJson::from(&config),
            pattern: codec.pattern(&p),
            verdict: v.outcome.as_str().to_string(),
            budget_used: Some(v.budget_used),
            certificate: v.certificate.as_ref().map(|c| codec.decision(c)),
            trace: trace.then(|| {
                run.trace()
                    .iter()
                    .map(|s| TraceJson {
                        rounds: s.rounds,
                        no: s.no,
                        yes: s.yes,
                    })
                    .collect()
            }),
        };
        records.push(to_value(&record)?);
    }
    report.extra.insert("decisions".into(), Value::Array(records));
    Ok(report)
}

pub(crate) fn enumerate(
    shift_name: &str,
    property: &PropertyArgs,
    budget: u64,
    max_level: Option<usize>,
) -> Result<Report> {
    check_budget(budget)?;
    let shift = load_shift(shift_name)?;
    let pres = &shift.presentation;
    let params = parse_params(&property.params)?;
    let refuter = parse_property(&property.property, &params, pres)?;
    let config = schedule_config()?;
    let codec = Codec { pres };
    let e = enumerate_language(pres, &refuter, budget, max_level, &config)?;
    let mut report = Report::new("enumerate", &["pattern", "status", "evidence"]);
    report.set("shift", shift.label.clone());
    report.set("property", refuter.label(pres));
    report.set("budget", budget);
    report.set("spent", e.spent());
    report.set("members", e.members().len());
    report.set("nonmembers", e.nonmembers().len());
    report.set("complete", e.is_complete());
    report.exhausted = !e.is_complete();
    let mut records = Vec::new();
    for (status, list, outcome) in [
        ("member", e.members(), Outcome::Yes),
        ("nonmember", e.nonmembers(), Outcome::No),
    ] {
        for (p, c) in list {
            report.row(vec![codec.pattern(p).into(), status.into(), evidence(c).into()]);
            records.push(to_value(&DecisionRecord {
                shift: shift_name.to_string(),
                property: property.property.clone(),
                params: params.clone(),
                config: ConfigJson::from(&config),
                pattern: codec.pattern(p),
                verdict: outcome.as_str().to_string(),
                budget_used: None,
                certificate: Some(codec.decision(c)),
                trace: None,
            })?);
        }
    }
    for p in e.pending() {
        report.row(vec![codec.pattern(p).into(), "pending".into(), Value::Null]);
    }
    report.extra.insert("decisions".into(), Value::Array(records));
    Ok(report)
}

fn check_record(r: &DecisionRecord) -> Result<bool> {
    let Some(cert) = &r.certificate else {
        return if r.verdict == Outcome::Exhausted.as_str() {
            Ok(true)
        } else {
            Err(ShiftError::Parse(format!("`{}`: resolved verdict without certificate", r.pattern)))
        };
    };
    let side = match cert {
        DecisionJson::Yes { .. } => Outcome::Yes,
        DecisionJson::No { .. } => Outcome::No,
    };
    if r.verdict != side.as_str() {
        return Ok(false);
    }
    let shift = load_shift(&r.shift)?;
    let pres = &shift.presentation;
    let refuter: PropertyRefuter = parse_property(&r.property, &r.params, pres)?;
    let config = r.config.to_config()?;
    let codec = Codec { pres };
    let pattern = codec.parse(&r.pattern)?;
    let certificate = codec.decision_back(cert)?;
    verify_decision(pres, &refuter, &pattern, &certificate, &config)
}

pub(crate) fn replay(path: &Path) -> Result<Report> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ShiftError::Config(format!("cannot read `{}`: {e}", path.display())))?;
    let doc: Value =
        serde_json::from_str(&text).map_err(|e| ShiftError::Parse(format!("certificate is not JSON: {e}")))?;
    let items: Vec<Value> = match doc.get("decisions") {
        Some(Value::Array(list)) => list.clone(),
        Some(_) => return Err(ShiftError::Parse("`decisions` must be a list".into())),
        None => vec![doc],
    };
    let mut report = Report::new("replay", &["pattern", "verdict", "status"]);
    report.set("source", path.display().to_string());
    let (mut confirmed, mut rejected, mut unresolved) = (0u64, 0u64, 0u64);
    for item in items {
        let r: DecisionRecord =
            serde_json::from_value(item).map_err(|e| ShiftError::Parse(format!("malformed decision: {e}")))?;
        let status = if r.certificate.is_none() {
            check_record(&r)?;
            unresolved += 1;
            "unresolved"
        } else if check_record(&r)? {
            confirmed += 1;
            "confirmed"
        } else {
            rejected += 1;
            "rejected"
        };
        report.row(vec![r.pattern.clone().into(), r.verdict.clone().into(), status.into()]);
    }
    report.set("confirmed", confirmed);
    report.set("rejected", rejected);
    report.set("unresolved", unresolved);
    report.rejected = rejected > 0;
    report.extra.insert("ok".into(), json!(rejected == 0));
    Ok(report)
}
