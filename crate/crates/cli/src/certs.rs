//! JSON forms of schedule configurations, properties and certificates.
//!
//! Patterns are written in the canonical text of `format_pattern` for the
//! shift's group and alphabet; rationals as `p/q`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use effshift_core::engine::DecisionCertificate;
use effshift_core::grid::{format_pattern, parse_pattern, Pattern};
use effshift_core::properties::{PropertyRefuter, Refutation, DEFAULT_ENTROPY_MAX_N};
use effshift_core::streams::{format_rational, parse_rational, ApproxReal, Certificate, ScheduleConfig};
use effshift_core::{Presentation, Result, ShiftError};

pub const PROPERTY_NAMES: &[&str] = &["nonempty", "entropy", "periods", "contains", "cylinder", "intersect"];

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ConfigJson {
    pub prefix_step: usize,
    pub tick_factor: u64,
    pub extension_cap: u64,
    pub level_cap: u64,
}

impl From<&ScheduleConfig> for ConfigJson {
    fn from(c: &ScheduleConfig) -> Self {
        ConfigJson {
            prefix_step: c.prefix_step,
            tick_factor: c.tick_factor,
            extension_cap: c.extension_cap,
            level_cap: c.level_cap,
        }
    }
}

impl ConfigJson {
    pub fn to_config(&self) -> Result<ScheduleConfig> {
        if self.prefix_step == 0 || self.tick_factor == 0 || self.extension_cap == 0 || self.level_cap == 0 {
            return Err(ShiftError::Config("schedule fields must be positive".into()));
        }
        Ok(ScheduleConfig {
            prefix_step: self.prefix_step,
            tick_factor: self.tick_factor,
            extension_cap: self.extension_cap,
            level_cap: self.level_cap,
        })
    }
}

fn bad(msg: impl Into<String>) -> ShiftError {
    ShiftError::Config(msg.into())
}

fn pattern_param(pres: &Presentation, v: &Value) -> Result<Pattern> {
    let s = v.as_str().ok_or_else(|| bad("patterns are given as strings"))?;
    parse_pattern(&pres.group(), pres.alphabet(), s)
}

fn real_param(v: &Value) -> Result<ApproxReal> {
    match v {
        Value::String(s) if s == "log-golden" => Ok(ApproxReal::log_golden_mean()),
        Value::String(s) if s == "golden-conjugate" => Ok(ApproxReal::golden_ratio_conjugate()),
        Value::String(s) => Ok(ApproxReal::rational(parse_rational(s)?)),
        Value::Number(n) => Ok(ApproxReal::rational(parse_rational(&n.to_string())?)),
        _ => Err(bad("`q` must be a rational string such as \"1/2\", or \"log-golden\"")),
    }
}

/// Build a refuter from its name and JSON parameters:
///
/// - `nonempty`: `{}`
/// - `entropy`: `{"q": "1/2", "max_n": 12}`
/// - `periods`: `{"ref": [1, 3, 6, 10]}`
/// - `contains`: `{"patterns": ["1", "010"]}`
/// - `cylinder`: `{"pattern": "0"}`
/// - `intersect`: `{"left": {"property": .., "params": ..}, "right": {..}}`
pub fn parse_property(name: &str, params: &Value, pres: &Presentation) -> Result<PropertyRefuter> {
    if !params.is_object() {
        return Err(bad("--params must be a JSON object"));
    }
    let get = |k: &str| params.get(k);
    let refuter = match name {
        "nonempty" => PropertyRefuter::Nonempty,
        "entropy" => {
            let q = real_param(get("q").ok_or_else(|| bad("entropy needs `q`"))?)?;
            let max_n = match get("max_n") {
                None => DEFAULT_ENTROPY_MAX_N,
                Some(v) => v.as_u64().ok_or_else(|| bad("`max_n` must be a positive integer"))? as usize,
            };
            PropertyRefuter::EntropyAtLeast { q, max_n }
        }
        "periods" => {
            let list = get("ref")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("periods needs `ref`, a list of counts"))?;
            let reference = list
                .iter()
                .map(|v| v.as_u64().ok_or_else(|| bad("`ref` entries must be nonnegative integers")))
                .collect::<Result<Vec<_>>>()?;
            PropertyRefuter::PeriodsAtLeast { reference }
        }
        "contains" => {
            let list = get("patterns")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("contains needs `patterns`, a list of patterns"))?;
            PropertyRefuter::ContainsPatterns(list.iter().map(|v| pattern_param(pres, v)).collect::<Result<_>>()?)
        }
        "cylinder" => PropertyRefuter::Cylinder(pattern_param(pres, get("pattern").ok_or_else(|| bad("cylinder needs `pattern`"))?)?),
        "intersect" => {
            let arm = |k: &str| -> Result<PropertyRefuter> {
                let a = get(k).ok_or_else(|| bad(format!("intersect needs `{k}`")))?;
                let n = a
                    .get("property")
                    .and_then(Value::as_str)
                    .ok_or_else(|| bad(format!("`{k}.property` must name a property")))?;
                let empty = Value::Object(Default::default());
                parse_property(n, a.get("params").unwrap_or(&empty), pres)
            };
            PropertyRefuter::intersect(arm("left")?, arm("right")?)
        }
        other => {
            return Err(bad(format!(
                "unknown property `{other}`; available: {}",
                PROPERTY_NAMES.join(", ")
            )))
        }
    };
    refuter.validate(pres)?;
    Ok(refuter)
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CertJson {
    pub pattern: String,
    pub radius: usize,
    pub prefix_len: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RefutationJson {
    Empty {
        witness: CertJson,
    },
    Emitted {
        target: String,
        witness: CertJson,
    },
    Periods {
        order: usize,
        survivors: u64,
        required: u64,
        witnesses: Vec<CertJson>,
    },
    Entropy {
        length: usize,
        count: u64,
        bound: String,
        approximant: usize,
        witnesses: Vec<CertJson>,
    },
    Arm {
        arm: u8,
        inner: Box<RefutationJson>,
    },
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(tag = "side", rename_all = "snake_case")]
pub enum DecisionJson {
    /// `forbid(F, p)` was refuted.
    Yes { refutation: RefutationJson },
    /// `p` was certified in the co-language.
    No { witness: CertJson },
}

pub struct Codec<'a> {
    pub pres: &'a Presentation,
}

impl Codec<'_> {
    pub fn pattern(&self, p: &Pattern) -> String {
        format_pattern(&self.pres.group(), self.pres.alphabet(), p)
    }

    pub fn parse(&self, s: &str) -> Result<Pattern> {
        parse_pattern(&self.pres.group(), self.pres.alphabet(), s)
    }

    pub fn cert(&self, c: &Certificate) -> CertJson {
        CertJson {
            pattern: self.pattern(&c.pattern),
            radius: c.radius,
            prefix_len: c.prefix_len,
        }
    }

    pub fn cert_back(&self, c: &CertJson) -> Result<Certificate> {
        Ok(Certificate {
            pattern: self.parse(&c.pattern)?,
            radius: c.radius,
            prefix_len: c.prefix_len,
        })
    }

    pub fn refutation(&self, r: &Refutation) -> RefutationJson {
        let certs = |v: &[Certificate]| v.iter().map(|c| self.cert(c)).collect();
        match r {
            Refutation::Empty(c) => RefutationJson::Empty { witness: self.cert(c) },
            Refutation::Emitted { target, witness } => RefutationJson::Emitted {
                target: self.pattern(target),
                witness: self.cert(witness),
            },
            Refutation::Periods {
                order,
                survivors,
                required,
                witnesses,
            } => RefutationJson::Periods {
                order: *order,
                survivors: *survivors,
                required: *required,
                witnesses: certs(witnesses),
            },
            Refutation::Entropy {
                length,
                count,
                bound,
                approximant,
                witnesses,
            } => RefutationJson::Entropy {
                length: *length,
                count: *count,
                bound: format_rational(bound),
                approximant: *approximant,
                witnesses: certs(witnesses),
            },
            Refutation::Arm { arm, inner } => RefutationJson::Arm {
                arm: *arm,
                inner: Box::new(self.refutation(inner)),
            },
        }
    }

    pub fn refutation_back(&self, r: &RefutationJson) -> Result<Refutation> {
        let certs = |v: &[CertJson]| v.iter().map(|c| self.cert_back(c)).collect::<Result<Vec<_>>>();
        Ok(match r {
            RefutationJson::Empty { witness } => Refutation::Empty(self.cert_back(witness)?),
            RefutationJson::Emitted { target, witness } => Refutation::Emitted {
                target: self.parse(target)?,
                witness: self.cert_back(witness)?,
            },
            RefutationJson::Periods {
                order,
                survivors,
                required,
                witnesses,
            } => Refutation::Periods {
                order: *order,
                survivors: *survivors,
                required: *required,
                witnesses: certs(witnesses)?,
            },
            RefutationJson::Entropy {
                length,
                count,
                bound,
                approximant,
                witnesses,
            } => Refutation::Entropy {
                length: *length,
                count: *count,
                bound: parse_rational(bound)?,
                approximant: *approximant,
                witnesses: certs(witnesses)?,
            },
            RefutationJson::Arm { arm, inner } => Refutation::Arm {
                arm: *arm,
                inner: Box::new(self.refutation_back(inner)?),
            },
        })
    }

    pub fn decision(&self, d: &DecisionCertificate) -> DecisionJson {
        match d {
            DecisionCertificate::Yes(r) => DecisionJson::Yes {
                refutation: self.refutation(r),
            },
            DecisionCertificate::No(c) => DecisionJson::No { witness: self.cert(c) },
        }
    }

    pub fn decision_back(&self, d: &DecisionJson) -> Result<DecisionCertificate> {
        Ok(match d {
            DecisionJson::Yes { refutation } => DecisionCertificate::Yes(self.refutation_back(refutation)?),
            DecisionJson::No { witness } => DecisionCertificate::No(self.cert_back(witness)?),
        })
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct TraceJson {
    pub rounds: u64,
    pub no: bool,
    pub yes: bool,
}

/// One decision, self-contained enough to replay.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct DecisionRecord {
    pub shift: String,
    pub property: String,
    pub params: Value,
    pub config: ConfigJson,
    pub pattern: String,
    pub verdict: String,
    /// Units spent on this decision; enumerations report a total instead.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget_used: Option<u64>,
    pub certificate: Option<DecisionJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceJson>>,
}
