//! Deciding the language of a minimal shift, and the enumeration reductions
//! for products and disjoint unions.
//!
//! Contract: the presented shift is minimal for the refuted property, i.e. it
//! has the property and no nonempty proper subshift does. This cannot be
//! checked; when it fails, `Yes` answers may be wrong.

use alloc::vec::Vec;

use crate::error::Result;
use crate::grid::{Pattern, PatternEnumerator};
use crate::properties::{verify_refutation, PropertyRefuter, Refutation, RefuterRun};
use crate::streams::{
    verify_certificate, Certificate, Meter, Outcome, Presentation, Prober, ScheduleConfig, Verdict,
};

mod product;
mod union;

pub use product::{product_colanguage, ProductCoLanguage, Side};
pub use union::{
    disjoint_separation_radius, union_colanguage, PatternOracle, Separation, UnionCoLanguage, UnionEy,
};

/// The minimality contract, as printed with every run.
pub const MINIMALITY_CONTRACT: &str =
    "assumes the shift is minimal for the property: it has the property and no nonempty proper subshift does";

/// Evidence for a decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecisionCertificate {
    /// `forbid(F, p)` lacks the property, so `p` is in the language.
    Yes(Refutation),
    /// `p` is in the co-language.
    No(Certificate),
}

/// Consecutive rounds of the alternation with the same shape: whether the
/// co-language side and the refuter side each spent their unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceSegment {
    pub rounds: u64,
    pub no: bool,
    pub yes: bool,
}

/// One decision in progress. The co-language side (a prober for `p`) and the
/// refuter on `forbid(F, p)` take single units in turn, co-language side first.
pub struct DecisionRun {
    pattern: Pattern,
    yes: RefuterRun,
    no: Prober,
    trace: Vec<TraceSegment>,
    verdict: Verdict<DecisionCertificate>,
}

impl DecisionRun {
    pub fn new(
        presentation: &Presentation,
        refuter: &PropertyRefuter,
        pattern: &Pattern,
        config: ScheduleConfig,
    ) -> Result<Self> {
        let forbidden = presentation.forbid(pattern)?;
        Ok(DecisionRun {
            pattern: pattern.clone(),
            yes: RefuterRun::new(refuter, &forbidden, config.clone())?,
            no: Prober::new(presentation, pattern.clone(), config),
            trace: Vec::new(),
            verdict: Verdict::exhausted(0),
        })
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn verdict(&self) -> &Verdict<DecisionCertificate> {
        &self.verdict
    }

    pub fn trace(&self) -> &[TraceSegment] {
        &self.trace
    }

    pub fn spent(&self) -> u64 {
        self.verdict.budget_used
    }

    fn record(&mut self, no: bool, yes: bool) {
        match self.trace.last_mut() {
            Some(s) if s.no == no && s.yes == yes => s.rounds += 1,
            _ => self.trace.push(TraceSegment { rounds: 1, no, yes }),
        }
    }

    pub fn advance(&mut self, meter: &mut Meter) -> &Verdict<DecisionCertificate> {
        let start = meter.spent();
        let base = self.verdict.budget_used;
        while !self.verdict.outcome.is_resolved() && !meter.is_exhausted() {
            let mut m = Meter::new(1);
            let found = self.no.advance(&mut m).cloned();
            let no = m.spent() > 0;
            if no {
                meter.charge();
            }
            if let Some(c) = found {
                self.record(no, false);
                self.verdict = Verdict::resolved(Outcome::No, DecisionCertificate::No(c), 0);
                break;
            }
            if meter.is_exhausted() {
                self.record(no, false);
                break;
            }
            let mut m = Meter::new(1);
            let found = self.yes.advance(&mut m).cloned();
            let yes = m.spent() > 0;
            if yes {
                meter.charge();
            }
            self.record(no, yes);
            if let Some(r) = found {
                self.verdict = Verdict::resolved(Outcome::Yes, DecisionCertificate::Yes(r), 0);
            } else if !no && !yes {
                break;
            }
        }
        self.verdict.budget_used = base + meter.spent() - start;
        &self.verdict
    }
}

/// Decide whether `p` is in the language of the presented shift.
pub fn decide_pattern(
    presentation: &Presentation,
    refuter: &PropertyRefuter,
    pattern: &Pattern,
    budget: u64,
    config: &ScheduleConfig,
) -> Result<DecisionRun> {
    let mut run = DecisionRun::new(presentation, refuter, pattern, config.clone())?;
    run.advance(&mut Meter::new(budget));
    Ok(run)
}

/// Re-check a decision certificate without a budget.
pub fn verify_decision(
    presentation: &Presentation,
    refuter: &PropertyRefuter,
    pattern: &Pattern,
    certificate: &DecisionCertificate,
    config: &ScheduleConfig,
) -> Result<bool> {
    Ok(match certificate {
        DecisionCertificate::No(c) => c.pattern == *pattern && verify_certificate(presentation, c, config),
        DecisionCertificate::Yes(r) => {
            let forbidden = presentation.forbid(pattern)?;
            verify_refutation(refuter, &forbidden, r, config)
        }
    })
}

struct Slot {
    run: DecisionRun,
    admitted: usize,
    done: bool,
}

/// Units the first slice of every candidate gets; later slices double.
pub const ENUMERATION_BASE_SLICE: u64 = 64;

/// Dovetailed decisions over the window patterns in enumeration order.
/// In round `r`, candidate `r` is admitted and every unresolved candidate
/// admitted in round `s` is topped up to `BASE * 2^(r - s)` units.
pub struct LanguageEnumeration {
    presentation: Presentation,
    refuter: PropertyRefuter,
    config: ScheduleConfig,
    candidates: PatternEnumerator,
    max_level: Option<usize>,
    slots: Vec<Slot>,
    round: usize,
    cursor: usize,
    admitted: bool,
    members: Vec<(Pattern, DecisionCertificate)>,
    nonmembers: Vec<(Pattern, DecisionCertificate)>,
    spent: u64,
}

impl LanguageEnumeration {
    pub fn new(presentation: &Presentation, refuter: &PropertyRefuter, config: ScheduleConfig) -> Result<Self> {
        refuter.validate(presentation)?;
        let candidates = PatternEnumerator::new(presentation.group(), presentation.alphabet().len());
        Ok(LanguageEnumeration {
            presentation: presentation.clone(),
            refuter: refuter.clone(),
            config,
            candidates,
            max_level: None,
            slots: Vec::new(),
            round: 0,
            cursor: 0,
            admitted: false,
            members: Vec::new(),
            nonmembers: Vec::new(),
            spent: 0,
        })
    }

    /// Only admit candidates on windows of level at most `m`.
    pub fn with_max_level(mut self, m: usize) -> Self {
        self.max_level = Some(m);
        self
    }

    pub fn members(&self) -> &[(Pattern, DecisionCertificate)] {
        &self.members
    }

    pub fn nonmembers(&self) -> &[(Pattern, DecisionCertificate)] {
        &self.nonmembers
    }

    /// Admitted candidates still unresolved.
    pub fn pending(&self) -> impl Iterator<Item = &Pattern> + '_ {
        self.slots.iter().filter(|s| !s.done).map(|s| s.run.pattern())
    }

    pub fn spent(&self) -> u64 {
        self.spent
    }

    fn more_candidates(&self) -> bool {
        self.max_level.is_none_or(|m| self.candidates.level() <= m)
    }

    /// Every candidate up to the level cap has been resolved.
    pub fn is_complete(&self) -> bool {
        !self.more_candidates() && self.slots.iter().all(|s| s.done)
    }

    pub fn run(&mut self, budget: u64) {
        self.advance(&mut Meter::new(budget))
    }

    pub fn advance(&mut self, meter: &mut Meter) {
        let start = meter.spent();
        while !meter.is_exhausted() && !self.is_complete() {
            if !self.admitted {
                self.admitted = true;
                if self.more_candidates() {
                    let p = self.candidates.next().expect("candidates are infinite");
                    match DecisionRun::new(&self.presentation, &self.refuter, &p, self.config.clone()) {
                        Ok(run) => self.slots.push(Slot {
                            run,
                            admitted: self.round,
                            done: false,
                        }),
                        Err(_) => continue,
                    }
                }
            }
            if self.cursor >= self.slots.len() {
                self.round += 1;
                self.cursor = 0;
                self.admitted = false;
                continue;
            }
            let slot = &mut self.slots[self.cursor];
            let shift = (self.round - slot.admitted).min(40) as u32;
            let need = (ENUMERATION_BASE_SLICE << shift).saturating_sub(slot.run.spent());
            if slot.done || need == 0 {
                self.cursor += 1;
                continue;
            }
            let mut m = Meter::new(need.min(meter.remaining()));
            let v = slot.run.advance(&mut m).clone();
            for _ in 0..m.spent() {
                meter.charge();
            }
            if let Some(c) = v.certificate {
                slot.done = true;
                let entry = (slot.run.pattern().clone(), c);
                match v.outcome {
                    Outcome::Yes => self.members.push(entry),
                    _ => self.nonmembers.push(entry),
                }
            }
            if slot.done || m.spent() == need || m.spent() == 0 {
                self.cursor += 1;
            }
        }
        self.spent += meter.spent() - start;
    }
}

/// Run the enumeration for `budget` units.
pub fn enumerate_language(
    presentation: &Presentation,
    refuter: &PropertyRefuter,
    budget: u64,
    max_level: Option<usize>,
    config: &ScheduleConfig,
) -> Result<LanguageEnumeration> {
    let mut e = LanguageEnumeration::new(presentation, refuter, config.clone())?;
    if let Some(m) = max_level {
        e = e.with_max_level(m);
    }
    e.run(budget);
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Alphabet;
    use crate::zoo::{fibonacci, golden_mean, single_one};

    fn w(s: &str) -> Pattern {
        Pattern::from_word(&Alphabet::binary().parse_word(s).unwrap())
    }

    fn periods() -> PropertyRefuter {
        PropertyRefuter::PeriodsAtLeast {
            reference: golden_mean().metadata.per_prefix.unwrap(),
        }
    }

    fn decide(f: &Presentation, r: &PropertyRefuter, p: &str, budget: u64) -> Outcome {
        let cfg = ScheduleConfig::default();
        let run = decide_pattern(f, r, &w(p), budget, &cfg).unwrap();
        if let Some(c) = &run.verdict().certificate {
            assert!(verify_decision(f, r, &w(p), c, &cfg).unwrap());
        }
        let total: u64 = run.trace().iter().map(|s| s.rounds * (s.no as u64 + s.yes as u64)).sum();
        assert_eq!(total, run.spent());
        run.verdict().outcome
    }

    #[test]
    fn golden_mean_decisions() {
        let g = golden_mean().presentation;
        let short = PropertyRefuter::PeriodsAtLeast { reference: alloc::vec![1, 3, 6, 10] };
        assert_eq!(decide(&g, &short, "10", 100_000), Outcome::Yes);
        assert_eq!(decide(&g, &short, "11", 100_000), Outcome::No);
        assert_eq!(decide(&g, &periods(), "1001", 1_000_000), Outcome::Yes);
    }

    #[test]
    fn fibonacci_decisions() {
        let f = fibonacci().presentation;
        assert_eq!(decide(&f, &PropertyRefuter::Nonempty, "11", 1_000_000), Outcome::No);
        assert_eq!(decide(&f, &PropertyRefuter::Nonempty, "00", 1_000_000), Outcome::Yes);
    }

    #[test]
    fn tiny_budget_is_exhausted_and_resumable() {
        let g = golden_mean().presentation;
        let cfg = ScheduleConfig::default();
        let mut run = DecisionRun::new(&g, &periods(), &w("101"), cfg.clone()).unwrap();
        assert_eq!(run.advance(&mut Meter::new(1)).outcome, Outcome::Exhausted);
        assert_eq!(run.spent(), 1);
        let out = run.advance(&mut Meter::new(1_000_000)).outcome;
        let fresh = decide_pattern(&g, &periods(), &w("101"), 1_000_000, &cfg).unwrap();
        assert_eq!(out, fresh.verdict().outcome);
        assert_eq!(out, Outcome::Yes);
    }

    #[test]
    fn golden_mean_language_counts() {
        let g = golden_mean().presentation;
        let e = enumerate_language(&g, &periods(), 50_000_000, Some(4), &ScheduleConfig::default()).unwrap();
        assert!(e.is_complete());
        let mut by_len = [0usize; 6];
        for (p, _) in e.members() {
            by_len[p.len()] += 1;
        }
        assert_eq!(&by_len[1..], &[2, 3, 5, 8, 13]);
    }

    #[test]
    fn single_one_language() {
        let s = single_one().presentation;
        let r = PropertyRefuter::ContainsPatterns(alloc::vec![w("1")]);
        let e = enumerate_language(&s, &r, 10_000_000, Some(2), &ScheduleConfig::default()).unwrap();
        assert!(e.is_complete());
        assert!(e.members().iter().any(|(p, _)| *p == w("1")));
        assert!(e.nonmembers().iter().any(|(p, _)| *p == w("101")));
    }

    #[test]
    fn emptied_presentation_has_no_members() {
        let g = golden_mean().presentation.forbid(&w("0")).unwrap().forbid(&w("1")).unwrap();
        let e = enumerate_language(&g, &PropertyRefuter::Nonempty, 100_000, Some(2), &ScheduleConfig::default()).unwrap();
        assert!(e.members().is_empty());
        assert!(!e.nonmembers().is_empty());
    }
}
