//! Co-language derivation: certify patterns that no configuration contains.
//!
//! A pattern `p` is certified by `(n, t)` when every filling of
//! `support(p) ∪ ball(n)` that agrees with `p` contains one of the first `t`
//! forbidden patterns. By compactness every pattern of the co-language has
//! such a certificate, so dovetailing over `(p, n, t)` enumerates it.
//!
//! Schedule: pass `k` uses the forbidden prefix
//! `t(k) = min(step * (k + 1), 2^(k + 1))` (or everything the presentation
//! produced within its tick allowance) and visits every window level `m <= k`
//! at radius `k - m`. Pulling a forbidden pattern costs a unit per generator
//! tick plus a unit per cell.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::index::ForbiddenIndex;
use super::meter::{Enumeration, Meter};
use super::plan::DomainPlan;
use super::search::{Search, SearchOutcome};
use super::source::Presentation;
use super::verdict::{Certificate, Outcome, Verdict};
use crate::grid::{nth_pattern, pattern_count, Element, Group, Letter, Pattern};

/// Knobs of the dovetailing schedule. Every field takes part in determinism:
/// two runs agree exactly when their configurations agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScheduleConfig {
    /// Forbidden-prefix growth per pass.
    pub prefix_step: usize,
    /// Generator ticks allowed per requested forbidden pattern.
    pub tick_factor: u64,
    /// Search nodes allowed per probe; larger probes are skipped.
    pub extension_cap: u64,
    /// Window levels with more candidates than this are not visited.
    pub level_cap: u64,
}

impl Default for ScheduleConfig {
    fn default() -> Self {
        ScheduleConfig {
            prefix_step: 1024,
            tick_factor: 64,
            extension_cap: 1 << 22,
            level_cap: 1 << 20,
        }
    }
}

impl ScheduleConfig {
    /// `min(step * (k + 1), 2^(k + 1))`: doubling first, so that streams of
    /// long patterns are not read far ahead of the radius.
    pub fn prefix_target(&self, pass: usize) -> usize {
        let doubling = 1usize.checked_shl(pass as u32 + 1).unwrap_or(usize::MAX);
        self.prefix_step.saturating_mul(pass + 1).min(doubling)
    }

    fn tick_limit(&self, target: usize) -> u64 {
        self.tick_factor.saturating_mul(target as u64)
    }
}

type PlanKey = (Vec<Element>, Vec<Element>);

/// A presentation together with its pulled forbidden prefix and cached
/// search plans.
pub struct Prover {
    presentation: Presentation,
    config: ScheduleConfig,
    index: ForbiddenIndex,
    plans: BTreeMap<PlanKey, Arc<DomainPlan>>,
    plan_shapes: usize,
}

impl Prover {
    pub fn new(presentation: &Presentation, config: ScheduleConfig) -> Self {
        Prover {
            index: ForbiddenIndex::new(presentation),
            presentation: presentation.clone(),
            config,
            plans: BTreeMap::new(),
            plan_shapes: 0,
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn config(&self) -> &ScheduleConfig {
        &self.config
    }

    pub fn index(&self) -> &ForbiddenIndex {
        &self.index
    }

    /// The forbidden prefix length used in pass `pass`.
    pub fn prefix_for_pass(&mut self, pass: usize) -> usize {
        let target = self.config.prefix_target(pass);
        self.index.pull_until(target, self.config.tick_limit(target));
        target.min(self.index.len())
    }

    /// Metered version of [`Prover::prefix_for_pass`]; `None` when the meter
    /// ran out before the prefix was complete.
    pub fn pull_for_pass(&mut self, pass: usize, meter: &mut Meter) -> Option<usize> {
        let target = self.config.prefix_target(pass);
        if !self.index.pull_metered(target, self.config.tick_limit(target), meter) {
            return None;
        }
        Some(target.min(self.index.len()))
    }

    /// Pull until `len` patterns are known; false if the presentation does
    /// not produce that many within a generous tick allowance.
    pub fn ensure_prefix(&mut self, len: usize) -> bool {
        let limit = self
            .config
            .tick_limit(len.max(self.config.prefix_step))
            .saturating_mul(4)
            .saturating_add(1 << 20);
        self.index.pull_until(len, limit);
        self.index.len() >= len
    }

    /// Plan for `fixed` cells followed by `free` cells, against every shape
    /// currently known.
    pub fn plan(&mut self, fixed: &[Element], free: &[Element]) -> Arc<DomainPlan> {
        let shapes = self.index.shapes().len();
        if shapes != self.plan_shapes || self.plans.len() > 256 {
            self.plans.clear();
            self.plan_shapes = shapes;
        }
        let key = (fixed.to_vec(), free.to_vec());
        if let Some(p) = self.plans.get(&key) {
            return p.clone();
        }
        let group = self.presentation.group();
        let plan = Arc::new(DomainPlan::new(&group, fixed, free, self.index.shapes()));
        self.plans.insert(key, plan.clone());
        plan
    }

    /// Search for a filling of `support(p) ∪ ball(radius)` avoiding the first
    /// `prefix` forbidden patterns.
    pub fn probe(&mut self, p: &Pattern, radius: usize, prefix: usize) -> Search {
        let fixed: Vec<Element> = p.support().cloned().collect();
        let letters: Vec<Letter> = p.letters().collect();
        let ball = self.presentation.group().ball(radius);
        let plan = self.plan(&fixed, &ball);
        Search::new(
            plan,
            &letters,
            self.presentation.alphabet().len(),
            prefix,
            false,
            self.config.extension_cap,
        )
    }
}

/// Check a co-language certificate from scratch, without a budget.
pub fn verify_certificate(
    presentation: &Presentation,
    certificate: &Certificate,
    config: &ScheduleConfig,
) -> bool {
    let mut prover = Prover::new(presentation, config.clone());
    if !prover.ensure_prefix(certificate.prefix_len) {
        return false;
    }
    let mut search = prover.probe(&certificate.pattern, certificate.radius, certificate.prefix_len);
    let mut meter = Meter::new(u64::MAX);
    matches!(
        search.step(prover.index(), &mut meter),
        Some(SearchOutcome::NoSurvivor)
    )
}

struct Level {
    cells: Vec<Element>,
    count: u64,
    done: Vec<bool>,
}

/// The co-language enumeration of a presentation. Candidates are the window
/// patterns of [`crate::grid::PatternEnumerator`]; each is emitted at most
/// once, with the certificate that first succeeded.
pub struct CoLanguage {
    prover: Prover,
    started: bool,
    pass: usize,
    prefix: usize,
    level: usize,
    cand: u64,
    levels: Vec<Level>,
    current: Option<Search>,
    emitted: Vec<Certificate>,
    spent: u64,
}

impl CoLanguage {
    pub fn new(presentation: &Presentation, config: ScheduleConfig) -> Self {
        CoLanguage {
            prover: Prover::new(presentation, config),
            started: false,
            pass: 0,
            prefix: 0,
            level: 0,
            cand: 0,
            levels: Vec::new(),
            current: None,
            emitted: Vec::new(),
            spent: 0,
        }
    }

    pub fn presentation(&self) -> &Presentation {
        self.prover.presentation()
    }

    pub fn group(&self) -> Group {
        self.prover.presentation().group()
    }

    /// Current pass of the schedule.
    pub fn pass(&self) -> usize {
        self.pass
    }

    pub fn patterns(&self) -> impl Iterator<Item = &Pattern> + '_ {
        self.emitted.iter().map(|c| &c.pattern)
    }

    fn ensure_level(&mut self, m: usize) {
        while self.levels.len() <= m {
            let lvl = self.levels.len();
            let cells = self.group().window(lvl);
            let a = self.prover.presentation().alphabet().len();
            let count = match pattern_count(a, cells.len()) {
                Some(c) if c <= self.prover.config().level_cap => c,
                _ => 0,
            };
            self.levels.push(Level {
                cells,
                count,
                done: Vec::new(),
            });
        }
        let l = &mut self.levels[m];
        if l.done.len() as u64 != l.count {
            l.done = vec![false; l.count as usize];
        }
    }

    fn candidate(&self) -> Pattern {
        let l = &self.levels[self.level];
        nth_pattern(&l.cells, self.prover.presentation().alphabet().len(), self.cand)
    }
}

impl Enumeration for CoLanguage {
    type Item = Certificate;

    fn advance(&mut self, meter: &mut Meter) {
        let start = meter.spent();
        loop {
            if !self.started {
                match self.prover.pull_for_pass(self.pass, meter) {
                    Some(t) => self.prefix = t,
                    None => break,
                }
                self.started = true;
            }
            if let Some(search) = self.current.as_mut() {
                match search.step(self.prover.index(), meter) {
                    None => break,
                    Some(SearchOutcome::NoSurvivor) => {
                        let pattern = self.candidate();
                        self.emitted.push(Certificate {
                            pattern,
                            radius: self.pass - self.level,
                            prefix_len: self.prefix,
                        });
                        self.levels[self.level].done[self.cand as usize] = true;
                    }
                    Some(_) => {}
                }
                self.current = None;
                self.cand += 1;
                continue;
            }
            if self.level > self.pass {
                self.pass += 1;
                self.level = 0;
                self.cand = 0;
                self.started = false;
                continue;
            }
            self.ensure_level(self.level);
            if self.cand >= self.levels[self.level].count {
                self.level += 1;
                self.cand = 0;
                continue;
            }
            if !meter.charge() {
                break;
            }
            if self.levels[self.level].done[self.cand as usize] {
                self.cand += 1;
                continue;
            }
            let p = self.candidate();
            let radius = self.pass - self.level;
            self.current = Some(self.prover.probe(&p, radius, self.prefix));
        }
        self.spent += meter.spent() - start;
    }

    fn emitted(&self) -> &[Certificate] {
        &self.emitted
    }

    fn spent(&self) -> u64 {
        self.spent
    }
}

/// Certify one fixed pattern: pass `k` probes radius `k` against prefix
/// `t(k)`. One unit is charged at the start of every pass.
pub struct Prober {
    prover: Prover,
    pattern: Pattern,
    pass: usize,
    prefix: usize,
    charged: bool,
    current: Option<Search>,
    found: Option<Certificate>,
    spent: u64,
}

impl Prober {
    pub fn new(presentation: &Presentation, pattern: Pattern, config: ScheduleConfig) -> Self {
        Prober {
            prover: Prover::new(presentation, config),
            pattern,
            pass: 0,
            prefix: 0,
            charged: false,
            current: None,
            found: None,
            spent: 0,
        }
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        self.found.as_ref()
    }

    pub fn spent(&self) -> u64 {
        self.spent
    }

    pub fn pass(&self) -> usize {
        self.pass
    }

    /// Work until certified or out of budget.
    pub fn advance(&mut self, meter: &mut Meter) -> Option<&Certificate> {
        let start = meter.spent();
        while self.found.is_none() {
            if let Some(search) = self.current.as_mut() {
                match search.step(self.prover.index(), meter) {
                    None => break,
                    Some(SearchOutcome::NoSurvivor) => {
                        self.found = Some(Certificate {
                            pattern: self.pattern.clone(),
                            radius: self.pass,
                            prefix_len: self.prefix,
                        });
                    }
                    Some(_) => self.pass += 1,
                }
                self.current = None;
                continue;
            }
            if !self.charged {
                if !meter.charge() {
                    break;
                }
                self.charged = true;
            }
            match self.prover.pull_for_pass(self.pass, meter) {
                Some(t) => self.prefix = t,
                None => break,
            }
            self.charged = false;
            self.current = Some(self.prover.probe(&self.pattern, self.pass, self.prefix));
        }
        self.spent += meter.spent() - start;
        self.found.as_ref()
    }
}

/// Certify that the presented shift is empty: some ball admits no filling.
/// Never answers `No`.
pub fn emptiness_certificate(
    presentation: &Presentation,
    budget: u64,
    config: &ScheduleConfig,
) -> Verdict {
    let mut prober = Prober::new(presentation, Pattern::empty(), config.clone());
    let mut meter = Meter::new(budget);
    match prober.advance(&mut meter).cloned() {
        Some(c) => Verdict::resolved(Outcome::Yes, c, prober.spent()),
        None => Verdict::exhausted(prober.spent()),
    }
}
