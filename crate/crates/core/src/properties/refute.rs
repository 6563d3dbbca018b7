//! Running and checking refuters.

use alloc::boxed::Box;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigUint;

use super::necklace::{lyndon_words, occurs_in_periodic};
use super::{PropertyRefuter, Refutation};
use crate::error::Result;
use crate::grid::{Element, Group, Letter, Pattern};
use crate::streams::{
    compare_log_ratio, verify_certificate, ApproxReal, Certificate, CoLanguage, DomainPlan,
    Enumeration, ForbiddenIndex, Meter, Presentation, Prober, ScheduleConfig, Search,
    SearchOutcome,
};

struct PeriodsFold {
    reference: Vec<u64>,
    candidates: Vec<Vec<Letter>>,
    alive: Vec<bool>,
    killers: Vec<Certificate>,
}

fn survivors(candidates: &[Vec<Letter>], alive: &[bool], order: usize) -> u64 {
    candidates
        .iter()
        .zip(alive)
        .filter(|(u, &a)| a && u.len() <= order)
        .map(|(u, _)| u.len() as u64)
        .sum()
}

fn kill(candidates: &[Vec<Letter>], alive: &mut [bool], p: &Pattern) -> bool {
    let cells = p.positions();
    let mut killed = false;
    for (u, a) in candidates.iter().zip(alive.iter_mut()) {
        if *a && occurs_in_periodic(&cells, u) {
            *a = false;
            killed = true;
        }
    }
    killed
}

fn first_shortfall(reference: &[u64], candidates: &[Vec<Letter>], alive: &[bool]) -> Option<(usize, u64)> {
    (1..=reference.len()).find_map(|i| {
        let s = survivors(candidates, alive, i);
        (s < reference[i - 1]).then_some((i, s))
    })
}

impl PeriodsFold {
    fn new(reference: Vec<u64>, alphabet: usize) -> Self {
        let candidates = lyndon_words(alphabet, reference.len());
        PeriodsFold {
            alive: vec![true; candidates.len()],
            candidates,
            reference,
            killers: Vec::new(),
        }
    }

    fn feed(&mut self, c: &Certificate) -> Option<Refutation> {
        if !kill(&self.candidates, &mut self.alive, &c.pattern) {
            return None;
        }
        self.killers.push(c.clone());
        let (order, s) = first_shortfall(&self.reference, &self.candidates, &self.alive)?;
        Some(Refutation::Periods {
            order,
            survivors: s,
            required: self.reference[order - 1],
            witnesses: self.killers.clone(),
        })
    }
}

fn count_search(index: &ForbiddenIndex, n: usize, alphabet: usize, cap: u64) -> Search {
    let cells: Vec<Element> = (0..n as i64).map(Element::from_position).collect();
    let plan = Arc::new(DomainPlan::new(&Group::Integers, &[], &cells, index.shapes()));
    Search::new(plan, &[], alphabet, index.len(), true, cap)
}

struct EntropyFold {
    q: ApproxReal,
    max_n: usize,
    alphabet: usize,
    cap: u64,
    index: ForbiddenIndex,
    witnesses: Vec<Certificate>,
    n: usize,
    search: Option<Search>,
    counted_at: Vec<Option<usize>>,
    sweeps: usize,
}

impl EntropyFold {
    fn new(q: ApproxReal, max_n: usize, alphabet: usize, cap: u64) -> Self {
        EntropyFold {
            q,
            max_n,
            alphabet,
            cap,
            index: ForbiddenIndex::manual(Group::Integers),
            witnesses: Vec::new(),
            n: 1,
            search: None,
            counted_at: vec![None; max_n + 1],
            sweeps: 0,
        }
    }

    fn feed(&mut self, c: &Certificate) {
        self.index.push(c.pattern.clone());
        self.witnesses.push(c.clone());
    }

    fn next_length(&mut self) {
        self.n += 1;
        if self.n > self.max_n {
            self.n = 1;
            self.sweeps += 1;
        }
    }

    /// Recount survivors for the next length whose count is stale.
    fn work(&mut self, meter: &mut Meter) -> Option<Refutation> {
        if self.search.is_none() {
            let exact = self.q.exact().is_some();
            let mut tries = 0;
            while exact && self.counted_at[self.n] == Some(self.index.len()) {
                self.next_length();
                tries += 1;
                if tries > self.max_n {
                    return None;
                }
            }
            self.search = Some(count_search(&self.index, self.n, self.alphabet, self.cap));
        }
        let search = self.search.as_mut().expect("search");
        let prefix = search.prefix();
        let outcome = search.step(&self.index, meter)?.clone();
        self.search = None;
        self.counted_at[self.n] = Some(prefix);
        let n = self.n;
        let k = self.sweeps;
        self.next_length();
        let SearchOutcome::Count(count) = outcome else {
            return None;
        };
        let bound = self.q.lower(k)?;
        let below = count == 0
            || compare_log_ratio(&BigUint::from(count), n as u64, &bound).ok()? == Ordering::Less;
        below.then(|| Refutation::Entropy {
            length: n,
            count,
            bound,
            approximant: k,
            witnesses: self.witnesses[..prefix].to_vec(),
        })
    }
}

enum LeafState {
    Nonempty,
    Probers { probers: Vec<Prober>, turn: usize },
    Periods(PeriodsFold),
    Entropy(Box<EntropyFold>),
}

struct Leaf {
    path: Vec<u8>,
    state: LeafState,
}

fn collect_leaves(
    refuter: &PropertyRefuter,
    presentation: &Presentation,
    config: &ScheduleConfig,
    path: &mut Vec<u8>,
    out: &mut Vec<Leaf>,
) {
    let alphabet = presentation.alphabet().len();
    let state = match refuter {
        PropertyRefuter::Intersect(a, b) => {
            path.push(0);
            collect_leaves(a, presentation, config, path, out);
            path.pop();
            path.push(1);
            collect_leaves(b, presentation, config, path, out);
            path.pop();
            return;
        }
        PropertyRefuter::Nonempty => LeafState::Nonempty,
        PropertyRefuter::Cylinder(p) => LeafState::Probers {
            probers: vec![Prober::new(presentation, p.clone(), config.clone())],
            turn: 0,
        },
        PropertyRefuter::ContainsPatterns(ps) => LeafState::Probers {
            probers: ps
                .iter()
                .map(|p| Prober::new(presentation, p.clone(), config.clone()))
                .collect(),
            turn: 0,
        },
        PropertyRefuter::PeriodsAtLeast { reference } => {
            LeafState::Periods(PeriodsFold::new(reference.clone(), alphabet))
        }
        PropertyRefuter::EntropyAtLeast { q, max_n } => LeafState::Entropy(Box::new(
            EntropyFold::new(q.clone(), *max_n, alphabet, config.extension_cap),
        )),
    };
    out.push(Leaf {
        path: path.clone(),
        state,
    });
}

fn wrap(path: &[u8], r: Refutation) -> Refutation {
    path.iter().rev().fold(r, |inner, &arm| Refutation::Arm {
        arm,
        inner: Box::new(inner),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Component {
    Emptiness,
    Stream,
    Leaf(usize),
}

/// A refuter bound to a presentation: emptiness detection, the co-language
/// stream (when a fold needs it) and each leaf's own work share the budget
/// one unit at a time, in a fixed rotation.
pub struct RefuterRun {
    emptiness: Prober,
    stream: Option<CoLanguage>,
    consumed: usize,
    leaves: Vec<Leaf>,
    components: Vec<Component>,
    turn: usize,
    refuted: Option<Refutation>,
    spent: u64,
}

impl RefuterRun {
    pub fn new(refuter: &PropertyRefuter, presentation: &Presentation, config: ScheduleConfig) -> Result<Self> {
        refuter.validate(presentation)?;
        let mut leaves = Vec::new();
        collect_leaves(refuter, presentation, &config, &mut Vec::new(), &mut leaves);
        let stream = refuter
            .needs_stream()
            .then(|| CoLanguage::new(presentation, config.clone()));
        let mut components = vec![Component::Emptiness];
        if stream.is_some() {
            components.push(Component::Stream);
        }
        for (i, l) in leaves.iter().enumerate() {
            if matches!(l.state, LeafState::Probers { .. } | LeafState::Entropy(_)) {
                components.push(Component::Leaf(i));
            }
        }
        Ok(RefuterRun {
            emptiness: Prober::new(presentation, Pattern::empty(), config),
            stream,
            consumed: 0,
            leaves,
            components,
            turn: 0,
            refuted: None,
            spent: 0,
        })
    }

    pub fn refutation(&self) -> Option<&Refutation> {
        self.refuted.as_ref()
    }

    pub fn spent(&self) -> u64 {
        self.spent
    }

    /// Co-language emissions read so far.
    pub fn consumed(&self) -> usize {
        self.consumed
    }

    pub fn run(&mut self, budget: u64) -> Option<&Refutation> {
        let mut m = Meter::new(budget);
        self.advance(&mut m)
    }

    fn feed_stream(&mut self) -> Option<Refutation> {
        let stream = self.stream.as_ref()?;
        let fresh = &stream.emitted()[self.consumed..];
        self.consumed += fresh.len();
        let mut found = None;
        for c in fresh {
            for leaf in self.leaves.iter_mut() {
                match &mut leaf.state {
                    LeafState::Periods(f) => {
                        if let Some(r) = f.feed(c) {
                            found.get_or_insert_with(|| wrap(&leaf.path, r));
                        }
                    }
                    LeafState::Entropy(f) => f.feed(c),
                    _ => {}
                }
            }
            if found.is_some() {
                break;
            }
        }
        found
    }

    fn step_component(&mut self, c: Component, m: &mut Meter) -> Option<Refutation> {
        match c {
            Component::Emptiness => self.emptiness.advance(m).cloned().map(Refutation::Empty),
            Component::Stream => {
                self.stream.as_mut()?.advance(m);
                self.feed_stream()
            }
            Component::Leaf(i) => {
                let leaf = &mut self.leaves[i];
                let r = match &mut leaf.state {
                    LeafState::Probers { probers, turn } => {
                        let k = *turn % probers.len();
                        *turn += 1;
                        let p = &mut probers[k];
                        p.advance(m).cloned().map(|c| Refutation::Emitted {
                            target: p.pattern().clone(),
                            witness: c,
                        })
                    }
                    LeafState::Entropy(f) => f.work(m),
                    _ => None,
                };
                r.map(|r| wrap(&leaf.path, r))
            }
        }
    }

    /// Work until refuted or out of budget.
    pub fn advance(&mut self, meter: &mut Meter) -> Option<&Refutation> {
        let start = meter.spent();
        let mut idle = 0;
        while self.refuted.is_none() && !meter.is_exhausted() && idle < self.components.len() {
            let c = self.components[self.turn % self.components.len()];
            self.turn += 1;
            let mut m = Meter::new(1);
            let r = self.step_component(c, &mut m);
            if m.spent() > 0 {
                meter.charge();
                idle = 0;
            } else {
                idle += 1;
            }
            self.refuted = r;
        }
        self.spent += meter.spent() - start;
        self.refuted.as_ref()
    }
}

fn recount(witnesses: &[Certificate], n: usize, alphabet: usize) -> Option<u64> {
    let mut index = ForbiddenIndex::manual(Group::Integers);
    for w in witnesses {
        index.push(w.pattern.clone());
    }
    let mut s = count_search(&index, n, alphabet, u64::MAX);
    match s.step(&index, &mut Meter::new(u64::MAX)) {
        Some(SearchOutcome::Count(c)) => Some(*c),
        _ => None,
    }
}

/// Re-check a refutation without a budget: every co-language certificate it
/// cites is replayed, then the fold is recomputed from the cited patterns.
pub fn verify_refutation(
    refuter: &PropertyRefuter,
    presentation: &Presentation,
    refutation: &Refutation,
    config: &ScheduleConfig,
) -> bool {
    let replay = |c: &Certificate| verify_certificate(presentation, c, config);
    match (refuter, refutation) {
        (_, Refutation::Empty(c)) => c.pattern.is_empty() && replay(c),
        (PropertyRefuter::Intersect(a, b), Refutation::Arm { arm, inner }) => match arm {
            0 => verify_refutation(a, presentation, inner, config),
            1 => verify_refutation(b, presentation, inner, config),
            _ => false,
        },
        (PropertyRefuter::Cylinder(p), Refutation::Emitted { target, witness }) => {
            p == target && witness.pattern == *target && replay(witness)
        }
        (PropertyRefuter::ContainsPatterns(ps), Refutation::Emitted { target, witness }) => {
            ps.contains(target) && witness.pattern == *target && replay(witness)
        }
        (
            PropertyRefuter::PeriodsAtLeast { reference },
            Refutation::Periods {
                order,
                survivors: s,
                required,
                witnesses,
            },
        ) => {
            if *order == 0 || *order > reference.len() || reference[*order - 1] != *required || s >= required {
                return false;
            }
            if !witnesses.iter().all(replay) {
                return false;
            }
            let candidates = lyndon_words(presentation.alphabet().len(), reference.len());
            let mut alive = vec![true; candidates.len()];
            for w in witnesses {
                kill(&candidates, &mut alive, &w.pattern);
            }
            survivors(&candidates, &alive, *order) == *s
        }
        (
            PropertyRefuter::EntropyAtLeast { q, .. },
            Refutation::Entropy {
                length,
                count,
                bound,
                approximant,
                witnesses,
            },
        ) => {
            if *length == 0 || q.lower(*approximant).as_ref() != Some(bound) {
                return false;
            }
            let below = *count == 0
                || compare_log_ratio(&BigUint::from(*count), *length as u64, bound) == Ok(Ordering::Less);
            below
                && witnesses.iter().all(replay)
                && recount(witnesses, *length, presentation.alphabet().len()) == Some(*count)
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::streams::rational;
    use crate::zoo::{fibonacci, full_shift, golden_mean, periodic_orbit, single_one};
    use crate::grid::Alphabet;

    fn w(s: &str) -> Pattern {
        Pattern::from_word(&Alphabet::binary().parse_word(s).unwrap())
    }

    fn refute(refuter: &PropertyRefuter, f: &Presentation, budget: u64) -> Option<Refutation> {
        let mut run = RefuterRun::new(refuter, f, ScheduleConfig::default()).unwrap();
        let r = run.run(budget).cloned();
        if let Some(r) = &r {
            assert!(verify_refutation(refuter, f, r, &ScheduleConfig::default()), "{r:?}");
        }
        r
    }

    #[test]
    fn nonempty_examples() {
        let g = golden_mean().presentation;
        assert!(refute(&PropertyRefuter::Nonempty, &g, 50_000).is_none());
        let emptied = full_shift(Alphabet::binary()).presentation.forbid(&w("0")).unwrap().forbid(&w("1")).unwrap();
        assert!(refute(&PropertyRefuter::Nonempty, &emptied, 1000).is_some());
        let fib = fibonacci().presentation.forbid(&w("0100")).unwrap();
        assert!(matches!(refute(&PropertyRefuter::Nonempty, &fib, 1_000_000), Some(Refutation::Empty(_))));
    }

    #[test]
    fn entropy_examples() {
        let zero = periodic_orbit(Alphabet::binary(), &[0]).unwrap().presentation;
        let half = PropertyRefuter::entropy_at_least(ApproxReal::rational(rational(1, 2)));
        assert!(refute(&half, &zero, 200_000).is_some());
        let one = PropertyRefuter::entropy_at_least(ApproxReal::rational(rational(1, 1)));
        assert!(refute(&one, &full_shift(Alphabet::binary()).presentation, 100_000).is_none());
        let emptied = golden_mean().presentation.forbid(&w("0")).unwrap();
        let lg = PropertyRefuter::entropy_at_least(ApproxReal::log_golden_mean());
        assert!(refute(&lg, &emptied, 100_000).is_some());
    }

    #[test]
    fn periods_examples() {
        let full = full_shift(Alphabet::binary()).presentation.forbid(&w("01")).unwrap();
        let refuter = PropertyRefuter::PeriodsAtLeast { reference: vec![2, 4, 10, 22] };
        match refute(&refuter, &full, 100_000) {
            Some(Refutation::Periods { order, survivors, .. }) => assert_eq!((order, survivors), (2, 2)),
            other => panic!("{other:?}"),
        }
        let g = golden_mean().presentation.forbid(&w("0")).unwrap();
        let refuter = PropertyRefuter::PeriodsAtLeast { reference: vec![1, 3, 6, 10] };
        assert!(refute(&refuter, &g, 100_000).is_some());
        let bad = PropertyRefuter::PeriodsAtLeast { reference: vec![3] };
        assert!(RefuterRun::new(&bad, &golden_mean().presentation, ScheduleConfig::default()).is_err());
    }

    #[test]
    fn contains_and_cylinder_examples() {
        let s = single_one().presentation.forbid(&w("1")).unwrap();
        let refuter = PropertyRefuter::ContainsPatterns(vec![w("1")]);
        assert!(matches!(refute(&refuter, &s, 10_000), Some(Refutation::Emitted { .. })));
        let f = full_shift(Alphabet::binary()).presentation.forbid(&w("11")).unwrap();
        assert!(refute(&PropertyRefuter::ContainsPatterns(vec![w("0")]), &f, 50_000).is_none());
        let g = golden_mean().presentation;
        assert!(refute(&PropertyRefuter::Cylinder(w("11")), &g, 100).is_some());
        assert!(refute(&PropertyRefuter::Cylinder(w("0")), &g, 50_000).is_none());
        assert!(refute(&PropertyRefuter::Cylinder(Pattern::empty()), &g, 50_000).is_none());
    }

    #[test]
    fn intersect_examples() {
        let g = golden_mean().presentation.forbid(&w("0")).unwrap();
        let refuter = PropertyRefuter::intersect(PropertyRefuter::Nonempty, PropertyRefuter::Cylinder(w("0")));
        assert!(refute(&refuter, &g, 10_000).is_some());
        let g = golden_mean().presentation;
        let same = PropertyRefuter::intersect(PropertyRefuter::Cylinder(w("0")), PropertyRefuter::Cylinder(w("0")));
        assert!(refute(&same, &g, 50_000).is_none());
    }

    #[test]
    fn tampered_refutation_is_rejected() {
        let full = full_shift(Alphabet::binary()).presentation.forbid(&w("01")).unwrap();
        let refuter = PropertyRefuter::PeriodsAtLeast { reference: vec![2, 4, 10, 22] };
        let mut run = RefuterRun::new(&refuter, &full, ScheduleConfig::default()).unwrap();
        let mut r = run.run(100_000).cloned().unwrap();
        if let Refutation::Periods { survivors, .. } = &mut r {
            *survivors = 1;
        }
        assert!(!verify_refutation(&refuter, &full, &r, &ScheduleConfig::default()));
    }
}
