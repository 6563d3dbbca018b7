//! Resumable depth-first search for fillings that avoid a forbidden prefix.
//!
//! Every extension of the fixed cells is visited in lexicographic order of
//! the free cells, except that a branch is abandoned as soon as a forbidden
//! placement is complete. This is equivalent to testing each extension in
//! full, but far cheaper.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::index::ForbiddenIndex;
use super::meter::Meter;
use super::plan::DomainPlan;
use crate::grid::{Letter, Pattern};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// Lexicographically first filling avoiding the prefix.
    Survivor(Vec<Letter>),
    /// Every filling contains a forbidden pattern.
    NoSurvivor,
    /// Number of fillings avoiding the prefix.
    Count(u64),
    /// More than the node cap were visited.
    CapExceeded,
}

#[derive(Clone, Copy, Debug)]
enum Phase {
    Root(usize),
    Try,
    Check(usize),
}

/// One paused or finished search.
#[derive(Debug)]
pub struct Search {
    plan: Arc<DomainPlan>,
    prefix: usize,
    counting: bool,
    alphabet: u16,
    vals: Vec<Letter>,
    next: Vec<u16>,
    depth: usize,
    phase: Phase,
    nodes: u64,
    cap: u64,
    count: u64,
    key: Vec<Letter>,
    outcome: Option<SearchOutcome>,
}

impl Search {
    /// `fixed` holds the letters of the plan's fixed cells, in plan order.
    pub fn new(
        plan: Arc<DomainPlan>,
        fixed: &[Letter],
        alphabet: usize,
        prefix: usize,
        counting: bool,
        cap: u64,
    ) -> Self {
        debug_assert_eq!(fixed.len(), plan.fixed());
        let mut vals = vec![0; plan.len()];
        vals[..fixed.len()].copy_from_slice(fixed);
        Search {
            next: vec![0; plan.len()],
            vals,
            depth: 0,
            phase: Phase::Root(0),
            nodes: 0,
            cap,
            count: 0,
            key: Vec::new(),
            outcome: None,
            plan,
            prefix,
            counting,
            alphabet: alphabet as u16,
        }
    }

    pub fn plan(&self) -> &Arc<DomainPlan> {
        &self.plan
    }

    pub fn prefix(&self) -> usize {
        self.prefix
    }

    pub fn outcome(&self) -> Option<&SearchOutcome> {
        self.outcome.as_ref()
    }

    /// Nodes (single-cell assignments) visited so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    /// The survivor as a pattern on the plan's cells.
    pub fn survivor_pattern(&self) -> Option<Pattern> {
        match &self.outcome {
            Some(SearchOutcome::Survivor(v)) => Some(Pattern::from_cells(
                self.plan.cells().iter().cloned().zip(v.iter().copied()),
            )),
            _ => None,
        }
    }

    fn hit(&mut self, index: &ForbiddenIndex, placement: u32) -> bool {
        let (shape, cells) = self.plan.placement(placement);
        self.key.clear();
        self.key.extend(cells.iter().map(|&c| self.vals[c as usize]));
        index.hit(shape, &self.key, self.prefix)
    }

    fn finish_dead(&mut self) {
        self.outcome = Some(if self.counting {
            SearchOutcome::Count(self.count)
        } else {
            SearchOutcome::NoSurvivor
        });
    }

    fn leaf(&mut self) -> bool {
        if self.counting {
            self.count += 1;
            false
        } else {
            self.outcome = Some(SearchOutcome::Survivor(self.vals.clone()));
            true
        }
    }

    /// Run until finished or the meter is empty. One unit is charged per
    /// placement test and per cell assignment.
    pub fn step(&mut self, index: &ForbiddenIndex, meter: &mut Meter) -> Option<&SearchOutcome> {
        let n = self.plan.len();
        let fixed = self.plan.fixed();
        while self.outcome.is_none() {
            match self.phase {
                Phase::Root(i) => {
                    if i == 0 && index.empty_within(self.prefix) {
                        if !meter.charge() {
                            return None;
                        }
                        self.finish_dead();
                        continue;
                    }
                    let plan = self.plan.clone();
                    let root = plan.root();
                    if i < root.len() {
                        if !meter.charge() {
                            return None;
                        }
                        if self.hit(index, root[i]) {
                            self.finish_dead();
                        } else {
                            self.phase = Phase::Root(i + 1);
                        }
                    } else if fixed == n {
                        self.leaf();
                        if self.outcome.is_none() {
                            self.finish_dead();
                        }
                    } else {
                        self.depth = fixed;
                        self.next[fixed] = 0;
                        self.phase = Phase::Try;
                    }
                }
                Phase::Try => {
                    let d = self.depth;
                    if self.next[d] == self.alphabet {
                        if d == fixed {
                            self.finish_dead();
                        } else {
                            self.depth -= 1;
                        }
                        continue;
                    }
                    if self.nodes >= self.cap {
                        self.outcome = Some(SearchOutcome::CapExceeded);
                        continue;
                    }
                    if !meter.charge() {
                        return None;
                    }
                    self.vals[d] = self.next[d] as Letter;
                    self.next[d] += 1;
                    self.nodes += 1;
                    self.phase = Phase::Check(0);
                }
                Phase::Check(i) => {
                    let d = self.depth;
                    let plan = self.plan.clone();
                    let trig = plan.triggers(d);
                    if i < trig.len() {
                        if !meter.charge() {
                            return None;
                        }
                        if self.hit(index, trig[i]) {
                            self.phase = Phase::Try;
                        } else {
                            self.phase = Phase::Check(i + 1);
                        }
                    } else if d + 1 == n {
                        self.leaf();
                        self.phase = Phase::Try;
                    } else {
                        self.depth += 1;
                        self.next[d + 1] = 0;
                        self.phase = Phase::Try;
                    }
                }
            }
        }
        self.outcome.as_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{Alphabet, Element, Group};
    use crate::streams::source::Presentation;

    fn golden() -> Presentation {
        Presentation::finite(
            Group::Integers,
            Alphabet::binary(),
            alloc::vec![Pattern::from_word(&[1, 1])],
            "golden",
        )
        .unwrap()
    }

    fn window_count(n: usize) -> u64 {
        let p = golden();
        let mut idx = ForbiddenIndex::new(&p);
        idx.pull_until(1, 10);
        let cells: Vec<Element> = (0..n as i64).map(Element::from_position).collect();
        let plan = Arc::new(DomainPlan::new(&Group::Integers, &[], &cells, idx.shapes()));
        let mut s = Search::new(plan, &[], 2, 1, true, u64::MAX);
        match s.step(&idx, &mut Meter::new(u64::MAX)) {
            Some(SearchOutcome::Count(c)) => *c,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn counts_golden_mean_words() {
        let fib = [1u64, 2, 3, 5, 8, 13, 21, 34, 55];
        for (n, &f) in fib.iter().enumerate().skip(1) {
            assert_eq!(window_count(n), f, "n={n}");
        }
    }

    #[test]
    fn pausing_does_not_change_the_result() {
        let p = golden();
        let mut idx = ForbiddenIndex::new(&p);
        idx.pull_until(1, 10);
        let z = Group::Integers;
        let fixed = alloc::vec![Element::identity()];
        let plan = Arc::new(DomainPlan::new(&z, &fixed, &z.ball(3), idx.shapes()));
        let mut whole = Search::new(plan.clone(), &[1], 2, 1, false, u64::MAX);
        let mut m = Meter::new(u64::MAX);
        let expected = whole.step(&idx, &mut m).cloned();
        let mut sliced = Search::new(plan, &[1], 2, 1, false, u64::MAX);
        let mut total = 0;
        let got = loop {
            let mut m1 = Meter::new(1);
            let r = sliced.step(&idx, &mut m1).cloned();
            total += m1.spent();
            if let Some(r) = r {
                break r;
            }
        };
        assert_eq!(Some(got), expected);
        assert_eq!(total, m.spent());
    }
}
