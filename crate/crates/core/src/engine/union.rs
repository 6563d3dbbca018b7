//! From the co-language of a disjoint union `X ∪ Y` back to the co-language
//! of `X`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Result, ShiftError};
use crate::grid::{nth_pattern, pattern_count, Group, Pattern, PatternEnumerator};
use crate::streams::{Certificate, Enumeration, Meter};
use crate::zoo::ZooShift;

/// Exact membership of patterns in a language.
pub trait PatternOracle {
    fn accepts(&self, p: &Pattern) -> Result<bool>;
}

impl PatternOracle for ZooShift {
    fn accepts(&self, p: &Pattern) -> Result<bool> {
        ZooShift::accepts(self, p)
    }
}

impl<F: Fn(&Pattern) -> Result<bool>> PatternOracle for F {
    fn accepts(&self, p: &Pattern) -> Result<bool> {
        self(p)
    }
}

/// Largest number of ball patterns the separation search will test per radius.
pub const SEPARATION_CAP: u64 = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Separation {
    /// No pattern on `ball(n)` with `N < n <= n_max` is accepted by both.
    Radius(usize),
    /// Both languages meet on `ball(n_max)`; says nothing beyond `n_max`.
    NotSeparated { n_max: usize },
}

/// The smallest `N <= n_max` beyond which no ball pattern (up to `n_max`) is
/// accepted by both oracles.
pub fn disjoint_separation_radius(
    x: &dyn PatternOracle,
    y: &dyn PatternOracle,
    group: &Group,
    alphabet: usize,
    n_max: usize,
) -> Result<Separation> {
    let mut radius = 0;
    for n in 0..=n_max {
        let cells = group.ball(n);
        let count = pattern_count(alphabet, cells.len())
            .filter(|&c| c <= SEPARATION_CAP)
            .ok_or_else(|| ShiftError::BudgetExceeded(format!("ball({n}) has too many patterns")))?;
        let mut shared = false;
        for i in 0..count {
            let p = nth_pattern(&cells, alphabet, i);
            if x.accepts(&p)? && y.accepts(&p)? {
                shared = true;
                break;
            }
        }
        if shared {
            radius = n;
        }
    }
    match radius {
        r if r == n_max && n_max > 0 => Ok(Separation::NotSeparated { n_max }),
        r => Ok(Separation::Radius(r)),
    }
}

/// The decidable set `E_Y` of patterns that are in the co-language of `X`
/// although possibly in the language of `Y`.
///
/// Words no longer than `ball(N + 1)` are tested against `X` directly. A
/// longer word is in `E_Y` when every length-`(2N + 3)` window of it is in
/// the language of `Y`: such windows are never in both languages.
pub struct UnionEy<'a> {
    x: &'a dyn PatternOracle,
    y: &'a dyn PatternOracle,
    radius: usize,
}

impl<'a> UnionEy<'a> {
    pub fn new(
        x: &'a dyn PatternOracle,
        y: &'a dyn PatternOracle,
        group: &Group,
        separation: Separation,
    ) -> Result<Self> {
        if *group != Group::Integers {
            return Err(ShiftError::Unsupported("union reduction is implemented on the integers".into()));
        }
        match separation {
            Separation::Radius(radius) => Ok(UnionEy { x, y, radius }),
            Separation::NotSeparated { n_max } => Err(ShiftError::Precondition(format!(
                "shifts are not separated up to radius {n_max}"
            ))),
        }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn contains(&self, p: &Pattern) -> Result<bool> {
        let window = 2 * self.radius + 3;
        let Some((_, word)) = p.as_interval().filter(|(_, w)| w.len() > window) else {
            return Ok(!self.x.accepts(p)?);
        };
        for w in word.windows(window) {
            if !self.y.accepts(&Pattern::from_word(w))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Emissions of the inner co-language of `X ∪ Y` merged with the members of
/// `E_Y`, tested one candidate per unit in enumeration order. Units
/// alternate between the two.
pub struct UnionCoLanguage<'a, E> {
    inner: E,
    ey: UnionEy<'a>,
    candidates: PatternEnumerator,
    read: usize,
    turn: bool,
    seen: BTreeSet<Pattern>,
    emitted: Vec<Pattern>,
    spent: u64,
}

pub fn union_colanguage<'a, E>(inner: E, ey: UnionEy<'a>, group: Group, alphabet: usize) -> UnionCoLanguage<'a, E>
where
    E: Enumeration<Item = Certificate>,
{
    let candidates = PatternEnumerator::new(group, alphabet);
    UnionCoLanguage {
        inner,
        ey,
        candidates,
        read: 0,
        turn: false,
        seen: BTreeSet::new(),
        emitted: Vec::new(),
        spent: 0,
    }
}

impl<E> UnionCoLanguage<'_, E> {
    fn emit(&mut self, p: Pattern) {
        if self.seen.insert(p.clone()) {
            self.emitted.push(p);
        }
    }

    /// Level of the next candidate tested against `E_Y`.
    pub fn candidate_level(&self) -> usize {
        self.candidates.level()
    }
}

impl<E: Enumeration<Item = Certificate>> Enumeration for UnionCoLanguage<'_, E> {
    type Item = Pattern;

    fn advance(&mut self, meter: &mut Meter) {
        let start = meter.spent();
        while !meter.is_exhausted() {
            self.turn = !self.turn;
            if self.turn {
                let mut m = Meter::new(1);
                self.inner.advance(&mut m);
                if m.spent() > 0 {
                    meter.charge();
                }
                while self.read < self.inner.emitted().len() {
                    let p = self.inner.emitted()[self.read].pattern.clone();
                    self.read += 1;
                    self.emit(p);
                }
            } else {
                meter.charge();
                let p = self.candidates.next().expect("candidates are infinite");
                // Oracle errors only come from caps; such candidates are skipped.
                if self.ey.contains(&p).unwrap_or(false) {
                    self.emit(p);
                }
            }
        }
        self.spent += meter.spent() - start;
    }

    fn emitted(&self) -> &[Pattern] {
        &self.emitted
    }

    fn spent(&self) -> u64 {
        self.spent
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{Alphabet, Letter};
    use crate::streams::{CoLanguage, ScheduleConfig};
    use crate::zoo::{full_shift, golden_mean, periodic_orbit, union_shift};

    fn w(s: &str) -> Pattern {
        Pattern::from_word(&Alphabet::binary().parse_word(s).unwrap())
    }

    #[test]
    fn separation_examples() {
        let g = golden_mean();
        let ones = periodic_orbit(Alphabet::binary(), &[1]).unwrap();
        let zeros = periodic_orbit(Alphabet::binary(), &[0]).unwrap();
        let full = full_shift(Alphabet::binary());
        let z = Group::Integers;
        assert_eq!(disjoint_separation_radius(&g, &ones, &z, 2, 4).unwrap(), Separation::Radius(0));
        assert_eq!(disjoint_separation_radius(&zeros, &ones, &z, 2, 4).unwrap(), Separation::Radius(0));
        assert_eq!(
            disjoint_separation_radius(&g, &full, &z, 2, 4).unwrap(),
            Separation::NotSeparated { n_max: 4 }
        );
    }

    #[test]
    fn ey_examples() {
        let g = golden_mean();
        let ones = periodic_orbit(Alphabet::binary(), &[1]).unwrap();
        let ey = UnionEy::new(&g, &ones, &Group::Integers, Separation::Radius(0)).unwrap();
        assert!(!ey.contains(&w("1")).unwrap());
        assert!(ey.contains(&w("11")).unwrap());
        assert!(ey.contains(&w("11111")).unwrap());
        assert!(!ey.contains(&w("00100")).unwrap());
        let sep = Separation::NotSeparated { n_max: 3 };
        assert!(UnionEy::new(&g, &g, &Group::Integers, sep).is_err());
    }

    #[test]
    fn golden_mean_recovered_from_union() {
        let g = golden_mean();
        let ones = periodic_orbit(Alphabet::binary(), &[1]).unwrap();
        let u = union_shift(&g, &ones).unwrap();
        let ey = UnionEy::new(&g, &ones, &Group::Integers, Separation::Radius(0)).unwrap();
        let co = CoLanguage::new(&u.presentation, ScheduleConfig::default());
        let mut e = union_colanguage(co, ey, Group::Integers, 2);
        e.run(20_000);
        let got: BTreeSet<Vec<Letter>> = e
            .emitted()
            .iter()
            .filter_map(|p| p.as_word())
            .filter(|w| w.len() <= 5)
            .collect();
        for p in e.emitted() {
            assert!(!g.accepts(p).unwrap());
        }
        let mut want = BTreeSet::new();
        for n in 1..=5usize {
            for i in 0..(1u32 << n) {
                let word: Vec<Letter> = (0..n).map(|j| ((i >> (n - 1 - j)) & 1) as Letter).collect();
                if !g.accepts_word(&word).unwrap() {
                    want.insert(word);
                }
            }
        }
        assert_eq!(got, want);
        assert!(e.emitted().contains(&w("11")));
    }
}
