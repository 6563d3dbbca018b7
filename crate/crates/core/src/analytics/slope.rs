//! Recovering window endpoints of `X_[α,β]` from its language or co-language.

use alloc::vec::Vec;

use num_traits::Zero;

use super::for_each_word;
use crate::error::Result;
use crate::grid::{Letter, Pattern};
use crate::streams::{rational, Certificate, Enumeration, Rational};
use crate::zoo::WordOracle;

/// Most ones in an accepted binary word of length `n`, and the interval
/// `[(m-1)/n, m/n]` (clipped at 0) it places the upper endpoint in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeMax {
    pub n: usize,
    pub m: u64,
    pub lower: Rational,
    pub upper: Rational,
}

/// Under the `⌈βn⌉` convention the maximum is `⌈βn⌉`: the mechanical word
/// of slope `β` attains it, and the window forbids more.
pub fn recover_slope_max(oracle: &dyn WordOracle, n: usize) -> Result<SlopeMax> {
    let mut m = 0u64;
    let mut seen = false;
    for_each_word(oracle, 2, n, |w| {
        seen = true;
        m = m.max(w.iter().filter(|&&a| a == 1).count() as u64);
    })?;
    let den = n.max(1) as i64;
    let lower = if m == 0 || !seen {
        Rational::zero()
    } else {
        rational(m as i64 - 1, den)
    };
    Ok(SlopeMax {
        n,
        m,
        lower,
        upper: rational(m as i64, den),
    })
}

/// An interval for `α`; `None` stands for an infinite end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowBounds {
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

impl WindowBounds {
    pub fn contains(&self, x: &Rational) -> bool {
        self.lower.as_ref().is_none_or(|l| l <= x) && self.upper.as_ref().is_none_or(|u| x <= u)
    }

    pub fn width(&self) -> Option<Rational> {
        Some(self.upper.as_ref()? - self.lower.as_ref()?)
    }
}

/// Bounds on `α` for `X_[α,α+1/2]`, `0 <= α <= 1/2`, from rejected words.
///
/// A binary word is rejected at `α` exactly when some factor of length `k`
/// with `c` ones is too light (`α >= (c+1)/k`) or too heavy
/// (`α <= (c-1)/k - 1/2`). So each rejected word removes an open interval
/// `(U, L)` of candidates; the bounds are the hull of what remains.
#[derive(Clone, Debug, Default)]
pub struct WindowRecovery {
    gaps: Vec<(Rational, Rational)>,
    consumed: usize,
}

fn gap(w: &[Letter]) -> Option<(Rational, Rational)> {
    let mut prefix = alloc::vec![0i64; w.len() + 1];
    for (i, &a) in w.iter().enumerate() {
        prefix[i + 1] = prefix[i] + i64::from(a == 1);
    }
    let half = rational(1, 2);
    let mut heavy: Option<Rational> = None;
    let mut light: Option<Rational> = None;
    for k in 1..=w.len() {
        let (lo, hi) = (0..=w.len() - k)
            .map(|i| prefix[i + k] - prefix[i])
            .fold((i64::MAX, i64::MIN), |(a, b), c| (a.min(c), b.max(c)));
        let l = rational(lo + 1, k as i64);
        let u = rational(hi - 1, k as i64) - &half;
        if light.as_ref().is_none_or(|x| l < *x) {
            light = Some(l);
        }
        if heavy.as_ref().is_none_or(|x| u > *x) {
            heavy = Some(u);
        }
    }
    Some((heavy?, light?))
}

impl WindowRecovery {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn consumed(&self) -> usize {
        self.consumed
    }

    /// Take one rejected pattern into account; patterns that are not words
    /// are counted but carry no constraint here.
    pub fn feed(&mut self, p: &Pattern) {
        self.consumed += 1;
        if let Some((_, w)) = p.as_interval() {
            if let Some((u, l)) = gap(&w) {
                if u < l {
                    self.gaps.push((u, l));
                }
            }
        }
    }

    pub fn bounds(&self) -> WindowBounds {
        if self.consumed == 0 {
            return WindowBounds {
                lower: None,
                upper: None,
            };
        }
        let mut lo = Rational::zero();
        while let Some((_, l)) = self.gaps.iter().find(|(u, l)| *u < lo && lo < *l) {
            lo = l.clone();
        }
        let mut hi = rational(1, 2);
        while let Some((u, _)) = self.gaps.iter().find(|(u, l)| *u < hi && hi < *l) {
            hi = u.clone();
        }
        WindowBounds {
            lower: Some(lo),
            upper: Some(hi),
        }
    }
}

/// Run a co-language enumeration of `X_[α,α+1/2]` for `budget` units and
/// bound `α` from everything it emitted.
pub fn recover_window<E: Enumeration<Item = Certificate>>(
    co: &mut E,
    recovery: &mut WindowRecovery,
    budget: u64,
) -> WindowBounds {
    co.run(budget);
    for c in &co.emitted()[recovery.consumed()..] {
        recovery.feed(&c.pattern);
    }
    recovery.bounds()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::streams::{ApproxReal, CoLanguage, ScheduleConfig};
    use crate::zoo::sturmian_window;

    fn window(a: Rational, b: Rational) -> crate::zoo::ZooShift {
        sturmian_window(ApproxReal::rational(a), ApproxReal::rational(b)).unwrap()
    }

    #[test]
    fn slope_examples() {
        let third = window(Rational::zero(), rational(1, 3));
        let s = recover_slope_max(third.oracle().as_ref(), 9).unwrap();
        assert_eq!(s.m, 3);
        let half = window(Rational::zero(), rational(1, 2));
        assert_eq!(recover_slope_max(half.oracle().as_ref(), 4).unwrap().m, 2);
        let one = window(Rational::zero(), rational(1, 1));
        assert_eq!(recover_slope_max(one.oracle().as_ref(), 7).unwrap().m, 7);
        for (p, q) in [(1, 3), (2, 5), (3, 7), (1, 4)] {
            let b = rational(p, q);
            let x = window(Rational::zero(), b.clone());
            for n in 1..=14 {
                let s = recover_slope_max(x.oracle().as_ref(), n).unwrap();
                assert!(s.lower <= b && b <= s.upper, "{p}/{q} at {n}: {s:?}");
            }
        }
    }

    #[test]
    fn empty_prefix_is_unbounded() {
        assert_eq!(
            WindowRecovery::new().bounds(),
            WindowBounds {
                lower: None,
                upper: None
            }
        );
    }

    #[test]
    fn window_recovery_is_sound_and_shrinks() {
        for (p, q) in [(1, 4), (1, 3), (2, 5)] {
            let a = rational(p, q);
            let x = window(a.clone(), &a + rational(1, 2));
            let mut co = CoLanguage::new(&x.presentation, ScheduleConfig::default());
            let mut rec = WindowRecovery::new();
            let mut last: Option<Rational> = None;
            for _ in 0..40 {
                let b = recover_window(&mut co, &mut rec, 50_000);
                assert!(b.contains(&a), "{p}/{q}: {b:?}");
                let w = b.width().unwrap();
                if let Some(l) = &last {
                    assert!(w <= *l);
                }
                last = Some(w);
            }
            assert!(last.unwrap() <= rational(1, 8), "{p}/{q}");
        }
    }
}
