//! Sturmian window shifts `X_[α,β]`: binary configurations whose every word
//! `w` of length `n` has between `⌊αn⌋` and `⌈βn⌉` ones.

use alloc::boxed::Box;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{Metadata, WordOracle, ZooShift};
use crate::error::{Result, ShiftError};
use crate::grid::{Alphabet, Group, Letter, Pattern};
use crate::streams::{ApproxReal, PatternSource, PatternStream, Presentation, Rational, Tick};

fn floor_mul(x: &Rational, n: usize) -> i64 {
    let v = x * Rational::from_integer(BigInt::from(n));
    v.floor().to_integer().to_i64().unwrap_or(i64::MAX)
}

fn ceil_mul(x: &Rational, n: usize) -> i64 {
    let v = x * Rational::from_integer(BigInt::from(n));
    v.ceil().to_integer().to_i64().unwrap_or(i64::MAX)
}

/// Range `[lo, hi]` of admissible one-counts for words of length `n`.
fn bounds(alpha: &Rational, beta: &Rational, n: usize) -> (i64, i64) {
    (floor_mul(alpha, n), ceil_mul(beta, n))
}

#[derive(Debug)]
struct WindowOracle {
    alpha: Rational,
    beta: Rational,
}

impl WordOracle for WindowOracle {
    fn accepts_word(&self, w: &[Letter]) -> Result<bool> {
        if w.iter().any(|&a| a > 1) {
            return Ok(false);
        }
        let mut prefix = vec![0i64; w.len() + 1];
        for (i, &a) in w.iter().enumerate() {
            prefix[i + 1] = prefix[i] + a as i64;
        }
        for k in 1..=w.len() {
            let (lo, hi) = bounds(&self.alpha, &self.beta, k);
            for i in 0..=w.len() - k {
                let c = prefix[i + k] - prefix[i];
                if c < lo || c > hi {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[derive(Debug)]
struct NoOracle;

impl WordOracle for NoOracle {
    fn accepts_word(&self, _: &[Letter]) -> Result<bool> {
        Err(ShiftError::Unsupported(
            "exact membership needs rational window endpoints".into(),
        ))
    }
}

/// Forbidden words of a window, dovetailed over approximants: stage `s`
/// looks at lengths `n <= s + 1` with the `s`-th approximants and emits the
/// words of every one-count newly certified out of range, lexicographically.
#[derive(Clone, Debug)]
pub struct SturmianSource {
    alpha: ApproxReal,
    beta: ApproxReal,
}

impl SturmianSource {
    pub fn new(alpha: ApproxReal, beta: ApproxReal) -> Self {
        SturmianSource { alpha, beta }
    }
}

/// Words of length `n` with exactly `c` ones, lexicographically.
fn words_with_ones(n: usize, c: usize) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    let mut w = vec![0 as Letter; n];
    fn rec(w: &mut Vec<Letter>, i: usize, left: usize, out: &mut Vec<Vec<Letter>>) {
        let n = w.len();
        if left > n - i {
            return;
        }
        if i == n {
            out.push(w.clone());
            return;
        }
        w[i] = 0;
        rec(w, i + 1, left, out);
        if left > 0 {
            w[i] = 1;
            rec(w, i + 1, left - 1, out);
            w[i] = 0;
        }
    }
    rec(&mut w, 0, c, &mut out);
    out
}

struct SturmianStream {
    alpha: ApproxReal,
    beta: ApproxReal,
    stage: usize,
    n: usize,
    /// Per length: counts below `low[n]` and above `high[n]` already emitted.
    low: Vec<i64>,
    high: Vec<i64>,
    pending: Vec<Vec<Letter>>,
}

impl Iterator for SturmianStream {
    type Item = Tick;

    fn next(&mut self) -> Option<Tick> {
        if let Some(w) = self.pending.pop() {
            return Some(Tick::Item(Pattern::from_word(&w)));
        }
        self.n += 1;
        if self.n > self.stage + 1 {
            self.stage += 1;
            self.n = 1;
        }
        let n = self.n;
        while self.low.len() <= n {
            self.low.push(0);
            self.high.push(self.low.len() as i64 - 1);
        }
        let k = self.stage;
        let lo = self.alpha.lower(k).map_or(0, |a| floor_mul(&a, n)).clamp(0, n as i64 + 1);
        let hi = self.beta.upper(k).map_or(n as i64, |b| ceil_mul(&b, n)).clamp(-1, n as i64);
        let mut fresh: Vec<usize> = Vec::new();
        for c in self.low[n]..lo {
            fresh.push(c as usize);
        }
        for c in (hi + 1)..=self.high[n] {
            fresh.push(c as usize);
        }
        self.low[n] = self.low[n].max(lo);
        self.high[n] = self.high[n].min(hi);
        fresh.sort_unstable();
        fresh.dedup();
        let mut batch: Vec<Vec<Letter>> = fresh.into_iter().flat_map(|c| words_with_ones(n, c)).collect();
        batch.sort();
        batch.reverse();
        self.pending = batch;
        match self.pending.pop() {
            Some(w) => Some(Tick::Item(Pattern::from_word(&w))),
            None => Some(Tick::Idle),
        }
    }
}

impl PatternSource for SturmianSource {
    fn stream(&self) -> PatternStream {
        Box::new(SturmianStream {
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            stage: 0,
            n: 0,
            low: vec![0],
            high: vec![0],
            pending: Vec::new(),
        })
    }
}

/// The window shift `X_[α,β]`. The exact oracle is available when both
/// endpoints are exact rationals.
pub fn sturmian_window(alpha: ApproxReal, beta: ApproxReal) -> Result<ZooShift> {
    if let (Some(a), Some(b)) = (alpha.exact(), beta.exact()) {
        if a > b {
            return Err(ShiftError::Config("window endpoints out of order".into()));
        }
    }
    let label = format!("sturmian:{},{}", alpha.describe(), beta.describe());
    let oracle: Arc<dyn WordOracle> = match (alpha.exact(), beta.exact()) {
        (Some(a), Some(b)) => Arc::new(WindowOracle {
            alpha: a.clone(),
            beta: b.clone(),
        }),
        _ => Arc::new(NoOracle),
    };
    let mut meta = Metadata::tagged(&["sturmian-window"]);
    if alpha.exact().is_some() && beta.exact().is_some() {
        meta.tags.push("rational-endpoints".into());
    }
    let presentation = Presentation::from_source(
        Group::Integers,
        Alphabet::binary(),
        Arc::new(SturmianSource::new(alpha, beta)),
        label.clone(),
    );
    Ok(ZooShift::new(label, presentation, oracle, meta))
}
