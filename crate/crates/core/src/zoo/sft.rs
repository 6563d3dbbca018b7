//! Shifts of finite type on the integers, decided on the De Bruijn graph.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{word_contains, Metadata, WordOracle, ZooShift};
use crate::error::{Result, ShiftError};
use crate::grid::{format_pattern, Alphabet, Group, Letter, Pattern};
use crate::streams::Presentation;

/// Largest De Bruijn graph built by [`sft`].
pub const MAX_STATES: usize = 1 << 20;

/// Membership by bi-infinite extendability: states are words of length
/// `window`, and only states on a bi-infinite path are kept.
#[derive(Debug)]
pub struct SftOracle {
    alphabet: usize,
    window: usize,
    forbidden: Vec<Vec<Letter>>,
    core: Vec<bool>,
}

impl SftOracle {
    pub fn new(alphabet: usize, forbidden: Vec<Vec<Letter>>) -> Result<Self> {
        let longest = forbidden.iter().map(Vec::len).max().unwrap_or(0);
        let window = longest.saturating_sub(1).max(1);
        let states = (alphabet as u64)
            .checked_pow(window as u32)
            .filter(|&s| s <= MAX_STATES as u64)
            .ok_or_else(|| {
                ShiftError::Unsupported(format!(
                    "De Bruijn graph with {alphabet}^{window} states is too large"
                ))
            })? as usize;
        let mut oracle = SftOracle {
            alphabet,
            window,
            forbidden,
            core: Vec::new(),
        };
        if oracle.forbidden.iter().any(Vec::is_empty) {
            oracle.core = vec![false; states];
            return Ok(oracle);
        }
        let mut alive: Vec<bool> = (0..states).map(|s| !oracle.has_forbidden(&oracle.decode(s))).collect();
        let edge = |o: &SftOracle, s: usize, a: usize| -> bool {
            let mut w = o.decode(s);
            w.push(a as Letter);
            !o.forbidden.iter().any(|f| f.len() <= w.len() && w[w.len() - f.len()..] == f[..])
        };
        let high = states / alphabet;
        // Trim states without a successor or predecessor until stable.
        loop {
            let mut changed = false;
            for s in 0..states {
                if !alive[s] {
                    continue;
                }
                let succ = (0..alphabet).any(|a| {
                    let t = (s % high) * alphabet + a;
                    alive[t] && edge(&oracle, s, a)
                });
                let pred = (0..alphabet).any(|b| {
                    let p = b * high + s / alphabet;
                    alive[p] && edge(&oracle, p, s % alphabet)
                });
                if !succ || !pred {
                    alive[s] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        oracle.core = alive;
        Ok(oracle)
    }

    fn decode(&self, mut s: usize) -> Vec<Letter> {
        let mut w = vec![0 as Letter; self.window];
        for slot in w.iter_mut().rev() {
            *slot = (s % self.alphabet) as Letter;
            s /= self.alphabet;
        }
        w
    }

    fn encode(&self, w: &[Letter]) -> usize {
        w.iter().fold(0, |acc, &a| acc * self.alphabet + a as usize)
    }

    fn has_forbidden(&self, w: &[Letter]) -> bool {
        self.forbidden.iter().any(|f| word_contains(w, f))
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn forbidden(&self) -> &[Vec<Letter>] {
        &self.forbidden
    }
}

impl WordOracle for SftOracle {
    fn accepts_word(&self, w: &[Letter]) -> Result<bool> {
        if w.iter().any(|&a| a as usize >= self.alphabet) || self.has_forbidden(w) {
            return Ok(false);
        }
        if w.len() >= self.window {
            return Ok(w.windows(self.window).all(|u| self.core[self.encode(u)]));
        }
        Ok((0..self.core.len()).any(|s| self.core[s] && self.decode(s).starts_with(w)))
    }
}

/// The shift of finite type on the integers forbidding `forbidden`, which
/// must be word patterns.
pub fn sft(alphabet: Alphabet, forbidden: Vec<Pattern>, label: impl Into<String>) -> Result<ZooShift> {
    let mut words = Vec::with_capacity(forbidden.len());
    for p in &forbidden {
        if p.is_empty() {
            words.push(Vec::new());
            continue;
        }
        let (_, w) = p.as_interval().ok_or_else(|| {
            ShiftError::Unsupported(format!(
                "forbidden pattern `{}` is not a word",
                format_pattern(&Group::Integers, &alphabet, p)
            ))
        })?;
        words.push(w);
    }
    let oracle = SftOracle::new(alphabet.len(), words)?;
    let label = label.into();
    let presentation = Presentation::finite(Group::Integers, alphabet, forbidden, label.clone())?;
    Ok(ZooShift::new(
        label,
        presentation,
        Arc::new(oracle),
        Metadata::tagged(&["sft"]),
    ))
}

/// The full shift on `alphabet`.
pub fn full_shift(alphabet: Alphabet) -> ZooShift {
    let label = format!("full{{{}}}", alphabet.symbols().concat());
    let mut z = sft(alphabet, Vec::new(), label).expect("full shift");
    z.metadata.tags.push("full".into());
    z
}

/// The golden-mean shift: binary words without `11`.
pub fn golden_mean() -> ZooShift {
    let mut z = sft(Alphabet::binary(), vec![Pattern::from_word(&[1, 1])], "golden-mean")
        .expect("golden mean");
    z.metadata.tags.push("strongly-irreducible".into());
    z.metadata.entropy = Some("log2((1+sqrt 5)/2)".into());
    z.metadata.per_prefix = Some(vec![1, 3, 6, 10, 20, 32, 60, 100]);
    z.metadata.distinguishing = vec![Pattern::from_word(&[1, 1])];
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_mean_examples() {
        let g = golden_mean();
        assert!(g.accepts_word(&[0, 1, 0, 1]).unwrap());
        assert!(!g.accepts_word(&[1, 1, 0]).unwrap());
    }

    #[test]
    fn full_and_empty() {
        let f = full_shift(Alphabet::binary());
        assert!(f.accepts_word(&[1, 1, 1, 0]).unwrap());
        let all: Vec<Pattern> = [[0, 0], [0, 1], [1, 0], [1, 1]]
            .iter()
            .map(|w| Pattern::from_word(w))
            .collect();
        let e = sft(Alphabet::binary(), all, "empty").unwrap();
        assert!(!e.accepts_word(&[0, 1]).unwrap());
        assert!(!e.accepts_word(&[0]).unwrap());
        assert!(!e.accepts_word(&[]).unwrap());
    }

    #[test]
    fn transient_states_are_trimmed() {
        let z = sft(Alphabet::binary(), vec![Pattern::from_word(&[1, 0])], "t").unwrap();
        assert!(z.accepts_word(&[0, 0, 1, 1]).unwrap());
        let f = vec![Pattern::from_word(&[1, 0]), Pattern::from_word(&[0, 1, 1])];
        let z = sft(Alphabet::binary(), f, "t").unwrap();
        // 01 continues only as 010 or 011, both forbidden.
        assert!(!z.accepts_word(&[0, 1]).unwrap());
        assert!(z.accepts_word(&[1, 1]).unwrap());
    }
}
