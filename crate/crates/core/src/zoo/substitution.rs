//! Primitive substitution shifts.
//!
//! The language is computed from the legal two-letter words: every factor
//! of length `ℓ` of some `σ^k(a)` lies inside `σ^m(bc)` for a legal pair
//! `bc`, once `m` is large enough that every `σ^m(a)` has length at least
//! `ℓ - 1`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{word_contains, Metadata, RejectedWords, WordOracle, ZooShift};
use crate::error::{Result, ShiftError};
use crate::grid::{Alphabet, Group, Letter};
use crate::streams::Presentation;

/// A substitution `a ↦ σ(a)` on letters `0..k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    images: Vec<Vec<Letter>>,
    pairs: Vec<[Letter; 2]>,
}

impl Substitution {
    /// Validates primitivity: some power of the incidence matrix is positive,
    /// checked up to Wielandt's bound `(k-1)^2 + 1`.
    pub fn new(images: Vec<Vec<Letter>>) -> Result<Self> {
        let k = images.len();
        if k == 0 {
            return Err(ShiftError::Config("substitution on an empty alphabet".into()));
        }
        for img in &images {
            if img.is_empty() {
                return Err(ShiftError::Config("erasing substitution".into()));
            }
            if img.iter().any(|&a| a as usize >= k) {
                return Err(ShiftError::Config("image letter outside the alphabet".into()));
            }
        }
        let step = |reach: &Vec<Vec<bool>>| -> Vec<Vec<bool>> {
            (0..k)
                .map(|a| {
                    let mut row = vec![false; k];
                    for (b, &r) in reach[a].iter().enumerate() {
                        if r {
                            for &c in &images[b] {
                                row[c as usize] = true;
                            }
                        }
                    }
                    row
                })
                .collect()
        };
        let mut reach: Vec<Vec<bool>> = (0..k)
            .map(|a| {
                let mut row = vec![false; k];
                for &c in &images[a] {
                    row[c as usize] = true;
                }
                row
            })
            .collect();
        let bound = (k - 1) * (k - 1) + 1;
        let mut primitive = false;
        for _ in 0..bound {
            if reach.iter().all(|r| r.iter().all(|&x| x)) {
                primitive = true;
                break;
            }
            reach = step(&reach);
        }
        if !primitive && !reach.iter().all(|r| r.iter().all(|&x| x)) {
            return Err(ShiftError::Config("substitution is not primitive".into()));
        }
        let mut s = Substitution {
            images,
            pairs: Vec::new(),
        };
        s.pairs = s.legal_pairs();
        Ok(s)
    }

    pub fn letters(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, a: Letter) -> &[Letter] {
        &self.images[a as usize]
    }

    pub fn apply(&self, w: &[Letter]) -> Vec<Letter> {
        w.iter().flat_map(|&a| self.images[a as usize].iter().copied()).collect()
    }

    pub fn power(&self, w: &[Letter], m: usize) -> Vec<Letter> {
        let mut v = w.to_vec();
        for _ in 0..m {
            v = self.apply(&v);
        }
        v
    }

    fn legal_pairs(&self) -> Vec<[Letter; 2]> {
        let mut set: BTreeSet<[Letter; 2]> = BTreeSet::new();
        let mut frontier: Vec<Vec<Letter>> = (0..self.letters() as Letter).map(|a| self.apply(&[a])).collect();
        while let Some(w) = frontier.pop() {
            for p in w.windows(2) {
                let pair = [p[0], p[1]];
                if set.insert(pair) {
                    frontier.push(self.apply(&pair));
                }
            }
        }
        set.into_iter().collect()
    }

    /// Smallest `m` with `|σ^m(a)| >= len` for every letter.
    fn depth_for(&self, len: usize) -> usize {
        let mut lens: Vec<usize> = vec![1; self.letters()];
        let mut m = 0;
        while lens.iter().any(|&l| l < len) {
            lens = self
                .images
                .iter()
                .map(|img| img.iter().map(|&b| lens[b as usize]).sum())
                .collect();
            m += 1;
        }
        m
    }

    /// Words whose factors of length `len` are exactly the language's.
    fn cover(&self, len: usize) -> Vec<Vec<Letter>> {
        let m = self.depth_for(len.saturating_sub(1));
        let mut out: Vec<Vec<Letter>> = self.pairs.iter().map(|p| self.power(p, m)).collect();
        out.extend((0..self.letters() as Letter).map(|a| self.power(&[a], m)));
        out
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        if w.iter().any(|&a| a as usize >= self.letters()) {
            return false;
        }
        if w.len() <= 1 {
            return true;
        }
        self.cover(w.len()).iter().any(|c| word_contains(c, w))
    }

    /// The factors of length `len`.
    pub fn factors(&self, len: usize) -> BTreeSet<Vec<Letter>> {
        let mut set = BTreeSet::new();
        if len == 0 {
            set.insert(Vec::new());
            return set;
        }
        for c in self.cover(len) {
            for u in c.windows(len) {
                set.insert(u.to_vec());
            }
        }
        set
    }
}

impl WordOracle for Substitution {
    fn accepts_word(&self, w: &[Letter]) -> Result<bool> {
        Ok(self.accepts(w))
    }
}

/// Length-`len` factors of `σ^m(a0)` for the first `m` at which they agree
/// with those of `σ^(m+1)(a0)`.
pub fn stabilized_factors(s: &Substitution, a0: Letter, len: usize) -> BTreeSet<Vec<Letter>> {
    let collect = |w: &[Letter]| -> BTreeSet<Vec<Letter>> {
        if len == 0 {
            return [Vec::new()].into_iter().collect();
        }
        w.windows(len).map(|u| u.to_vec()).collect()
    };
    let mut w = vec![a0];
    let mut prev = collect(&w);
    loop {
        w = s.apply(&w);
        let next = collect(&w);
        if next == prev && !next.is_empty() {
            return next;
        }
        prev = next;
    }
}

/// The shift generated by a primitive substitution; the presentation lists
/// every rejected word by length.
pub fn substitution_shift(
    alphabet: Alphabet,
    images: Vec<Vec<Letter>>,
    label: impl Into<String>,
) -> Result<ZooShift> {
    if images.len() != alphabet.len() {
        return Err(ShiftError::Config(format!(
            "substitution has {} images for {} letters",
            images.len(),
            alphabet.len()
        )));
    }
    let sub = Arc::new(Substitution::new(images)?);
    let label = label.into();
    let source = Arc::new(RejectedWords::new(sub.clone(), alphabet.len()));
    let presentation = Presentation::from_source(Group::Integers, alphabet, source, label.clone());
    let meta = Metadata::tagged(&["substitution", "minimal"]);
    Ok(ZooShift::new(label, presentation, sub, meta))
}

/// The Fibonacci shift, `0 ↦ 01`, `1 ↦ 0`.
pub fn fibonacci() -> ZooShift {
    let mut z = substitution_shift(Alphabet::binary(), vec![vec![0, 1], vec![0]], "fibonacci")
        .expect("fibonacci");
    z.metadata.tags.push("sturmian".into());
    z.metadata.per_prefix = Some(vec![0; 8]);
    z.metadata.entropy = Some("0".into());
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_examples() {
        let f = fibonacci();
        assert!(!f.accepts_word(&[1, 1]).unwrap());
        assert!(f.accepts_word(&[0, 0]).unwrap());
        assert!(!f.accepts_word(&[0, 0, 0]).unwrap());
    }

    #[test]
    fn fibonacci_complexity_is_n_plus_one() {
        let s = Substitution::new(vec![vec![0, 1], vec![0]]).unwrap();
        for n in 1..=12 {
            assert_eq!(s.factors(n).len(), n + 1);
        }
    }

    #[test]
    fn closure_matches_stabilization() {
        for images in [
            vec![vec![0, 1], vec![0]],
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![0, 0, 1], vec![1, 0]],
        ] {
            let s = Substitution::new(images).unwrap();
            for len in 1..=8 {
                assert_eq!(s.factors(len), stabilized_factors(&s, 0, len), "len {len}");
            }
        }
    }

    #[test]
    fn constant_substitution_is_a_fixed_point() {
        let z = substitution_shift(Alphabet::from_chars("0").unwrap(), vec![vec![0, 0]], "zero").unwrap();
        assert!(z.accepts_word(&[0, 0, 0]).unwrap());
    }

    #[test]
    fn non_primitive_is_rejected() {
        assert!(Substitution::new(vec![vec![0, 1], vec![1]]).is_err());
    }
}
