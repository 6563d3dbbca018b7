//! Periodic orbits and the single-one shift.

use alloc::boxed::Box;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{word_contains, Metadata, RejectedWords, WordOracle, ZooShift};
use crate::error::{Result, ShiftError};
use crate::grid::{Alphabet, Group, Letter, Pattern};
use crate::streams::{PatternSource, PatternStream, Presentation, Tick};

#[derive(Debug)]
struct OrbitOracle {
    period: Vec<Letter>,
}

impl WordOracle for OrbitOracle {
    fn accepts_word(&self, w: &[Letter]) -> Result<bool> {
        let reps = w.len() / self.period.len() + 2;
        let hay: Vec<Letter> = self.period.iter().copied().cycle().take(reps * self.period.len()).collect();
        Ok(word_contains(&hay, w))
    }
}

/// Smallest `d` with `w` a power of its length-`d` prefix.
pub fn primitive_period(w: &[Letter]) -> usize {
    (1..=w.len())
        .find(|&d| w.len().is_multiple_of(d) && (d..w.len()).all(|i| w[i] == w[i - d]))
        .unwrap_or(w.len())
}

/// The orbit closure of `w^∞`.
pub fn periodic_orbit(alphabet: Alphabet, w: &[Letter]) -> Result<ZooShift> {
    if w.is_empty() {
        return Err(ShiftError::Config("periodic orbit of the empty word".into()));
    }
    if w.iter().any(|&a| a as usize >= alphabet.len()) {
        return Err(ShiftError::UnknownLetter(format!("{w:?}")));
    }
    let label = format!("orbit:{}", alphabet.format_word(w));
    let oracle: Arc<dyn WordOracle> = Arc::new(OrbitOracle { period: w.to_vec() });
    let source = Arc::new(RejectedWords::new(oracle.clone(), alphabet.len()));
    let presentation = Presentation::from_source(Group::Integers, alphabet, source, label.clone());
    let d = primitive_period(w) as u64;
    let mut meta = Metadata::tagged(&["periodic", "minimal"]);
    meta.per_prefix = Some((1..=8).map(|i| if i >= d { d } else { 0 }).collect());
    Ok(ZooShift::new(label, presentation, oracle, meta))
}

#[derive(Debug)]
struct AtMostOneOne;

impl WordOracle for AtMostOneOne {
    fn accepts_word(&self, w: &[Letter]) -> Result<bool> {
        Ok(w.iter().filter(|&&a| a == 1).count() <= 1)
    }
}

/// `1 0^k 1` for `k = 0, 1, 2, ..`.
#[derive(Debug)]
struct SeparatedOnes;

impl PatternSource for SeparatedOnes {
    fn stream(&self) -> PatternStream {
        Box::new((0usize..).map(|k| {
            let mut w = vec![0 as Letter; k + 2];
            w[0] = 1;
            w[k + 1] = 1;
            Tick::Item(Pattern::from_word(&w))
        }))
    }
}

/// Binary configurations with at most one `1`.
pub fn single_one() -> ZooShift {
    let presentation = Presentation::from_source(
        Group::Integers,
        Alphabet::binary(),
        Arc::new(SeparatedOnes),
        "single-one",
    );
    let mut meta = Metadata::tagged(&["quasi-minimal"]);
    meta.per_prefix = Some(vec![1; 8]);
    meta.distinguishing = vec![Pattern::from_word(&[1])];
    ZooShift::new("single-one", presentation, Arc::new(AtMostOneOne), meta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_examples() {
        let one = periodic_orbit(Alphabet::binary(), &[1]).unwrap();
        assert!(one.accepts_word(&[1, 1, 1]).unwrap());
        assert!(!one.accepts_word(&[0]).unwrap());
        let alt = periodic_orbit(Alphabet::binary(), &[0, 1]).unwrap();
        assert!(alt.accepts_word(&[0, 1, 0, 1]).unwrap());
        assert!(alt.accepts_word(&[1, 0, 1, 0]).unwrap());
        assert!(!alt.accepts_word(&[0, 0]).unwrap());
        assert_eq!(alt.metadata.per_prefix.as_ref().unwrap()[..4], [0, 2, 2, 2]);
    }

    #[test]
    fn single_one_examples() {
        let s = single_one();
        assert!(s.accepts_word(&[0, 0, 0, 1, 0, 0, 0]).unwrap());
        assert!(!s.accepts_word(&[1, 0, 0, 0, 1]).unwrap());
    }

    #[test]
    fn primitive_periods() {
        assert_eq!(primitive_period(&[0, 1, 0, 1]), 2);
        assert_eq!(primitive_period(&[0, 1, 1]), 3);
        assert_eq!(primitive_period(&[1]), 1);
    }
}
