//! Concrete shifts on the integers, each with a forbidden-pattern
//! presentation and an exact membership oracle.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Result, ShiftError};
use crate::grid::{Alphabet, Group, Letter, Pattern};
use crate::streams::{PatternSource, PatternStream, Presentation, Tick};

mod combine;
mod orbit;
mod registry;
mod sft;
mod sturmian;
mod substitution;

pub use combine::{product_shift, union_shift};
pub use orbit::{periodic_orbit, single_one};
pub use registry::{lookup, parse_sft_text, registry_names, split_arguments};
pub use sft::{full_shift, golden_mean, sft, SftOracle};
pub use sturmian::{sturmian_window, SturmianSource};
pub use substitution::{fibonacci, stabilized_factors, substitution_shift, Substitution};

/// Fillings tried when a pattern with gaps is checked against a word oracle.
pub const GAP_FILL_CAP: u64 = 1 << 20;

/// Exact membership for words (patterns on `{0, .., n-1}`).
pub trait WordOracle: Send + Sync + fmt::Debug {
    fn accepts_word(&self, w: &[Letter]) -> Result<bool>;
}

/// Whether `needle` is a factor of `hay`.
pub fn word_contains(hay: &[Letter], needle: &[Letter]) -> bool {
    needle.is_empty() || hay.windows(needle.len()).any(|u| u == needle)
}

/// Descriptive data attached to a zoo shift.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Metadata {
    pub tags: Vec<String>,
    /// Known periodic-point counts `Per_1, Per_2, ..`.
    pub per_prefix: Option<Vec<u64>>,
    pub entropy: Option<String>,
    pub distinguishing: Vec<Pattern>,
}

impl Metadata {
    pub fn tagged(tags: &[&str]) -> Self {
        Metadata {
            tags: tags.iter().map(|t| t.to_string()).collect(),
            ..Metadata::default()
        }
    }
}

/// A shift with a presentation and an exact oracle for its language.
#[derive(Clone)]
pub struct ZooShift {
    pub label: String,
    pub presentation: Presentation,
    oracle: Arc<dyn WordOracle>,
    pub metadata: Metadata,
}

impl fmt::Debug for ZooShift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ZooShift")
            .field("label", &self.label)
            .field("presentation", &self.presentation)
            .field("metadata", &self.metadata)
            .finish()
    }
}

impl ZooShift {
    pub fn new(
        label: impl Into<String>,
        presentation: Presentation,
        oracle: Arc<dyn WordOracle>,
        metadata: Metadata,
    ) -> Self {
        ZooShift {
            label: label.into(),
            presentation,
            oracle,
            metadata,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.presentation.alphabet()
    }

    pub fn group(&self) -> Group {
        self.presentation.group()
    }

    pub fn oracle(&self) -> &Arc<dyn WordOracle> {
        &self.oracle
    }

    pub fn accepts_word(&self, w: &[Letter]) -> Result<bool> {
        self.oracle.accepts_word(w)
    }

    /// Whether `p` occurs in some configuration. Gaps in the support are
    /// filled in every possible way.
    pub fn accepts(&self, p: &Pattern) -> Result<bool> {
        accepts_pattern(self.oracle.as_ref(), self.alphabet().len(), p)
    }
}

/// Pattern membership through a word oracle.
pub fn accepts_pattern(oracle: &dyn WordOracle, alphabet: usize, p: &Pattern) -> Result<bool> {
    let pos = p.positions();
    let (Some(&(lo, _)), Some(&(hi, _))) = (pos.first(), pos.last()) else {
        return oracle.accepts_word(&[]);
    };
    let len = (hi - lo + 1) as usize;
    let mut word: Vec<Option<Letter>> = alloc::vec![None; len];
    for &(x, a) in &pos {
        word[(x - lo) as usize] = Some(a);
    }
    let gaps: Vec<usize> = (0..len).filter(|&i| word[i].is_none()).collect();
    let fillings = (alphabet as u64).checked_pow(gaps.len() as u32);
    if fillings.is_none_or(|f| f > GAP_FILL_CAP) {
        return Err(ShiftError::BudgetExceeded(format!(
            "{} gap cells exceed the filling cap",
            gaps.len()
        )));
    }
    let mut w: Vec<Letter> = word.iter().map(|c| c.unwrap_or(0)).collect();
    let mut digits = alloc::vec![0usize; gaps.len()];
    loop {
        for (&g, &d) in gaps.iter().zip(&digits) {
            w[g] = d as Letter;
        }
        if oracle.accepts_word(&w)? {
            return Ok(true);
        }
        let mut i = gaps.len();
        loop {
            if i == 0 {
                return Ok(false);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < alphabet {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Every word rejected by an oracle, by length and then lexicographically.
/// Accepted words show up as idle ticks.
#[derive(Clone, Debug)]
pub struct RejectedWords {
    oracle: Arc<dyn WordOracle>,
    alphabet: usize,
}

impl RejectedWords {
    pub fn new(oracle: Arc<dyn WordOracle>, alphabet: usize) -> Self {
        RejectedWords { oracle, alphabet }
    }
}

impl PatternSource for RejectedWords {
    fn stream(&self) -> PatternStream {
        let oracle = self.oracle.clone();
        let k = self.alphabet;
        let mut word: Vec<Letter> = Vec::new();
        Box::new(core::iter::from_fn(move || {
            // Odometer over words of the current length; grow when it wraps.
            let mut i = word.len();
            loop {
                if i == 0 {
                    word = alloc::vec![0; word.len() + 1];
                    break;
                }
                i -= 1;
                if (word[i] as usize) + 1 < k {
                    word[i] += 1;
                    break;
                }
                word[i] = 0;
            }
            Some(match oracle.accepts_word(&word) {
                Ok(false) => Tick::Item(Pattern::from_word(&word)),
                _ => Tick::Idle,
            })
        }))
    }
}
