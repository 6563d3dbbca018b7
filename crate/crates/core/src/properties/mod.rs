//! Refuters for properties closed in the upper-Vietoris sense.
//!
//! A refuter reads the co-language of a shift and halts exactly when the
//! shift lacks the property. Every refuter also halts on the empty shift,
//! which has no property at all.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Result, ShiftError};
use crate::grid::{format_pattern, Group, Pattern};
use crate::streams::{ApproxReal, Certificate, Direction, Presentation, Rational};

mod necklace;
mod refute;

pub use necklace::{full_shift_per, lyndon_words, occurs_in_periodic};
pub use refute::{verify_refutation, RefuterRun};

/// Default largest word length counted by the entropy refuter.
pub const DEFAULT_ENTROPY_MAX_N: usize = 12;

/// A refutable property.
#[derive(Clone, Debug)]
pub enum PropertyRefuter {
    /// Nonempty shifts.
    Nonempty,
    /// Entropy at least `q` (integers only).
    EntropyAtLeast { q: ApproxReal, max_n: usize },
    /// `Per_i(Y) >= reference[i-1]` for every listed `i` (integers only).
    PeriodsAtLeast { reference: Vec<u64> },
    /// Every listed pattern is in the language.
    ContainsPatterns(Vec<Pattern>),
    /// The cylinder of the pattern meets the shift.
    Cylinder(Pattern),
    /// Both properties hold.
    Intersect(Box<PropertyRefuter>, Box<PropertyRefuter>),
}

/// Evidence that a shift lacks a property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    /// The shift is empty.
    Empty(Certificate),
    /// A required pattern is in the co-language.
    Emitted { target: Pattern, witness: Certificate },
    /// Too few periodic points survive the witnesses.
    Periods {
        order: usize,
        survivors: u64,
        required: u64,
        witnesses: Vec<Certificate>,
    },
    /// `log2(count)/length < bound <= q`, where `count` bounds the number of
    /// words of that length avoiding the witnesses.
    Entropy {
        length: usize,
        count: u64,
        bound: Rational,
        approximant: usize,
        witnesses: Vec<Certificate>,
    },
    /// One side of an intersection was refuted.
    Arm { arm: u8, inner: Box<Refutation> },
}

impl Refutation {
    /// Short description of the refuting component.
    pub fn kind(&self) -> &'static str {
        match self {
            Refutation::Empty(_) => "empty",
            Refutation::Emitted { .. } => "emitted",
            Refutation::Periods { .. } => "periods",
            Refutation::Entropy { .. } => "entropy",
            Refutation::Arm { inner, .. } => inner.kind(),
        }
    }
}

impl PropertyRefuter {
    pub fn entropy_at_least(q: ApproxReal) -> Self {
        PropertyRefuter::EntropyAtLeast {
            q,
            max_n: DEFAULT_ENTROPY_MAX_N,
        }
    }

    pub fn intersect(a: PropertyRefuter, b: PropertyRefuter) -> Self {
        PropertyRefuter::Intersect(Box::new(a), Box::new(b))
    }

    pub fn label(&self, presentation: &Presentation) -> String {
        let fmt = |p: &Pattern| format_pattern(&presentation.group(), presentation.alphabet(), p);
        match self {
            PropertyRefuter::Nonempty => "nonempty".into(),
            PropertyRefuter::EntropyAtLeast { q, .. } => format!("entropy>={}", q.describe()),
            PropertyRefuter::PeriodsAtLeast { reference } => format!("periods>={reference:?}"),
            PropertyRefuter::ContainsPatterns(ps) => {
                let names: Vec<String> = ps.iter().map(fmt).collect();
                format!("contains[{}]", names.join(", "))
            }
            PropertyRefuter::Cylinder(p) => format!("cylinder[{}]", fmt(p)),
            PropertyRefuter::Intersect(a, b) => {
                format!("intersect({}, {})", a.label(presentation), b.label(presentation))
            }
        }
    }

    /// Reject parameters that cannot describe a property of shifts over this
    /// group and alphabet.
    pub fn validate(&self, presentation: &Presentation) -> Result<()> {
        let integers = presentation.group() == Group::Integers;
        match self {
            PropertyRefuter::Nonempty | PropertyRefuter::Cylinder(_) => Ok(()),
            PropertyRefuter::EntropyAtLeast { q, max_n } => {
                if !integers {
                    return Err(ShiftError::Unsupported("entropy refuter needs the integers".into()));
                }
                if q.direction() == Direction::Right {
                    return Err(ShiftError::Config("entropy target must be left or two-sided".into()));
                }
                if *max_n == 0 {
                    return Err(ShiftError::Config("entropy refuter needs max_n >= 1".into()));
                }
                Ok(())
            }
            PropertyRefuter::PeriodsAtLeast { reference } => {
                if !integers {
                    return Err(ShiftError::Unsupported("periods refuter needs the integers".into()));
                }
                if reference.is_empty() {
                    return Err(ShiftError::Config("empty periodic-point reference".into()));
                }
                if reference.windows(2).any(|w| w[0] > w[1]) {
                    return Err(ShiftError::Config("periodic-point reference must be nondecreasing".into()));
                }
                let full = full_shift_per(presentation.alphabet().len(), reference.len());
                if let Some(i) = (0..reference.len()).find(|&i| reference[i] > full[i]) {
                    return Err(ShiftError::Config(format!(
                        "reference Per_{} = {} exceeds the full shift's {}",
                        i + 1,
                        reference[i],
                        full[i]
                    )));
                }
                Ok(())
            }
            PropertyRefuter::ContainsPatterns(ps) => {
                if ps.is_empty() {
                    return Err(ShiftError::Config("contains refuter needs a pattern".into()));
                }
                Ok(())
            }
            PropertyRefuter::Intersect(a, b) => {
                a.validate(presentation)?;
                b.validate(presentation)
            }
        }
    }

    pub(crate) fn needs_stream(&self) -> bool {
        match self {
            PropertyRefuter::EntropyAtLeast { .. } | PropertyRefuter::PeriodsAtLeast { .. } => true,
            PropertyRefuter::Intersect(a, b) => a.needs_stream() || b.needs_stream(),
            _ => false,
        }
    }
}

/// A uniform union of refutable properties with a designated member. The
/// designation cannot be computed in general, so the caller supplies it.
#[derive(Clone, Debug)]
pub struct Sigma2Property {
    pub members: Vec<PropertyRefuter>,
    pub selected: usize,
}

impl Sigma2Property {
    pub fn new(members: Vec<PropertyRefuter>, selected: usize) -> Result<Self> {
        if selected >= members.len() {
            return Err(ShiftError::Config(format!(
                "selected index {selected} out of {} members",
                members.len()
            )));
        }
        Ok(Sigma2Property { members, selected })
    }

    pub fn selected(&self) -> &PropertyRefuter {
        &self.members[self.selected]
    }
}
