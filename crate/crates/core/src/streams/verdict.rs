//! Three-valued outcomes with replayable evidence.

use crate::grid::Pattern;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Yes,
    No,
    Exhausted,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::Yes => "yes",
            Outcome::No => "no",
            Outcome::Exhausted => "exhausted",
        }
    }

    pub fn is_resolved(&self) -> bool {
        !matches!(self, Outcome::Exhausted)
    }
}

/// Why a pattern is in the co-language: every extension of `pattern` to
/// `support(pattern) ∪ ball(radius)` contains one of the first `prefix_len`
/// forbidden patterns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Certificate {
    pub pattern: Pattern,
    pub radius: usize,
    pub prefix_len: usize,
}

/// An outcome, its evidence (present exactly when resolved) and the units
/// spent reaching it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict<C = Certificate> {
    pub outcome: Outcome,
    pub certificate: Option<C>,
    pub budget_used: u64,
}

impl<C> Verdict<C> {
    pub fn exhausted(budget_used: u64) -> Self {
        Verdict {
            outcome: Outcome::Exhausted,
            certificate: None,
            budget_used,
        }
    }

    pub fn resolved(outcome: Outcome, certificate: C, budget_used: u64) -> Self {
        Verdict {
            outcome,
            certificate: Some(certificate),
            budget_used,
        }
    }
}
