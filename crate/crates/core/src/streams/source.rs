//! Forbidden-pattern presentations.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Result, ShiftError};
use crate::grid::{Alphabet, Group, Pattern};

/// One step of a forbidden-pattern generator. Generators that search for
/// their next item report `Idle` between items so that consumers can bound
/// the work spent waiting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tick {
    Item(Pattern),
    Idle,
}

pub type PatternStream = Box<dyn Iterator<Item = Tick> + Send>;

/// A deterministic, restartable enumeration of forbidden patterns.
pub trait PatternSource: Send + Sync + fmt::Debug {
    /// A fresh stream from the beginning. Two streams of the same source
    /// produce identical ticks.
    fn stream(&self) -> PatternStream;

    /// The whole list, when it is finite and known up front.
    fn finite(&self) -> Option<&[Pattern]> {
        None
    }
}

#[derive(Debug)]
struct FiniteSource(Arc<Vec<Pattern>>);

impl PatternSource for FiniteSource {
    fn stream(&self) -> PatternStream {
        let list = self.0.clone();
        Box::new((0..list.len()).map(move |i| Tick::Item(list[i].clone())))
    }

    fn finite(&self) -> Option<&[Pattern]> {
        Some(&self.0)
    }
}

/// `head` first, then everything `tail` produces.
#[derive(Debug)]
struct Prepend {
    head: Pattern,
    tail: Arc<dyn PatternSource>,
}

impl PatternSource for Prepend {
    fn stream(&self) -> PatternStream {
        Box::new(core::iter::once(Tick::Item(self.head.clone())).chain(self.tail.stream()))
    }
}

/// A shift over `group` and `alphabet` given by an enumeration of forbidden
/// patterns.
#[derive(Clone)]
pub struct Presentation {
    group: Group,
    alphabet: Alphabet,
    source: Arc<dyn PatternSource>,
    finite: Option<Arc<Vec<Pattern>>>,
    label: String,
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Presentation")
            .field("group", &self.group)
            .field("alphabet", &self.alphabet)
            .field("label", &self.label)
            .field("finite", &self.finite.as_ref().map(|l| l.len()))
            .finish()
    }
}

fn check_letters(alphabet: &Alphabet, p: &Pattern) -> Result<()> {
    match p.max_letter() {
        Some(a) if a as usize >= alphabet.len() => Err(ShiftError::UnknownLetter(format!("#{a}"))),
        _ => Ok(()),
    }
}

impl Presentation {
    /// A shift of finite type.
    pub fn finite(
        group: Group,
        alphabet: Alphabet,
        forbidden: Vec<Pattern>,
        label: impl Into<String>,
    ) -> Result<Self> {
        for p in &forbidden {
            check_letters(&alphabet, p)?;
        }
        let list = Arc::new(forbidden);
        Ok(Presentation {
            group,
            alphabet,
            source: Arc::new(FiniteSource(list.clone())),
            finite: Some(list),
            label: label.into(),
        })
    }

    /// A shift given by an arbitrary generator.
    pub fn from_source(
        group: Group,
        alphabet: Alphabet,
        source: Arc<dyn PatternSource>,
        label: impl Into<String>,
    ) -> Self {
        let finite = source.finite().map(|l| Arc::new(l.to_vec()));
        Presentation {
            group,
            alphabet,
            source,
            finite,
            label: label.into(),
        }
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn source(&self) -> &Arc<dyn PatternSource> {
        &self.source
    }

    /// The forbidden list of a shift of finite type.
    pub fn finite_list(&self) -> Option<&[Pattern]> {
        self.finite.as_deref().map(|v| v.as_slice())
    }

    pub fn is_finite_type(&self) -> bool {
        self.finite.is_some()
    }

    pub fn stream(&self) -> PatternStream {
        self.source.stream()
    }

    /// Presentation of the shift minus the orbit of the cylinder `[p]`:
    /// `p` comes first, then this presentation's own stream.
    pub fn forbid(&self, p: &Pattern) -> Result<Presentation> {
        check_letters(&self.alphabet, p)?;
        let label = format!("{} - [{}]", self.label, crate::grid::format_pattern(&self.group, &self.alphabet, p));
        if let Some(list) = &self.finite {
            let mut v = Vec::with_capacity(list.len() + 1);
            v.push(p.clone());
            v.extend(list.iter().cloned());
            return Presentation::finite(self.group, self.alphabet.clone(), v, label);
        }
        Ok(Presentation {
            group: self.group,
            alphabet: self.alphabet.clone(),
            source: Arc::new(Prepend {
                head: p.clone(),
                tail: self.source.clone(),
            }),
            finite: None,
            label,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}
