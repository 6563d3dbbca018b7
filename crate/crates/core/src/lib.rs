//! Effectively closed subshifts over finitely generated groups.
//!
//! A subshift is presented by an enumeration of forbidden patterns. From such a
//! presentation this crate derives an enumeration of the co-language (patterns
//! that appear in no configuration), and, for shifts that are minimal for a
//! refutable property, an enumeration of the language itself.
//!
//! Layout:
//!
//! - [`grid`]: groups with decidable word problem, balls, patterns.
//! - [`streams`]: budgeted enumerations, the co-language prober, directed reals.
//! - [`properties`]: refuters for properties closed in the upper-Vietoris sense.
//! - [`engine`]: the language decision procedure and the product/union reductions.
//! - [`zoo`]: concrete shifts paired with exact membership oracles.
//! - [`analytics`]: complexity, entropy bounds, periodic points, slope recovery.
//!
//! Everything is deterministic. Work is measured in budget units (one unit is
//! one containment test), and every positive answer carries a certificate that
//! can be replayed without a budget.
#![no_std]

extern crate alloc;

pub mod analytics;
pub mod engine;
pub mod error;
pub mod grid;
pub mod properties;
pub mod streams;
pub mod zoo;

pub use error::{Result, ShiftError};
pub use grid::{Alphabet, Element, Group, Letter, Pattern};
pub use streams::{ApproxReal, Presentation, Rational, Verdict};
