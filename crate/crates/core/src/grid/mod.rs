//! Groups, metric balls, and patterns.

mod enumerate;
mod group;
mod pattern;

pub use enumerate::{nth_pattern, pattern_count, PatternEnumerator};
pub use group::{Element, Group, Symbol};
pub use pattern::{
    extensions, format_pattern, occurs_in, parse_pattern, placements, translate, Alphabet, Letter,
    Pattern,
};
