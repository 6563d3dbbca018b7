//! Budgeted enumerations, forbidden-pattern presentations, the co-language
//! prober, and directed rational approximations of reals.

mod colanguage;
mod index;
mod meter;
mod plan;
mod real;
mod search;
mod source;
mod verdict;

pub use colanguage::{
    emptiness_certificate, verify_certificate, CoLanguage, Prober, Prover, ScheduleConfig,
};
pub use index::{canonical_shape, ForbiddenIndex, Shape};
pub use meter::{Enumeration, Meter};
pub use plan::DomainPlan;
pub use real::{
    compare_log2, compare_log_ratio, format_rational, log_ratio_ceil, log_ratio_floor,
    parse_rational, rational, ApproxReal, Direction, Rational,
};
pub use search::{Search, SearchOutcome};
pub use source::{PatternSource, PatternStream, Presentation, Tick};
pub use verdict::{Certificate, Outcome, Verdict};
