//! Quantitative instruments on the integers: word counts, entropy bounds,
//! periodic points, slope and window recovery, and a shift-invariance check.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::engine::PatternOracle;
use crate::error::{Result, ShiftError};
use crate::grid::{nth_pattern, pattern_count, translate, Group, Letter, Pattern};
use crate::streams::{compare_log_ratio, log_ratio_ceil, log_ratio_floor, Rational};
use crate::zoo::WordOracle;

mod periods;
mod slope;

pub use periods::{per_vector_brute, per_vector_transfer, PerVector, TransferMatrix};
pub use slope::{recover_slope_max, recover_window, SlopeMax, WindowBounds, WindowRecovery};

/// Largest number of words a depth-first count may visit.
pub const WORD_VISIT_CAP: u64 = 1 << 28;

/// Visit every accepted word of length `n` (the language is factorial, so a
/// rejected prefix prunes its subtree).
pub(crate) fn for_each_word(
    oracle: &dyn WordOracle,
    alphabet: usize,
    n: usize,
    mut visit: impl FnMut(&[Letter]),
) -> Result<()> {
    let mut word: Vec<Letter> = Vec::with_capacity(n);
    let mut visited = 0u64;
    fn go(
        oracle: &dyn WordOracle,
        alphabet: usize,
        n: usize,
        word: &mut Vec<Letter>,
        visited: &mut u64,
        visit: &mut dyn FnMut(&[Letter]),
    ) -> Result<()> {
        if word.len() == n {
            visit(word);
            return Ok(());
        }
        for a in 0..alphabet {
            *visited += 1;
            if *visited > WORD_VISIT_CAP {
                return Err(ShiftError::BudgetExceeded("word enumeration cap reached".into()));
            }
            word.push(a as Letter);
            if oracle.accepts_word(word)? {
                go(oracle, alphabet, n, word, visited, visit)?;
            }
            word.pop();
        }
        Ok(())
    }
    if !oracle.accepts_word(&[])? {
        return Ok(());
    }
    go(oracle, alphabet, n, &mut word, &mut visited, &mut visit)
}

/// Number of accepted words of length `n`.
pub fn complexity_count(oracle: &dyn WordOracle, alphabet: usize, n: usize) -> Result<u64> {
    let mut count = 0u64;
    for_each_word(oracle, alphabet, n, |_| count += 1)?;
    Ok(count)
}

/// Default denominator of the rational bounds of an [`EntropyInterval`].
pub const ENTROPY_DENOMINATOR: u32 = 1024;

/// `[log2(N)/(n+k), log2(N)/n]` for the word count `N = N_n` of a strongly
/// irreducible shift with gluing gap `k`. The exact endpoints are kept as
/// `(N, n, k)`; `lower` and `upper` are rational bounds just outside them
/// (exact when `N` is a power of two).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntropyInterval {
    pub count: BigUint,
    pub n: u64,
    pub k: u64,
    pub lower: Rational,
    pub upper: Rational,
}

impl EntropyInterval {
    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    /// Whether `q` lies between the exact endpoints.
    pub fn contains(&self, q: &Rational) -> Result<bool> {
        Ok(compare_log_ratio(&self.count, self.n + self.k, q)? != Ordering::Greater
            && compare_log_ratio(&self.count, self.n, q)? != Ordering::Less)
    }
}

/// Entropy bounds from one word count, using `N_{m(n+k)} >= N_n^m` for the
/// lower end and `N_{mn} <= N_n^m` for the upper end.
pub fn entropy_interval_si(count: &BigUint, n: u64, k: u64) -> Result<EntropyInterval> {
    if count.is_zero() || n == 0 {
        return Err(ShiftError::Precondition("need N_n >= 1 and n >= 1".into()));
    }
    let (lower, upper) = match count.trailing_zeros() {
        Some(e) if count.bits() == e + 1 => (
            Rational::new(BigInt::from(e), BigInt::from(n + k)),
            Rational::new(BigInt::from(e), BigInt::from(n)),
        ),
        _ if count.is_one() => (Rational::zero(), Rational::zero()),
        _ => (
            log_ratio_floor(count, n + k, ENTROPY_DENOMINATOR)?,
            log_ratio_ceil(count, n, ENTROPY_DENOMINATOR)?,
        ),
    };
    Ok(EntropyInterval {
        count: count.clone(),
        n,
        k,
        lower,
        upper,
    })
}

/// `⌈2/α⌉`, a gluing gap for the window shift `X_[0,α]`.
pub fn gluing_constant_sturmian(alpha: &Rational) -> Result<u64> {
    if *alpha <= Rational::zero() || *alpha > Rational::one() {
        return Err(ShiftError::Precondition(format!("need 0 < alpha <= 1, got {alpha}")));
    }
    let q = (Rational::from_integer(BigInt::from(2)) / alpha).ceil();
    u64::try_from(q.to_integer()).map_err(|_| ShiftError::Unsupported("gluing constant overflow".into()))
}

/// Largest number of ball patterns the invariance check visits.
pub const INVARIANCE_CAP: u64 = 1 << 20;

/// Every pattern `p` on `ball(n)` and generator `g` with `p` accepted but
/// `g . p` rejected.
pub fn invariance_check(
    oracle: &dyn PatternOracle,
    group: &Group,
    alphabet: usize,
    n: usize,
) -> Result<Vec<(Pattern, crate::grid::Element)>> {
    let cells = group.ball(n);
    let count = pattern_count(alphabet, cells.len())
        .filter(|&c| c <= INVARIANCE_CAP)
        .ok_or_else(|| ShiftError::BudgetExceeded(format!("ball({n}) has too many patterns")))?;
    let gens: Vec<_> = group.symbols().map(|s| group.generator(s)).collect();
    let mut out = Vec::new();
    for i in 0..count {
        let p = nth_pattern(&cells, alphabet, i);
        if !oracle.accepts(&p)? {
            continue;
        }
        for g in &gens {
            if !oracle.accepts(&translate(group, g, &p))? {
                out.push((p.clone(), g.clone()));
            }
        }
    }
    Ok(out)
}
