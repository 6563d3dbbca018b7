//! Exact comparisons of base-2 logarithms and directed rational streams.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Result, ShiftError};

pub type Rational = num_rational::BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `p/q` text, always with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse `p/q`, `p`, or a finite decimal such as `0.25`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || ShiftError::Parse(format!("`{t}` is not a rational number"));
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.trim_start().starts_with('-');
        let int: BigInt = if int == "-" || int.is_empty() {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let magnitude = int.abs() * &scale + frac;
        let num = if negative { -magnitude } else { magnitude };
        return Ok(Rational::new(num, scale));
    }
    let p: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

fn ceil_log2(x: &BigUint) -> u64 {
    let bits = x.bits();
    if bits == 0 {
        return 0;
    }
    let floor = bits - 1;
    if x.trailing_zeros() == Some(floor) {
        floor
    } else {
        floor + 1
    }
}

fn checked_exponent(b: &BigInt) -> Result<u32> {
    b.to_u32()
        .ok_or_else(|| ShiftError::Unsupported(format!("denominator {b} too large for exact powering")))
}

/// Sign of `log2(count)/n - q`, decided by comparing `count^b` with `2^(a*n)`
/// for `q = a/b`.
pub fn compare_log_ratio(count: &BigUint, n: u64, q: &Rational) -> Result<Ordering> {
    if count.is_zero() {
        return Err(ShiftError::Precondition("count must be at least 1".into()));
    }
    if n == 0 {
        return Err(ShiftError::Precondition("length must be at least 1".into()));
    }
    let a = q.numer();
    if a.is_negative() {
        return Ok(Ordering::Greater);
    }
    let b = checked_exponent(q.denom())?;
    let power = count.pow(b);
    let target = a.magnitude() * BigUint::from(n);
    let target = target
        .to_u64()
        .ok_or_else(|| ShiftError::Unsupported("exponent overflow".into()))?;
    // power vs 2^target.
    let floor = power.bits() - 1;
    Ok(match floor.cmp(&target) {
        Ordering::Equal if power.trailing_zeros() == Some(floor) => Ordering::Equal,
        Ordering::Equal => Ordering::Greater,
        other => other,
    })
}

/// Sign of `log2(x) - q` for a positive rational `x`.
pub fn compare_log2(x: &Rational, q: &Rational) -> Result<Ordering> {
    if !x.is_positive() {
        return Err(ShiftError::Precondition("logarithm of a non-positive number".into()));
    }
    let b = checked_exponent(q.denom())?;
    let a = q.numer();
    let mut lhs = x.numer().magnitude().pow(b);
    let mut rhs = x.denom().magnitude().pow(b);
    let shift = a
        .magnitude()
        .to_u64()
        .ok_or_else(|| ShiftError::Unsupported("exponent overflow".into()))?;
    if a.is_negative() {
        lhs <<= shift;
    } else {
        rhs <<= shift;
    }
    Ok(lhs.cmp(&rhs))
}

/// Largest `a/den` with `a/den <= log2(count)/n`.
pub fn log_ratio_floor(count: &BigUint, n: u64, den: u32) -> Result<Rational> {
    if count.is_zero() || n == 0 {
        return Err(ShiftError::Precondition("count and length must be positive".into()));
    }
    let floor = count.pow(den).bits() - 1;
    Ok(Rational::new(BigInt::from(floor / n), BigInt::from(den)))
}

/// Smallest `a/den` with `log2(count)/n <= a/den`.
pub fn log_ratio_ceil(count: &BigUint, n: u64, den: u32) -> Result<Rational> {
    if count.is_zero() || n == 0 {
        return Err(ShiftError::Precondition("count and length must be positive".into()));
    }
    let ceil = ceil_log2(&count.pow(den));
    Ok(Rational::new(BigInt::from(ceil.div_ceil(n)), BigInt::from(den)))
}

/// Which side a directed stream approaches its limit from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Nondecreasing lower approximations.
    Left,
    /// Nonincreasing upper approximations.
    Right,
    /// Enclosing intervals whose width tends to zero.
    TwoSided,
}

#[derive(Clone, Debug)]
enum Source {
    Exact(Rational),
    GoldenRatioConjugate,
    LogGoldenMean,
    Sequence(Arc<Vec<Rational>>),
}

/// A real number given by a directed stream of rationals.
#[derive(Clone, Debug)]
pub struct ApproxReal {
    direction: Direction,
    source: Source,
}

/// Denominator of the rational lower bounds streamed by
/// [`ApproxReal::log_golden_mean`].
const LOG_GOLDEN_DEN: u32 = 1024;

impl ApproxReal {
    pub fn rational(r: Rational) -> Self {
        ApproxReal {
            direction: Direction::TwoSided,
            source: Source::Exact(r),
        }
    }

    /// `(sqrt 5 - 1)/2`, streamed as continued-fraction convergents.
    pub fn golden_ratio_conjugate() -> Self {
        ApproxReal {
            direction: Direction::TwoSided,
            source: Source::GoldenRatioConjugate,
        }
    }

    /// Left approximation of `log2((1 + sqrt 5)/2)`, the entropy of the
    /// golden-mean shift, from word counts and gluing constant 1.
    pub fn log_golden_mean() -> Self {
        ApproxReal {
            direction: Direction::Left,
            source: Source::LogGoldenMean,
        }
    }

    /// A finite stream; the last value repeats forever.
    pub fn from_sequence(direction: Direction, values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(ShiftError::Config("empty rational stream".into()));
        }
        let ok = match direction {
            Direction::Left => values.windows(2).all(|w| w[0] <= w[1]),
            Direction::Right => values.windows(2).all(|w| w[0] >= w[1]),
            Direction::TwoSided => {
                return Err(ShiftError::Config(
                    "two-sided streams are only available for built-in reals".into(),
                ))
            }
        };
        if !ok {
            return Err(ShiftError::Config("stream is not monotone in its direction".into()));
        }
        Ok(ApproxReal {
            direction,
            source: Source::Sequence(Arc::new(values)),
        })
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn exact(&self) -> Option<&Rational> {
        match &self.source {
            Source::Exact(r) => Some(r),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match &self.source {
            Source::Exact(r) => format_rational(r),
            Source::GoldenRatioConjugate => "golden-conjugate".into(),
            Source::LogGoldenMean => "log-golden".into(),
            Source::Sequence(v) => format!("stream[{}]", v.len()),
        }
    }

    /// The `k`-th element of the stream.
    pub fn approximant(&self, k: usize) -> Rational {
        match &self.source {
            Source::Exact(r) => r.clone(),
            Source::GoldenRatioConjugate => {
                let k = if k > 180 { 180 + k % 2 } else { k };
                let (a, b) = fibonacci_pair(k + 3);
                Rational::new(BigInt::from(a), BigInt::from(b))
            }
            Source::LogGoldenMean => {
                let mut best = Rational::zero();
                let (mut prev, mut cur) = (BigUint::one(), BigUint::from(2u32));
                for j in 0..=k {
                    // cur = number of golden-mean words of length j + 1.
                    let lb = log_ratio_floor(&cur, j as u64 + 2, LOG_GOLDEN_DEN).expect("positive");
                    if lb > best {
                        best = lb;
                    }
                    let next = &prev + &cur;
                    prev = core::mem::replace(&mut cur, next);
                }
                best
            }
            Source::Sequence(v) => v[k.min(v.len() - 1)].clone(),
        }
    }

    /// The `k`-th certified lower bound, when the stream provides them.
    pub fn lower(&self, k: usize) -> Option<Rational> {
        match (&self.source, self.direction) {
            (Source::GoldenRatioConjugate, _) => Some(self.approximant(2 * k)),
            (_, Direction::Left) | (Source::Exact(_), _) => Some(self.approximant(k)),
            _ => None,
        }
    }

    /// The `k`-th certified upper bound, when the stream provides them.
    pub fn upper(&self, k: usize) -> Option<Rational> {
        match (&self.source, self.direction) {
            (Source::GoldenRatioConjugate, _) => Some(self.approximant(2 * k + 1)),
            (_, Direction::Right) | (Source::Exact(_), _) => Some(self.approximant(k)),
            _ => None,
        }
    }
}

/// `(F_{m-1}, F_m)` with `F_1 = F_2 = 1`.
fn fibonacci_pair(m: usize) -> (u128, u128) {
    let (mut a, mut b) = (0u128, 1u128);
    for _ in 1..m {
        let c = a + b;
        a = b;
        b = c;
    }
    (a, b)
}
