//! Products and unions of zoo shifts.

use alloc::boxed::Box;
use alloc::collections::VecDeque;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{Metadata, RejectedWords, WordOracle, ZooShift};
use crate::error::{Result, ShiftError};
use crate::grid::{Element, Group, Letter, Pattern};
use crate::streams::{PatternSource, PatternStream, Presentation, Tick};

#[derive(Debug)]
struct ProductOracle {
    x: Arc<dyn WordOracle>,
    y: Arc<dyn WordOracle>,
    right: usize,
}

impl WordOracle for ProductOracle {
    fn accepts_word(&self, w: &[Letter]) -> Result<bool> {
        let left: Vec<Letter> = w.iter().map(|&a| (a as usize / self.right) as Letter).collect();
        let right: Vec<Letter> = w.iter().map(|&a| (a as usize % self.right) as Letter).collect();
        Ok(self.x.accepts_word(&left)? && self.y.accepts_word(&right)?)
    }
}

/// Both forbidden streams lifted to pairs, alternating tick by tick.
#[derive(Debug)]
struct LiftedSource {
    x: Presentation,
    y: Presentation,
}

/// All pairings of `f` on one side with every filling of its support on
/// the other, lexicographically in the other side's letters.
fn lift(f: &Pattern, other: usize, right: usize, f_is_left: bool) -> Vec<Pattern> {
    let cells: Vec<(Element, Letter)> = f.cells().map(|(g, a)| (g.clone(), a)).collect();
    let total = (other as u64).pow(cells.len() as u32);
    (0..total)
        .map(|mut idx| {
            let mut digits = alloc::vec![0usize; cells.len()];
            for d in digits.iter_mut().rev() {
                *d = (idx % other as u64) as usize;
                idx /= other as u64;
            }
            Pattern::from_cells(cells.iter().zip(&digits).map(|((g, a), &q)| {
                let pair = if f_is_left { *a as usize * right + q } else { q * right + *a as usize };
                (g.clone(), pair as Letter)
            }))
        })
        .collect()
}

struct LiftedStream {
    x: Option<PatternStream>,
    y: Option<PatternStream>,
    left: usize,
    right: usize,
    turn_left: bool,
    pending: VecDeque<Pattern>,
}

impl Iterator for LiftedStream {
    type Item = Tick;

    fn next(&mut self) -> Option<Tick> {
        if let Some(p) = self.pending.pop_front() {
            return Some(Tick::Item(p));
        }
        for _ in 0..2 {
            let use_left = self.turn_left;
            self.turn_left = !self.turn_left;
            let slot = if use_left { &mut self.x } else { &mut self.y };
            let Some(stream) = slot.as_mut() else {
                continue;
            };
            match stream.next() {
                None => *slot = None,
                Some(Tick::Idle) => return Some(Tick::Idle),
                Some(Tick::Item(f)) => {
                    let other = if use_left { self.right } else { self.left };
                    self.pending.extend(lift(&f, other, self.right, use_left));
                    return Some(match self.pending.pop_front() {
                        Some(p) => Tick::Item(p),
                        None => Tick::Idle,
                    });
                }
            }
        }
        None
    }
}

impl PatternSource for LiftedSource {
    fn stream(&self) -> PatternStream {
        Box::new(LiftedStream {
            x: Some(self.x.stream()),
            y: Some(self.y.stream()),
            left: self.x.alphabet().len(),
            right: self.y.alphabet().len(),
            turn_left: true,
            pending: VecDeque::new(),
        })
    }
}

/// `X × Y` over the product alphabet; the pair `(a, b)` is letter
/// `a * |B| + b`.
pub fn product_shift(x: &ZooShift, y: &ZooShift) -> Result<ZooShift> {
    if x.group() != y.group() {
        return Err(ShiftError::Mismatch);
    }
    let alphabet = x.alphabet().product(y.alphabet())?;
    let label = format!("product:[{}],[{}]", x.label, y.label);
    let right = y.alphabet().len();
    let source = Arc::new(LiftedSource {
        x: x.presentation.clone(),
        y: y.presentation.clone(),
    });
    let presentation = Presentation::from_source(x.group(), alphabet, source, label.clone());
    let oracle = Arc::new(ProductOracle {
        x: x.oracle().clone(),
        y: y.oracle().clone(),
        right,
    });
    let mut meta = Metadata::tagged(&["product"]);
    if let (Some(a), Some(b)) = (&x.metadata.per_prefix, &y.metadata.per_prefix) {
        // A point of X × Y has orbit size lcm of the factors' sizes, so only
        // Per_1 is a plain product.
        if let (Some(&a1), Some(&b1)) = (a.first(), b.first()) {
            meta.per_prefix = Some(alloc::vec![a1 * b1]);
        }
    }
    Ok(ZooShift::new(label, presentation, oracle, meta))
}

#[derive(Debug)]
struct UnionOracle {
    x: Arc<dyn WordOracle>,
    y: Arc<dyn WordOracle>,
}

impl WordOracle for UnionOracle {
    fn accepts_word(&self, w: &[Letter]) -> Result<bool> {
        Ok(self.x.accepts_word(w)? || self.y.accepts_word(w)?)
    }
}

/// `X ∪ Y` for shifts over the same alphabet; the presentation lists the
/// words both reject.
pub fn union_shift(x: &ZooShift, y: &ZooShift) -> Result<ZooShift> {
    if x.group() != y.group() || x.alphabet() != y.alphabet() {
        return Err(ShiftError::Mismatch);
    }
    let label = format!("union:[{}],[{}]", x.label, y.label);
    let oracle: Arc<dyn WordOracle> = Arc::new(UnionOracle {
        x: x.oracle().clone(),
        y: y.oracle().clone(),
    });
    let source = Arc::new(RejectedWords::new(oracle.clone(), x.alphabet().len()));
    let presentation = Presentation::from_source(Group::Integers, x.alphabet().clone(), source, label.clone());
    Ok(ZooShift::new(label, presentation, oracle, Metadata::tagged(&["union"])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Alphabet;
    use crate::zoo::{full_shift, golden_mean, periodic_orbit};

    #[test]
    fn product_examples() {
        let ab = Alphabet::from_chars("ab").unwrap();
        let p = product_shift(&golden_mean(), &full_shift(ab)).unwrap();
        let w = |s: &str| p.alphabet().parse_word(s).unwrap();
        assert!(p.accepts_word(&w("0a 1b")).unwrap());
        assert!(!p.accepts_word(&w("1a 1a")).unwrap());
        let count = (0..16u8)
            .filter(|i| p.accepts_word(&[i / 4, i % 4]).unwrap())
            .count();
        assert_eq!(count, 12);
    }

    #[test]
    fn lifted_stream_pairs_every_completion() {
        let ab = Alphabet::from_chars("ab").unwrap();
        let p = product_shift(&golden_mean(), &full_shift(ab)).unwrap();
        let items: Vec<Pattern> = p
            .presentation
            .stream()
            .filter_map(|t| match t {
                Tick::Item(p) => Some(p),
                Tick::Idle => None,
            })
            .collect();
        assert_eq!(items.len(), 4);
        for q in &items {
            assert!(!p.accepts(q).unwrap());
        }
    }

    #[test]
    fn union_accepts_either() {
        let one = periodic_orbit(Alphabet::binary(), &[1]).unwrap();
        let u = union_shift(&golden_mean(), &one).unwrap();
        assert!(u.accepts_word(&[1, 1, 1]).unwrap());
        assert!(u.accepts_word(&[0, 0]).unwrap());
        assert!(!u.accepts_word(&[1, 1, 0]).unwrap());
    }
}
