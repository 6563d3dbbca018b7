//! From the co-language of `X × Y` to the co-language of a factor.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::grid::{Letter, Pattern};
use crate::streams::{Certificate, Enumeration, Meter};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Emits a pattern over one factor's alphabet once every pairing with a
/// pattern of the other factor on the same support has been emitted by the
/// inner enumeration. Product letters are `a * |B| + b`.
pub struct ProductCoLanguage<E> {
    inner: E,
    side: Side,
    left: usize,
    right: usize,
    read: usize,
    seen: BTreeMap<Pattern, BTreeSet<Pattern>>,
    emitted: Vec<Pattern>,
}

pub fn product_colanguage<E>(inner: E, side: Side, left: usize, right: usize) -> ProductCoLanguage<E>
where
    E: Enumeration<Item = Certificate>,
{
    ProductCoLanguage {
        inner,
        side,
        left,
        right,
        read: 0,
        seen: BTreeMap::new(),
        emitted: Vec::new(),
    }
}

impl<E> ProductCoLanguage<E> {
    pub fn inner(&self) -> &E {
        &self.inner
    }

    fn split(&self, p: &Pattern) -> (Pattern, Pattern) {
        let b = self.right as Letter;
        let mine = |c: Letter| match self.side {
            Side::Left => c / b,
            Side::Right => c % b,
        };
        let other = |c: Letter| match self.side {
            Side::Left => c % b,
            Side::Right => c / b,
        };
        (
            Pattern::from_cells(p.cells().map(|(g, c)| (g.clone(), mine(c)))),
            Pattern::from_cells(p.cells().map(|(g, c)| (g.clone(), other(c)))),
        )
    }

    fn pairings(&self, cells: usize) -> u64 {
        let k = match self.side {
            Side::Left => self.right,
            Side::Right => self.left,
        };
        (k as u64).saturating_pow(cells as u32)
    }
}

impl<E: Enumeration<Item = Certificate>> Enumeration for ProductCoLanguage<E> {
    type Item = Pattern;

    fn advance(&mut self, meter: &mut Meter) {
        self.inner.advance(meter);
        while self.read < self.inner.emitted().len() {
            let (mine, other) = self.split(&self.inner.emitted()[self.read].pattern);
            self.read += 1;
            let need = self.pairings(mine.len());
            let set = self.seen.entry(mine.clone()).or_default();
            if set.len() as u64 >= need {
                continue;
            }
            set.insert(other);
            if set.len() as u64 == need {
                self.emitted.push(mine);
            }
        }
    }

    fn emitted(&self) -> &[Pattern] {
        &self.emitted
    }

    fn spent(&self) -> u64 {
        self.inner.spent()
    }
}
