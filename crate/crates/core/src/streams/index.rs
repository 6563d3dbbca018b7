//! Growing index of forbidden patterns, grouped by support shape.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::meter::Meter;
use super::source::{PatternStream, Presentation, Tick};
use crate::grid::{Element, Group, Letter, Pattern};

/// A support up to translation: sorted, and containing the identity.
pub type Shape = Vec<Element>;

/// Canonical translate of a non-empty support, and the element `s` with
/// `support = s . shape`.
///
/// On the integers the shape starts at position 0; elsewhere it is the
/// smallest translate `s^-1 . support` over `s` in the support.
pub fn canonical_shape(group: &Group, support: &[Element]) -> (Element, Shape) {
    debug_assert!(!support.is_empty());
    if *group == Group::Integers {
        let min = support.iter().map(Element::position).min().unwrap_or(0);
        let mut pos: Vec<i64> = support.iter().map(|g| g.position() - min).collect();
        pos.sort_unstable();
        return (
            Element::from_position(min),
            pos.into_iter().map(Element::from_position).collect(),
        );
    }
    let mut best: Option<(Element, Shape)> = None;
    for s in support {
        let inv = group.inverse(s);
        let mut t: Shape = support.iter().map(|g| group.mul(&inv, g)).collect();
        t.sort();
        if best.as_ref().is_none_or(|(_, b)| t < *b) {
            best = Some((s.clone(), t));
        }
    }
    best.expect("non-empty support")
}

/// Forbidden patterns pulled so far from a presentation.
pub struct ForbiddenIndex {
    group: Group,
    stream: PatternStream,
    exhausted: bool,
    ticks: u64,
    count: usize,
    shapes: Vec<Shape>,
    shape_ids: BTreeMap<Shape, usize>,
    tables: Vec<BTreeMap<Vec<Letter>, usize>>,
    empty_at: Option<usize>,
    /// Pulled but not yet paid for.
    pending: Option<(Pattern, u64)>,
}

impl ForbiddenIndex {
    pub fn new(presentation: &Presentation) -> Self {
        ForbiddenIndex {
            group: presentation.group(),
            stream: presentation.stream(),
            exhausted: false,
            ticks: 0,
            count: 0,
            shapes: Vec::new(),
            shape_ids: BTreeMap::new(),
            tables: Vec::new(),
            empty_at: None,
            pending: None,
        }
    }

    /// An index fed by hand through [`ForbiddenIndex::push`].
    pub fn manual(group: Group) -> Self {
        ForbiddenIndex {
            group,
            stream: alloc::boxed::Box::new(core::iter::empty()),
            exhausted: true,
            ticks: 0,
            count: 0,
            shapes: Vec::new(),
            shape_ids: BTreeMap::new(),
            tables: Vec::new(),
            empty_at: None,
            pending: None,
        }
    }

    /// Append a pattern after everything pulled so far.
    pub fn push(&mut self, p: Pattern) {
        self.add(p);
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    /// Number of patterns pulled.
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Whether the stream has ended.
    pub fn exhausted(&self) -> bool {
        self.exhausted
    }

    pub fn ticks(&self) -> u64 {
        self.ticks
    }

    /// Pull until `target` patterns are known, the stream ends, or `max_ticks`
    /// ticks have been consumed in total. The resulting state depends only on
    /// the largest arguments ever passed.
    pub fn pull_until(&mut self, target: usize, max_ticks: u64) {
        if let Some((p, _)) = self.pending.take() {
            self.add(p);
        }
        while self.count < target && !self.exhausted && self.ticks < max_ticks {
            self.ticks += 1;
            match self.stream.next() {
                Some(Tick::Item(p)) => self.add(p),
                Some(Tick::Idle) => {}
                None => self.exhausted = true,
            }
        }
    }

    /// [`ForbiddenIndex::pull_until`] under a meter: every generator tick
    /// costs one unit and every pulled pattern one more per cell. Returns
    /// false when the meter runs dry first; calling again resumes.
    pub fn pull_metered(&mut self, target: usize, max_ticks: u64, meter: &mut Meter) -> bool {
        loop {
            if let Some((p, mut owed)) = self.pending.take() {
                while owed > 0 {
                    if !meter.charge() {
                        self.pending = Some((p, owed));
                        return false;
                    }
                    owed -= 1;
                }
                self.add(p);
            }
            if self.count >= target || self.exhausted || self.ticks >= max_ticks {
                return true;
            }
            if !meter.charge() {
                return false;
            }
            self.ticks += 1;
            match self.stream.next() {
                Some(Tick::Item(p)) => {
                    let owed = p.len() as u64;
                    self.pending = Some((p, owed));
                }
                Some(Tick::Idle) => {}
                None => self.exhausted = true,
            }
        }
    }

    fn add(&mut self, p: Pattern) {
        let index = self.count;
        if p.is_empty() {
            self.empty_at.get_or_insert(index);
        } else {
            let support: Vec<Element> = p.support().cloned().collect();
            let (anchor, shape) = canonical_shape(&self.group, &support);
            let key: Vec<Letter> = shape
                .iter()
                .map(|y| p.get(&self.group.mul(&anchor, y)).expect("cell in support"))
                .collect();
            let id = match self.shape_ids.get(&shape) {
                Some(&id) => id,
                None => {
                    let id = self.shapes.len();
                    self.shape_ids.insert(shape.clone(), id);
                    self.shapes.push(shape);
                    self.tables.push(BTreeMap::new());
                    id
                }
            };
            self.tables[id].entry(key).or_insert(index);
        }
        self.count += 1;
    }

    pub fn shapes(&self) -> &[Shape] {
        &self.shapes
    }

    /// Whether the letters `key` (in shape order) match one of the first
    /// `prefix` patterns of shape `shape`.
    pub fn hit(&self, shape: usize, key: &[Letter], prefix: usize) -> bool {
        matches!(self.tables[shape].get(key), Some(&i) if i < prefix)
    }

    /// Whether the empty pattern is among the first `prefix` patterns.
    pub fn empty_within(&self, prefix: usize) -> bool {
        matches!(self.empty_at, Some(i) if i < prefix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Alphabet;

    #[test]
    fn integer_shapes_start_at_zero() {
        let z = Group::Integers;
        let sup: Vec<Element> = [3, 5, 4].iter().map(|&p| Element::from_position(p)).collect();
        let (anchor, shape) = canonical_shape(&z, &sup);
        assert_eq!(anchor.position(), 3);
        let pos: Vec<i64> = shape.iter().map(Element::position).collect();
        assert_eq!(pos, alloc::vec![0, 1, 2]);
    }

    #[test]
    fn translates_share_a_shape() {
        let g = Group::Free(2);
        let a = g.parse_word("a").unwrap();
        let sup = alloc::vec![Element::identity(), g.parse_word("b").unwrap()];
        let moved: Vec<Element> = sup.iter().map(|x| g.mul(&a, x)).collect();
        assert_eq!(canonical_shape(&g, &sup).1, canonical_shape(&g, &moved).1);
    }

    #[test]
    fn first_index_wins() {
        let p = Presentation::finite(
            Group::Integers,
            Alphabet::binary(),
            alloc::vec![
                Pattern::from_word(&[1, 1]),
                Pattern::from_word_at(7, &[1, 1]),
                Pattern::from_word(&[0, 0]),
            ],
            "t",
        )
        .unwrap();
        let mut idx = ForbiddenIndex::new(&p);
        idx.pull_until(10, 100);
        assert_eq!(idx.len(), 3);
        assert!(idx.exhausted());
        assert_eq!(idx.shapes().len(), 1);
        assert!(idx.hit(0, &[1, 1], 1));
        assert!(!idx.hit(0, &[0, 0], 2));
        assert!(idx.hit(0, &[0, 0], 3));
    }
}
