//! Deterministic enumeration of window-supported patterns.

use alloc::vec::Vec;

use super::group::{Element, Group};
use super::pattern::{Letter, Pattern};

/// Number of patterns on `cells` cells, if it fits in a `u64`.
pub fn pattern_count(alphabet_len: usize, cells: usize) -> Option<u64> {
    (alphabet_len as u64).checked_pow(cells as u32)
}

/// The `index`-th pattern on `cells` in lexicographic order, the first cell
/// being the most significant.
pub fn nth_pattern(cells: &[Element], alphabet_len: usize, mut index: u64) -> Pattern {
    let k = alphabet_len as u64;
    let mut letters = alloc::vec![0 as Letter; cells.len()];
    for slot in letters.iter_mut().rev() {
        *slot = (index % k) as Letter;
        index /= k;
    }
    Pattern::from_cells(cells.iter().cloned().zip(letters))
}

/// Every pattern whose support is a window (see [`Group::window`]), ordered by
/// level and then lexicographically. Each pattern is produced exactly once.
#[derive(Clone, Debug)]
pub struct PatternEnumerator {
    group: Group,
    alphabet_len: usize,
    level: usize,
    cells: Vec<Element>,
    index: u64,
    count: u64,
}

impl PatternEnumerator {
    pub fn new(group: Group, alphabet_len: usize) -> Self {
        let cells = group.window(0);
        let count = pattern_count(alphabet_len, cells.len()).unwrap_or(u64::MAX);
        PatternEnumerator {
            group,
            alphabet_len,
            level: 0,
            cells,
            index: 0,
            count,
        }
    }

    /// Level of the next pattern to be produced.
    pub fn level(&self) -> usize {
        if self.index == self.count {
            self.level + 1
        } else {
            self.level
        }
    }
}

impl Iterator for PatternEnumerator {
    type Item = Pattern;

    fn next(&mut self) -> Option<Pattern> {
        if self.index == self.count {
            self.level += 1;
            self.cells = self.group.window(self.level);
            self.count = pattern_count(self.alphabet_len, self.cells.len()).unwrap_or(u64::MAX);
            self.index = 0;
        }
        let p = nth_pattern(&self.cells, self.alphabet_len, self.index);
        self.index += 1;
        Some(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    #[test]
    fn integer_windows_are_words() {
        let mut e = PatternEnumerator::new(Group::Integers, 2);
        assert_eq!(e.next().unwrap().as_word().unwrap(), alloc::vec![0]);
        assert_eq!(e.next().unwrap().as_word().unwrap(), alloc::vec![1]);
        assert_eq!(e.next().unwrap().as_word().unwrap(), alloc::vec![0, 0]);
        let idx = PatternEnumerator::new(Group::Integers, 2)
            .position(|p| p.as_word() == Some(alloc::vec![1, 1, 1]))
            .unwrap();
        assert_eq!(idx, 2 + 4 + 7);
    }

    #[test]
    fn no_duplicates_in_prefix() {
        for g in [Group::Integers, Group::Lattice(2), Group::Free(2)] {
            let prefix: Vec<Pattern> = PatternEnumerator::new(g, 2).take(600).collect();
            let set: BTreeSet<&Pattern> = prefix.iter().collect();
            assert_eq!(set.len(), prefix.len());
        }
    }
}
