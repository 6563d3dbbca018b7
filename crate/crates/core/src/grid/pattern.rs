//! Patterns, alphabets, and the translation/occurrence calculus.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::group::{Element, Group};
use crate::error::{Result, ShiftError};

/// Index of a letter in its [`Alphabet`].
pub type Letter = u8;

/// Finite alphabet given as an ordered list of symbol names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() || symbols.len() > 256 {
            return Err(ShiftError::Config(format!(
                "alphabet size {} outside 1..=256",
                symbols.len()
            )));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.chars().any(|c| c.is_whitespace() || c == ':' || c == ';') {
                return Err(ShiftError::Config(format!("invalid letter name `{s}`")));
            }
            if symbols[..i].contains(s) {
                return Err(ShiftError::Config(format!("duplicate letter `{s}`")));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// Alphabet whose letters are the characters of `chars`, in order.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Alphabet::new(chars.chars().map(|c| c.to_string()))
    }

    pub fn binary() -> Self {
        Alphabet::from_chars("01").expect("valid")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn name(&self, a: Letter) -> &str {
        &self.symbols[a as usize]
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.symbols
            .iter()
            .position(|s| s == name)
            .map(|i| i as Letter)
            .ok_or_else(|| ShiftError::UnknownLetter(name.to_string()))
    }

    fn single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Product alphabet `A x B`; the pair `(a, b)` has index `a * |B| + b` and
    /// name `ab`.
    pub fn product(&self, other: &Alphabet) -> Result<Alphabet> {
        let mut names = Vec::with_capacity(self.len() * other.len());
        for a in &self.symbols {
            for b in &other.symbols {
                names.push(format!("{a}{b}"));
            }
        }
        Alphabet::new(names)
    }

    /// Parse a word: one character per letter when every letter is a single
    /// character, whitespace separated letters otherwise.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Letter>> {
        if self.single_char() {
            text.trim()
                .chars()
                .map(|c| self.letter(c.encode_utf8(&mut [0u8; 4])))
                .collect()
        } else {
            text.split_whitespace().map(|t| self.letter(t)).collect()
        }
    }

    pub fn format_word(&self, word: &[Letter]) -> String {
        let parts: Vec<&str> = word.iter().map(|&a| self.name(a)).collect();
        if self.single_char() {
            parts.concat()
        } else {
            parts.join(" ")
        }
    }
}

/// A finite mapping from group elements to letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    cells: BTreeMap<Element, Letter>,
}

impl Pattern {
    pub fn empty() -> Self {
        Pattern::default()
    }

    pub fn from_cells(cells: impl IntoIterator<Item = (Element, Letter)>) -> Self {
        Pattern {
            cells: cells.into_iter().collect(),
        }
    }

    /// Word pattern on the integers with support `{0, .., len-1}`.
    pub fn from_word(word: &[Letter]) -> Self {
        Self::from_word_at(0, word)
    }

    pub fn from_word_at(offset: i64, word: &[Letter]) -> Self {
        Pattern::from_cells(
            word.iter()
                .enumerate()
                .map(|(i, &a)| (Element::from_position(offset + i as i64), a)),
        )
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn get(&self, g: &Element) -> Option<Letter> {
        self.cells.get(g).copied()
    }

    pub fn cells(&self) -> impl Iterator<Item = (&Element, Letter)> + '_ {
        self.cells.iter().map(|(g, &a)| (g, a))
    }

    pub fn support(&self) -> impl Iterator<Item = &Element> + '_ {
        self.cells.keys()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.cells.values().copied()
    }

    pub fn max_letter(&self) -> Option<Letter> {
        self.cells.values().copied().max()
    }

    /// Integer positions and letters, sorted by position.
    pub fn positions(&self) -> Vec<(i64, Letter)> {
        let mut v: Vec<(i64, Letter)> = self.cells.iter().map(|(g, &a)| (g.position(), a)).collect();
        v.sort_unstable();
        v
    }

    /// For a pattern on the integers whose support is an interval: the
    /// leftmost position and the word it carries.
    pub fn as_interval(&self) -> Option<(i64, Vec<Letter>)> {
        let pos = self.positions();
        let first = pos.first()?.0;
        for (i, &(p, _)) in pos.iter().enumerate() {
            if p != first + i as i64 {
                return None;
            }
        }
        Some((first, pos.into_iter().map(|(_, a)| a).collect()))
    }

    /// The word carried by a pattern supported on `{0, .., n-1}`.
    pub fn as_word(&self) -> Option<Vec<Letter>> {
        match self.as_interval() {
            Some((0, w)) => Some(w),
            _ if self.is_empty() => Some(Vec::new()),
            _ => None,
        }
    }

    /// Smallest interval length containing the support (integers only).
    pub fn span(&self) -> usize {
        let pos = self.positions();
        match (pos.first(), pos.last()) {
            (Some(a), Some(b)) => (b.0 - a.0) as usize + 1,
            _ => 0,
        }
    }

    /// Restriction to the cells in `keep`.
    pub fn restrict(&self, keep: &[Element]) -> Pattern {
        Pattern::from_cells(keep.iter().filter_map(|g| self.get(g).map(|a| (g.clone(), a))))
    }

    pub fn insert(&mut self, g: Element, a: Letter) {
        self.cells.insert(g, a);
    }
}

/// `g . p`: the pattern whose value at `g*h` is `p(h)`.
pub fn translate(group: &Group, g: &Element, p: &Pattern) -> Pattern {
    if g.is_identity() {
        return p.clone();
    }
    Pattern::from_cells(p.cells().map(|(h, a)| (group.mul(g, h), a)))
}

/// Elements `g` with `g . support(p)` contained in `support(q)`.
pub fn placements(group: &Group, p: &Pattern, q: &Pattern) -> Vec<Element> {
    let Some(s0) = p.support().next() else {
        return alloc::vec![Element::identity()];
    };
    let s0_inv = group.inverse(s0);
    let mut out = Vec::new();
    for h in q.support() {
        let g = group.mul(h, &s0_inv);
        if p.support().all(|s| q.get(&group.mul(&g, s)).is_some()) {
            out.push(g);
        }
    }
    out
}

/// Whether some translate of `p` agrees with `q` on its support.
pub fn occurs_in(group: &Group, p: &Pattern, q: &Pattern) -> bool {
    if p.is_empty() {
        return true;
    }
    if p.len() > q.len() {
        return false;
    }
    placements(group, p, q)
        .iter()
        .any(|g| p.cells().all(|(s, a)| q.get(&group.mul(g, s)) == Some(a)))
}

/// Every pattern on `support(p) ∪ ball(n)` that agrees with `p`, in the
/// lexicographic order of the free cells (taken in element order).
///
/// Fails when the number of fillings exceeds `cap`.
pub fn extensions(
    group: &Group,
    alphabet_len: usize,
    p: &Pattern,
    n: usize,
    cap: u64,
) -> Result<Vec<Pattern>> {
    let free: Vec<Element> = group
        .ball(n)
        .into_iter()
        .filter(|g| p.get(g).is_none())
        .collect();
    let mut total: u64 = 1;
    for _ in 0..free.len() {
        total = total.saturating_mul(alphabet_len as u64);
        if total > cap {
            return Err(ShiftError::BudgetExceeded(format!(
                "{alphabet_len}^{} fillings exceed the extension cap {cap}",
                free.len()
            )));
        }
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut digits = alloc::vec![0usize; free.len()];
    loop {
        let mut q = p.clone();
        for (g, &d) in free.iter().zip(&digits) {
            q.insert(g.clone(), d as Letter);
        }
        out.push(q);
        // Odometer: last free cell varies fastest.
        let mut i = free.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < alphabet_len {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Canonical text of a pattern.
///
/// On the integers a pattern supported on `{0, .., n-1}` prints as its word;
/// every other pattern prints as `cell:letter` entries joined by `; `, where a
/// cell is an integer position on the integers and a generator word otherwise
/// (`e` for the identity).
pub fn format_pattern(group: &Group, alphabet: &Alphabet, p: &Pattern) -> String {
    if *group == Group::Integers {
        if let Some(w) = p.as_word() {
            if !w.is_empty() {
                return alphabet.format_word(&w);
            }
        }
        let parts: Vec<String> = p
            .positions()
            .into_iter()
            .map(|(pos, a)| format!("{pos}:{}", alphabet.name(a)))
            .collect();
        return if parts.is_empty() { "{}".to_string() } else { parts.join("; ") };
    }
    if p.is_empty() {
        return "{}".to_string();
    }
    let parts: Vec<String> = p
        .cells()
        .map(|(g, a)| format!("{}:{}", group.format_element(g), alphabet.name(a)))
        .collect();
    parts.join("; ")
}

/// Inverse of [`format_pattern`]; `{}` is the empty pattern.
pub fn parse_pattern(group: &Group, alphabet: &Alphabet, text: &str) -> Result<Pattern> {
    let t = text.trim();
    if t == "{}" {
        return Ok(Pattern::empty());
    }
    if !t.contains(':') {
        if *group != Group::Integers {
            return Err(ShiftError::Parse(format!(
                "`{t}`: word syntax is only available on the integers"
            )));
        }
        let w = alphabet.parse_word(t)?;
        if w.is_empty() {
            return Err(ShiftError::Parse("empty word".to_string()));
        }
        return Ok(Pattern::from_word(&w));
    }
    let mut p = Pattern::empty();
    for entry in t.split(';') {
        let entry = entry.trim();
        if entry.is_empty() {
            continue;
        }
        let (cell, letter) = entry
            .rsplit_once(':')
            .ok_or_else(|| ShiftError::Parse(format!("entry `{entry}` lacks `:`")))?;
        let g = if *group == Group::Integers {
            match cell.trim().parse::<i64>() {
                Ok(pos) => Element::from_position(pos),
                Err(_) => group.parse_word(cell)?,
            }
        } else {
            group.parse_word(cell)?
        };
        let a = alphabet.letter(letter.trim())?;
        if p.get(&g).is_some() {
            return Err(ShiftError::Parse(format!("cell `{}` given twice", cell.trim())));
        }
        p.insert(g, a);
    }
    Ok(p)
}
