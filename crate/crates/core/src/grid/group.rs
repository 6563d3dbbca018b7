//! Finitely generated groups with geodesic normal forms.
//!
//! Generators are numbered `0..rank`; the symbol `2*i` stands for generator
//! `i` and `2*i + 1` for its inverse, so the generating set is symmetric by
//! construction. Elements are stored as canonical words, which for the
//! built-in families are also shortest words.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Result, ShiftError};

/// Generator symbol: `2*i` is generator `i`, `2*i + 1` its inverse.
pub type Symbol = u8;

const AXIS_NAMES: [&str; 4] = ["x", "y", "z", "w"];

/// The built-in group families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    /// The integers, generated by `+1` and `-1`.
    Integers,
    /// The free abelian group of the given rank.
    Lattice(u8),
    /// The free group of the given rank.
    Free(u8),
}

/// Canonical group element, stored as maximal runs of one symbol. Ordered
/// by length, then lexicographically by word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Element {
    runs: Vec<(Symbol, u32)>,
    len: usize,
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            let (a, b) = (&self.runs, &other.runs);
            let (mut i, mut j) = (0, 0);
            let (mut ra, mut rb) = (0u32, 0u32);
            while i < a.len() && j < b.len() {
                if a[i].0 != b[j].0 {
                    return a[i].0.cmp(&b[j].0);
                }
                let m = (a[i].1 - ra).min(b[j].1 - rb);
                ra += m;
                rb += m;
                if ra == a[i].1 {
                    i += 1;
                    ra = 0;
                }
                if rb == b[j].1 {
                    j += 1;
                    rb = 0;
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Element {
    pub fn identity() -> Self {
        Element::default()
    }

    pub fn is_identity(&self) -> bool {
        self.len == 0
    }

    /// Word length `|g|_S`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The canonical word.
    pub fn word(&self) -> Vec<Symbol> {
        self.symbols().collect()
    }

    fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.runs
            .iter()
            .flat_map(|&(s, c)| core::iter::repeat_n(s, c as usize))
    }

    fn last(&self) -> Option<Symbol> {
        self.runs.last().map(|r| r.0)
    }

    /// Append `s^count`, cancelling against a trailing inverse run (free
    /// reduction).
    fn push_reduced(&mut self, s: Symbol, mut count: u32) {
        while count > 0 {
            match self.runs.last_mut() {
                Some(r) if r.0 == s ^ 1 => {
                    let m = r.1.min(count);
                    r.1 -= m;
                    count -= m;
                    self.len -= m as usize;
                    if r.1 == 0 {
                        self.runs.pop();
                    }
                }
                Some(r) if r.0 == s => {
                    r.1 += count;
                    self.len += count as usize;
                    count = 0;
                }
                _ => {
                    self.runs.push((s, count));
                    self.len += count as usize;
                    count = 0;
                }
            }
        }
    }

    /// Element of the integers at position `p`.
    pub fn from_position(p: i64) -> Self {
        let sym = if p >= 0 { 0 } else { 1 };
        let n = p.unsigned_abs();
        if n == 0 {
            return Element::identity();
        }
        Element {
            runs: vec![(sym, n as u32)],
            len: n as usize,
        }
    }

    /// Position of an element of the integers.
    pub fn position(&self) -> i64 {
        match self.runs.first() {
            None => 0,
            Some((0, _)) => self.len as i64,
            Some(_) => -(self.len as i64),
        }
    }
}

impl Group {
    pub fn rank(&self) -> usize {
        match *self {
            Group::Integers => 1,
            Group::Lattice(d) | Group::Free(d) => d as usize,
        }
    }

    pub fn name(&self) -> String {
        match *self {
            Group::Integers => "Z".to_string(),
            Group::Lattice(d) => format!("Z^{d}"),
            Group::Free(k) => format!("F{k}"),
        }
    }

    fn is_abelian(&self) -> bool {
        !matches!(self, Group::Free(_))
    }

    /// All generator symbols, generators before inverses per index.
    pub fn symbols(&self) -> impl Iterator<Item = Symbol> {
        0..(2 * self.rank()) as Symbol
    }

    pub fn symbol_name(&self, s: Symbol) -> String {
        let i = (s / 2) as usize;
        let inv = s % 2 == 1;
        match *self {
            Group::Integers => if inv { "-1" } else { "+1" }.to_string(),
            Group::Lattice(d) => {
                let base = if d as usize <= AXIS_NAMES.len() {
                    AXIS_NAMES[i].to_string()
                } else {
                    format!("e{}", i + 1)
                };
                if inv {
                    format!("{base}^-1")
                } else {
                    base
                }
            }
            Group::Free(_) => {
                let base = ((b'a' + i as u8) as char).to_string();
                if inv {
                    format!("{base}^-1")
                } else {
                    base
                }
            }
        }
    }

    pub fn parse_symbol(&self, text: &str) -> Result<Symbol> {
        let t = text.trim();
        let normalized = t.replace('\u{2212}', "-").replace('\u{207b}', "^-").replace('\u{b9}', "1");
        self.symbols()
            .find(|&s| self.symbol_name(s) == normalized)
            .ok_or_else(|| ShiftError::UnknownSymbol(t.to_string()))
    }

    /// Parse a whitespace separated word of generator symbols and normalize it.
    /// The word `e` (or an empty string) denotes the identity.
    pub fn parse_word(&self, text: &str) -> Result<Element> {
        let t = text.trim();
        if t.is_empty() || t == "e" {
            return Ok(Element::identity());
        }
        let syms = t
            .split_whitespace()
            .map(|s| self.parse_symbol(s))
            .collect::<Result<Vec<_>>>()?;
        self.normalize(&syms)
    }

    pub fn format_element(&self, g: &Element) -> String {
        if g.is_identity() {
            return "e".to_string();
        }
        let parts: Vec<String> = g.symbols().map(|s| self.symbol_name(s)).collect();
        parts.join(" ")
    }

    /// Canonical representative of the evaluation of `word`.
    pub fn normalize(&self, word: &[Symbol]) -> Result<Element> {
        let limit = (2 * self.rank()) as Symbol;
        if let Some(&bad) = word.iter().find(|&&s| s >= limit) {
            return Err(ShiftError::UnknownSymbol(format!("#{bad}")));
        }
        Ok(self.normalize_unchecked(word))
    }

    fn normalize_unchecked(&self, word: &[Symbol]) -> Element {
        if self.is_abelian() {
            let mut v = vec![0i64; self.rank()];
            for &s in word {
                v[(s / 2) as usize] += if s % 2 == 0 { 1 } else { -1 };
            }
            encode_vector(&v)
        } else {
            let mut out = Element::identity();
            for &s in word {
                out.push_reduced(s, 1);
            }
            out
        }
    }

    /// Coordinates of an element of an abelian family.
    pub fn vector(&self, g: &Element) -> Vec<i64> {
        let mut v = vec![0i64; self.rank()];
        for &(s, c) in &g.runs {
            v[(s / 2) as usize] += if s % 2 == 0 { c as i64 } else { -(c as i64) };
        }
        v
    }

    pub fn from_vector(&self, v: &[i64]) -> Element {
        encode_vector(v)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        if a.is_identity() {
            return b.clone();
        }
        if b.is_identity() {
            return a.clone();
        }
        match self {
            Group::Integers => Element::from_position(a.position() + b.position()),
            Group::Lattice(_) => {
                let mut v = self.vector(a);
                for (x, y) in v.iter_mut().zip(self.vector(b)) {
                    *x += y;
                }
                encode_vector(&v)
            }
            Group::Free(_) => {
                let mut out = a.clone();
                for &(s, c) in &b.runs {
                    out.push_reduced(s, c);
                }
                out
            }
        }
    }

    pub fn inverse(&self, g: &Element) -> Element {
        match self {
            Group::Integers => Element::from_position(-g.position()),
            Group::Lattice(_) => {
                let v: Vec<i64> = self.vector(g).into_iter().map(|x| -x).collect();
                encode_vector(&v)
            }
            Group::Free(_) => Element {
                runs: g.runs.iter().rev().map(|&(s, c)| (s ^ 1, c)).collect(),
                len: g.len,
            },
        }
    }

    pub fn generator(&self, s: Symbol) -> Element {
        self.normalize_unchecked(&[s])
    }

    /// All elements with `|g|_S <= n`, ordered by length then word.
    pub fn ball(&self, n: usize) -> Vec<Element> {
        let mut out: BTreeSet<Element> = BTreeSet::new();
        match self {
            Group::Integers | Group::Lattice(_) => {
                let d = self.rank();
                let mut v = vec![0i64; d];
                lattice_ball(&mut v, 0, n as i64, &mut out);
            }
            Group::Free(_) => {
                let mut frontier = vec![Element::identity()];
                out.insert(Element::identity());
                for _ in 0..n {
                    let mut next = Vec::new();
                    for g in &frontier {
                        for s in self.symbols() {
                            if g.last() == Some(s ^ 1) {
                                continue;
                            }
                            let mut w = g.clone();
                            w.push_reduced(s, 1);
                            next.push(w);
                        }
                    }
                    out.extend(next.iter().cloned());
                    frontier = next;
                }
            }
        }
        out.into_iter().collect()
    }

    /// Enumeration window of level `m`: `{0..=m}` for the integers (so that
    /// words and patterns coincide), the ball of radius `m` otherwise.
    pub fn window(&self, m: usize) -> Vec<Element> {
        match self {
            Group::Integers => (0..=m as i64).map(Element::from_position).collect(),
            _ => self.ball(m),
        }
    }
}

fn lattice_ball(v: &mut [i64], axis: usize, left: i64, out: &mut BTreeSet<Element>) {
    if axis == v.len() {
        out.insert(encode_vector(v));
        return;
    }
    for x in -left..=left {
        v[axis] = x;
        lattice_ball(v, axis + 1, left - x.abs(), out);
    }
    v[axis] = 0;
}

fn encode_vector(v: &[i64]) -> Element {
    let mut g = Element::identity();
    for (i, &x) in v.iter().enumerate() {
        let s = if x >= 0 { 2 * i as Symbol } else { 2 * i as Symbol + 1 };
        if x != 0 {
            g.push_reduced(s, x.unsigned_abs() as u32);
        }
    }
    g
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(g: &Group, s: &str) -> Element {
        g.parse_word(s).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let z = Group::Integers;
        assert_eq!(z.format_element(&word(&z, "+1 -1 +1")), "+1");
        let f2 = Group::Free(2);
        assert_eq!(f2.format_element(&word(&f2, "a b b^-1")), "a");
        let z2 = Group::Lattice(2);
        assert_eq!(z2.format_element(&word(&z2, "x y x^-1")), "y");
    }

    #[test]
    fn unknown_symbol_is_rejected() {
        assert!(matches!(
            Group::Free(2).parse_word("a c"),
            Err(ShiftError::UnknownSymbol(_))
        ));
        assert!(Group::Integers.normalize(&[7]).is_err());
    }

    #[test]
    fn ball_sizes() {
        assert_eq!(Group::Integers.ball(2).len(), 5);
        assert_eq!(Group::Lattice(2).ball(1).len(), 5);
        // 1 + 4 + 4*3 reduced words.
        assert_eq!(Group::Free(2).ball(2).len(), 17);
    }

    #[test]
    fn ball_order_is_length_then_word() {
        let b = Group::Integers.ball(2);
        let pos: Vec<i64> = b.iter().map(Element::position).collect();
        assert_eq!(pos, vec![0, 1, -1, 2, -2]);
    }

    #[test]
    fn lattice_ball_matches_l1_count() {
        for n in 0..6usize {
            let brute = (-(n as i64)..=n as i64)
                .flat_map(|x| (-(n as i64)..=n as i64).map(move |y| (x, y)))
                .filter(|(x, y)| x.abs() + y.abs() <= n as i64)
                .count();
            assert_eq!(Group::Lattice(2).ball(n).len(), brute);
        }
    }

    #[test]
    fn inverse_and_identity() {
        for g in [Group::Integers, Group::Lattice(2), Group::Free(2)] {
            for e in g.ball(3) {
                assert!(g.mul(&e, &g.inverse(&e)).is_identity());
                assert!(g.ball(3).contains(&g.inverse(&e)));
            }
        }
    }

    #[test]
    fn symbol_names_round_trip() {
        for g in [Group::Integers, Group::Lattice(3), Group::Free(3)] {
            for s in g.symbols() {
                assert_eq!(g.parse_symbol(&g.symbol_name(s)).unwrap(), s);
            }
        }
        assert_eq!(Group::Lattice(2).parse_symbol("x⁻¹").unwrap(), 1);
    }
}
