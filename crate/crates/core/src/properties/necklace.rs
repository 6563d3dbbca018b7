//! Primitive necklaces (Lyndon words) and periodic-point counts.

use alloc::vec;
use alloc::vec::Vec;

use crate::grid::Letter;

/// Lyndon words of length `1..=max_len` over `k` letters, in lexicographic
/// order (Fredricksen-Kessler-Maiorana).
pub fn lyndon_words(k: usize, max_len: usize) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    if k == 0 || max_len == 0 {
        return out;
    }
    let mut w: Vec<usize> = vec![0];
    loop {
        out.push(w.iter().map(|&a| a as Letter).collect());
        let m = w.len();
        while w.len() < max_len {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last + 1 == k {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => return out,
        }
    }
}

/// Number of periodic points of the full `k`-shift with least period at most
/// `i`, for `i = 1..=max_len`.
pub fn full_shift_per(k: usize, max_len: usize) -> Vec<u64> {
    let mut by_len = vec![0u64; max_len + 1];
    for w in lyndon_words(k, max_len) {
        by_len[w.len()] += w.len() as u64;
    }
    let mut acc = 0;
    by_len[1..].iter().map(|&c| {
        acc += c;
        acc
    }).collect()
}

/// Whether `pattern` (given as sorted integer positions) occurs in the
/// periodic configuration `u^∞`.
pub fn occurs_in_periodic(cells: &[(i64, Letter)], u: &[Letter]) -> bool {
    let Some(&(lo, _)) = cells.first() else {
        return true;
    };
    let d = u.len() as i64;
    (0..d).any(|s| {
        cells
            .iter()
            .all(|&(x, a)| u[(x - lo + s).rem_euclid(d) as usize] == a)
    })
}
