//! Periodic-point counts `Per_i`: points whose orbit has size at most `i`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Result, ShiftError};
use crate::grid::Letter;
use crate::properties::lyndon_words;
use crate::zoo::{SftOracle, WordOracle};

/// `counts[i - 1] = Per_i` for `i = 1..=i_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerVector {
    pub counts: Vec<u64>,
}

impl PerVector {
    pub fn i_max(&self) -> usize {
        self.counts.len()
    }
}

/// Count `u^∞` for every primitive necklace `u` with `|u| <= i_max` whose
/// factors of length `2 * i_max` are all accepted; each contributes `|u|`
/// points.
pub fn per_vector_brute(oracle: &dyn WordOracle, alphabet: usize, i_max: usize) -> Result<PerVector> {
    let len = 2 * i_max;
    let mut by_len = vec![0u64; i_max + 1];
    for u in lyndon_words(alphabet, i_max) {
        let d = u.len();
        let mut ok = true;
        for s in 0..d {
            let w: Vec<Letter> = (0..len).map(|j| u[(s + j) % d]).collect();
            if !oracle.accepts_word(&w)? {
                ok = false;
                break;
            }
        }
        if ok {
            by_len[d] += d as u64;
        }
    }
    Ok(PerVector {
        counts: by_len[1..]
            .iter()
            .scan(0, |acc, &c| {
                *acc += c;
                Some(*acc)
            })
            .collect(),
    })
}

/// Largest transfer matrix built from a shift of finite type.
pub const MAX_TRANSFER_STATES: usize = 1 << 12;

/// A 0/1 transition matrix of a vertex shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferMatrix {
    rows: Vec<Vec<u8>>,
}

impl TransferMatrix {
    pub fn new(rows: Vec<Vec<u8>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n || r.iter().any(|&x| x > 1)) {
            return Err(ShiftError::Config("transfer matrix must be square with 0/1 entries".into()));
        }
        Ok(TransferMatrix { rows })
    }

    pub fn states(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    /// The matrix of a nearest-neighbour shift: letters are states and `a -> b`
    /// unless `ab` (or `a`, or `b`) is forbidden.
    pub fn nearest_neighbour(alphabet: usize, forbidden: &[Vec<Letter>]) -> Result<Self> {
        if let Some(w) = forbidden.iter().find(|w| w.len() > 2) {
            return Err(ShiftError::Unsupported(format!(
                "forbidden word of length {} is not nearest-neighbour",
                w.len()
            )));
        }
        let banned = |w: &[Letter]| forbidden.iter().any(|f| crate::zoo::word_contains(w, f));
        let rows = (0..alphabet)
            .map(|a| {
                (0..alphabet)
                    .map(|b| u8::from(!banned(&[a as Letter, b as Letter])))
                    .collect()
            })
            .collect();
        Ok(TransferMatrix { rows })
    }

    /// Higher-block recoding of any shift of finite type: states are words of
    /// length `window - 1`, where `window` is the longest forbidden length
    /// (at least 2).
    pub fn higher_block(alphabet: usize, forbidden: &[Vec<Letter>]) -> Result<Self> {
        let window = forbidden.iter().map(Vec::len).max().unwrap_or(0).max(2);
        if window == 2 {
            return Self::nearest_neighbour(alphabet, forbidden);
        }
        let m = window - 1;
        let states = (alphabet as u64)
            .checked_pow(m as u32)
            .filter(|&s| s <= MAX_TRANSFER_STATES as u64)
            .ok_or_else(|| ShiftError::Unsupported(format!("{alphabet}^{m} block states are too many")))?
            as usize;
        let decode = |mut s: usize| -> Vec<Letter> {
            let mut w = vec![0; m];
            for slot in w.iter_mut().rev() {
                *slot = (s % alphabet) as Letter;
                s /= alphabet;
            }
            w
        };
        let banned = |w: &[Letter]| forbidden.iter().any(|f| crate::zoo::word_contains(w, f));
        let mut rows = vec![vec![0u8; states]; states];
        for (s, row) in rows.iter_mut().enumerate() {
            let u = decode(s);
            for b in 0..alphabet {
                let mut w = u.clone();
                w.push(b as Letter);
                if !banned(&w) {
                    let t = (s * alphabet + b) % states;
                    row[t] = 1;
                }
            }
        }
        Ok(TransferMatrix { rows })
    }

    pub fn from_sft(oracle: &SftOracle) -> Result<Self> {
        Self::higher_block(oracle.alphabet(), oracle.forbidden())
    }

    /// `trace(M^d)` for `d = 1..=d_max`.
    pub fn traces(&self, d_max: usize) -> Result<Vec<u128>> {
        let n = self.rows.len();
        let mut power: Vec<Vec<u128>> = (0..n)
            .map(|i| (0..n).map(|j| u128::from(i == j)).collect())
            .collect();
        let mut out = Vec::with_capacity(d_max);
        for _ in 0..d_max {
            let mut next = vec![vec![0u128; n]; n];
            for (row, out_row) in power.iter().zip(next.iter_mut()) {
                for (k, &a) in row.iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    for (j, cell) in out_row.iter_mut().enumerate() {
                        if self.rows[k][j] == 1 {
                            *cell = cell
                                .checked_add(a)
                                .ok_or_else(|| ShiftError::Unsupported("trace overflow".into()))?;
                        }
                    }
                }
            }
            power = next;
            out.push((0..n).map(|i| power[i][i]).sum());
        }
        Ok(out)
    }
}

fn mobius(mut n: usize) -> i128 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Per-vector from traces: points of least period `d` number
/// `sum_{e | d} mu(d / e) trace(M^e)`.
pub fn per_vector_transfer(m: &TransferMatrix, i_max: usize) -> Result<PerVector> {
    let traces = m.traces(i_max)?;
    let mut acc: i128 = 0;
    let mut counts = Vec::with_capacity(i_max);
    for d in 1..=i_max {
        let least: i128 = (1..=d)
            .filter(|e| d % e == 0)
            .map(|e| mobius(d / e) * traces[e - 1] as i128)
            .sum();
        acc += least;
        counts.push(u64::try_from(acc).map_err(|_| ShiftError::Unsupported("count overflow".into()))?);
    }
    Ok(PerVector { counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Alphabet;
    use crate::zoo::{full_shift, golden_mean, periodic_orbit};

    #[test]
    fn brute_examples() {
        let full = full_shift(Alphabet::binary());
        assert_eq!(per_vector_brute(full.oracle().as_ref(), 2, 4).unwrap().counts, [2, 4, 10, 22]);
        let g = golden_mean();
        assert_eq!(per_vector_brute(g.oracle().as_ref(), 2, 4).unwrap().counts, [1, 3, 6, 10]);
        let o = periodic_orbit(Alphabet::binary(), &[0, 1]).unwrap();
        assert_eq!(per_vector_brute(o.oracle().as_ref(), 2, 4).unwrap().counts, [0, 2, 2, 2]);
    }

    #[test]
    fn transfer_examples() {
        let g = TransferMatrix::nearest_neighbour(2, &[vec![1, 1]]).unwrap();
        let t: Vec<u128> = g.traces(4).unwrap();
        assert_eq!(t, [1, 3, 4, 7]);
        assert_eq!(per_vector_transfer(&g, 4).unwrap().counts, [1, 3, 6, 10]);
        let full = TransferMatrix::nearest_neighbour(2, &[]).unwrap();
        assert_eq!(per_vector_transfer(&full, 4).unwrap().counts, [2, 4, 10, 22]);
        let empty = TransferMatrix::nearest_neighbour(2, &[vec![0], vec![1]]).unwrap();
        assert_eq!(per_vector_transfer(&empty, 4).unwrap().counts, [0, 0, 0, 0]);
        assert!(TransferMatrix::nearest_neighbour(2, &[vec![1, 0, 1]]).is_err());
    }

    #[test]
    fn higher_block_matches_brute() {
        for forbidden in [vec![vec![1, 1, 1]], vec![vec![0, 1, 0], vec![1, 1]], vec![vec![0, 0, 1, 1]]] {
            let m = TransferMatrix::higher_block(2, &forbidden).unwrap();
            let oracle = SftOracle::new(2, forbidden).unwrap();
            assert_eq!(
                per_vector_transfer(&m, 8).unwrap(),
                per_vector_brute(&oracle, 2, 8).unwrap()
            );
        }
    }

    #[test]
    fn mobius_values() {
        let v: Vec<i128> = (1..=10).map(mobius).collect();
        assert_eq!(v, [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }
}
