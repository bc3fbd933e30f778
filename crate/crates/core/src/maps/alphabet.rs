//! Coding alphabets: the `q` cells of `[0,1)`, optionally with the middle cell
//! `m = ⌊q/2⌋` split at `1/2` into `m+` / `m−` (odd `q` only).

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A letter is an index into an [`Alphabet`].
pub type Letter = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    pub q: usize,
    pub doubled: bool,
}

impl Alphabet {
    /// Doubling only happens for odd `q`; for even `q` the point 1/2 is already a cell boundary.
    pub fn new(q: usize, split_middle: bool) -> Self {
        Self { q, doubled: split_middle && q % 2 == 1 }
    }

    pub fn size(&self) -> usize {
        self.q + usize::from(self.doubled)
    }

    pub fn middle(&self) -> Option<usize> {
        self.doubled.then_some(self.q / 2)
    }

    /// The cell of `[0,1)` a letter belongs to.
    pub fn cell(&self, a: Letter) -> usize {
        match self.middle() {
            Some(m) if a > m => a - 1,
            _ => a,
        }
    }

    /// The letter of cell `j`; for the split cell, `upper_half` picks `m−`.
    pub fn letter(&self, j: usize, upper_half: bool) -> Letter {
        match self.middle() {
            Some(m) if j == m => m + usize::from(upper_half),
            Some(m) if j > m => j + 1,
            _ => j,
        }
    }

    /// Sign of ψ on a letter: +1 on the left half of `[0,1)`, −1 on the right.
    pub fn sign(&self, a: Letter) -> i64 {
        match self.middle() {
            Some(m) => {
                if a <= m {
                    1
                } else {
                    -1
                }
            }
            None => {
                // Even q: cells j < q/2 are left of 1/2. Odd q undoubled: the
                // middle cell straddles 1/2 and has no constant sign; callers
                // never ask for it on an undoubled odd alphabet.
                if 2 * a < self.q {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn signs(&self) -> Vec<i64> {
        (0..self.size()).map(|a| self.sign(a)).collect()
    }

    pub fn label(&self, a: Letter) -> String {
        match self.middle() {
            Some(m) if a == m => format!("{m}+"),
            Some(m) if a == m + 1 => format!("{m}-"),
            _ => self.cell(a).to_string(),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.size()).map(|a| self.label(a)).collect()
    }

    pub fn parse_label(&self, s: &str) -> Result<Letter> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a letter of this alphabet: {s:?}"));
        let (num, half) = if let Some(n) = s.strip_suffix('+') {
            (n, Some(false))
        } else if let Some(n) = s.strip_suffix('-').or_else(|| s.strip_suffix('−')) {
            (n, Some(true))
        } else {
            (s, None)
        };
        let j: usize = num.parse().map_err(|_| bad())?;
        if j >= self.q {
            return Err(bad());
        }
        match (self.middle(), half) {
            (Some(m), Some(h)) if j == m => Ok(self.letter(j, h)),
            (Some(m), None) if j != m => Ok(self.letter(j, false)),
            (None, None) => Ok(j),
            _ => Err(bad()),
        }
    }

    /// Words serialize as space-separated labels.
    pub fn format_word(&self, w: &[Letter]) -> String {
        w.iter().map(|&a| self.label(a)).collect::<Vec<_>>().join(" ")
    }

    pub fn parse_word(&self, s: &str) -> Result<Vec<Letter>> {
        s.split_whitespace().map(|t| self.parse_label(t)).collect()
    }

    /// Merge `m±` into `m`: the undoubled letter of a doubled letter.
    pub fn undouble(&self, a: Letter) -> Letter {
        self.cell(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubled_indexing() {
        let a = Alphabet::new(5, true);
        assert_eq!(a.size(), 6);
        assert_eq!(a.labels(), vec!["0", "1", "2+", "2-", "3", "4"]);
        assert_eq!(a.signs(), vec![1, 1, 1, -1, -1, -1]);
        assert_eq!(a.cell(3), 2);
        assert_eq!(a.cell(5), 4);
        assert_eq!(a.letter(2, true), 3);
        assert_eq!(a.letter(4, false), 5);
        let w = a.parse_word("0 2+ 2- 4").unwrap();
        assert_eq!(w, vec![0, 2, 3, 5]);
        assert_eq!(a.format_word(&w), "0 2+ 2- 4");
        assert!(a.parse_label("2").is_err());
    }

    #[test]
    fn even_q_is_never_doubled() {
        let a = Alphabet::new(6, true);
        assert!(!a.doubled);
        assert_eq!(a.signs(), vec![1, 1, 1, -1, -1, -1]);
    }
}
