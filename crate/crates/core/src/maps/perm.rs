//! Permutations of `{0,…,q−1}` in cycle or one-line notation.

use crate::error::{Error, Result};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

pub fn is_power_of_two(q: usize) -> bool {
    q.is_power_of_two()
}

impl Permutation {
    /// Builds `π` from its images, rejecting `q = 2^m`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        Self::with_pow2(images, false)
    }

    /// Like [`Permutation::new`]; `allow_pow2` lifts the power-of-two guard.
    pub fn with_pow2(images: Vec<usize>, allow_pow2: bool) -> Result<Self> {
        let q = images.len();
        if q == 0 {
            return Err(Error::InvalidPermutation("empty permutation".into()));
        }
        let mut seen = vec![false; q];
        for &v in &images {
            if v >= q || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 0..{q}"
                )));
            }
            seen[v] = true;
        }
        if !allow_pow2 && is_power_of_two(q) {
            return Err(Error::PowerOfTwo(q));
        }
        Ok(Self { images })
    }

    pub fn identity(q: usize) -> Self {
        Self { images: (0..q).collect() }
    }

    pub fn q(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.q()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Self { images: inv }
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Self) -> Self {
        Self { images: self.images.iter().map(|&v| other.images[v]).collect() }
    }

    /// Parses cycle notation (`"(012)"`, `"(0,2,7)(4,9)"`), one-line notation
    /// (`"1 2 0"`, `"[1,2,0]"`, `"120"` for q ≤ 10) or arrow pairs (`"0→1,1→2,2→0"`).
    pub fn parse(q: usize, s: &str, allow_pow2: bool) -> Result<Self> {
        let s = s.trim();
        let images = if s.contains('(') || s.is_empty() {
            parse_cycles(q, s)?
        } else if s.contains('→') || s.contains("->") {
            parse_arrows(q, s)?
        } else {
            parse_one_line(q, s)?
        };
        Self::with_pow2(images, allow_pow2)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.q()];
        let mut out = Vec::new();
        for start in 0..self.q() {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut j = self.images[start];
            while j != start {
                seen[j] = true;
                c.push(j);
                j = self.images[j];
            }
            out.push(c);
        }
        out
    }

    /// Cycle notation without fixed points; digits run together when q ≤ 10.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        let sep = if self.q() <= 10 { "" } else { "," };
        cycles
            .iter()
            .map(|c| {
                let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                format!("({})", parts.join(sep))
            })
            .collect()
    }

    pub fn to_one_line(&self) -> String {
        let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        parts.join(" ")
    }
}

fn parse_num(tok: &str, q: usize) -> Result<usize> {
    let v: usize = tok
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("not a symbol: {tok:?}")))?;
    if v >= q {
        return Err(Error::InvalidPermutation(format!("symbol {v} out of range for q = {q}")));
    }
    Ok(v)
}

fn parse_cycles(q: usize, s: &str) -> Result<Vec<usize>> {
    let mut images: Vec<usize> = (0..q).collect();
    let mut rest = s;
    while let Some(open) = rest.find('(') {
        if !rest[..open].trim().is_empty() {
            return Err(Error::Parse(format!("unexpected text before cycle in {s:?}")));
        }
        let close = rest[open..]
            .find(')')
            .map(|c| c + open)
            .ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in {s:?}")))?;
        let body = rest[open + 1..close].trim();
        let elems: Vec<usize> = if body.contains(',') || body.contains(char::is_whitespace) {
            body.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| parse_num(t, q))
                .collect::<Result<_>>()?
        } else if q <= 10 {
            body.chars().map(|c| parse_num(&c.to_string(), q)).collect::<Result<_>>()?
        } else if body.is_empty() {
            Vec::new()
        } else {
            // A single multi-digit symbol, e.g. "(10)".
            vec![parse_num(body, q)?]
        };
        let mut uniq = elems.clone();
        uniq.sort_unstable();
        uniq.dedup();
        if uniq.len() != elems.len() {
            return Err(Error::InvalidPermutation(format!("repeated symbol in cycle ({body})")));
        }
        // Compose left to right: the new cycle acts after the ones already read.
        let mut cyc: Vec<usize> = (0..q).collect();
        for (k, &a) in elems.iter().enumerate() {
            cyc[a] = elems[(k + 1) % elems.len()];
        }
        images = images.iter().map(|&v| cyc[v]).collect();
        rest = &rest[close + 1..];
    }
    if !rest.trim().is_empty() {
        return Err(Error::Parse(format!("trailing text in {s:?}")));
    }
    Ok(images)
}

fn parse_arrows(q: usize, s: &str) -> Result<Vec<usize>> {
    let mut images: Vec<Option<usize>> = vec![None; q];
    for pair in s.split([',', ';']).filter(|t| !t.trim().is_empty()) {
        let (a, b) = pair
            .split_once('→')
            .or_else(|| pair.split_once("->"))
            .ok_or_else(|| Error::Parse(format!("expected a→b, got {pair:?}")))?;
        let (a, b) = (parse_num(a, q)?, parse_num(b, q)?);
        if images[a].replace(b).is_some() {
            return Err(Error::InvalidPermutation(format!("symbol {a} mapped twice")));
        }
    }
    // Unlisted symbols are fixed.
    Ok(images.iter().enumerate().map(|(i, v)| v.unwrap_or(i)).collect())
}

fn parse_one_line(q: usize, s: &str) -> Result<Vec<usize>> {
    let body = s.trim_start_matches('[').trim_end_matches(']');
    let toks: Vec<&str> = body
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .collect();
    let images: Vec<usize> = if toks.len() == 1 && q <= 10 && toks[0].len() == q {
        toks[0].chars().map(|c| parse_num(&c.to_string(), q)).collect::<Result<_>>()?
    } else {
        toks.iter().map(|t| parse_num(t, q)).collect::<Result<_>>()?
    };
    if images.len() != q {
        return Err(Error::InvalidPermutation(format!(
            "expected {q} images, got {}",
            images.len()
        )));
    }
    Ok(images)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Permutation::with_pow2(images, true).map_err(serde::de::Error::custom)
    }
}
