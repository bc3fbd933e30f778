//! First-return maps to the sections `L_k = [0, 2^{-kN})`, substitution
//! extraction, and detection of the pre-periodic renormalization sequence.
//!
//! Before it returns to `L_1`, every cell `L_{1,i}` moves rigidly on the grid
//! `(1/(q·2^N))ℤ`: `R_π` shifts by multiples of `1/q`, and the branches of `𝔞`
//! met outside `[1 − 2^{−N}, 1)` shift by multiples of `2^{−N}`. Transport is
//! therefore done exactly in integer grid units, and every rigidity condition
//! is asserted on the grid.

use crate::error::{Error, Result};
use crate::maps::{Alphabet, Letter, Permutation, RotatedOdometer};
use crate::spectral::IntMatrix;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// One word per cell of the section; letters come from `alphabet`.
///
/// Row letters are cells. When the alphabet is doubled, the letters `m+` and
/// `m−` both name the row of cell `m`, so their words coincide by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    pub alphabet: Alphabet,
    words: Vec<Vec<Letter>>,
}

#[derive(Serialize, Deserialize)]
struct SubstitutionJson {
    alphabet: Vec<String>,
    words: Vec<Vec<Letter>>,
    doubled: bool,
    middle: Option<usize>,
}

impl Substitution {
    /// `words[j]` is the word of cell `j`.
    pub fn new(alphabet: Alphabet, words: Vec<Vec<Letter>>) -> Result<Self> {
        if words.len() != alphabet.q {
            return Err(Error::StructureViolation(format!(
                "{} words for {} cells",
                words.len(),
                alphabet.q
            )));
        }
        if let Some(bad) = words.iter().flatten().find(|&&a| a >= alphabet.size()) {
            return Err(Error::StructureViolation(format!("letter {bad} outside the alphabet")));
        }
        if words.iter().any(|w| w.is_empty()) {
            return Err(Error::StructureViolation("empty word".into()));
        }
        Ok(Self { alphabet, words })
    }

    pub fn q(&self) -> usize {
        self.alphabet.q
    }

    pub fn size(&self) -> usize {
        self.alphabet.size()
    }

    /// Word of row letter `a` (doubled letters share their cell's word).
    pub fn word(&self, a: Letter) -> &[Letter] {
        &self.words[self.alphabet.cell(a)]
    }

    pub fn cell_words(&self) -> &[Vec<Letter>] {
        &self.words
    }

    /// Words per letter of the (possibly doubled) alphabet.
    pub fn letter_words(&self) -> Vec<Vec<Letter>> {
        (0..self.size()).map(|a| self.word(a).to_vec()).collect()
    }

    /// Total word length over cells (`m±` counted once).
    pub fn total_length(&self) -> usize {
        self.words.iter().map(Vec::len).sum()
    }

    /// Merge the columns `m±`.
    pub fn undoubled(&self) -> Substitution {
        let alphabet = Alphabet::new(self.q(), false);
        let words = self
            .words
            .iter()
            .map(|w| w.iter().map(|&a| self.alphabet.cell(a)).collect())
            .collect();
        Substitution { alphabet, words }
    }

    /// Square associated matrix: entry `(a, b)` counts letter `b` in the word of `a`.
    pub fn matrix(&self) -> IntMatrix {
        let n = self.size();
        IntMatrix::from_fn(n, n, |a, b| {
            BigInt::from(self.word(a).iter().filter(|&&c| c == b).count())
        })
    }

    /// `q × size` matrix with one row per cell.
    pub fn cell_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.q(), self.size(), |j, b| {
            BigInt::from(self.words[j].iter().filter(|&&c| c == b).count())
        })
    }

    /// `ψ(χ(a))` for every letter, with the sign convention of the alphabet.
    pub fn word_weights(&self) -> Vec<i64> {
        (0..self.size())
            .map(|a| self.word(a).iter().map(|&b| self.alphabet.sign(b)).sum())
            .collect()
    }

    /// `outer ∘ inner`: each letter of `inner`'s words is a cell of `outer`.
    pub fn compose(outer: &Substitution, inner: &Substitution) -> Substitution {
        let inner = inner.undoubled();
        let words = inner
            .words
            .iter()
            .map(|w| w.iter().flat_map(|&j| outer.words[j].iter().copied()).collect())
            .collect();
        Substitution { alphabet: outer.alphabet, words }
    }

    /// Apply the substitution letter-wise (letters are read as cells).
    pub fn apply(&self, w: &[Letter]) -> Vec<Letter> {
        w.iter().flat_map(|&a| self.word(a).iter().copied()).collect()
    }

    /// Checks the proper-substitution shape: every word starts with cell 0 and
    /// all words end in one common cell.
    pub fn check_proper(&self) -> Result<()> {
        let first_ok = self.words.iter().all(|w| self.alphabet.cell(w[0]) == 0);
        let last = self.alphabet.cell(*self.words[0].last().unwrap());
        let last_ok = self.words.iter().all(|w| self.alphabet.cell(*w.last().unwrap()) == last);
        if first_ok && last_ok {
            Ok(())
        } else {
            Err(Error::StructureViolation(
                "words must start with 0 and share their last letter".into(),
            ))
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SubstitutionJson {
            alphabet: self.alphabet.labels(),
            words: self.letter_words(),
            doubled: self.alphabet.doubled,
            middle: self.alphabet.middle(),
        })
        .expect("substitution serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let s: SubstitutionJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let q = s.alphabet.len() - usize::from(s.doubled);
        let alphabet = Alphabet::new(q, s.doubled);
        if alphabet.size() != s.words.len() || alphabet.middle() != s.middle {
            return Err(Error::Parse("inconsistent substitution json".into()));
        }
        let words = (0..q).map(|j| s.words[alphabet.letter(j, false)].clone()).collect();
        let sub = Substitution::new(alphabet, words)?;
        if sub.letter_words() != s.words {
            return Err(Error::Parse("m+ and m- words differ".into()));
        }
        Ok(sub)
    }
}

/// Default return-time safety bound `q²·2^{2N}`.
pub fn default_step_bound(f: &RotatedOdometer) -> usize {
    let q = f.q();
    (q * q) << (2 * f.big_n())
}

/// Grid walk of one cell `L_{1,i}`: its letters before return, and the grid
/// cell of `R_{π,1}(L_{1,i})` inside `L_1`.
struct Transport {
    word: Vec<Letter>,
    landing: usize,
    visited: Vec<u64>,
}

fn transport(f: &RotatedOdometer, i: usize, split: bool, bound: usize) -> Result<Transport> {
    let q = f.q() as u64;
    let big_n = f.big_n();
    let cell_units = 1u64 << big_n; // 1/q in grid units
    let d = q * cell_units; // 1 in grid units
    let top = d - q; // 1 − 2^{−N}
    let alphabet = f.alphabet(split);
    let mut k = i as u64; // left endpoint; the width is one grid unit
    let mut word = Vec::new();
    let mut visited = Vec::new();
    for step in 0..bound {
        let j = (k / cell_units) as usize;
        let rigid = |cond: bool, what: &str| {
            if cond {
                Ok(())
            } else {
                Err(Error::RigidityViolation { letter: i, step, detail: what.to_string() })
            }
        };
        rigid(k < (j as u64 + 1) * cell_units, "interval straddles a cell boundary")?;
        let upper = 2 * k >= d;
        rigid(upper || 2 * (k + 1) <= d, "interval straddles 1/2")?;
        word.push(alphabet.letter(j, upper));
        visited.push(k);
        let u = (k as i64 + (f.pi().apply(j) as i64 - j as i64) * cell_units as i64) as u64;
        if u >= top {
            rigid(u < d, "rotated interval leaves [0,1)")?;
            return Ok(Transport { word, landing: (u - top) as usize, visited });
        }
        // Branch n ≤ N of 𝔞: u < d − d/2^n.
        let mut n = 1;
        while u >= d - (d >> n) {
            n += 1;
        }
        rigid(u < d - (d >> n), "interval straddles a branch of the adding machine")?;
        k = u + 3 * (d >> n) - d;
    }
    Err(Error::NoReturn { letter: i, bound })
}

/// `χ_1(i)` and the return time of `L_{1,i}` to `L_1`.
pub fn first_return_word(
    f: &RotatedOdometer,
    i: usize,
    split_middle: bool,
) -> Result<(Vec<Letter>, usize)> {
    first_return_word_bounded(f, i, split_middle, default_step_bound(f))
}

pub fn first_return_word_bounded(
    f: &RotatedOdometer,
    i: usize,
    split_middle: bool,
    bound: usize,
) -> Result<(Vec<Letter>, usize)> {
    if i >= f.q() {
        return Err(Error::StructureViolation(format!("letter {i} outside 0..{}", f.q())));
    }
    let t = transport(f, i, split_middle, bound)?;
    let n = t.word.len();
    Ok((t.word, n))
}

/// Grid cells of `[0,1)` (in units `1/(q·2^N)`) swept by the towers over `L_1`.
pub fn swept_cells(f: &RotatedOdometer) -> Result<Vec<bool>> {
    let d = f.q() << f.big_n();
    let mut seen = vec![false; d];
    for i in 0..f.q() {
        for k in transport(f, i, false, default_step_bound(f))?.visited {
            seen[k as usize] = true;
        }
    }
    Ok(seen)
}

/// The permutation `π'` with `F_{π,1}` conjugate to `F_{π'}`, and `χ_1` (middle-doubled).
pub fn renormalize_once(f: &RotatedOdometer) -> Result<(Permutation, Substitution)> {
    let bound = default_step_bound(f);
    let mut words = Vec::with_capacity(f.q());
    let mut images = Vec::with_capacity(f.q());
    for i in 0..f.q() {
        let t = transport(f, i, true, bound)?;
        words.push(t.word);
        images.push(t.landing);
    }
    let next = Permutation::with_pow2(images, true).map_err(|e| {
        Error::StructureViolation(format!("return map is not a cell permutation: {e}"))
    })?;
    let chi = Substitution::new(f.alphabet(true), words)?;
    chi.check_proper()?;
    Ok((next, chi))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionSequence {
    /// `(π_{k-1}, χ_k)` for `k = 1, 2, …` up to the end of the first period:
    /// the permutation renormalized at step `k` (`π_0 = π`) and its substitution.
    pub entries: Vec<(Permutation, Substitution)>,
    pub k0: usize,
    pub p0: usize,
    pub stationary: bool,
}

impl SubstitutionSequence {
    pub fn q(&self) -> usize {
        self.entries[0].0.q()
    }

    pub fn permutations(&self) -> Vec<&Permutation> {
        self.entries.iter().map(|(p, _)| p).collect()
    }

    /// Every distinct `χ_k` of the sequence is covering.
    pub fn covering(&self) -> bool {
        self.entries.iter().all(|(p, chi)| covering_check(&RotatedOdometer::new(p.clone()), chi))
    }
}

fn factorial_bound(q: usize) -> usize {
    (1..=q).try_fold(1usize, |acc, k| acc.checked_mul(k)).unwrap_or(usize::MAX)
}

pub fn detect_periodicity(f: &RotatedOdometer, max_k: Option<usize>) -> Result<SubstitutionSequence> {
    let max_k = max_k.unwrap_or_else(|| factorial_bound(f.q())).max(1);
    let mut entries: Vec<(Permutation, Substitution)> = Vec::new();
    let mut current = f.pi().clone();
    for _ in 0..max_k {
        let (next, chi) = renormalize_once(&RotatedOdometer::new(current.clone()))?;
        entries.push((current, chi));
        if let Some(j) = entries.iter().position(|(p, _)| *p == next) {
            let p0 = entries.len() - j;
            return Ok(SubstitutionSequence { stationary: j == 0 && p0 == 1, entries, k0: j, p0 });
        }
        current = next;
    }
    Err(Error::BoundExceeded(max_k))
}

/// `χ_{k0+1} ∘ ⋯ ∘ χ_{k0+p0}`: the substitution of the periodic part, with the
/// middle doubling of its outermost factor.
pub fn period_matrix(seq: &SubstitutionSequence) -> Substitution {
    let period = &seq.entries[seq.k0..seq.k0 + seq.p0];
    let mut acc = period[0].1.clone();
    for (_, chi) in &period[1..] {
        acc = Substitution::compose(&acc, chi);
    }
    acc
}

/// Sum over cells of `|χ(i)|` equals `q·2^N`.
pub fn covering_check(f: &RotatedOdometer, chi: &Substitution) -> bool {
    chi.total_length() == f.q() << f.big_n()
}

/// First `length` letters of `lim χ^j(0)`.
pub fn fixed_point_prefix(chi: &Substitution, length: usize) -> Result<Vec<Letter>> {
    let w0 = chi.word(0);
    if w0.len() < 2 || chi.alphabet.cell(w0[0]) != 0 {
        return Err(Error::NotExpanding);
    }
    let mut w = vec![0];
    while w.len() < length {
        // Only a prefix of w influences the first `length` letters of χ(w).
        let mut next = Vec::with_capacity(length);
        for &a in &w {
            next.extend_from_slice(chi.word(a));
            if next.len() >= length {
                break;
            }
        }
        w = next;
    }
    w.truncate(length);
    Ok(w)
}

/// Integer data of the system the spectral analysis runs on.
///
/// For a stationary system this is `χ_1` over the doubled alphabet with the
/// ±1 letter weights of `ψ`. With a pre-period `k0 ≥ 1` the skew function
/// induced on `L_{k0}` is constant on each cell but equals the weight of the
/// prefix word `χ_1 ∘ ⋯ ∘ χ_{k0}(a)`; the periodic composite is then analyzed
/// over the undoubled alphabet with those induced letter weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisModel {
    pub alphabet: Alphabet,
    pub matrix: IntMatrix,
    pub letter_weights: Vec<BigInt>,
    pub word_weights: Vec<BigInt>,
    pub on_return_system: bool,
    pub k0: usize,
    pub p0: usize,
}

/// Cell-row matrix of `χ_1 ∘ χ_2' ∘ ⋯ ∘ χ_r'` for `entries[0..r]`.
fn composite_cell_matrix(entries: &[(Permutation, Substitution)]) -> IntMatrix {
    let mut acc = entries[0].1.cell_matrix();
    for (_, chi) in &entries[1..] {
        acc = chi.undoubled().cell_matrix().mul(&acc);
    }
    acc
}

pub fn analysis_model(seq: &SubstitutionSequence) -> AnalysisModel {
    let q = seq.q();
    if seq.k0 == 0 {
        let alphabet = seq.entries[0].1.alphabet;
        let cells = composite_cell_matrix(&seq.entries[..seq.p0]);
        let matrix = IntMatrix::from_fn(alphabet.size(), alphabet.size(), |a, b| {
            cells.get(alphabet.cell(a), b).clone()
        });
        let letter_weights: Vec<BigInt> = alphabet.signs().into_iter().map(BigInt::from).collect();
        let word_weights = matrix.mul_vec(&letter_weights);
        return AnalysisModel {
            alphabet,
            matrix,
            letter_weights,
            word_weights,
            on_return_system: false,
            k0: 0,
            p0: seq.p0,
        };
    }
    let prefix = composite_cell_matrix(&seq.entries[..seq.k0]);
    let signs: Vec<BigInt> =
        seq.entries[0].1.alphabet.signs().into_iter().map(BigInt::from).collect();
    let letter_weights = prefix.mul_vec(&signs);
    let mut matrix = IntMatrix::identity(q);
    for (_, chi) in &seq.entries[seq.k0..seq.k0 + seq.p0] {
        matrix = chi.undoubled().cell_matrix().mul(&matrix);
    }
    let word_weights = matrix.mul_vec(&letter_weights);
    AnalysisModel {
        alphabet: Alphabet::new(q, false),
        matrix,
        letter_weights,
        word_weights,
        on_return_system: true,
        k0: seq.k0,
        p0: seq.p0,
    }
}

impl AnalysisModel {
    pub fn is_coboundary(&self) -> bool {
        self.word_weights.iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::rational::{int, rat};

    fn odo(q: usize, s: &str) -> RotatedOdometer {
        RotatedOdometer::parse(q, s).unwrap()
    }

    fn counts(chi: &Substitution, w: &[Letter]) -> Vec<usize> {
        let u = chi.alphabet;
        let mut c = vec![0; u.q];
        for &a in w {
            c[u.cell(a)] += 1;
        }
        c
    }

    #[test]
    fn example_012_words() {
        let f = odo(3, "(012)");
        let (pi2, chi) = renormalize_once(&f).unwrap();
        assert_eq!(&pi2, f.pi());
        assert_eq!(chi.total_length(), 12);
        let (w2, t2) = first_return_word(&f, 2, true).unwrap();
        assert_eq!(t2, 4);
        assert_eq!(counts(&chi, &w2), vec![2, 2, 0]);
        let m = chi.matrix();
        let rows: Vec<Vec<i64>> = m.to_i64_rows();
        assert_eq!(rows, vec![vec![1, 0, 1, 2], vec![1, 0, 1, 2], vec![1, 0, 1, 2], vec![2, 2, 0, 0]]);
        assert_eq!(chi.word_weights(), vec![-2, -2, -2, 4]);
    }

    #[test]
    fn example_01234_first_word() {
        let f = odo(5, "(01234)");
        let (w, t) = first_return_word(&f, 0, true).unwrap();
        assert_eq!(t, 2);
        let (_, chi) = renormalize_once(&f).unwrap();
        // Doubled row (1,0,0,0,1,0) over 0,1,2+,2-,3,4: one 0 and one 3.
        assert_eq!(counts(&chi, &w), vec![1, 0, 0, 1, 0]);
        assert_eq!(chi.matrix().to_i64_rows()[0], vec![1, 0, 0, 0, 1, 0]);
    }

    #[test]
    fn non_stationary_example() {
        let f = odo(5, "(01243)");
        let seq = detect_periodicity(&f, None).unwrap();
        assert_eq!((seq.k0, seq.p0, seq.stationary), (1, 1, false));
        assert_eq!(seq.entries[1].0, Permutation::parse(5, "(01234)", false).unwrap());
        let per = period_matrix(&seq);
        let (_, chi4) = renormalize_once(&odo(5, "(01234)")).unwrap();
        assert_eq!(per, chi4);
        let model = analysis_model(&seq);
        assert!(model.on_return_system);
        let w: Vec<i64> = model.word_weights.iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(w, vec![-4, -4, -4, -4, 16]);
    }

    #[test]
    fn stationary_examples() {
        for (q, s) in [(3, "(012)"), (3, "(021)"), (5, "(02431)"), (7, "(0,6,5,4,3,2,1)")] {
            let seq = detect_periodicity(&odo(q, s), None).unwrap();
            assert!(seq.stationary, "{s}");
            assert_eq!(period_matrix(&seq), seq.entries[0].1);
        }
    }

    #[test]
    fn covering_examples() {
        let f = odo(7, "(0,6,5,4,3,2,1)");
        let (_, chi) = renormalize_once(&f).unwrap();
        assert!(!covering_check(&f, &chi));
        let f = odo(11, "(0,2,7,6,5,4,3,8,10,1,9)");
        let (_, chi) = renormalize_once(&f).unwrap();
        assert!(covering_check(&f, &chi));
        assert!(chi.total_length() >= f.q());
    }

    #[test]
    fn fixed_point_matches_orbit_of_zero() {
        let f = odo(3, "(012)");
        let (_, chi) = renormalize_once(&f).unwrap();
        let rho = fixed_point_prefix(&chi, 50).unwrap();
        assert_eq!(rho, f.code_point(&int(0), 50, true).unwrap());
        assert_eq!(fixed_point_prefix(&chi, chi.word(0).len()).unwrap(), chi.word(0));
        let short = fixed_point_prefix(&chi, 17).unwrap();
        assert_eq!(&rho[..17], &short[..]);
    }

    #[test]
    fn not_expanding() {
        let a = Alphabet::new(3, false);
        let chi = Substitution::new(a, vec![vec![0], vec![0, 1], vec![0, 2]]).unwrap();
        assert_eq!(fixed_point_prefix(&chi, 5), Err(Error::NotExpanding));
    }

    #[test]
    fn words_are_itineraries_of_midpoints() {
        for (q, s) in [(3, "(012)"), (5, "(02431)"), (9, "(1,7,4)(2,5)(3,6)"), (11, "(0,8,7,3,2,1)(4,9)(5,10,6)")] {
            let f = odo(q, s);
            let w = rat(1, (q << f.big_n()) as i64);
            for i in 0..q {
                let (word, t) = first_return_word(&f, i, true).unwrap();
                let mid = &w * int(i as i64) + &w / int(2);
                assert_eq!(f.code_point(&mid, t, true).unwrap(), word);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let (_, chi) = renormalize_once(&odo(5, "(02431)")).unwrap();
        let v = chi.to_json();
        assert_eq!(v["alphabet"][3], "2-");
        assert_eq!(Substitution::from_json(&v).unwrap(), chi);
    }

    #[test]
    fn step_bound_is_enforced() {
        let f = odo(3, "(012)");
        assert!(matches!(
            first_return_word_bounded(&f, 2, true, 2),
            Err(Error::NoReturn { letter: 2, bound: 2 })
        ));
    }
}
