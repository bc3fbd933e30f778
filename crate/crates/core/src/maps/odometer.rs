//! The von Neumann–Kakutani map, the cell rotation `R_π`, the rotated odometer
//! `F_π = 𝔞 ∘ R_π`, the skew function `ψ` and the skew product `T_π`.

use super::alphabet::{Alphabet, Letter};
use super::perm::Permutation;
use super::rational::{cell_index, in_unit_interval, pow2_inv, rat, to_pq, Rational};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// `N = min{n ≥ 1 : 2^n ≥ q}`.
pub fn level_shift(q: usize) -> u32 {
    let mut n = 1;
    while (1usize << n) < q {
        n += 1;
    }
    n
}

fn check_domain(x: &Rational) -> Result<()> {
    if in_unit_interval(x) {
        Ok(())
    } else {
        Err(Error::OutOfDomain(to_pq(x)))
    }
}

/// Branch index `n ≥ 1` of `𝔞` at `x`: `1 − 2^{1−n} ≤ x < 1 − 2^{−n}`.
pub fn vnk_branch(x: &Rational) -> Result<u32> {
    check_domain(x)?;
    // 1 − x ∈ (2^{−n}, 2^{1−n}], so n is the number of halvings of 1 keeping it ≥ 1 − x.
    let gap = Rational::one() - x;
    let mut n = 1;
    let mut h = pow2_inv(1);
    while gap <= h {
        n += 1;
        h /= BigInt::from(2);
    }
    Ok(n)
}

/// `𝔞(x) = x − (1 − 3·2^{−n})` on the `n`-th branch.
pub fn vnk(x: &Rational) -> Result<Rational> {
    let n = vnk_branch(x)?;
    Ok(x - Rational::one() + pow2_inv(n) * BigInt::from(3))
}

/// `ψ(x) = +1` on `[0, 1/2)`, `−1` on `[1/2, 1)`.
pub fn psi(x: &Rational) -> Result<i64> {
    check_domain(x)?;
    Ok(if x < &rat(1, 2) { 1 } else { -1 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewState {
    #[serde(with = "super::rational::pq_serde")]
    pub x: Rational,
    #[serde(with = "super::rational::bigint_serde")]
    pub level: BigInt,
}

impl SkewState {
    pub fn new(x: Rational, level: i64) -> Self {
        Self { x, level: BigInt::from(level) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RotatedOdometer {
    pi: Permutation,
    n: u32,
}

impl RotatedOdometer {
    pub fn new(pi: Permutation) -> Self {
        let n = level_shift(pi.q());
        Self { pi, n }
    }

    /// Convenience: parse `π` (cycle or one-line) for this `q`.
    pub fn parse(q: usize, perm: &str) -> Result<Self> {
        Ok(Self::new(Permutation::parse(q, perm, false)?))
    }

    pub fn q(&self) -> usize {
        self.pi.q()
    }

    pub fn pi(&self) -> &Permutation {
        &self.pi
    }

    /// The exponent `N` with `L_1 = [0, 2^{−N})`.
    pub fn big_n(&self) -> u32 {
        self.n
    }

    /// `𝔞_k(x) = 2^{−kN} 𝔞(2^{kN} x)` on `[0, 2^{−kN})`.
    pub fn vnk_scaled(&self, k: u32, x: &Rational) -> Result<Rational> {
        let e = k * self.n;
        let scale = Rational::from_integer(BigInt::one() << e as usize);
        if x < &Rational::zero() || x >= &pow2_inv(e) {
            return Err(Error::OutsideSection { x: to_pq(x), exp: e });
        }
        Ok(vnk(&(x * &scale))? / scale)
    }

    /// `R_π(x) = x + (π(j) − j)/q` for `x ∈ [j/q, (j+1)/q)`.
    pub fn rot(&self, x: &Rational) -> Result<Rational> {
        check_domain(x)?;
        let q = self.q();
        let j = cell_index(x, q);
        let shift = self.pi.apply(j) as i64 - j as i64;
        Ok(x + rat(shift, q as i64))
    }

    pub fn f_pi(&self, x: &Rational) -> Result<Rational> {
        vnk(&self.rot(x)?)
    }

    pub fn t_pi(&self, s: &SkewState) -> Result<SkewState> {
        let step = psi(&s.x)?;
        Ok(SkewState { x: self.f_pi(&s.x)?, level: &s.level + step })
    }

    pub fn alphabet(&self, split_middle: bool) -> Alphabet {
        Alphabet::new(self.q(), split_middle)
    }

    /// Letter of `x` in the cell partition (split at 1/2 when requested).
    pub fn letter_of(&self, x: &Rational, split_middle: bool) -> Letter {
        let j = cell_index(x, self.q());
        self.alphabet(split_middle).letter(j, x >= &rat(1, 2))
    }

    /// Itinerary `w_0 … w_{n−1}` of `x` under `F_π`.
    pub fn code_point(&self, x: &Rational, n: usize, split_middle: bool) -> Result<Vec<Letter>> {
        check_domain(x)?;
        let mut out = Vec::with_capacity(n);
        let mut y = x.clone();
        for i in 0..n {
            out.push(self.letter_of(&y, split_middle));
            if i + 1 < n {
                y = self.f_pi(&y)?;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::rational::int;

    fn f012() -> RotatedOdometer {
        RotatedOdometer::parse(3, "(012)").unwrap()
    }

    // Oracle: evaluate Eq. branches directly from the defining inequalities.
    fn vnk_oracle(x: &Rational) -> Rational {
        for n in 1..200u32 {
            let lo = int(1) - pow2_inv(n - 1);
            let hi = int(1) - pow2_inv(n);
            if &lo <= x && x < &hi {
                return x - (int(1) - pow2_inv(n) * BigInt::from(3));
            }
        }
        unreachable!()
    }

    #[test]
    fn vnk_examples() {
        assert_eq!(vnk(&int(0)).unwrap(), rat(1, 2));
        assert_eq!(vnk(&rat(1, 2)).unwrap(), rat(1, 4));
        assert_eq!(vnk(&rat(3, 4)).unwrap(), rat(1, 8));
        for x in [rat(1, 2), rat(3, 4), rat(7, 9), rat(1023, 1024)] {
            assert_eq!(vnk(&x).unwrap(), vnk_oracle(&x));
        }
        assert!(vnk(&int(1)).is_err());
        assert!(vnk(&rat(-1, 3)).is_err());
    }

    #[test]
    fn vnk_scaled_examples() {
        let f = f012();
        assert_eq!(f.vnk_scaled(0, &rat(3, 4)).unwrap(), vnk(&rat(3, 4)).unwrap());
        // 𝔞(0)=1/2 scaled by 2^{−N}.
        assert_eq!(f.vnk_scaled(1, &int(0)).unwrap(), pow2_inv(f.big_n() + 1));
        assert!(f.vnk_scaled(1, &pow2_inv(f.big_n())).is_err());
    }

    #[test]
    fn rot_examples() {
        let f = f012();
        assert_eq!(f.rot(&int(0)).unwrap(), rat(1, 3));
        assert_eq!(f.rot(&rat(5, 6)).unwrap(), rat(1, 6));
        let id = RotatedOdometer::new(Permutation::identity(3));
        assert_eq!(id.rot(&rat(2, 7)).unwrap(), rat(2, 7));
        assert_eq!(id.f_pi(&rat(2, 7)).unwrap(), vnk(&rat(2, 7)).unwrap());
    }

    #[test]
    fn f_pi_and_t_pi_examples() {
        let f = f012();
        assert_eq!(f.f_pi(&int(0)).unwrap(), rat(5, 6));
        assert_eq!(f.f_pi(&rat(5, 6)).unwrap(), rat(2, 3));
        let s = f.t_pi(&SkewState::new(int(0), 0)).unwrap();
        assert_eq!(s, SkewState::new(rat(5, 6), 1));
        let s = f.t_pi(&SkewState::new(rat(5, 6), 1)).unwrap();
        assert_eq!(s, SkewState::new(rat(2, 3), 0));
        let a = f.t_pi(&SkewState::new(rat(2, 5), 7)).unwrap();
        let b = f.t_pi(&SkewState::new(rat(2, 5), -4)).unwrap();
        assert_eq!(a.x, b.x);
        assert_eq!(a.level - b.level, BigInt::from(11));
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(&int(0)).unwrap(), 1);
        assert_eq!(psi(&rat(1, 2)).unwrap(), -1);
        assert_eq!(psi(&rat(3, 4)).unwrap(), -1);
    }

    #[test]
    fn code_point_examples() {
        let f = f012();
        assert_eq!(f.code_point(&int(0), 3, false).unwrap(), vec![0, 2, 2]);
        assert_eq!(f.code_point(&rat(2, 3), 1, false).unwrap(), vec![2]);
        let g = RotatedOdometer::parse(5, "(01234)").unwrap();
        let w = g.code_point(&rat(1, 2), 1, true).unwrap();
        assert_eq!(g.alphabet(true).format_word(&w), "2-");
    }

    #[test]
    fn level_shift_values() {
        assert_eq!(level_shift(3), 2);
        assert_eq!(level_shift(5), 3);
        assert_eq!(level_shift(9), 4);
        assert_eq!(level_shift(11), 4);
        assert_eq!(level_shift(2), 1);
    }
}
