//! Exact orbits of `F_π` with a machine-integer fast path.
//!
//! A point is kept as `num / (B·2^e)` where `B` is odd and divisible by the odd
//! part of `q`; both branches of `F_π` are translations by multiples of
//! `1/(q·2^n)`, so the orbit stays on such a grid and only `e` may grow. When a
//! `u128` would overflow the point silently moves to `BigRational`.

use crate::error::{Error, Result};
use crate::maps::rational::{pq_serde, to_pq};
use crate::maps::{Letter, Rational, RotatedOdometer};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Fast { num: u128, e: u32 },
    Exact(Rational),
}

/// A point moving under `F_π`.
#[derive(Clone, Debug)]
pub struct Orbit<'a> {
    f: &'a RotatedOdometer,
    base: u128,
    q_odd: u128,
    t: u32,
    repr: Repr,
    steps: usize,
}

fn pow2_factor(mut v: u128) -> (u32, u128) {
    let t = v.trailing_zeros();
    v >>= t;
    (t, v)
}

impl<'a> Orbit<'a> {
    pub fn new(f: &'a RotatedOdometer, x0: &Rational) -> Result<Self> {
        if x0 < &Rational::zero() || x0 >= &Rational::one() {
            return Err(Error::OutOfDomain(to_pq(x0)));
        }
        let (t, q_odd) = pow2_factor(f.q() as u128);
        let mut orbit = Self { f, base: q_odd, q_odd, t, repr: Repr::Exact(x0.clone()), steps: 0 };
        if let Some((base, num, e)) = Self::fast_repr(x0, q_odd, t) {
            orbit.base = base;
            orbit.repr = Repr::Fast { num, e };
        }
        Ok(orbit)
    }

    fn fast_repr(x: &Rational, q_odd: u128, t: u32) -> Option<(u128, u128, u32)> {
        let a = x.numer().to_u128()?;
        let b = x.denom().to_u128()?;
        let (k, m) = pow2_factor(b);
        let base = m.lcm(&q_odd);
        let e = k.max(t);
        let num = a.checked_mul(base / m)?.checked_shl(e - k)?;
        base.checked_shl(e).filter(|d| d.leading_zeros() >= 3 && num < *d)?;
        Some((base, num, e))
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Whether the point is still on the machine-integer path.
    pub fn is_fast(&self) -> bool {
        matches!(self.repr, Repr::Fast { .. })
    }

    pub fn point(&self) -> Rational {
        match &self.repr {
            Repr::Fast { num, e } => {
                Rational::new(BigInt::from(*num), BigInt::from(self.base) << *e as usize)
            }
            Repr::Exact(x) => x.clone(),
        }
    }

    /// `⌊m·x⌋`.
    pub fn floor_times(&self, m: u64) -> u64 {
        match &self.repr {
            Repr::Fast { num, e } => {
                let d = self.base << *e;
                match num.checked_mul(m as u128) {
                    Some(v) => (v / d) as u64,
                    None => {
                        let v = BigInt::from(*num) * BigInt::from(m);
                        v.div_floor(&BigInt::from(d)).to_u64().expect("floor fits")
                    }
                }
            }
            Repr::Exact(x) => (x.numer() * BigInt::from(m))
                .div_floor(x.denom())
                .to_u64()
                .expect("floor fits"),
        }
    }

    /// `ψ` at the current point.
    pub fn psi(&self) -> i64 {
        match &self.repr {
            Repr::Fast { num, e } => {
                // x < 1/2 ⇔ 2·num < B·2^e; B·2^e < 2^125 so the shift is safe.
                if num << 1 < self.base << *e {
                    1
                } else {
                    -1
                }
            }
            Repr::Exact(x) => {
                if x * BigInt::from(2) < Rational::one() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn letter(&self, split_middle: bool) -> Letter {
        let j = self.floor_times(self.f.q() as u64) as usize;
        self.f.alphabet(split_middle).letter(j, self.psi() < 0)
    }

    /// The point lies in `L_k = [0, 2^{−kN})`.
    pub fn in_section(&self, k: u32) -> bool {
        self.floor_times(1u64 << (k * self.f.big_n())) == 0
    }

    /// Apply `F_π` once; returns `ψ` of the point before the step.
    pub fn advance(&mut self) -> Result<i64> {
        let s = self.psi();
        let next = match &self.repr {
            Repr::Fast { num, e } => self.fast_step(*num, *e),
            Repr::Exact(_) => None,
        };
        self.repr = match next {
            Some(r) => r,
            None => Repr::Exact(self.f.f_pi(&self.point())?),
        };
        self.steps += 1;
        Ok(s)
    }

    fn fast_step(&self, num: u128, e: u32) -> Option<Repr> {
        let d = self.base.checked_shl(e)?;
        let cell_width = (self.base / self.q_odd) << (e - self.t);
        let j = (num / cell_width) as usize;
        let target = self.f.pi().apply(j) as u128;
        let mut num = num - j as u128 * cell_width + target * cell_width;
        // 𝔞: branch n is the least n ≥ 1 with (1 − x)·2^n > 1.
        let gap = d - num;
        let mut n = (128 - d.leading_zeros()).saturating_sub(128 - gap.leading_zeros()).max(1);
        while gap << n <= d {
            n += 1;
        }
        while n > 1 && gap << (n - 1) > d {
            n -= 1;
        }
        let mut e = e;
        let mut d = d;
        if n > e {
            d = self.base.checked_shl(n).filter(|v| v.leading_zeros() >= 3)?;
            num <<= n - e;
            e = n;
        }
        num = num + 3 * (self.base << (e - n)) - d;
        let drop = num.trailing_zeros().min(e - self.t);
        Some(Repr::Fast { num: num >> drop, e: e - drop })
    }
}

/// Windowed maximum of `|S_k|` over `k ∈ (start, end]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowMax {
    pub start: usize,
    pub end: usize,
    pub max_abs: i64,
}

/// Exact record of `S_kψ(x_0)` for `k = 0..=length`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitTrace {
    #[serde(with = "pq_serde")]
    pub start: Rational,
    pub length: usize,
    /// `displacement[k] = S_k`, with `S_0 = 0`.
    pub displacement: Vec<i64>,
    /// Times `k ≥ 1` with `S_k = 0`.
    pub zero_returns: Vec<usize>,
    /// Maxima over the dyadic windows `(2^{i−1}, 2^i]` (the last one truncated at `length`).
    pub window_max: Vec<WindowMax>,
}

impl OrbitTrace {
    pub fn final_displacement(&self) -> i64 {
        *self.displacement.last().unwrap_or(&0)
    }

    pub fn max_abs(&self) -> i64 {
        self.displacement.iter().map(|s| s.abs()).max().unwrap_or(0)
    }

    /// `max_{k ≤ m} |S_k|`.
    pub fn running_max(&self, m: usize) -> i64 {
        self.displacement[..=m.min(self.length)].iter().map(|s| s.abs()).max().unwrap_or(0)
    }

    pub fn zeros_up_to(&self, m: usize) -> usize {
        self.zero_returns.partition_point(|&k| k <= m)
    }
}

/// Run `n ≥ 1` steps of `T_π` from `(x_0, 0)`.
pub fn run_orbit(f: &RotatedOdometer, x0: &Rational, n: usize) -> Result<OrbitTrace> {
    if n == 0 {
        return Err(Error::InvalidArgument("orbit length must be at least 1".into()));
    }
    let mut orbit = Orbit::new(f, x0)?;
    let mut displacement = Vec::with_capacity(n + 1);
    let mut zero_returns = Vec::new();
    let mut s = 0i64;
    displacement.push(0);
    for k in 1..=n {
        s += orbit.advance()?;
        displacement.push(s);
        if s == 0 {
            zero_returns.push(k);
        }
    }
    let mut window_max = Vec::new();
    let (mut start, mut end) = (0usize, 1usize);
    while start < n {
        let stop = end.min(n);
        let max_abs = displacement[start + 1..=stop].iter().map(|v| v.abs()).max().unwrap_or(0);
        window_max.push(WindowMax { start, end: stop, max_abs });
        start = end;
        end *= 2;
    }
    Ok(OrbitTrace { start: x0.clone(), length: n, displacement, zero_returns, window_max })
}

/// Itinerary of `x_0` through the cells (doubled alphabet when `split_middle`).
pub fn itinerary(f: &RotatedOdometer, x0: &Rational, n: usize, split_middle: bool) -> Result<Vec<Letter>> {
    let mut orbit = Orbit::new(f, x0)?;
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(orbit.letter(split_middle));
        orbit.advance()?;
    }
    Ok(out)
}

/// The prime factor of the sampling denominator `q·2^24·P`.
pub const SAMPLING_PRIME: u64 = 2_147_483_647;
pub const SAMPLING_BITS: u32 = 24;

/// A uniformly random rational of denominator `q·2^24·P` whose numerator is
/// prime to `P`, so it avoids every cell endpoint and the orbit of 0.
pub fn sample_start<R: Rng>(q: usize, rng: &mut R) -> Rational {
    let d = (q as u128) << SAMPLING_BITS;
    let d = d * SAMPLING_PRIME as u128;
    loop {
        let a = rng.gen_range(0..d);
        if a % SAMPLING_PRIME as u128 != 0 {
            return Rational::new(BigInt::from(a), BigInt::from(d));
        }
    }
}

/// `count` starting points from a seeded generator.
pub fn random_starts(q: usize, seed: u64, count: usize) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| sample_start(q, &mut rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::rational::rat;

    fn odo(q: usize, s: &str) -> RotatedOdometer {
        RotatedOdometer::parse(q, s).unwrap()
    }

    #[test]
    fn fast_path_agrees_with_exact_maps() {
        for (q, p) in [(3, "(012)"), (5, "(02431)"), (6, "(0,3,5)(1,4)"), (11, "(0,2,7,6,5,4,3,8,10,1,9)")] {
            let f = odo(q, p);
            for x0 in random_starts(q, 7, 3).into_iter().chain([rat(0, 1), rat(1, 3), rat(5, 7)]) {
                let mut orbit = Orbit::new(&f, &x0).unwrap();
                let mut x = x0.clone();
                for _ in 0..2000 {
                    assert_eq!(orbit.point(), x);
                    assert_eq!(orbit.psi(), crate::maps::psi(&x).unwrap());
                    assert_eq!(orbit.letter(true), f.letter_of(&x, true));
                    orbit.advance().unwrap();
                    x = f.f_pi(&x).unwrap();
                }
            }
        }
    }

    #[test]
    fn fallback_beyond_u128() {
        let f = odo(3, "(012)");
        let big = Rational::new(BigInt::from(1), BigInt::from(3u8) * (BigInt::one() << 140usize)) ;
        let mut orbit = Orbit::new(&f, &big).unwrap();
        assert!(!orbit.is_fast());
        let mut x = big;
        for _ in 0..100 {
            orbit.advance().unwrap();
            x = f.f_pi(&x).unwrap();
            assert_eq!(orbit.point(), x);
        }
    }

    #[test]
    fn single_step_trace() {
        let f = odo(3, "(012)");
        let x0 = rat(2, 3);
        let t = run_orbit(&f, &x0, 1).unwrap();
        assert_eq!(t.displacement, vec![0, -1]);
        assert!(run_orbit(&f, &x0, 0).is_err());
    }

    #[test]
    fn trace_step_law_and_windows() {
        let f = odo(5, "(02431)");
        let x0 = random_starts(5, 1, 1).remove(0);
        let t = run_orbit(&f, &x0, 5000).unwrap();
        assert!(t.displacement.windows(2).all(|w| (w[1] - w[0]).abs() == 1));
        assert_eq!(t.window_max.last().unwrap().end, 5000);
        assert_eq!(t.window_max.iter().map(|w| w.max_abs).max().unwrap(), t.max_abs());
        assert!(t.zero_returns.iter().all(|&k| t.displacement[k] == 0));
    }

    #[test]
    fn samples_are_reproducible_and_generic() {
        let a = random_starts(7, 42, 4);
        assert_eq!(a, random_starts(7, 42, 4));
        for x in &a {
            assert!(x < &Rational::one());
            assert!(x.denom() % BigInt::from(SAMPLING_PRIME) == BigInt::zero());
        }
    }
}
