//! Simultaneous root isolation for square-free integer polynomials.
//!
//! Roots are seeded by an `f64` Aberth iteration, polished by the same
//! iteration in fixed-point arithmetic, and then enclosed in disks of radius
//! `d·|W_i|` (Weierstrass corrections) plus a rounding slack of `2^{-p/2}`.
//! Pairwise disjoint disks each contain exactly one root.

use super::numeric::{eval_int_poly, Cx};
use super::poly::IntPoly;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

pub const DEFAULT_PRECISION: u32 = 256;
pub const MAX_PRECISION: u32 = 4096;

/// Isolated roots of a square-free polynomial at precision `p`.
#[derive(Clone, Debug)]
pub struct RootSet {
    pub poly: IntPoly,
    pub roots: Vec<Cx>,
    /// Enclosure radii scaled by `2^p`.
    pub radii: Vec<BigInt>,
    pub p: u32,
}

fn f64_seeds(f: &IntPoly) -> Vec<Complex64> {
    let d = f.degree();
    let lead = f.lead().to_f64().unwrap_or(1.0);
    let c: Vec<f64> = f.coeffs().iter().map(|v| v.to_f64().unwrap_or(f64::MAX) / lead).collect();
    // Cauchy bound on the root moduli.
    let bound = 1.0 + c[..d].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let r0 = bound.min(1e12) * 0.5 + 0.1;
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(r0, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64))
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &ck in c.iter().rev() {
            dp = dp * x + p;
            p = p * x + ck;
        }
        (p, dp)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (p, dp) = eval(z[i]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..d).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

impl RootSet {
    /// Isolate all roots of the square-free `f` at precision `p`; `None` when
    /// the enclosing disks are not pairwise disjoint.
    pub fn isolate(f: &IntPoly, p: u32) -> Option<RootSet> {
        let d = f.degree();
        assert!(d >= 1, "constant polynomial has no roots");
        if d == 1 {
            let c = f.coeffs();
            let r = num_rational::BigRational::new(-c[0].clone(), c[1].clone());
            return Some(RootSet {
                poly: f.clone(),
                roots: vec![Cx::from_rational(&r, p)],
                radii: vec![BigInt::from(2)],
                p,
            });
        }
        let seeds = f64_seeds(f);
        let mut z: Vec<Cx> = seeds.iter().map(|s| Cx::from_f64(s.re, s.im, p)).collect();
        // Jitter any coincident seeds so the Aberth sums stay finite.
        for i in 0..d {
            for j in 0..i {
                if z[i] == z[j] {
                    z[i] = z[i].add(&Cx::from_f64(1e-9 * (i as f64 + 1.0), 1e-9, p));
                }
            }
        }
        let coeffs = f.coeffs().to_vec();
        let dcoeffs = f.derivative().coeffs().to_vec();
        let tol = BigInt::one() << (p / 2 + p / 4).min(p);
        let tiny: BigInt = BigInt::one() << 8;
        for _ in 0..(60 + p as usize / 4) {
            let mut max_step = BigInt::zero();
            for i in 0..d {
                let fz = eval_int_poly(&coeffs, &z[i]);
                if fz.is_zero() {
                    continue;
                }
                let dfz = eval_int_poly(&dcoeffs, &z[i]);
                if dfz.is_zero() {
                    continue;
                }
                let ratio = fz.div(&dfz);
                let mut s = Cx::zero(p);
                let one = Cx::from_int(&BigInt::one(), p);
                for j in (0..d).filter(|&j| j != i) {
                    let diff = z[i].sub(&z[j]);
                    if diff.is_zero() {
                        continue;
                    }
                    s = s.add(&one.div(&diff));
                }
                let den = one.sub(&ratio.mul(&s));
                if den.is_zero() {
                    continue;
                }
                let w = ratio.div(&den);
                let step = w.abs_bound_raw();
                if step > max_step {
                    max_step = step;
                }
                z[i] = z[i].sub(&w);
            }
            // Steps are relative to 2^p; stop once they are far below 2^{-p/4}.
            if max_step < (&tol >> (p / 2)).max(tiny.clone()) {
                break;
            }
        }
        let radii = weierstrass_radii(f, &z);
        let set = RootSet { poly: f.clone(), roots: z, radii, p };
        set.disjoint().then_some(set)
    }

    /// Isolate with precision doubling from `p0` up to `p_max`.
    pub fn isolate_adaptive(f: &IntPoly, p0: u32, p_max: u32) -> Result<RootSet> {
        let mut p = p0;
        loop {
            if let Some(s) = RootSet::isolate(f, p) {
                return Ok(s);
            }
            if p >= p_max {
                return Err(Error::PrecisionExhausted(format!(
                    "roots of {f} not separated at {p} bits"
                )));
            }
            p = (p * 2).min(p_max);
        }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    fn disks_meet(&self, a: &Cx, ra: &BigInt, b: &Cx, rb: &BigInt) -> bool {
        let d = a.sub(b).norm_sqr_raw();
        let r = ra + rb;
        d <= &r * &r
    }

    fn disjoint(&self) -> bool {
        let n = self.roots.len();
        (0..n).all(|i| {
            (0..i).all(|j| !self.disks_meet(&self.roots[i], &self.radii[i], &self.roots[j], &self.radii[j]))
        })
    }

    /// `Some(true)` when root `i` is certified real, `Some(false)` when
    /// certified non-real, `None` if undecided at this precision.
    pub fn is_real(&self, i: usize) -> Option<bool> {
        let c = self.roots[i].conj();
        let alone = (0..self.len())
            .filter(|&j| j != i)
            .all(|j| !self.disks_meet(&c, &self.radii[i], &self.roots[j], &self.radii[j]));
        if alone {
            Some(true)
        } else if self.roots[i].im.abs() > self.radii[i] {
            Some(false)
        } else {
            None
        }
    }

    /// Index of the root in the disk that contains the conjugate of root `i`.
    pub fn conjugate_partner(&self, i: usize) -> usize {
        let c = self.roots[i].conj();
        (0..self.len())
            .min_by_key(|&j| c.sub(&self.roots[j]).norm_sqr_raw())
            .expect("nonempty")
    }

    /// Numeric comparison of `|root_i|` with 1 using the enclosure radius.
    pub fn cmp_one_numeric(&self, i: usize) -> Option<Ordering> {
        let one = BigInt::one() << self.p;
        let r = &self.radii[i];
        let n = self.roots[i].norm_sqr_raw();
        let hi = &one + r;
        if n > &hi * &hi {
            return Some(Ordering::Greater);
        }
        if r < &one {
            let lo = &one - r;
            if n < &lo * &lo {
                return Some(Ordering::Less);
            }
        }
        None
    }

    /// Exact certification of `|root_i| = 1`: real roots ±1 are checked by
    /// evaluation; a non-real root `z` of a self-reciprocal polynomial lies on
    /// the unit circle when the disk around `1/z` meets only the disk of `z̄`.
    pub fn on_unit_circle(&self, i: usize) -> bool {
        if self.is_real(i) == Some(true) {
            let x = self.roots[i].re_f64();
            let near = if x > 0.0 { 1 } else { -1 };
            return (x - near as f64).abs() < 0.5 && self.poly.eval(&BigInt::from(near)).is_zero();
        }
        let c = self.poly.coeffs();
        let rev: Vec<BigInt> = c.iter().rev().cloned().collect();
        let neg: Vec<BigInt> = c.iter().map(|v| -v).collect();
        if rev != c && rev != neg {
            return false;
        }
        let one = BigInt::one() << self.p;
        if &self.radii[i] * 4 >= one {
            return false;
        }
        let inv = Cx::from_int(&BigInt::one(), self.p).div(&self.roots[i]);
        let rinv = &self.radii[i] * 4 + BigInt::from(4);
        let partner = self.conjugate_partner(i);
        if partner == i {
            return false;
        }
        (0..self.len()).all(|j| {
            j == partner || !self.disks_meet(&inv, &rinv, &self.roots[j], &self.radii[j])
        }) && self.disks_meet(&inv, &rinv, &self.roots[partner], &self.radii[partner])
    }
}

fn weierstrass_radii(f: &IntPoly, z: &[Cx]) -> Vec<BigInt> {
    let d = z.len();
    let p = z[0].p;
    let lead = Cx::from_int(f.lead(), p);
    let slack = BigInt::one() << (p - p / 2);
    (0..d)
        .map(|i| {
            let fz = eval_int_poly(f.coeffs(), &z[i]);
            let mut den = lead.clone();
            for j in (0..d).filter(|&j| j != i) {
                den = den.mul(&z[i].sub(&z[j]));
            }
            if den.is_zero() {
                return BigInt::one() << (p + 64);
            }
            let w = fz.div(&den);
            (w.abs_bound_raw() + BigInt::from(4)) * BigInt::from(d) + &slack
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn quadratic_roots_and_realness() {
        let s = RootSet::isolate_adaptive(&poly(&[-1, -4, 1]), 256, 4096).unwrap();
        let mut vals: Vec<f64> = s.roots.iter().map(Cx::re_f64).collect();
        vals.sort_by(f64::total_cmp);
        assert!((vals[0] - (2.0 - 5f64.sqrt())).abs() < 1e-14);
        assert!((vals[1] - (2.0 + 5f64.sqrt())).abs() < 1e-14);
        assert!((0..2).all(|i| s.is_real(i) == Some(true)));
    }

    #[test]
    fn cubic_moduli() {
        let s = RootSet::isolate_adaptive(&poly(&[-16, 16, -8, 1]), 256, 4096).unwrap();
        let mut real = 0;
        for i in 0..3 {
            match s.is_real(i) {
                Some(true) => {
                    real += 1;
                    assert!((s.roots[i].re_f64() - 5.6786).abs() < 1e-3);
                }
                Some(false) => {
                    assert!((s.roots[i].abs_f64() - 1.6785).abs() < 1e-3);
                    assert_eq!(s.cmp_one_numeric(i), Some(Ordering::Greater));
                }
                None => panic!("undecided"),
            }
        }
        assert_eq!(real, 1);
    }

    #[test]
    fn unit_circle_certificates() {
        let s = RootSet::isolate_adaptive(&poly(&[1, 1, 1]), 256, 4096).unwrap();
        assert!((0..2).all(|i| s.is_real(i) == Some(false)));
        assert!((0..2).all(|i| s.cmp_one_numeric(i).is_none()));
        assert!((0..2).all(|i| s.on_unit_circle(i)));
        let s = RootSet::isolate_adaptive(&poly(&[1, 1]), 256, 4096).unwrap();
        assert!(s.on_unit_circle(0));
        // Salem-type quartic x^4 − x^3 − x^2 − x + 1 has two roots on the circle.
        let s = RootSet::isolate_adaptive(&poly(&[1, -1, -1, -1, 1]), 256, 4096).unwrap();
        let on = (0..4).filter(|&i| s.on_unit_circle(i)).count();
        assert_eq!(on, 2);
    }

    #[test]
    fn clustered_roots_need_more_bits() {
        // (x − 1)(x − 1 − 2^{-200}) scaled to integers: 2^200 x^2 − (2^201 + 1) x + 2^200 + 1
        let t: BigInt = BigInt::one() << 200;
        let two_t: BigInt = &t << 1;
        let one = BigInt::one();
        let f = IntPoly::new(vec![&t + &one, -(two_t + &one), t.clone()]);
        let s = RootSet::isolate_adaptive(&f, 256, 4096).unwrap();
        assert!(s.p > 256);
    }
}
