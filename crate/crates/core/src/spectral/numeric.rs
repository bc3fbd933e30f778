//! Fixed-point complex arithmetic at a chosen binary precision.
//!
//! A value is stored as a pair of big integers scaled by `2^p`. Every
//! multiplication and division truncates once, so errors stay within a few
//! units of `2^{-p}` per operation; callers add explicit slack on top.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cx {
    pub re: BigInt,
    pub im: BigInt,
    pub p: u32,
}

impl Cx {
    pub fn zero(p: u32) -> Self {
        Self { re: BigInt::zero(), im: BigInt::zero(), p }
    }

    pub fn from_int(v: &BigInt, p: u32) -> Self {
        Self { re: v << p, im: BigInt::zero(), p }
    }

    pub fn from_rational(v: &BigRational, p: u32) -> Self {
        Self { re: (v.numer() << p) / v.denom(), im: BigInt::zero(), p }
    }

    pub fn from_f64(re: f64, im: f64, p: u32) -> Self {
        Self { re: f64_to_fixed(re, p), im: f64_to_fixed(im, p), p }
    }

    /// Re-express at a different precision.
    pub fn with_precision(&self, p: u32) -> Self {
        let conv = |v: &BigInt| if p >= self.p { v << (p - self.p) } else { v >> (self.p - p) };
        Self { re: conv(&self.re), im: conv(&self.im), p }
    }

    pub fn re_f64(&self) -> f64 {
        fixed_to_f64(&self.re, self.p)
    }

    pub fn im_f64(&self) -> f64 {
        fixed_to_f64(&self.im, self.p)
    }

    pub fn add(&self, o: &Cx) -> Cx {
        Cx { re: &self.re + &o.re, im: &self.im + &o.im, p: self.p }
    }

    pub fn sub(&self, o: &Cx) -> Cx {
        Cx { re: &self.re - &o.re, im: &self.im - &o.im, p: self.p }
    }

    pub fn mul(&self, o: &Cx) -> Cx {
        let re = (&self.re * &o.re - &self.im * &o.im) >> self.p;
        let im = (&self.re * &o.im + &self.im * &o.re) >> self.p;
        Cx { re, im, p: self.p }
    }

    pub fn div(&self, o: &Cx) -> Cx {
        let den = &o.re * &o.re + &o.im * &o.im;
        assert!(!den.is_zero(), "fixed-point division by zero");
        let nre = &self.re * &o.re + &self.im * &o.im;
        let nim = &self.im * &o.re - &self.re * &o.im;
        Cx { re: (nre << self.p) / &den, im: (nim << self.p) / &den, p: self.p }
    }

    pub fn conj(&self) -> Cx {
        Cx { re: self.re.clone(), im: -&self.im, p: self.p }
    }

    /// `|z|²` scaled by `2^{2p}` (exact).
    pub fn norm_sqr_raw(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Upper bound on `|z|` scaled by `2^p` (L1 norm).
    pub fn abs_bound_raw(&self) -> BigInt {
        self.re.abs() + self.im.abs()
    }

    pub fn abs_f64(&self) -> f64 {
        self.re_f64().hypot(self.im_f64())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Decimal rendering with `digits` digits after the point.
    pub fn to_decimal(&self, digits: usize) -> String {
        let re = fixed_to_decimal(&self.re, self.p, digits);
        if self.im.is_zero() {
            return re;
        }
        let im = fixed_to_decimal(&self.im.abs(), self.p, digits);
        let sign = if self.im.is_negative() { '-' } else { '+' };
        format!("{re}{sign}{im}i")
    }
}

/// Horner evaluation of a polynomial with integer coefficients (ascending).
pub fn eval_int_poly(coeffs: &[BigInt], z: &Cx) -> Cx {
    coeffs.iter().rev().fold(Cx::zero(z.p), |acc, c| acc.mul(z).add(&Cx::from_int(c, z.p)))
}

fn f64_to_fixed(v: f64, p: u32) -> BigInt {
    if v == 0.0 || !v.is_finite() {
        return BigInt::zero();
    }
    // v = m · 2^e exactly with integer m.
    let bits = v.abs().to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let (mant, e) = if exp == 0 {
        (bits & ((1u64 << 52) - 1), -1074)
    } else {
        ((bits & ((1u64 << 52) - 1)) | (1u64 << 52), exp - 1075)
    };
    let m = BigInt::from(mant);
    let shift = e + p as i64;
    let r = if shift >= 0 { m << shift as u64 } else { m >> (-shift) as u64 };
    if v < 0.0 {
        -r
    } else {
        r
    }
}

pub fn fixed_to_f64(v: &BigInt, p: u32) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        let shift = p.min(1000);
        let r = (v >> (p - shift)).to_f64().unwrap_or(0.0);
        r / 2f64.powi(shift as i32)
    } else {
        let drop = bits - 60;
        (v >> drop).to_f64().unwrap_or(0.0) * 2f64.powi(drop as i32 - p as i32)
    }
}

pub fn fixed_to_decimal(v: &BigInt, p: u32, digits: usize) -> String {
    let neg = v.is_negative();
    let a = v.abs();
    let scale = BigInt::from(10u32).pow(digits as u32);
    // round half up
    let scaled: BigInt = (((&a * &scale) << 1) + (BigInt::from(1) << p)) >> (p + 1);
    let ip: BigInt = &scaled / &scale;
    let fp: BigInt = &scaled % &scale;
    let s = if digits == 0 {
        ip.to_string()
    } else {
        format!("{ip}.{:0>width$}", fp.to_string(), width = digits)
    };
    if neg && !scaled.is_zero() {
        format!("-{s}")
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_round_trip() {
        let p = 128;
        let a = Cx::from_f64(1.5, -2.0, p);
        let b = Cx::from_f64(0.25, 3.0, p);
        let c = a.mul(&b).div(&b);
        assert!((c.re_f64() - 1.5).abs() < 1e-30);
        assert!((c.im_f64() + 2.0).abs() < 1e-30);
        assert_eq!(Cx::from_f64(-0.75, 0.0, p).to_decimal(3), "-0.750");
    }

    #[test]
    fn rational_conversion() {
        let r = BigRational::new(BigInt::from(1), BigInt::from(3));
        let z = Cx::from_rational(&r, 200);
        assert_eq!(z.to_decimal(10), "0.3333333333");
        assert_eq!(z.with_precision(64).to_decimal(5), "0.33333");
    }

    #[test]
    fn horner() {
        let c: Vec<BigInt> = [-6, -2, 1].iter().map(|&v| BigInt::from(v)).collect();
        let z = Cx::from_f64(1.0 + 7f64.sqrt(), 0.0, 64);
        assert!(eval_int_poly(&c, &z).abs_f64() < 1e-12);
    }
}
