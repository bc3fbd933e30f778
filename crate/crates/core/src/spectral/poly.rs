//! Integer polynomials (ascending coefficients) and the rational-coefficient
//! helpers needed for gcds and square-free decomposition.

use super::matrix::{bigint_from_json, bigint_to_json, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `x − r`.
    pub fn linear(r: &BigInt) -> Self {
        Self::new(vec![-r.clone(), BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        assert!(!self.is_zero(), "degree of the zero polynomial");
        self.coeffs.len() - 1
    }

    pub fn lead(&self) -> &BigInt {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.lead().is_one()
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = BigInt::zero();
        IntPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::new(c)
    }

    pub fn pow(&self, e: usize) -> IntPoly {
        (0..e).fold(IntPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect(),
        )
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lead().is_negative() {
            g = -g;
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Exact quotient in ℤ[x], or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dd = d.degree();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            let (qk, r) = top.div_rem(d.lead());
            if !r.is_zero() {
                return None;
            }
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &qk * c;
            }
            quot[k] = qk;
        }
        rem.iter().all(Zero::is_zero).then(|| IntPoly::new(quot))
    }

    /// Multiplicity of the root 0 and the cofactor.
    pub fn split_x_power(&self) -> (usize, IntPoly) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (k, IntPoly::new(self.coeffs[k..].to_vec()))
    }

    pub fn to_rational(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    /// Primitive gcd in ℤ[x] (positive leading coefficient).
    pub fn gcd(&self, o: &IntPoly) -> IntPoly {
        QPoly::gcd(&self.to_rational(), &o.to_rational()).to_primitive_int()
    }

    /// Yun's square-free decomposition of a primitive polynomial: `(g_i, i)` with
    /// `self = ∏ g_i^i` up to a unit.
    pub fn square_free_decomposition(&self) -> Vec<(IntPoly, usize)> {
        let f = self.primitive();
        if f.degree() == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).expect("gcd divides");
        let mut c = df.to_rational().div_exact_q(&a0.to_rational());
        let mut d = c.sub(&b.derivative().to_rational());
        let mut i = 1;
        loop {
            let a = if d.is_zero() {
                b.clone()
            } else {
                b.gcd(&d.to_primitive_int())
            };
            if a.degree() > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).expect("gcd divides");
            if b.degree() == 0 {
                break;
            }
            c = d.div_exact_q(&a.to_rational());
            d = c.sub(&b.derivative().to_rational());
            i += 1;
        }
        out
    }

    /// Characteristic polynomial `det(xI − M)` by Faddeev–LeVerrier; every
    /// division in the recurrence is exact over ℤ.
    pub fn char_poly(m: &IntMatrix) -> IntPoly {
        let n = m.dim();
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut mk = IntMatrix::zeros(n, n); // M_0 = 0
        for k in 1..=n {
            // M_k = M·M_{k−1} + c_{n−k+1} I
            let mut next = m.mul(&mk);
            for i in 0..n {
                let v = next.get(i, i) + &coeffs[n - k + 1];
                next.set(i, i, v);
            }
            let am = m.mul(&next);
            let tr: BigInt = (0..n).map(|i| am.get(i, i).clone()).sum();
            let (c, r) = (-tr).div_rem(&BigInt::from(k));
            debug_assert!(r.is_zero(), "Faddeev–LeVerrier division must be exact");
            coeffs[n - k] = c;
            mk = next;
        }
        IntPoly::new(coeffs)
    }

    /// Whether every root is a root of unity (`x^k ≡ 1 mod self` for some k).
    pub fn is_cyclotomic(&self) -> bool {
        if !self.is_monic() || self.degree() == 0 || self.coeffs[0].is_zero() {
            return false;
        }
        let f = self.to_rational();
        let d = self.degree();
        let x = QPoly::new(vec![BigRational::zero(), BigRational::one()]);
        let mut p = QPoly::one().rem(&f);
        // φ(k) = d forces k ≤ 6d² comfortably for the degrees that occur.
        for _ in 1..=(6 * d * d).max(6) {
            p = p.mul(&x).rem(&f);
            if p == QPoly::one() {
                return true;
            }
        }
        false
    }

    /// Compact rendering of a factor: `x`, `(x-4)`, `(x^2-2x-6)`.
    pub fn factor_string(&self) -> String {
        if *self == IntPoly::x() {
            "x".into()
        } else {
            format!("({})", self.compact())
        }
    }

    pub fn compact(&self) -> String {
        self.to_string().replace(' ', "")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            let mag = if a.is_one() && i > 0 { String::new() } else { a.to_string() };
            if first {
                write!(f, "{}{mag}{mono}", if neg { "-" } else { "" })?;
                first = false;
            } else {
                write!(f, " {} {mag}{mono}", if neg { "-" } else { "+" })?;
            }
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<serde_json::Value> = self.coeffs.iter().map(bigint_to_json).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<serde_json::Value>::deserialize(d)?;
        let c: Option<Vec<BigInt>> = v.iter().map(bigint_from_json).collect();
        Ok(IntPoly::new(c.ok_or_else(|| D::Error::custom("bad coefficient"))?))
    }
}

/// Polynomials over ℚ (ascending coefficients).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    c: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Self { c }
    }

    pub fn one() -> Self {
        Self::new(vec![BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        let n = self.c.len().max(o.c.len());
        let z = BigRational::zero();
        QPoly::new((0..n).map(|i| self.c.get(i).unwrap_or(&z) - o.c.get(i).unwrap_or(&z)).collect())
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::new(Vec::new());
        }
        let mut c = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        QPoly::new(c)
    }

    pub fn scale(&self, k: &BigRational) -> QPoly {
        QPoly::new(self.c.iter().map(|a| a * k).collect())
    }

    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.c.clone();
        if r.len() < d.c.len() {
            return (QPoly::new(Vec::new()), self.clone());
        }
        let dd = d.c.len() - 1;
        let inv = d.c[dd].recip();
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let qk = &r[k + dd] * &inv;
            if !qk.is_zero() {
                for (i, ci) in d.c.iter().enumerate() {
                    r[k + i] -= &qk * ci;
                }
            }
            q[k] = qk;
        }
        r.truncate(dd);
        (QPoly::new(q), QPoly::new(r))
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.div_rem(d).1
    }

    fn div_exact_q(&self, d: &QPoly) -> QPoly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    pub fn monic(&self) -> QPoly {
        let lead = self.c.last().expect("nonzero").recip();
        self.scale(&lead)
    }

    pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// `(g, s, t)` with `s·a + t·b = g = gcd(a, b)` (monic).
    pub fn ext_gcd(a: &QPoly, b: &QPoly) -> (QPoly, QPoly, QPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (QPoly::one(), QPoly::new(Vec::new()));
        let (mut t0, mut t1) = (QPoly::new(Vec::new()), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let lead = r0.c.last().expect("gcd of zero polynomials").recip();
        (r0.scale(&lead), s0.scale(&lead), t0.scale(&lead))
    }

    /// Clear denominators and content.
    pub fn to_primitive_int(&self) -> IntPoly {
        let l = self.c.iter().fold(BigInt::one(), |l, a| l.lcm(a.denom()));
        IntPoly::new(self.c.iter().map(|a| (a * BigRational::from_integer(l.clone())).to_integer()).collect())
            .primitive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_poly_small() {
        let m = IntMatrix::from_i64_rows(&[vec![1, 0, 1, 2], vec![1, 0, 1, 2], vec![1, 0, 1, 2], vec![2, 2, 0, 0]]);
        assert_eq!(IntPoly::char_poly(&m), IntPoly::from_i64(&[0, 0, -8, -2, 1]));
        assert_eq!(IntPoly::char_poly(&IntMatrix::zeros(3, 3)), IntPoly::from_i64(&[0, 0, 0, 1]));
    }

    #[test]
    fn char_poly_matches_determinant_oracle() {
        // det(tI − M) at integer points, by Bareiss, versus the polynomial.
        let m = IntMatrix::from_i64_rows(&[
            vec![1, 1, 1, 1, 0, 1],
            vec![1, 0, 1, 0, 0, 1],
            vec![2, 1, 0, 1, 0, 1],
            vec![2, 1, 0, 1, 0, 1],
            vec![3, 5, 2, 1, 8, 5],
            vec![1, 1, 0, 1, 0, 0],
        ]);
        let p = IntPoly::char_poly(&m);
        for t in -4..=9i64 {
            let tb = BigInt::from(t);
            let neg = IntMatrix::from_fn(6, 6, |i, j| {
                let d = if i == j { tb.clone() } else { BigInt::zero() };
                d - m.get(i, j)
            });
            assert_eq!(p.eval(&tb), neg.det(), "t = {t}");
        }
    }

    #[test]
    fn exact_division_and_display() {
        let p = IntPoly::from_i64(&[0, 0, -8, -2, 1]);
        let q = p.div_exact(&IntPoly::linear(&BigInt::from(4))).unwrap();
        assert_eq!(q, IntPoly::from_i64(&[0, 0, 2, 1]));
        assert!(p.div_exact(&IntPoly::linear(&BigInt::from(3))).is_none());
        assert_eq!(p.to_string(), "x^4 - 2x^3 - 8x^2");
        assert_eq!(IntPoly::from_i64(&[-16, 16, -8, 1]).factor_string(), "(x^3-8x^2+16x-16)");
        assert_eq!(IntPoly::x().factor_string(), "x");
    }

    #[test]
    fn square_free() {
        // (x−4)²(x+1)³(x²−2)
        let f = IntPoly::linear(&BigInt::from(4))
            .pow(2)
            .mul(&IntPoly::linear(&BigInt::from(-1)).pow(3))
            .mul(&IntPoly::from_i64(&[-2, 0, 1]));
        let sf = f.square_free_decomposition();
        assert_eq!(
            sf,
            vec![
                (IntPoly::from_i64(&[-2, 0, 1]), 1),
                (IntPoly::linear(&BigInt::from(4)), 2),
                (IntPoly::linear(&BigInt::from(-1)), 3)
            ]
        );
    }

    #[test]
    fn cyclotomic_detection() {
        assert!(IntPoly::from_i64(&[1, 1, 1]).is_cyclotomic());
        assert!(IntPoly::from_i64(&[-1, 1]).is_cyclotomic());
        assert!(IntPoly::from_i64(&[1, 1]).is_cyclotomic());
        assert!(!IntPoly::from_i64(&[-1, -4, 1]).is_cyclotomic());
        assert!(!IntPoly::x().is_cyclotomic());
    }

    #[test]
    fn extended_gcd() {
        let a = IntPoly::from_i64(&[-1, -4, 1]).to_rational();
        let b = IntPoly::from_i64(&[3, 1]).to_rational();
        let (g, s, t) = QPoly::ext_gcd(&a, &b);
        assert_eq!(g, QPoly::one());
        assert_eq!(s.mul(&a).sub(&t.mul(&b).scale(&-BigRational::one())), QPoly::one());
    }
}
