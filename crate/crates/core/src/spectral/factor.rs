//! Factorization of monic integer polynomials into irreducibles.
//!
//! After removing the power of `x` and splitting into square-free parts, the
//! roots of each part are isolated numerically. Integer roots are confirmed by
//! exact evaluation; the remaining roots are grouped by a subset search around
//! an anchor root, in order of increasing size, keeping only conjugation-closed
//! subsets whose elementary symmetric functions round to integers. Every
//! candidate is confirmed by exact division, so the smallest hit is the minimal
//! polynomial of the anchor.

use super::numeric::Cx;
use super::poly::IntPoly;
use super::roots::{RootSet, DEFAULT_PRECISION, MAX_PRECISION};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// Largest number of roots the subset search is allowed to handle at once.
pub const SUBSET_SEARCH_LIMIT: usize = 26;

/// One conjugate root of an irreducible factor with its certificates.
#[derive(Clone, Debug)]
pub struct RootInfo {
    pub value: Cx,
    /// Enclosure radius scaled by `2^precision`.
    pub radius: BigInt,
    pub is_real: bool,
    /// Certified comparison of the modulus with 1, `None` if undecided at the
    /// maximum precision.
    pub vs_one: Option<Ordering>,
}

impl RootInfo {
    pub fn re(&self) -> f64 {
        self.value.re_f64()
    }

    pub fn im(&self) -> f64 {
        if self.is_real {
            0.0
        } else {
            self.value.im_f64()
        }
    }

    pub fn abs(&self) -> f64 {
        self.re().hypot(self.im())
    }
}

#[derive(Clone, Debug)]
pub struct Factor {
    pub poly: IntPoly,
    pub multiplicity: usize,
    pub roots: Vec<RootInfo>,
    pub precision: u32,
}

impl Factor {
    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    /// The exact root when the factor is linear.
    pub fn integer_root(&self) -> Option<BigInt> {
        (self.poly.degree() == 1).then(|| -&self.poly.coeffs()[0])
    }

    pub fn max_abs(&self) -> f64 {
        self.roots.iter().map(RootInfo::abs).fold(0.0, f64::max)
    }

    /// Index of the real root of largest value, if any.
    pub fn largest_real_root(&self) -> Option<usize> {
        (0..self.roots.len())
            .filter(|&i| self.roots[i].is_real)
            .max_by(|&a, &b| self.roots[a].re().total_cmp(&self.roots[b].re()))
    }
}

#[derive(Clone, Debug)]
pub struct Factorization {
    pub factors: Vec<Factor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorEntry {
    pub coefficients: IntPoly,
    pub multiplicity: usize,
}

impl Factorization {
    pub fn product(&self) -> IntPoly {
        self.factors.iter().fold(IntPoly::one(), |acc, f| acc.mul(&f.poly.pow(f.multiplicity)))
    }

    pub fn entries(&self) -> Vec<FactorEntry> {
        self.factors
            .iter()
            .map(|f| FactorEntry { coefficients: f.poly.clone(), multiplicity: f.multiplicity })
            .collect()
    }

    /// Multiset `(factor, multiplicity)` sorted canonically, for comparisons.
    pub fn canonical(&self) -> Vec<(IntPoly, usize)> {
        let mut v: Vec<(IntPoly, usize)> =
            self.factors.iter().map(|f| (f.poly.clone(), f.multiplicity)).collect();
        v.sort();
        v
    }

    /// Compact rendering such as `(x-4)(x+2)x^2`; the power of `x` comes last.
    pub fn display(&self) -> String {
        let mut out = String::new();
        let mut xpow = 0;
        for f in &self.factors {
            if f.poly == IntPoly::x() {
                xpow = f.multiplicity;
                continue;
            }
            out += &f.poly.factor_string();
            if f.multiplicity > 1 {
                out += &format!("^{}", f.multiplicity);
            }
        }
        match xpow {
            0 => {}
            1 => out += "x",
            k => out += &format!("x^{k}"),
        }
        if out.is_empty() {
            out = "1".into();
        }
        out
    }
}

/// Factor a monic polynomial at the default precision range.
pub fn factor_over_integers(p: &IntPoly) -> Result<Factorization> {
    factor_with_precision(p, DEFAULT_PRECISION, MAX_PRECISION)
}

pub fn factor_with_precision(p: &IntPoly, p0: u32, p_max: u32) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::FactorizationIncomplete("zero polynomial".into()));
    }
    if !p.lead().abs().is_one() {
        return Err(Error::FactorizationIncomplete(format!("{p} is not monic")));
    }
    let p = if p.lead().is_negative() { p.neg() } else { p.clone() };
    let (k, rest) = p.split_x_power();
    let mut factors = Vec::new();
    if k > 0 {
        let zero = Cx::zero(p0);
        factors.push(Factor {
            poly: IntPoly::x(),
            multiplicity: k,
            roots: vec![RootInfo { value: zero, radius: BigInt::zero(), is_real: true, vs_one: Some(Ordering::Less) }],
            precision: p0,
        });
    }
    if rest.degree() > 0 {
        for (g, mult) in rest.square_free_decomposition() {
            for h in split_square_free(&g, p0, p_max)? {
                factors.push(certify_factor(h, mult, p0, p_max)?);
            }
        }
    }
    factors.sort_by(|a, b| {
        let ax = a.poly == IntPoly::x();
        let bx = b.poly == IntPoly::x();
        ax.cmp(&bx)
            .then(a.degree().cmp(&b.degree()))
            .then(b.max_abs().total_cmp(&a.max_abs()))
            .then(a.poly.cmp(&b.poly))
    });
    let out = Factorization { factors };
    if out.product() != p {
        return Err(Error::FactorizationIncomplete(format!("product check failed for {p}")));
    }
    Ok(out)
}

/// Split a monic square-free polynomial into monic irreducible factors.
fn split_square_free(g: &IntPoly, p0: u32, p_max: u32) -> Result<Vec<IntPoly>> {
    let set = RootSet::isolate_adaptive(g, p0, p_max)?;
    let p = set.p;
    let mut remaining: Vec<usize> = (0..set.len()).collect();
    let mut cofactor = g.clone();
    let mut out = Vec::new();

    // Integer roots first, by exact evaluation at the nearest integer.
    remaining.retain(|&i| {
        let z = &set.roots[i];
        if z.im_f64().abs() > 0.25 {
            return true;
        }
        let k = round_fixed(&z.re, p);
        if g.eval(&k).is_zero() {
            let lin = IntPoly::linear(&k);
            if let Some(c) = cofactor.div_exact(&lin) {
                cofactor = c;
                out.push(lin);
                return false;
            }
        }
        true
    });

    let partner: Vec<usize> = (0..set.len()).map(|i| set.conjugate_partner(i)).collect();
    while !remaining.is_empty() {
        if cofactor.degree() == remaining.len() && remaining.len() <= 1 {
            break;
        }
        if remaining.len() > SUBSET_SEARCH_LIMIT {
            return Err(Error::FactorizationIncomplete(format!(
                "{} roots exceed the subset-search limit",
                remaining.len()
            )));
        }
        let anchor = remaining[0];
        let others: Vec<usize> = remaining[1..].to_vec();
        let mut found: Option<(Vec<usize>, IntPoly)> = None;
        'sizes: for size in 1..=remaining.len() / 2 {
            let mut idx: Vec<usize> = (0..size - 1).collect();
            loop {
                let mut subset = vec![anchor];
                subset.extend(idx.iter().map(|&t| others[t]));
                if is_conjugation_closed(&subset, &partner) && trace_near_integer(&set, &subset) {
                    if let Some(h) = product_if_integral(&set, &subset) {
                        if cofactor.div_exact(&h).is_some() {
                            found = Some((subset, h));
                            break 'sizes;
                        }
                    }
                }
                if !next_combination(&mut idx, others.len()) {
                    break;
                }
            }
        }
        match found {
            Some((subset, h)) => {
                cofactor = cofactor.div_exact(&h).expect("checked");
                remaining.retain(|i| !subset.contains(i));
                out.push(h);
            }
            None => break,
        }
    }
    if cofactor.degree() > 0 {
        out.push(cofactor);
    }
    Ok(out)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn is_conjugation_closed(subset: &[usize], partner: &[usize]) -> bool {
    subset.iter().all(|&i| subset.contains(&partner[i]))
}

fn trace_near_integer(set: &RootSet, subset: &[usize]) -> bool {
    let s: f64 = subset.iter().map(|&i| set.roots[i].re_f64()).sum();
    let mag: f64 = subset.iter().map(|&i| set.roots[i].abs_f64()).sum();
    (s - s.round()).abs() <= 1e-6 * (1.0 + mag)
}

fn round_fixed(v: &BigInt, p: u32) -> BigInt {
    (v + (BigInt::one() << (p - 1))) >> p
}

/// `∏ (x − z_i)` if all coefficients are within `2^{-p/4}` of integers.
fn product_if_integral(set: &RootSet, subset: &[usize]) -> Option<IntPoly> {
    let p = set.p;
    let mut c: Vec<Cx> = vec![Cx::from_int(&BigInt::one(), p)];
    for &i in subset {
        let z = &set.roots[i];
        let mut next = vec![Cx::zero(p); c.len() + 1];
        for (k, ck) in c.iter().enumerate() {
            next[k + 1] = next[k + 1].add(ck);
            next[k] = next[k].sub(&ck.mul(z));
        }
        c = next;
    }
    let tol = BigInt::one() << (p - p / 4);
    let mut ints = Vec::with_capacity(c.len());
    for ck in &c {
        let r = round_fixed(&ck.re, p);
        if (&ck.re - (&r << p)).abs() > tol || ck.im.abs() > tol {
            return None;
        }
        ints.push(r);
    }
    Some(IntPoly::new(ints))
}

/// Isolate the roots of an irreducible factor and certify realness and the
/// comparison with the unit circle, doubling precision as needed.
fn certify_factor(h: IntPoly, multiplicity: usize, p0: u32, p_max: u32) -> Result<Factor> {
    let mut p = p0;
    loop {
        let set = RootSet::isolate_adaptive(&h, p, p_max)?;
        let real: Vec<Option<bool>> = (0..set.len()).map(|i| set.is_real(i)).collect();
        let cmp: Vec<Option<Ordering>> = (0..set.len())
            .map(|i| {
                set.cmp_one_numeric(i)
                    .or_else(|| set.on_unit_circle(i).then_some(Ordering::Equal))
            })
            .collect();
        let decided = real.iter().all(Option::is_some) && cmp.iter().all(Option::is_some);
        if decided || set.p >= p_max {
            if real.iter().any(Option::is_none) {
                return Err(Error::PrecisionExhausted(format!("realness of roots of {h}")));
            }
            let roots = (0..set.len())
                .map(|i| RootInfo {
                    value: set.roots[i].clone(),
                    radius: set.radii[i].clone(),
                    is_real: real[i].expect("decided"),
                    vs_one: cmp[i],
                })
                .collect();
            return Ok(Factor { poly: h, multiplicity, roots, precision: set.p });
        }
        p = (set.p * 2).min(p_max);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn simple_factorizations() {
        let f = factor_over_integers(&poly(&[0, 0, -8, -2, 1])).unwrap();
        assert_eq!(f.display(), "(x-4)(x+2)x^2");
        let f = factor_over_integers(&poly(&[-6, -2, 1])).unwrap();
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.display(), "(x^2-2x-6)");
    }

    #[test]
    fn cubic_and_quadratic_factors() {
        // (x−16)(x³−8x²+16x−16)(x−1)²x⁶
        let p = poly(&[-16, 1])
            .mul(&poly(&[-16, 16, -8, 1]))
            .mul(&poly(&[-1, 1]).pow(2))
            .mul(&IntPoly::x().pow(6));
        let f = factor_over_integers(&p).unwrap();
        assert_eq!(f.product(), p);
        assert!(f.canonical().contains(&(poly(&[-16, 16, -8, 1]), 1)));
        assert!(f.canonical().contains(&(poly(&[-1, 1]), 2)));
        // (x²−7x+1)(x²+x+1)(x³−2x²−3x−1)
        let p = poly(&[1, -7, 1]).mul(&poly(&[1, 1, 1])).mul(&poly(&[-1, -3, -2, 1]));
        let f = factor_over_integers(&p).unwrap();
        assert_eq!(f.factors.len(), 3);
        let unit = f.factors.iter().find(|g| g.poly == poly(&[1, 1, 1])).unwrap();
        assert!(unit.roots.iter().all(|r| r.vs_one == Some(Ordering::Equal)));
    }

    #[test]
    fn irreducible_sextic_stays_whole() {
        // x^6 − 2 is irreducible; x^6 − 1 splits into four cyclotomic factors.
        assert_eq!(factor_over_integers(&poly(&[-2, 0, 0, 0, 0, 0, 1])).unwrap().factors.len(), 1);
        let f = factor_over_integers(&poly(&[-1, 0, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(f.factors.len(), 4);
    }
}
