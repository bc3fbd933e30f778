//! Eigen-data of an associated matrix: every eigenvalue with its exact
//! minimal polynomial, multiplicities, a basis of left eigenvectors over the
//! number field, and the ψ-weights of those eigenvectors.

use super::factor::{factor_with_precision, Factor, Factorization, RootInfo};
use super::field::{FieldElem, NumberField};
use super::matrix::IntMatrix;
use super::numeric::Cx;
use super::poly::IntPoly;
use super::roots::{DEFAULT_PRECISION, MAX_PRECISION};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// All conjugate eigenvalues sharing one irreducible factor of the
/// characteristic polynomial.
#[derive(Clone, Debug)]
pub struct EigenClass {
    pub factor: Factor,
    pub field: NumberField,
    pub geometric_multiplicity: usize,
    /// Left eigenvectors over `ℚ(α)`, first nonzero entry 1.
    pub basis: Vec<Vec<FieldElem>>,
    /// `ψ(ℓ)` for each basis vector, exact.
    pub weights: Vec<FieldElem>,
}

impl EigenClass {
    pub fn minimal_poly(&self) -> &IntPoly {
        &self.factor.poly
    }

    pub fn algebraic_multiplicity(&self) -> usize {
        self.factor.multiplicity
    }

    pub fn is_semisimple(&self) -> bool {
        self.geometric_multiplicity == self.algebraic_multiplicity()
    }

    /// ψ vanishes on the whole eigenspace (exact, and the same for every conjugate).
    pub fn weight_zero(&self) -> bool {
        self.weights.iter().all(|w| self.field.is_zero(w))
    }

    pub fn is_zero_eigenvalue(&self) -> bool {
        self.factor.poly == IntPoly::x()
    }

    pub fn roots(&self) -> &[RootInfo] {
        &self.factor.roots
    }

    /// Numeric weights of the basis vectors at conjugate `r`.
    pub fn numeric_weights(&self, r: usize) -> Vec<Cx> {
        let z = &self.factor.roots[r].value;
        self.weights.iter().map(|w| self.field.embed(w, z)).collect()
    }

    /// Numeric components of basis vector `k` at conjugate `r`.
    pub fn numeric_vector(&self, r: usize, k: usize) -> Vec<Cx> {
        let z = &self.factor.roots[r].value;
        self.basis[k].iter().map(|c| self.field.embed(c, z)).collect()
    }
}

/// Handle on a single eigenvalue: class index and conjugate index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EigenRef {
    pub class: usize,
    pub root: usize,
}

#[derive(Clone, Debug)]
pub struct SpectralData {
    pub dim: usize,
    pub char_poly: IntPoly,
    pub factorization: Factorization,
    pub classes: Vec<EigenClass>,
    pub letter_weights: Vec<BigInt>,
}

/// Serializable summary of one eigenvalue.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenSummary {
    pub minimal_polynomial: IntPoly,
    /// Exact value when rational, otherwise a decimal approximation.
    pub value: String,
    pub re: f64,
    pub im: f64,
    pub abs: f64,
    pub algebraic_multiplicity: usize,
    pub geometric_multiplicity: usize,
    pub weight_zero: bool,
    /// Numeric weights of the normalized eigenvectors (real parts).
    pub weights: Vec<f64>,
    /// Imaginary parts of the weights (all zero for real eigenvalues).
    pub weights_im: Vec<f64>,
    pub precision_bits: u32,
}

/// Characteristic polynomial, its factorization and left eigen-data;
/// `letter_weights` define `ψ(ℓ) = Σ ℓ_a s_a`.
pub fn eigen_data(m: &IntMatrix, letter_weights: &[BigInt]) -> Result<SpectralData> {
    eigen_data_with_precision(m, letter_weights, DEFAULT_PRECISION, MAX_PRECISION)
}

pub fn eigen_data_with_precision(
    m: &IntMatrix,
    letter_weights: &[BigInt],
    p0: u32,
    p_max: u32,
) -> Result<SpectralData> {
    assert_eq!(letter_weights.len(), m.dim(), "weight vector length");
    let char_poly = IntPoly::char_poly(m);
    let factorization = factor_with_precision(&char_poly, p0, p_max)?;
    let classes = factorization
        .factors
        .iter()
        .map(|f| {
            let field = NumberField::new(&f.poly);
            let basis = field.left_eigenspace(m);
            if basis.is_empty() || basis.len() > f.multiplicity {
                return Err(Error::CertificationFailed(format!(
                    "eigenspace of {} has dimension {} for multiplicity {}",
                    f.poly,
                    basis.len(),
                    f.multiplicity
                )));
            }
            let weights = basis.iter().map(|v| field.dot_int(v, letter_weights)).collect();
            Ok(EigenClass {
                factor: f.clone(),
                field,
                geometric_multiplicity: basis.len(),
                basis,
                weights,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectralData { dim: m.dim(), char_poly, factorization, classes, letter_weights: letter_weights.to_vec() })
}

impl SpectralData {
    pub fn class(&self, e: EigenRef) -> &EigenClass {
        &self.classes[e.class]
    }

    pub fn root(&self, e: EigenRef) -> &RootInfo {
        &self.classes[e.class].factor.roots[e.root]
    }

    /// Every distinct eigenvalue, ordered by decreasing modulus (ties: real
    /// positive first, then by decreasing real part).
    pub fn ordered(&self) -> Vec<EigenRef> {
        let mut v: Vec<EigenRef> = self
            .classes
            .iter()
            .enumerate()
            .flat_map(|(c, cl)| (0..cl.factor.roots.len()).map(move |r| EigenRef { class: c, root: r }))
            .collect();
        v.sort_by(|a, b| {
            let (ra, rb) = (self.root(*a), self.root(*b));
            rb.abs()
                .total_cmp(&ra.abs())
                .then(rb.re().total_cmp(&ra.re()))
                .then(ra.im().total_cmp(&rb.im()))
        });
        v
    }

    /// The Perron eigenvalue: the largest real root (it equals the spectral
    /// radius of a nonnegative matrix).
    pub fn leading(&self) -> Option<EigenRef> {
        self.ordered().into_iter().find(|e| self.root(*e).is_real && self.root(*e).re() > 0.0)
    }

    /// The eigenvalue following the leading one in the modulus order.
    pub fn second(&self) -> Option<EigenRef> {
        let lead = self.leading()?;
        self.ordered().into_iter().find(|e| *e != lead)
    }

    /// Leading eigenvalue is simple and strictly dominates every other modulus.
    pub fn leading_simple_dominant(&self) -> bool {
        let Some(lead) = self.leading() else { return false };
        if self.class(lead).algebraic_multiplicity() != 1 {
            return false;
        }
        let l = self.root(lead).abs();
        self.ordered().iter().filter(|e| **e != lead).all(|e| self.root(*e).abs() < l * (1.0 - 1e-12))
    }

    /// Algebraic = geometric multiplicity for every nonzero eigenvalue.
    pub fn semisimple_nonzero(&self) -> bool {
        self.classes.iter().filter(|c| !c.is_zero_eigenvalue()).all(EigenClass::is_semisimple)
    }

    pub fn semisimple(&self) -> bool {
        self.classes.iter().all(EigenClass::is_semisimple)
    }

    /// Multiset of eigenvalues with algebraic multiplicity, as `(re, im)`.
    pub fn eigenvalue_multiset(&self) -> Vec<(f64, f64)> {
        let mut v = Vec::new();
        for c in &self.classes {
            for r in c.roots() {
                for _ in 0..c.algebraic_multiplicity() {
                    v.push((r.re(), r.im()));
                }
            }
        }
        v.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        v
    }

    pub fn summary(&self, e: EigenRef) -> EigenSummary {
        let c = self.class(e);
        let r = self.root(e);
        let w = c.numeric_weights(e.root);
        let value = match c.factor.integer_root() {
            Some(k) => k.to_string(),
            None if r.is_real => super::numeric::fixed_to_decimal(&r.value.re, r.value.p, 12),
            None => r.value.to_decimal(12),
        };
        EigenSummary {
            minimal_polynomial: c.factor.poly.clone(),
            value,
            re: r.re(),
            im: r.im(),
            abs: r.abs(),
            algebraic_multiplicity: c.algebraic_multiplicity(),
            geometric_multiplicity: c.geometric_multiplicity,
            weight_zero: c.weight_zero(),
            weights: w.iter().map(Cx::re_f64).collect(),
            weights_im: w.iter().map(|z| if r.is_real { 0.0 } else { z.im_f64() }).collect(),
            precision_bits: c.factor.precision,
        }
    }

    pub fn summaries(&self) -> Vec<EigenSummary> {
        self.ordered().into_iter().map(|e| self.summary(e)).collect()
    }

    /// Maximum of `|ℓM − λℓ|` over all numeric eigenvectors.
    pub fn max_residual(&self, m: &IntMatrix) -> f64 {
        let mut worst: f64 = 0.0;
        for (ci, c) in self.classes.iter().enumerate() {
            for r in 0..c.factor.roots.len() {
                let z = &self.root(EigenRef { class: ci, root: r }).value;
                for k in 0..c.basis.len() {
                    let v = c.numeric_vector(r, k);
                    for j in 0..m.dim() {
                        let mut s = Cx::zero(z.p);
                        for (i, vi) in v.iter().enumerate() {
                            s = s.add(&vi.mul(&Cx::from_int(m.get(i, j), z.p)));
                        }
                        worst = worst.max(s.sub(&z.mul(&v[j])).abs_f64());
                    }
                }
            }
        }
        worst
    }
}

/// Outcome of a certified Pisot test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PisotOutcome {
    Pisot,
    NotPisot,
}

/// Real root `r` of `class` exceeds 1 and all its conjugates lie strictly
/// inside the unit circle. With `absolute`, `|λ| > 1` replaces `λ > 1`.
pub fn pisot_check(class: &EigenClass, r: usize, absolute: bool) -> Result<PisotOutcome> {
    let root = &class.factor.roots[r];
    if !root.is_real {
        return Ok(PisotOutcome::NotPisot);
    }
    if !absolute && root.re() <= 0.0 {
        return Ok(PisotOutcome::NotPisot);
    }
    match root.vs_one {
        Some(Ordering::Greater) => {}
        Some(_) => return Ok(PisotOutcome::NotPisot),
        None => {
            return Err(Error::CertificationFailed(format!(
                "modulus of a root of {} against 1",
                class.factor.poly
            )))
        }
    }
    for (i, other) in class.factor.roots.iter().enumerate() {
        if i == r {
            continue;
        }
        match other.vs_one {
            Some(Ordering::Less) => {}
            Some(_) => return Ok(PisotOutcome::NotPisot),
            None => {
                return Err(Error::CertificationFailed(format!(
                    "conjugate modulus of {} against 1",
                    class.factor.poly
                )))
            }
        }
    }
    Ok(PisotOutcome::Pisot)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn signs(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn eigen_data_of_three_cycle() {
        let m = IntMatrix::from_i64_rows(&[vec![1, 0, 1, 2], vec![1, 0, 1, 2], vec![1, 0, 1, 2], vec![2, 2, 0, 0]]);
        let sd = eigen_data(&m, &signs(&[1, 1, -1, -1])).unwrap();
        assert_eq!(sd.factorization.display(), "(x-4)(x+2)x^2");
        let lead = sd.leading().unwrap();
        assert_eq!(sd.class(lead).factor.integer_root(), Some(BigInt::from(4)));
        assert!(sd.class(lead).weight_zero());
        let second = sd.second().unwrap();
        assert_eq!(sd.class(second).factor.integer_root(), Some(BigInt::from(-2)));
        assert!(!sd.class(second).weight_zero());
        assert!(sd.semisimple_nonzero());
        assert!(sd.leading_simple_dominant());
        assert!(sd.max_residual(&m) < 1e-30);
    }

    #[test]
    fn pisot_examples() {
        let m = IntMatrix::from_i64_rows(&[vec![4, 1], vec![1, 0]]); // x² − 4x − 1
        let sd = eigen_data(&m, &signs(&[1, -1])).unwrap();
        let lead = sd.leading().unwrap();
        assert_eq!(pisot_check(sd.class(lead), lead.root, false).unwrap(), PisotOutcome::Pisot);
        // companion of x³ − 8x² + 16x − 16
        let m = IntMatrix::from_i64_rows(&[vec![8, 1, 0], vec![-16, 0, 1], vec![16, 0, 0]]);
        let sd = eigen_data(&m, &signs(&[1, 1, -1])).unwrap();
        let lead = sd.leading().unwrap();
        assert!((sd.root(lead).re() - 5.6786).abs() < 1e-3);
        assert_eq!(pisot_check(sd.class(lead), lead.root, false).unwrap(), PisotOutcome::NotPisot);
    }

    #[test]
    fn defective_eigenvalue_detected() {
        let m = IntMatrix::from_i64_rows(&[vec![2, 1], vec![0, 2]]);
        let sd = eigen_data(&m, &signs(&[1, -1])).unwrap();
        assert_eq!(sd.classes[0].algebraic_multiplicity(), 2);
        assert_eq!(sd.classes[0].geometric_multiplicity, 1);
        assert!(!sd.semisimple_nonzero());
    }
}
