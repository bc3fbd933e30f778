//! Exact arithmetic in `ℚ(α) = ℚ[x]/(f)` for an irreducible `f`, and
//! Gaussian elimination over it.

use super::matrix::IntMatrix;
use super::numeric::Cx;
use super::poly::{IntPoly, QPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Element of a number field: coefficients of `1, α, …, α^{d−1}`.
pub type FieldElem = Vec<BigRational>;

#[derive(Clone, Debug)]
pub struct NumberField {
    modulus: QPoly,
    degree: usize,
}

impl NumberField {
    pub fn new(f: &IntPoly) -> Self {
        let modulus = f.to_rational().monic();
        let degree = modulus.degree();
        assert!(degree >= 1, "number field of a constant polynomial");
        Self { modulus, degree }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn reduce_qpoly(&self, p: &QPoly) -> FieldElem {
        let r = p.rem(&self.modulus);
        let mut c = r.coeffs().to_vec();
        c.resize(self.degree, BigRational::zero());
        c
    }

    pub fn zero(&self) -> FieldElem {
        vec![BigRational::zero(); self.degree]
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(&BigInt::one())
    }

    pub fn from_int(&self, v: &BigInt) -> FieldElem {
        let mut c = self.zero();
        c[0] = BigRational::from_integer(v.clone());
        c
    }

    /// The generator `α` (the class of `x`).
    pub fn alpha(&self) -> FieldElem {
        self.reduce_qpoly(&QPoly::new(vec![BigRational::zero(), BigRational::one()]))
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        a.iter().all(Zero::is_zero)
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.reduce_qpoly(&QPoly::new(a.clone()).mul(&QPoly::new(b.clone())))
    }

    pub fn scale_int(&self, a: &FieldElem, k: &BigInt) -> FieldElem {
        let k = BigRational::from_integer(k.clone());
        a.iter().map(|x| x * &k).collect()
    }

    pub fn inv(&self, a: &FieldElem) -> FieldElem {
        assert!(!self.is_zero(a), "inverse of zero");
        let (g, s, _) = QPoly::ext_gcd(&QPoly::new(a.clone()), &self.modulus);
        debug_assert_eq!(g, QPoly::one(), "modulus must be irreducible");
        self.reduce_qpoly(&s)
    }

    /// Numeric value at the conjugate embedding `α ↦ z`.
    pub fn embed(&self, a: &FieldElem, z: &Cx) -> Cx {
        a.iter()
            .rev()
            .fold(Cx::zero(z.p), |acc, c| acc.mul(z).add(&Cx::from_rational(c, z.p)))
    }

    /// Basis of the right nullspace of `A`, whose rows are given.
    pub fn nullspace(&self, mut a: Vec<Vec<FieldElem>>) -> Vec<Vec<FieldElem>> {
        let rows = a.len();
        let cols = if rows == 0 { 0 } else { a[0].len() };
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(pr) = (r..rows).find(|&i| !self.is_zero(&a[i][c])) else {
                continue;
            };
            a.swap(r, pr);
            let inv = self.inv(&a[r][c]);
            for j in c..cols {
                a[r][j] = self.mul(&a[r][j], &inv);
            }
            for i in 0..rows {
                if i != r && !self.is_zero(&a[i][c]) {
                    let factor = a[i][c].clone();
                    for j in c..cols {
                        let t = self.mul(&factor, &a[r][j]);
                        a[i][j] = self.sub(&a[i][j], &t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.zero(); cols];
                v[f] = self.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.sub(&self.zero(), &a[i][f]);
                }
                v
            })
            .collect()
    }

    /// Left eigenvectors of `m` for the eigenvalue `α`: a basis of
    /// `{ℓ : ℓM = αℓ}`, each normalized so its first nonzero entry is 1.
    pub fn left_eigenspace(&self, m: &IntMatrix) -> Vec<Vec<FieldElem>> {
        let n = m.dim();
        let alpha = self.alpha();
        // (Mᵀ − αI) ℓᵀ = 0
        let rows: Vec<Vec<FieldElem>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let e = self.from_int(m.get(j, i));
                        if i == j {
                            self.sub(&e, &alpha)
                        } else {
                            e
                        }
                    })
                    .collect()
            })
            .collect();
        self.nullspace(rows)
            .into_iter()
            .map(|v| {
                let lead = v.iter().find(|x| !self.is_zero(x)).expect("nonzero vector");
                let inv = self.inv(lead);
                v.iter().map(|x| self.mul(x, &inv)).collect()
            })
            .collect()
    }

    /// `Σ v_a w_a` with integer weights `w`.
    pub fn dot_int(&self, v: &[FieldElem], w: &[BigInt]) -> FieldElem {
        v.iter().zip(w).fold(self.zero(), |acc, (x, k)| self.add(&acc, &self.scale_int(x, k)))
    }

    /// Rendering of an element as a polynomial in `a`.
    pub fn format(&self, e: &FieldElem) -> String {
        let mut parts = Vec::new();
        for (i, c) in e.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match i {
                0 => c.to_string(),
                1 => format!("({c})a"),
                _ => format!("({c})a^{i}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_in_quadratic_field() {
        let k = NumberField::new(&IntPoly::from_i64(&[-7, 0, 1]));
        let a = k.add(&k.alpha(), &k.one()); // 1 + √7
        let b = k.inv(&a);
        assert_eq!(k.mul(&a, &b), k.one());
    }

    #[test]
    fn left_eigenvectors_rational_and_irrational() {
        let m = IntMatrix::from_i64_rows(&[vec![1, 0, 1, 2], vec![1, 0, 1, 2], vec![1, 0, 1, 2], vec![2, 2, 0, 0]]);
        let k = NumberField::new(&IntPoly::from_i64(&[0, 1]));
        assert_eq!(k.left_eigenspace(&m).len(), 2);
        let k = NumberField::new(&IntPoly::from_i64(&[2, 1]));
        let ev = k.left_eigenspace(&m);
        assert_eq!(ev.len(), 1);
        // ℓM = −2ℓ
        let l: Vec<BigRational> = ev[0].iter().map(|e| e[0].clone()).collect();
        for j in 0..4 {
            let s: BigRational =
                (0..4).map(|i| &l[i] * BigRational::from_integer(m.get(i, j).clone())).sum();
            assert_eq!(s, &l[j] * BigRational::from_integer(BigInt::from(-2)));
        }
        // Example with eigenvalue 1 ± √7.
        let m = IntMatrix::from_i64_rows(&[
            vec![2, 2, 0, 0, 1, 1, 0, 2],
            vec![1, 0, 0, 0, 0, 0, 0, 0],
            vec![1, 0, 0, 0, 0, 0, 0, 0],
            vec![1, 0, 0, 0, 0, 0, 0, 0],
            vec![1, 0, 0, 0, 0, 0, 0, 0],
            vec![1, 0, 0, 0, 0, 0, 0, 0],
            vec![1, 0, 0, 0, 0, 0, 0, 0],
            vec![1, 0, 0, 0, 0, 0, 0, 0],
        ]);
        let k = NumberField::new(&IntPoly::from_i64(&[-6, -2, 1]));
        assert_eq!(k.left_eigenspace(&m).len(), 1);
    }
}
