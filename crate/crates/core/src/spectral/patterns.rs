//! Count patterns between substitution rows that force left eigenvectors of
//! the form `1_a − 1_b` (eigenvalues 0, 1, −1) or `1_a − 1_b + 1_c − 1_d`
//! (eigenvalue 1), together with their ψ-weights.

use super::matrix::IntMatrix;
use crate::maps::Alphabet;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightPattern {
    /// Which of the four count conditions matched (1–4).
    pub case: u8,
    pub eigenvalue: i64,
    /// Sparse eigenvector as (letter, coefficient).
    pub vector: Vec<(usize, i64)>,
    /// Exact `ψ` of the vector.
    pub weight: i64,
    /// The letters lie on one side of the sign split, which alone guarantees
    /// weight 0 for cases 1–3.
    pub same_side: bool,
}

fn diff(m: &IntMatrix, a: usize, b: usize) -> Vec<BigInt> {
    (0..m.cols()).map(|j| m.get(a, j) - m.get(b, j)).collect()
}

/// `row_a − row_b` equals `e_a − e_b` times `eig`, i.e. zero off {a,b}.
fn only_on(d: &[BigInt], a: usize, b: usize, da: i64, db: i64) -> bool {
    d.iter().enumerate().all(|(j, v)| {
        let want = if j == a {
            da
        } else if j == b {
            db
        } else {
            0
        };
        *v == BigInt::from(want)
    })
}

pub fn zero_weight_patterns(m: &IntMatrix, alphabet: &Alphabet) -> Vec<WeightPattern> {
    let n = m.dim();
    let s = alphabet.signs();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let d = diff(m, a, b);
            let same_side = s[a] == s[b];
            let weight = s[a] - s[b];
            let mut push = |case: u8, eig: i64| {
                out.push(WeightPattern {
                    case,
                    eigenvalue: eig,
                    vector: vec![(a, 1), (b, -1)],
                    weight,
                    same_side,
                })
            };
            if only_on(&d, a, b, 0, 0) {
                push(1, 0);
            } else if only_on(&d, a, b, 1, -1) {
                push(2, 1);
            } else if only_on(&d, a, b, -1, 1) {
                push(3, -1);
            }
        }
    }
    // Case 4: (a,b) as in case 2 except on a pair c<d of equal rows where the
    // difference is +1 at c and −1 at d.
    for a in 0..n {
        for b in a + 1..n {
            let dab = diff(m, a, b);
            for c in 0..n {
                for e in c + 1..n {
                    if [a, b].contains(&c) || [a, b].contains(&e) {
                        continue;
                    }
                    if !diff(m, c, e).iter().all(|v| *v == BigInt::from(0)) {
                        continue;
                    }
                    let ok = dab.iter().enumerate().all(|(j, v)| {
                        let want = match j {
                            _ if j == a || j == c => 1,
                            _ if j == b || j == e => -1,
                            _ => 0,
                        };
                        *v == BigInt::from(want)
                    });
                    if ok {
                        out.push(WeightPattern {
                            case: 4,
                            eigenvalue: 1,
                            vector: vec![(a, 1), (b, -1), (c, 1), (e, -1)],
                            weight: s[a] - s[b] + s[c] - s[e],
                            same_side: s[a] == s[b] && s[c] == s[e],
                        });
                    }
                }
            }
        }
    }
    out
}

impl WeightPattern {
    /// Verify `ℓM = λℓ` exactly for the sparse vector.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        (0..m.cols()).all(|j| {
            let lhs: BigInt = self.vector.iter().map(|&(i, c)| m.get(i, j) * BigInt::from(c)).sum();
            let rhs: i64 = self.vector.iter().filter(|&&(i, _)| i == j).map(|&(_, c)| c).sum();
            lhs == BigInt::from(rhs * self.eigenvalue)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_rows_give_eigenvalue_zero() {
        let m = IntMatrix::from_i64_rows(&[vec![1, 0, 1, 2], vec![1, 0, 1, 2], vec![1, 0, 1, 2], vec![2, 2, 0, 0]]);
        let pats = zero_weight_patterns(&m, &Alphabet::new(3, true));
        assert_eq!(pats.iter().filter(|p| p.case == 1).count(), 3);
        assert!(pats.iter().all(|p| p.verify(&m)));
        // 1^+ and 1^- sit on opposite sides of the split.
        let cross = pats.iter().find(|p| p.vector == vec![(1, 1), (2, -1)]).unwrap();
        assert!(!cross.same_side);
        assert_eq!(cross.weight, 2);
    }

    #[test]
    fn shifted_rows_give_eigenvalue_one() {
        let m = IntMatrix::from_i64_rows(&[vec![2, 0, 1], vec![1, 1, 1], vec![1, 2, 0]]);
        let pats = zero_weight_patterns(&m, &Alphabet::new(3, false));
        let p = pats.iter().find(|p| p.case == 2).unwrap();
        assert_eq!(p.eigenvalue, 1);
        assert!(p.verify(&m));
    }

    #[test]
    fn distinct_rows_give_nothing() {
        let m = IntMatrix::from_i64_rows(&[vec![1, 2, 0], vec![3, 0, 1], vec![0, 1, 5]]);
        assert!(zero_weight_patterns(&m, &Alphabet::new(3, false)).is_empty());
    }
}
