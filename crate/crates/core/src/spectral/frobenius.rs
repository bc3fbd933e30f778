//! Frobenius normal form of a nonnegative matrix and the count of ergodic
//! invariant measures from its distinguished eigenvalues.

use super::factor::{factor_over_integers, RootInfo};
use super::matrix::IntMatrix;
use super::poly::IntPoly;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// Perron value of an irreducible block: the largest real root of its
/// characteristic polynomial, with its exact minimal polynomial.
#[derive(Clone, Debug)]
pub struct PerronValue {
    pub minimal_poly: IntPoly,
    pub root: RootInfo,
}

impl PerronValue {
    pub fn value(&self) -> f64 {
        self.root.re()
    }

    /// Certified comparison; equal values share their minimal polynomial.
    pub fn compare(&self, other: &PerronValue) -> Result<Ordering> {
        if self.minimal_poly == other.minimal_poly {
            return Ok(Ordering::Equal);
        }
        let (a, b) = (&self.root.value, &other.root.value);
        let p = a.p.max(b.p);
        let (a, b) = (a.with_precision(p), b.with_precision(p));
        let ra = &self.root.radius << (p - self.root.value.p);
        let rb = &other.root.radius << (p - other.root.value.p);
        let gap = &a.re - &b.re;
        if gap.abs() > &ra + &rb {
            Ok(if gap.is_positive() { Ordering::Greater } else { Ordering::Less })
        } else {
            Err(Error::CertificationFailed(format!(
                "Perron values of {} and {} not separated",
                self.minimal_poly, other.minimal_poly
            )))
        }
    }

    pub fn greater_than_one(&self) -> bool {
        self.root.vs_one == Some(Ordering::Greater)
    }
}

#[derive(Clone, Debug)]
pub struct Block {
    /// Letters of the block in increasing order.
    pub letters: Vec<usize>,
    /// A 1×1 zero diagonal block.
    pub zero: bool,
    pub perron: Option<PerronValue>,
    pub char_poly: IntPoly,
}

#[derive(Clone, Debug)]
pub struct FrobeniusForm {
    /// Blocks in lower block-triangular order; `blocks[0]` contains letter 0.
    pub blocks: Vec<Block>,
    /// `reach[k][j]`: block `j` is reachable from block `k` (k ≠ j).
    pub reach: Vec<Vec<bool>>,
    /// `edge[k][j]`: the off-diagonal block `A_{k,j}` is nonzero.
    pub edge: Vec<Vec<bool>>,
    pub distinguished: Vec<bool>,
    pub distinguished_direct: Vec<bool>,
}

/// Serializable view of the block structure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockSummary {
    pub letters: Vec<usize>,
    pub zero: bool,
    pub perron_value: Option<f64>,
    pub perron_minimal_polynomial: Option<IntPoly>,
    pub distinguished: bool,
}

pub fn frobenius_form(m: &IntMatrix) -> Result<FrobeniusForm> {
    let n = m.dim();
    let mut g = DiGraph::<usize, ()>::new();
    let nodes: Vec<_> = (0..n).map(|i| g.add_node(i)).collect();
    for i in 0..n {
        for j in 0..n {
            if m.get(i, j).is_positive() {
                g.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    let mut comps: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut v: Vec<usize> = c.into_iter().map(|x| g[x]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    let nb = comps.len();
    let mut comp_of = vec![0; n];
    for (k, c) in comps.iter().enumerate() {
        for &i in c {
            comp_of[i] = k;
        }
    }
    let mut edge = vec![vec![false; nb]; nb];
    for i in 0..n {
        for j in 0..n {
            if m.get(i, j).is_positive() && comp_of[i] != comp_of[j] {
                edge[comp_of[i]][comp_of[j]] = true;
            }
        }
    }
    // Longest path from each block down to a sink.
    let mut depth = vec![None::<usize>; nb];
    fn longest(k: usize, edge: &[Vec<bool>], depth: &mut [Option<usize>]) -> usize {
        if let Some(d) = depth[k] {
            return d;
        }
        let d = (0..edge.len())
            .filter(|&j| edge[k][j])
            .map(|j| longest(j, edge, depth) + 1)
            .max()
            .unwrap_or(0);
        depth[k] = Some(d);
        d
    }
    for k in 0..nb {
        longest(k, &edge, &mut depth);
    }
    let mut order: Vec<usize> = (0..nb).collect();
    order.sort_by_key(|&k| (depth[k].unwrap_or(0), comps[k][0]));
    let mut pos = vec![0; nb];
    for (p, &k) in order.iter().enumerate() {
        pos[k] = p;
    }
    let edge: Vec<Vec<bool>> =
        (0..nb).map(|a| (0..nb).map(|b| edge[order[a]][order[b]]).collect()).collect();
    comps = order.iter().map(|&k| std::mem::take(&mut comps[k])).collect();
    if !comps[0].contains(&0) && n > 0 {
        return Err(Error::StructureViolation("letter 0 is not in the sink block".into()));
    }
    let mut reach = edge.clone();
    for k in 0..nb {
        for i in 0..nb {
            if reach[i][k] {
                for j in 0..nb {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    let blocks = comps
        .into_iter()
        .map(|letters| {
            let sub = m.principal(&letters);
            let char_poly = IntPoly::char_poly(&sub);
            let zero = letters.len() == 1 && sub.get(0, 0).is_zero();
            let perron = if zero { None } else { Some(perron_value(&char_poly)?) };
            Ok(Block { letters, zero, perron, char_poly })
        })
        .collect::<Result<Vec<_>>>()?;
    let distinguished = distinguished_blocks(&blocks, &reach)?;
    let distinguished_direct = distinguished_blocks(&blocks, &edge)?;
    Ok(FrobeniusForm { blocks, reach, edge, distinguished, distinguished_direct })
}

fn perron_value(p: &IntPoly) -> Result<PerronValue> {
    let f = factor_over_integers(p)?;
    let mut best: Option<PerronValue> = None;
    for fac in &f.factors {
        if let Some(i) = fac.largest_real_root() {
            let cand = PerronValue { minimal_poly: fac.poly.clone(), root: fac.roots[i].clone() };
            best = match best {
                None => Some(cand),
                Some(b) => Some(if cand.compare(&b)? == Ordering::Greater { cand } else { b }),
            };
        }
    }
    best.ok_or_else(|| Error::StructureViolation(format!("no real root of {p}")))
}

/// Block `k` is distinguished when it is nonzero, its Perron value exceeds 1,
/// and every block related to it by `rel` has a strictly smaller Perron value.
fn distinguished_blocks(blocks: &[Block], rel: &[Vec<bool>]) -> Result<Vec<bool>> {
    (0..blocks.len())
        .map(|k| {
            let Some(pk) = &blocks[k].perron else { return Ok(false) };
            if !pk.greater_than_one() {
                return Ok(false);
            }
            for j in 0..blocks.len() {
                if j == k || !rel[k][j] {
                    continue;
                }
                if let Some(pj) = &blocks[j].perron {
                    if pj.compare(pk)? != Ordering::Less {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        })
        .collect()
}

impl FrobeniusForm {
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.letters.len()).collect()
    }

    /// Block sizes after merging runs of consecutive 1×1 zero blocks with no
    /// entries between them into a single zero diagonal block.
    pub fn merged_block_sizes(&self) -> Vec<usize> {
        let mut sizes = Vec::new();
        let mut run: Vec<usize> = Vec::new();
        for (k, b) in self.blocks.iter().enumerate() {
            let joins = b.zero && run.iter().all(|&j| !self.edge[k][j] && !self.edge[j][k]);
            if !joins && !run.is_empty() {
                sizes.push(run.len());
                run.clear();
            }
            if b.zero {
                run.push(k);
            } else {
                sizes.push(b.letters.len());
            }
        }
        if !run.is_empty() {
            sizes.push(run.len());
        }
        sizes
    }

    /// Number of distinguished eigenvalues = number of ergodic invariant measures.
    pub fn ergodic_measure_count(&self) -> usize {
        self.distinguished.iter().filter(|&&d| d).count()
    }

    pub fn direct_edge_count(&self) -> usize {
        self.distinguished_direct.iter().filter(|&&d| d).count()
    }

    /// The relabeling: position `p` in Frobenius order holds letter `relabeling()[p]`.
    pub fn relabeling(&self) -> Vec<usize> {
        self.blocks.iter().flat_map(|b| b.letters.iter().copied()).collect()
    }

    /// `Π^{-1} M Π` in the block order.
    pub fn permuted(&self, m: &IntMatrix) -> IntMatrix {
        let r = self.relabeling();
        IntMatrix::from_fn(r.len(), r.len(), |i, j| m.get(r[i], r[j]).clone())
    }

    /// Lower block-triangular check of the permuted matrix.
    pub fn is_lower_block_triangular(&self, m: &IntMatrix) -> bool {
        let pm = self.permuted(m);
        let mut starts = Vec::new();
        let mut s = 0;
        for b in &self.blocks {
            starts.push((s, s + b.letters.len()));
            s += b.letters.len();
        }
        starts.iter().enumerate().all(|(bi, &(r0, r1))| {
            starts[bi + 1..].iter().all(|&(c0, c1)| {
                (r0..r1).all(|i| (c0..c1).all(|j| pm.get(i, j).is_zero()))
            })
        })
    }

    /// Product of the block characteristic polynomials.
    pub fn block_char_poly(&self) -> IntPoly {
        self.blocks.iter().fold(IntPoly::one(), |acc, b| acc.mul(&b.char_poly))
    }

    pub fn summaries(&self) -> Vec<BlockSummary> {
        self.blocks
            .iter()
            .zip(&self.distinguished)
            .map(|(b, &d)| BlockSummary {
                letters: b.letters.clone(),
                zero: b.zero,
                perron_value: b.perron.as_ref().map(PerronValue::value),
                perron_minimal_polynomial: b.perron.as_ref().map(|p| p.minimal_poly.clone()),
                distinguished: d,
            })
            .collect()
    }

    /// Whether block 0's Perron value is the integer `v`.
    pub fn minimal_block_value_is(&self, v: &BigInt) -> bool {
        self.blocks[0]
            .perron
            .as_ref()
            .is_some_and(|p| p.minimal_poly == IntPoly::linear(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_matrix_single_block() {
        let m = IntMatrix::from_i64_rows(&[vec![1, 0, 1, 2], vec![1, 0, 1, 2], vec![1, 0, 1, 2], vec![2, 2, 0, 0]]);
        let ff = frobenius_form(&m).unwrap();
        assert_eq!(ff.block_sizes(), vec![4]);
        assert_eq!(ff.ergodic_measure_count(), 1);
        assert_eq!(ff.block_char_poly(), IntPoly::char_poly(&m));
    }

    #[test]
    fn two_blocks_and_zero_blocks() {
        // letters 0,1 form the sink block; letter 2 sees only them; letter 3 is transient zero.
        let m = IntMatrix::from_i64_rows(&[
            vec![1, 1, 0, 0],
            vec![1, 1, 0, 0],
            vec![1, 0, 3, 0],
            vec![1, 0, 1, 0],
        ]);
        let ff = frobenius_form(&m).unwrap();
        assert_eq!(ff.blocks[0].letters, vec![0, 1]);
        assert!(ff.is_lower_block_triangular(&m));
        assert_eq!(ff.block_sizes(), vec![2, 1, 1]);
        assert!(ff.blocks[2].zero);
        // Perron values 2 (sink) and 3 (letter 2): both distinguished.
        assert_eq!(ff.ergodic_measure_count(), 2);
        assert_eq!(ff.block_char_poly(), IntPoly::char_poly(&m));
    }

    #[test]
    fn dominated_block_not_distinguished() {
        let m = IntMatrix::from_i64_rows(&[vec![3, 0], vec![1, 2]]);
        let ff = frobenius_form(&m).unwrap();
        assert_eq!(ff.ergodic_measure_count(), 1);
    }
}
