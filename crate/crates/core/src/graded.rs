//! The free commutative cocommutative bialgebra on a finite-dimensional
//! space, realized by degree truncation.
//!
//! The symmetric algebra is graded and locally finite, so we store its pieces
//! up to a truncation degree N with multiplication defined only where the
//! target degree stays within bounds (the truncation ideal is not a coideal,
//! so a quotient bialgebra would be wrong; guarded multiplication is the
//! honest model). Comultiplication is total: it lowers nothing.
//!
//! Monomials of degree d are exponent vectors in a fixed lexicographic order,
//! so all bases are reproducible. Exterior monomials (used by the Koszul
//! route) are sorted index sets with the usual sign rules.

use crate::field::Field;
use crate::mat::Mat;
use std::collections::BTreeMap;

/// Exponent vectors of total degree `d` on `dim_v` variables, lexicographic
/// descending in the exponents (x0^d first).
pub fn monomials(dim_v: usize, d: usize) -> Vec<Vec<u32>> {
    fn rec(dim_v: usize, d: usize, out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>) {
        if cur.len() == dim_v - 1 {
            cur.push(d as u32);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=d).rev() {
            cur.push(e as u32);
            rec(dim_v, d - e, out, cur);
            cur.pop();
        }
    }
    assert!(dim_v >= 1);
    let mut out = Vec::new();
    rec(dim_v, d, &mut out, &mut Vec::new());
    out
}

pub fn monomial_count(dim_v: usize, d: usize) -> usize {
    // C(d + dim_v - 1, dim_v - 1)
    let mut acc: u128 = 1;
    for i in 0..(dim_v - 1) {
        acc = acc * (d + i + 1) as u128 / (i + 1) as u128;
    }
    acc as usize
}

fn binom_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[derive(Clone, Debug)]
pub struct GradedBialgebra<F: Field> {
    pub field: F,
    pub dim_v: usize,
    pub trunc: usize,
    pub piece_dims: Vec<usize>,
    /// Monomial index per degree.
    index: Vec<BTreeMap<Vec<u32>, usize>>,
    monos: Vec<Vec<Vec<u32>>>,
}

impl<F: Field> GradedBialgebra<F> {
    pub fn monomial(&self, d: usize, i: usize) -> &Vec<u32> {
        &self.monos[d][i]
    }

    pub fn index_of(&self, m: &[u32]) -> (usize, usize) {
        let d: u32 = m.iter().sum();
        (d as usize, self.index[d as usize][m])
    }

    /// Multiplication `S^i tensor S^j -> S^{i+j}`; requires `i + j <= trunc`.
    pub fn mult_piece(&self, i: usize, j: usize) -> Mat<F> {
        assert!(i + j <= self.trunc, "guarded multiplication out of range");
        let f = &self.field;
        let (di, dj, dt) = (self.piece_dims[i], self.piece_dims[j], self.piece_dims[i + j]);
        let mut m = Mat::zeros(f, dt, di * dj);
        for a in 0..di {
            for b in 0..dj {
                let sum: Vec<u32> = self.monos[i][a]
                    .iter()
                    .zip(&self.monos[j][b])
                    .map(|(x, y)| x + y)
                    .collect();
                let (_, k) = self.index_of(&sum);
                m.set(k, a * dj + b, f.one());
            }
        }
        m
    }

    /// Comultiplication block `S^d -> S^i tensor S^{d-i}`. The coefficient of
    /// `x^b tensor x^{a-b}` in the coproduct of `x^a` is the product of
    /// binomials `C(a_t, b_t)`.
    pub fn comult_block(&self, d: usize, i: usize) -> Mat<F> {
        assert!(i <= d && d <= self.trunc);
        let f = &self.field;
        let j = d - i;
        let (dd, di, dj) = (self.piece_dims[d], self.piece_dims[i], self.piece_dims[j]);
        let mut m = Mat::zeros(f, di * dj, dd);
        for a in 0..dd {
            let mono = &self.monos[d][a];
            for b in 0..di {
                let lower = &self.monos[i][b];
                if lower.iter().zip(mono).any(|(l, u)| l > u) {
                    continue;
                }
                let rest: Vec<u32> = mono.iter().zip(lower).map(|(u, l)| u - l).collect();
                let (_, c) = self.index_of(&rest);
                let mut coeff: u128 = 1;
                for (u, l) in mono.iter().zip(lower) {
                    coeff *= binom_u128(*u as u64, *l as u64);
                }
                m.set(b * dj + c, a, f.from_i64(coeff as i64));
            }
        }
        m
    }

    /// Pointwise check of the guarded bialgebra laws on all degrees that fit
    /// under the truncation. Panics with the offending law on failure; used
    /// by tests.
    pub fn verify(&self) {
        let f = &self.field;
        let n = self.trunc;
        // associativity where defined
        for i in 0..=n {
            for j in 0..=(n - i) {
                for k in 0..=(n - i - j) {
                    let l = self
                        .mult_piece(i + j, k)
                        .mul(&self.mult_piece(i, j).kron(&Mat::identity(f, self.piece_dims[k])));
                    let r = self
                        .mult_piece(i, j + k)
                        .mul(&Mat::identity(f, self.piece_dims[i]).kron(&self.mult_piece(j, k)));
                    assert_eq!(l, r, "associativity at ({},{},{})", i, j, k);
                }
            }
        }
        // coassociativity: both ways of refining degree d into (i, j, k)
        for d in 0..=n {
            for i in 0..=d {
                for j in 0..=(d - i) {
                    let k = d - i - j;
                    let via_left = self
                        .comult_block(i + j, i)
                        .kron(&Mat::identity(f, self.piece_dims[k]))
                        .mul(&self.comult_block(d, i + j));
                    let via_right = Mat::identity(f, self.piece_dims[i])
                        .kron(&self.comult_block(d - i, j))
                        .mul(&self.comult_block(d, i));
                    assert_eq!(via_left, via_right, "coassociativity at ({},{},{})", i, j, k);
                }
            }
        }
        // compatibility: coproduct of a product, degreewise
        for i in 0..=n {
            for j in 0..=(n - i) {
                let d = i + j;
                for a in 0..=d {
                    // lhs: comult_block(d, a) . mult_piece(i, j)
                    let lhs = self.comult_block(d, a).mul(&self.mult_piece(i, j));
                    // rhs: sum over a1 + a2 = a of (mult x mult) . shuffle .
                    // (comult_block(i, a1) x comult_block(j, a2))
                    let rows = self.piece_dims[a] * self.piece_dims[d - a];
                    let cols = self.piece_dims[i] * self.piece_dims[j];
                    let mut rhs = Mat::zeros(f, rows, cols);
                    for a1 in 0..=a.min(i) {
                        let a2 = a - a1;
                        if a2 > j {
                            continue;
                        }
                        let b1 = i - a1;
                        let b2 = j - a2;
                        let dims = [
                            self.piece_dims[a1],
                            self.piece_dims[b1],
                            self.piece_dims[a2],
                            self.piece_dims[b2],
                        ];
                        let shuffle = crate::mat::tensor_permutation(f, &dims, &[0, 2, 1, 3]);
                        let term = self
                            .mult_piece(a1, a2)
                            .kron(&self.mult_piece(b1, b2))
                            .mul(&shuffle)
                            .mul(&self.comult_block(i, a1).kron(&self.comult_block(j, a2)));
                        rhs = rhs.add(&term);
                    }
                    assert_eq!(lhs, rhs, "compatibility at ({},{}) target {}", i, j, a);
                }
            }
        }
    }
}

/// Build the truncated symmetric bialgebra on `dim_v` primitives.
pub fn sv_graded<F: Field>(field: &F, dim_v: usize, trunc: usize) -> GradedBialgebra<F> {
    assert!(dim_v >= 1 && trunc >= 1);
    let monos: Vec<Vec<Vec<u32>>> = (0..=trunc).map(|d| monomials(dim_v, d)).collect();
    let piece_dims = monos.iter().map(|m| m.len()).collect();
    let index = monos
        .iter()
        .map(|ms| ms.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect())
        .collect();
    GradedBialgebra { field: field.clone(), dim_v, trunc, piece_dims, index, monos }
}

// ---------------------------------------------------------------------------
// Exterior monomials
// ---------------------------------------------------------------------------

/// Sorted index subsets of size `k` out of `dim_v`, lexicographic.
pub fn exterior_monomials(dim_v: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(dim_v: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..dim_v {
            cur.push(i);
            rec(dim_v, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim_v, k, 0, &mut Vec::new(), &mut out);
    out
}

/// `e_i wedge e_S`: sign and resulting set, or `None` if `i` already occurs.
pub fn wedge_left(i: usize, s: &[usize]) -> Option<(i64, Vec<usize>)> {
    if s.contains(&i) {
        return None;
    }
    let pos = s.partition_point(|&j| j < i);
    let sign = if pos % 2 == 0 { 1 } else { -1 };
    let mut t = s.to_vec();
    t.insert(pos, i);
    Some((sign, t))
}

/// `e_S wedge e_i`: moves `e_i` left past every larger index.
pub fn wedge_right(s: &[usize], i: usize) -> Option<(i64, Vec<usize>)> {
    if s.contains(&i) {
        return None;
    }
    let pos = s.partition_point(|&j| j < i);
    let flips = s.len() - pos;
    let sign = if flips % 2 == 0 { 1 } else { -1 };
    let mut t = s.to_vec();
    t.insert(pos, i);
    Some((sign, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(1, 3), vec![vec![3]]);
        assert_eq!(monomials(2, 2).len(), 3);
        assert_eq!(monomial_count(2, 2), 3);
        assert_eq!(monomial_count(3, 4), 15);
        assert_eq!(monomials(3, 4).len(), 15);
    }

    #[test]
    fn sv_piece_dims() {
        let q = Rationals;
        let a = sv_graded(&q, 1, 3);
        assert_eq!(a.piece_dims, vec![1, 1, 1, 1]);
        let b = sv_graded(&q, 2, 2);
        assert_eq!(b.piece_dims, vec![1, 2, 3]);
    }

    #[test]
    fn comult_of_x1x2() {
        let q = Rationals;
        let b = sv_graded(&q, 2, 2);
        // x1 x2 has exponent vector (1,1)
        let (d, idx) = b.index_of(&[1, 1]);
        assert_eq!(d, 2);
        // degree-(1,1) block: x1 x2 -> x1 (x) x2 + x2 (x) x1
        let blk = b.comult_block(2, 1);
        let col = blk.col_vec(idx);
        let x1 = b.index_of(&[1, 0]).1;
        let x2 = b.index_of(&[0, 1]).1;
        let mut expect = vec![q_zero(); 4];
        expect[x1 * 2 + x2] = q_one();
        expect[x2 * 2 + x1] = q_one();
        assert_eq!(col, expect);
        // degree-(2,0) block: x1 x2 (x) 1
        let blk = b.comult_block(2, 2);
        let col = blk.col_vec(idx);
        assert_eq!(col[idx], q_one());
        assert_eq!(col.iter().filter(|v| **v != q_zero()).count(), 1);
    }

    fn q_zero() -> crate::field::Rat {
        crate::field::Rat::ZERO
    }
    fn q_one() -> crate::field::Rat {
        crate::field::Rat::ONE
    }

    #[test]
    fn guarded_axioms_hold() {
        let q = Rationals;
        sv_graded(&q, 1, 4).verify();
        sv_graded(&q, 2, 3).verify();
        let f5 = PrimeField::new(5).unwrap();
        sv_graded(&f5, 2, 3).verify();
    }

    #[test]
    fn wedge_signs() {
        // e1 ^ e0 = -e0 ^ e1
        assert_eq!(wedge_left(1, &[0]), Some((-1, vec![0, 1])));
        assert_eq!(wedge_left(0, &[1]), Some((1, vec![0, 1])));
        assert_eq!(wedge_left(0, &[0]), None);
        // (e0 ^ e2) ^ e1 : move e1 past e2 -> sign -1
        assert_eq!(wedge_right(&[0, 2], 1), Some((-1, vec![0, 1, 2])));
        assert_eq!(wedge_right(&[0, 1], 2), Some((1, vec![0, 1, 2])));
    }
}
