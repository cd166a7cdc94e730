//! The deformation bicomplex of a bialgebra, assembled from explicit
//! formulas.
//!
//! Bigraded pieces are the spaces of linear maps from tensor powers of the
//! bialgebra to tensor powers, indexed from power zero on both sides; the
//! piece with source power m and target power n sits in total degree m + n,
//! matching the truncated resolutions the complex is derived from (the
//! degree-zero piece is the scalar spot, whose canonical generator
//! corresponds to the identity of the tautological tetramodule). The
//! horizontal differential is a Hochschild-style differential with the
//! module structure given by the iterated coproduct (the counit in target
//! power zero); the vertical one is its coalgebra dual. The sign mixing the
//! two is fixed by the executable square-zero test across the whole zoo.

use crate::bialgebra::Bialgebra;
use crate::complex::Complex;
use crate::field::Field;
use crate::mat::{op_matrix, Mat};
use crate::tensor::{comult_expand, mult_expand, sparse_col};
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum HomologyError {
    #[error("size guard: {0}")]
    SizeGuard(String),
    #[error("square of the differential is nonzero at bidegree ({0},{1})")]
    SquareNonzero(usize, usize),
    #[error("{0}")]
    Internal(String),
}

/// Default cap from the desk-scale guard: refuse when `dim(A)^(K+2)` exceeds
/// this.
pub const DEFAULT_GS_CAP: u128 = 100_000;

pub(crate) fn pow(d: usize, k: usize) -> usize {
    d.pow(k as u32)
}

/// Decompose a flat index of a tensor power into digits, leftmost slowest.
pub(crate) fn digits(mut idx: usize, d: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for i in (0..k).rev() {
        out[i] = idx % d;
        idx /= d;
    }
    out
}

/// Sparse columns of the iterated coproduct into `n` factors (the counit for
/// `n = 0`).
pub(crate) fn delta_power_sparse<F: Field>(b: &Bialgebra<F>, n: usize) -> Vec<Vec<(usize, F::Elem)>> {
    let m = b.delta_power(n);
    (0..b.dim).map(|c| sparse_col(&m, c)).collect()
}

/// Componentwise product of a fixed sparse element of the n-th tensor power
/// with a basis element, accumulated into `out` with a scalar.
fn pointwise_mul_acc<F: Field>(
    b: &Bialgebra<F>,
    n: usize,
    fixed: &[usize],
    basis: &[usize],
    scale: &F::Elem,
    out: &mut [F::Elem],
    left: bool,
) {
    let f = b.field();
    // expand the componentwise product one slot at a time
    let mut partial: Vec<(usize, F::Elem)> = vec![(0usize, scale.clone())];
    for i in 0..n {
        let (x, y) = if left { (fixed[i], basis[i]) } else { (basis[i], fixed[i]) };
        let terms = mult_expand(b, x, y);
        let mut next = Vec::with_capacity(partial.len() * terms.len());
        for (idx, c) in &partial {
            for (z, cz) in &terms {
                next.push((idx * b.dim + z, f.mul(c, cz)));
            }
        }
        partial = next;
    }
    for (idx, c) in partial {
        let cur = std::mem::replace(&mut out[idx], f.zero());
        out[idx] = f.add(&cur, &c);
    }
}

/// Matrix of `a (x) xi -> delta_power(a) * xi` (componentwise product in the
/// n-th tensor power), `d^n x d^{n+1}`.
pub(crate) fn left_coproduct_action<F: Field>(b: &Bialgebra<F>, n: usize) -> Mat<F> {
    let f = b.field();
    let d = b.dim;
    let dp = delta_power_sparse(b, n);
    let mut out = Mat::zeros(f, pow(d, n), d * pow(d, n));
    for a in 0..d {
        for xi in 0..pow(d, n) {
            let basis = digits(xi, d, n);
            let mut col = vec![f.zero(); pow(d, n)];
            for (t, c) in &dp[a] {
                pointwise_mul_acc(b, n, &digits(*t, d, n), &basis, c, &mut col, true);
            }
            for (r, v) in col.into_iter().enumerate() {
                if !f.is_zero(&v) {
                    out.set(r, a * pow(d, n) + xi, v);
                }
            }
        }
    }
    out
}

/// Matrix of `xi (x) a -> xi * delta_power(a)`, `d^n x d^{n+1}`.
pub(crate) fn right_coproduct_action<F: Field>(b: &Bialgebra<F>, n: usize) -> Mat<F> {
    let f = b.field();
    let d = b.dim;
    let dp = delta_power_sparse(b, n);
    let mut out = Mat::zeros(f, pow(d, n), pow(d, n) * d);
    for xi in 0..pow(d, n) {
        let basis = digits(xi, d, n);
        for a in 0..d {
            let mut col = vec![f.zero(); pow(d, n)];
            for (t, c) in &dp[a] {
                pointwise_mul_acc(b, n, &digits(*t, d, n), &basis, c, &mut col, false);
            }
            for (r, v) in col.into_iter().enumerate() {
                if !f.is_zero(&v) {
                    out.set(r, xi * d + a, v);
                }
            }
        }
    }
    out
}

/// Sweedler split of every input: for a basis element of the m-th power,
/// the list of (first-legs index, second-legs index, coefficient).
pub(crate) fn legs_split<F: Field>(b: &Bialgebra<F>, m: usize, xi: usize) -> Vec<(usize, usize, F::Elem)> {
    let f = b.field();
    let d = b.dim;
    let mut acc: Vec<(usize, usize, F::Elem)> = vec![(0, 0, f.one())];
    for i in digits(xi, d, m) {
        let terms = comult_expand(b, i);
        let mut next = Vec::with_capacity(acc.len() * terms.len());
        for (l, r, c) in &acc {
            for (a1, a2, ca) in &terms {
                next.push((l * d + a1, r * d + a2, f.mul(c, ca)));
            }
        }
        acc = next;
    }
    acc
}

/// Iterated product of the digits of a tensor-power index (unit for m = 0).
pub(crate) fn fold_product<F: Field>(b: &Bialgebra<F>, m: usize, xi: usize) -> Vec<(usize, F::Elem)> {
    let f = b.field();
    let d = b.dim;
    let mut acc: Vec<(usize, F::Elem)> = b
        .unit
        .iter()
        .enumerate()
        .filter(|(_, v)| !f.is_zero(v))
        .map(|(i, v)| (i, v.clone()))
        .collect();
    for i in digits(xi, d, m) {
        let mut next = Vec::new();
        for (z, c) in &acc {
            for (w, cw) in mult_expand(b, *z, i) {
                next.push((w, f.mul(c, &cw)));
            }
        }
        // merge duplicates to keep the expansion small
        next.sort_by_key(|(i, _)| *i);
        let mut merged: Vec<(usize, F::Elem)> = Vec::new();
        for (i, c) in next {
            if let Some(last) = merged.last_mut() {
                if last.0 == i {
                    last.1 = f.add(&last.1, &c);
                    continue;
                }
            }
            merged.push((i, c));
        }
        merged.retain(|(_, c)| !f.is_zero(c));
        acc = merged;
    }
    acc
}

/// Horizontal differential piece: maps from the m-th power to the n-th power
/// become maps from the (m+1)-st power.
pub fn gs_d1<F: Field>(b: &Bialgebra<F>, m: usize, n: usize) -> Mat<F> {
    let f = b.field();
    let d = b.dim;
    let (dm, dn) = (pow(d, m), pow(d, n));
    let left = left_coproduct_action(b, n);
    let right = right_coproduct_action(b, n);

    // first term: act by the leading argument through the iterated coproduct
    let mut total = op_matrix(f, Some(&left), d, 1, None, dn, dm);
    // middle terms: contract adjacent arguments
    for i in 0..m {
        let contract = Mat::identity(f, pow(d, i))
            .kron(&b.mult)
            .kron(&Mat::identity(f, pow(d, m - 1 - i)));
        let term = op_matrix(f, None, 1, 1, Some(&contract), dn, dm);
        let sign = f.from_i64(if (i + 1) % 2 == 0 { 1 } else { -1 });
        total = total.add(&term.scale(&sign));
    }
    // last term: act on the right by the trailing argument
    let last = op_matrix(f, Some(&right), 1, d, None, dn, dm);
    let sign = f.from_i64(if (m + 1) % 2 == 0 { 1 } else { -1 });
    total.add(&last.scale(&sign))
}

/// Vertical differential piece: maps into the n-th power become maps into
/// the (n+1)-st power.
pub fn gs_d2<F: Field>(b: &Bialgebra<F>, m: usize, n: usize) -> Mat<F> {
    let f = b.field();
    let d = b.dim;
    let (dm, dn) = (pow(d, m), pow(d, n));
    let out_rows = d * dn * dm; // vec of maps A^m -> A^{n+1}
    let in_cols = dn * dm;
    let mut total = Mat::zeros(f, out_rows, in_cols);

    // boundary terms: split every input, export the folded first (resp.
    // second) legs to the new outer slot, feed the rest to the map
    for u in 0..dm {
        for (lft, rgt, c) in legs_split(b, m, u) {
            // first term: product of first legs lands in the new leading slot
            for (z, cz) in fold_product(b, m, lft) {
                for y in 0..dn {
                    let row = (z * dn + y) * dm + u;
                    let col = y * dm + rgt;
                    let cur = total.get(row, col).clone();
                    total.set(row, col, f.add(&cur, &f.mul(&c, &cz)));
                }
            }
            // last term: product of second legs lands in the new trailing slot
            let sign = f.from_i64(if (n + 1) % 2 == 0 { 1 } else { -1 });
            for (z, cz) in fold_product(b, m, rgt) {
                for y in 0..dn {
                    let row = (y * d + z) * dm + u;
                    let col = y * dm + lft;
                    let cur = total.get(row, col).clone();
                    total.set(row, col, f.add(&cur, &f.mul(&sign, &f.mul(&c, &cz))));
                }
            }
        }
    }
    // middle terms: comultiply at each output slot
    for i in 1..=n {
        let split = Mat::identity(f, pow(d, i - 1))
            .kron(&b.comult)
            .kron(&Mat::identity(f, pow(d, n - i)));
        let term = op_matrix(f, Some(&split), 1, 1, None, dn, dm);
        let sign = f.from_i64(if i % 2 == 0 { 1 } else { -1 });
        total = total.add(&term.scale(&sign));
    }
    total
}

/// The assembled bicomplex, truncated to total degree `cutoff + 1`.
#[derive(Clone, Debug)]
pub struct GsComplex<F: Field> {
    pub base: Arc<Bialgebra<F>>,
    pub cutoff: usize,
    /// Per total degree, its bigraded spots in order of increasing source
    /// power.
    pub spots: Vec<Vec<(usize, usize)>>,
    pub total: Complex<F>,
}

/// Sign placed on the vertical differential at a spot with source power m;
/// validated by the square-zero test across the zoo.
fn vertical_sign(m: usize) -> i64 {
    if m % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn gs_complex<F: Field>(b: &Arc<Bialgebra<F>>, cutoff: usize) -> Result<GsComplex<F>, HomologyError> {
    gs_complex_capped(b, cutoff, DEFAULT_GS_CAP)
}

pub fn gs_complex_capped<F: Field>(
    b: &Arc<Bialgebra<F>>,
    cutoff: usize,
    cap: u128,
) -> Result<GsComplex<F>, HomologyError> {
    if cutoff < 1 {
        return Err(HomologyError::Internal("cutoff must be at least 1".into()));
    }
    let size = (b.dim as u128).pow(cutoff as u32 + 2);
    if size > cap {
        return Err(HomologyError::SizeGuard(format!(
            "dim {} with max degree {} needs pieces of about {} entries (cap {})",
            b.dim, cutoff, size, cap
        )));
    }
    let f = b.field();
    let d = b.dim;
    let top = cutoff + 1;
    let spots: Vec<Vec<(usize, usize)>> =
        (0..=top).map(|deg| (0..=deg).map(|m| (m, deg - m)).collect()).collect();
    let dims: Vec<usize> = spots.iter().map(|row| row.len() * 0 + row.iter().map(|(m, n)| pow(d, m + n)).sum::<usize>()).collect();

    let mut diffs = Vec::new();
    for deg in 0..top {
        let rows = dims[deg + 1];
        let cols = dims[deg];
        let mut dmat = Mat::zeros(f, rows, cols);
        // offsets of spots inside the stacked degrees
        let off = |row: &Vec<(usize, usize)>, spot: (usize, usize)| -> usize {
            let mut o = 0;
            for &(m, n) in row {
                if (m, n) == spot {
                    return o;
                }
                o += pow(d, m + n);
            }
            unreachable!("spot not present")
        };
        let mut col_off = 0;
        for &(m, n) in &spots[deg] {
            let horiz = gs_d1(b, m, n);
            let r0 = off(&spots[deg + 1], (m + 1, n));
            for c in 0..horiz.cols() {
                for r in 0..horiz.rows() {
                    let v = horiz.get(r, c);
                    if !f.is_zero(v) {
                        dmat.set(r0 + r, col_off + c, v.clone());
                    }
                }
            }
            let vert = gs_d2(b, m, n);
            let sign = f.from_i64(vertical_sign(m));
            let r0 = off(&spots[deg + 1], (m, n + 1));
            for c in 0..vert.cols() {
                for r in 0..vert.rows() {
                    let v = vert.get(r, c);
                    if !f.is_zero(v) {
                        dmat.set(r0 + r, col_off + c, f.mul(v, &sign));
                    }
                }
            }
            col_off += pow(d, m + n);
        }
        diffs.push(dmat);
    }

    let total = Complex::new(0, dims, diffs).map_err(|e| match e {
        crate::complex::ComplexError::SquareNonzero(k) => {
            HomologyError::SquareNonzero(k as usize, 0)
        }
        other => HomologyError::Internal(other.to_string()),
    })?;
    Ok(GsComplex { base: b.clone(), cutoff, spots, total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialgebra::{
        cyclic_group_algebra, dual_bialgebra, primitive_truncated_poly, sweedler_h4,
        trivial_bialgebra,
    };
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn square_zero_across_small_zoo() {
        let q = Rationals;
        for b in [trivial_bialgebra(&q), cyclic_group_algebra(&q, 2), cyclic_group_algebra(&q, 3)] {
            gs_complex(&b, 3).unwrap();
        }
        let f2 = PrimeField::new(2).unwrap();
        gs_complex(&primitive_truncated_poly(&f2, 2).unwrap(), 3).unwrap();
    }

    #[test]
    fn square_zero_for_noncommutative_base() {
        let q = Rationals;
        gs_complex(&sweedler_h4(&q).unwrap(), 2).unwrap();
        let d = Arc::new(dual_bialgebra(&cyclic_group_algebra(&q, 2)));
        gs_complex(&d, 3).unwrap();
    }

    #[test]
    fn trivial_base_collapses_to_one_class() {
        let q = Rationals;
        let b = trivial_bialgebra(&q);
        let gs = gs_complex(&b, 4).unwrap();
        let h = gs.total.cohomology(&q);
        assert_eq!(h[0].dim, 1);
        for k in 1..=3 {
            assert_eq!(h[k].dim, 0, "degree {}", k);
        }
    }

    #[test]
    fn piece_dimensions_count_maps() {
        let q = Rationals;
        let b = cyclic_group_algebra(&q, 2);
        let gs = gs_complex(&b, 3).unwrap();
        // degree two stacks the three spots of total power two
        assert_eq!(gs.total.dims[2], 4 + 4 + 4);
        assert_eq!(gs.spots[2], vec![(0, 2), (1, 1), (2, 0)]);
    }

    #[test]
    fn degree_zero_generator_is_a_cocycle() {
        // the scalar spot corresponds to the identity of the tautological
        // object and must be killed by the total differential
        let q = Rationals;
        for b in [cyclic_group_algebra(&q, 2), sweedler_h4(&q).unwrap()] {
            let gs = gs_complex(&b, 2).unwrap();
            let f = &q;
            let one = vec![crate::field::Rat::ONE];
            let img = gs.total.diffs[0].apply(&one);
            assert!(img.iter().all(|x| f.is_zero(x)), "{}", b.label);
        }
    }

    #[test]
    fn size_guard_fires() {
        let q = Rationals;
        let b = sweedler_h4(&q).unwrap();
        let err = gs_complex(&b, 7).unwrap_err();
        assert!(matches!(err, HomologyError::SizeGuard(_)));
    }

    #[test]
    fn derivation_kernel_at_the_one_one_spot() {
        // over k[Z/2] the group algebra is rigid: the horizontal kernel at
        // the (1,1) spot is exactly the inner-derivation-free space, here 0
        let q = Rationals;
        let b = cyclic_group_algebra(&q, 2);
        let d1 = gs_d1(&b, 1, 1);
        // derivations of k[Z/2] vanish
        assert_eq!(d1.kernel_basis().dim(), 0);
    }
}
