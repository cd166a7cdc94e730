//! Cochain complexes of finite-dimensional spaces and their cohomology.
//!
//! A [`Complex`] stores per-degree dimensions and the differentials
//! `d_k : C^k -> C^{k+1}`. Construction checks `d_{k+1} . d_k = 0` exactly and
//! reports the offending degree otherwise. Cohomology representatives are
//! kernel vectors reduced modulo the image and re-echelonized, so they are
//! reproducible across runs.

use crate::field::Field;
use crate::mat::{Echelon, Mat};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("differential shape mismatch at degree {0}")]
    Shape(i64),
    #[error("d^2 != 0 at degree {0}")]
    SquareNonzero(i64),
}

#[derive(Clone, Debug)]
pub struct Complex<F: Field> {
    pub lo: i64,
    pub dims: Vec<usize>,
    /// `diffs[i]` maps degree `lo + i` to `lo + i + 1`; length `dims.len() - 1`.
    pub diffs: Vec<Mat<F>>,
}

#[derive(Clone, Debug)]
pub struct DegreeCohomology<F: Field> {
    pub degree: i64,
    pub dim: usize,
    /// Rows are representative cocycles in the degree's coordinates.
    pub representatives: Mat<F>,
}

impl<F: Field> Complex<F> {
    pub fn new(lo: i64, dims: Vec<usize>, diffs: Vec<Mat<F>>) -> Result<Self, ComplexError> {
        let c = Complex { lo, dims, diffs };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), ComplexError> {
        assert_eq!(self.diffs.len() + 1, self.dims.len().max(1));
        for (i, d) in self.diffs.iter().enumerate() {
            if d.rows() != self.dims[i + 1] || d.cols() != self.dims[i] {
                return Err(ComplexError::Shape(self.lo + i as i64));
            }
        }
        for i in 0..self.diffs.len().saturating_sub(1) {
            if !self.diffs[i + 1].mul(&self.diffs[i]).is_zero() {
                return Err(ComplexError::SquareNonzero(self.lo + i as i64));
            }
        }
        Ok(())
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    fn idx(&self, degree: i64) -> Option<usize> {
        if degree < self.lo || degree > self.hi() {
            None
        } else {
            Some((degree - self.lo) as usize)
        }
    }

    /// dim H^degree = dim ker d_degree - rank d_{degree-1}, with missing
    /// differentials treated as zero maps.
    pub fn cohomology_at(&self, field: &F, degree: i64) -> DegreeCohomology<F> {
        let i = self.idx(degree).expect("degree out of range");
        let dim = self.dims[i];
        // kernel of the outgoing differential
        let kernel = if i < self.diffs.len() {
            self.diffs[i].kernel_basis()
        } else {
            crate::mat::Subspace::full(field, dim)
        };
        // image of the incoming differential
        let mut image = Echelon::new(field, dim);
        if i > 0 {
            let d_in = &self.diffs[i - 1];
            for c in 0..d_in.cols() {
                image.insert(d_in.col_vec(c));
            }
        }
        let mut reps = Echelon::new(field, dim);
        for r in 0..kernel.dim() {
            let mut v = kernel.basis.row_vec(r);
            image.reduce_in_place(&mut v);
            reps.insert(v);
        }
        DegreeCohomology {
            degree,
            dim: reps.rank(),
            representatives: reps.into_subspace(dim).basis,
        }
    }

    pub fn cohomology(&self, field: &F) -> Vec<DegreeCohomology<F>> {
        (self.lo..=self.hi()).map(|k| self.cohomology_at(field, k)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Rat, Rationals};

    fn q() -> Rationals {
        Rationals
    }

    #[test]
    fn acyclic_two_term() {
        // 0 -> k -(id)-> k -> 0
        let c = Complex::new(0, vec![1, 1], vec![Mat::identity(&q(), 1)]).unwrap();
        let h = c.cohomology(&q());
        assert_eq!(h[0].dim, 0);
        assert_eq!(h[1].dim, 0);
    }

    #[test]
    fn zero_differential() {
        let c = Complex::new(0, vec![1, 1], vec![Mat::zeros(&q(), 1, 1)]).unwrap();
        let h = c.cohomology(&q());
        assert_eq!(h[0].dim, 1);
        assert_eq!(h[1].dim, 1);
    }

    #[test]
    fn rank_nullity_case() {
        // d0 = [[1,0],[0,0]] : k^2 -> k^2, d1 = 0
        let d0 = Mat::from_i64(&q(), &[&[1, 0], &[0, 0]]);
        let d1 = Mat::zeros(&q(), 1, 2);
        let c = Complex::new(0, vec![2, 2, 1], vec![d0, d1]).unwrap();
        let h = c.cohomology(&q());
        assert_eq!(h[0].dim, 1);
        assert_eq!(h[1].dim, 1);
    }

    #[test]
    fn rejects_nonzero_square() {
        let d0 = Mat::identity(&q(), 1);
        let d1 = Mat::identity(&q(), 1);
        let err = Complex::new(0, vec![1, 1, 1], vec![d0, d1]).unwrap_err();
        assert_eq!(err, ComplexError::SquareNonzero(0));
    }

    #[test]
    fn representatives_are_reduced_mod_image() {
        // k -(id)-> k -(0)-> k : H^1 = 0 even though ker d1 is everything
        let c = Complex::new(
            0,
            vec![1, 1, 1],
            vec![Mat::identity(&q(), 1), Mat::zeros(&q(), 1, 1)],
        )
        .unwrap();
        let h = c.cohomology(&q());
        assert_eq!(h[1].dim, 0);
        assert_eq!(h[0].dim, 0);
        assert_eq!(h[2].dim, 1);
        assert_eq!(h[2].representatives.row(0)[0], Rat::ONE);
    }
}
