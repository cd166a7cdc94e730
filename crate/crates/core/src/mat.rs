//! Dense row-major matrices over an exact field, with the reductions every
//! other module is built on: reduced row echelon form with a deterministic
//! pivot rule (first nonzero in column order), kernels, quotients, Kronecker
//! products and tensor-factor permutations.
//!
//! Vectors are column vectors: a `rows x cols` matrix maps a `cols`-vector to
//! a `rows`-vector. Iterated tensor products use the lexicographic index order
//! with the leftmost factor slowest, which is exactly the order `kron`
//! produces.

use crate::field::Field;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Mat<F: Field> {
    pub field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {}", self.rows, self.cols, self.field.spec())?;
        for r in 0..self.rows.min(12) {
            let row: Vec<String> =
                (0..self.cols.min(16)).map(|c| self.field.render(self.get(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        if self.rows > 12 {
            writeln!(f, "  ...")?;
        }
        Ok(())
    }
}

impl<F: Field> Mat<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Mat { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { field: field.clone(), rows, cols, data }
    }

    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols);
            data.extend(row);
        }
        Mat { field: field.clone(), rows: r, cols, data }
    }

    /// Build from integer entries, handy in tests and structure constants.
    pub fn from_i64(field: &F, entries: &[&[i64]]) -> Self {
        let rows = entries.len();
        let cols = if rows == 0 { 0 } else { entries[0].len() };
        Self::from_fn(field, rows, cols, |r, c| field.from_i64(entries[r][c]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn entries(&self) -> usize {
        self.rows * self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<F::Elem> {
        self.row(r).to_vec()
    }

    pub fn col_vec(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Mat<F> {
        Mat::from_fn(&self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn add(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(&self.field, self.rows, self.cols, |r, c| {
            self.field.add(self.get(r, c), other.get(r, c))
        })
    }

    pub fn sub(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(&self.field, self.rows, self.cols, |r, c| {
            self.field.sub(self.get(r, c), other.get(r, c))
        })
    }

    pub fn neg(&self) -> Mat<F> {
        Mat::from_fn(&self.field, self.rows, self.cols, |r, c| self.field.neg(self.get(r, c)))
    }

    pub fn scale(&self, s: &F::Elem) -> Mat<F> {
        Mat::from_fn(&self.field, self.rows, self.cols, |r, c| self.field.mul(self.get(r, c), s))
    }

    /// Matrix product, skipping zero entries of the left factor.
    pub fn mul(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let f = &self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                let orow = i * out.cols;
                let brow = k * other.cols;
                for j in 0..other.cols {
                    let b = &other.data[brow + j];
                    if !f.is_zero(b) {
                        f.mul_add_in(&mut out.data[orow + j], a, b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        let mut out = vec![f.zero(); self.rows];
        for i in 0..self.rows {
            let row = i * self.cols;
            for j in 0..self.cols {
                let a = &self.data[row + j];
                if !f.is_zero(a) && !f.is_zero(&v[j]) {
                    f.mul_add_in(&mut out[i], a, &v[j]);
                }
            }
        }
        out
    }

    pub fn kron(&self, other: &Mat<F>) -> Mat<F> {
        let f = &self.field;
        let mut out = Mat::zeros(f, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if f.is_zero(a) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !f.is_zero(b) {
                            out.set(i * other.rows + k, j * other.cols + l, f.mul(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn hstack(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(&self.field, self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Reduced row echelon form plus the pivot column list. Deterministic:
    /// the pivot for each column is the first usable row in order.
    pub fn rref(&self) -> (Mat<F>, Vec<usize>) {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0usize;
        for col in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let mut sel = None;
            for r in prow..m.rows {
                if !f.is_zero(m.get(r, col)) {
                    sel = Some(r);
                    break;
                }
            }
            let Some(sel) = sel else { continue };
            if sel != prow {
                for c in 0..m.cols {
                    m.data.swap(sel * m.cols + c, prow * m.cols + c);
                }
            }
            let inv = f.inv(m.get(prow, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                let v = f.mul(m.get(prow, c), &inv);
                m.set(prow, c, v);
            }
            for r in 0..m.rows {
                if r == prow || f.is_zero(m.get(r, col)) {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let piv = m.get(prow, c).clone();
                    f.mul_sub_in(&mut m.data[r * m.cols + c], &factor, &piv);
                }
            }
            pivots.push(col);
            prow += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(&self.field, self.cols);
        for r in 0..self.rows {
            ech.insert(self.row_vec(r));
        }
        ech.rank()
    }

    /// Basis of `{v : self * v = 0}` as a subspace (rows are kernel vectors).
    pub fn kernel_basis(&self) -> Subspace<F> {
        let f = &self.field;
        let mut ech = Echelon::new(f, self.cols);
        for r in 0..self.rows {
            ech.insert(self.row_vec(r));
        }
        let pivots = ech.pivots().to_vec();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut rows = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(&ech.row(i)[free]);
            }
            rows.push(v);
        }
        Subspace::from_rows(f, self.cols, rows)
    }

    /// Solve `self * x = b` for a single solution, if any.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows);
        let f = &self.field;
        let aug = self.hstack(&Mat::from_fn(f, self.rows, 1, |r, _| b[r].clone()));
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// `P * self` for the permutation sending row `r` to row `tgt_of_src[r]`.
    pub fn permute_rows_by(&self, tgt_of_src: &[usize]) -> Mat<F> {
        assert_eq!(tgt_of_src.len(), self.rows);
        let mut out = Mat::zeros(&self.field, self.rows, self.cols);
        for r in 0..self.rows {
            let t = tgt_of_src[r];
            for c in 0..self.cols {
                out.data[t * self.cols + c] = self.data[r * self.cols + c].clone();
            }
        }
        out
    }

    /// `self * P` for the same permutation: column `c` of the result is
    /// column `tgt_of_src[c]` of `self`.
    pub fn permute_cols_by(&self, tgt_of_src: &[usize]) -> Mat<F> {
        assert_eq!(tgt_of_src.len(), self.cols);
        let mut out = Mat::zeros(&self.field, self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[r * self.cols + c] = self.data[r * self.cols + tgt_of_src[c]].clone();
            }
        }
        out
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Mat<F>> {
        if self.rows != self.cols {
            return None;
        }
        let f = &self.field;
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(f, n));
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
            return None;
        }
        Some(Mat::from_fn(f, n, n, |i, j| r.get(i, n + j).clone()))
    }
}

/// Kronecker product of a nonempty list, left factor slowest.
pub fn kron_list<F: Field>(ms: &[&Mat<F>]) -> Mat<F> {
    assert!(!ms.is_empty(), "kron of empty list");
    let mut acc = ms[0].clone();
    for m in &ms[1..] {
        acc = acc.kron(m);
    }
    acc
}

/// Index table of the tensor-factor reordering: entry `src` is the target
/// index of source basis vector `src`. `dims` are the source factor
/// dimensions; target slot `t` receives source slot `perm[t]`. Indexing is
/// lexicographic with the leftmost factor slowest.
pub fn tensor_perm_indices(dims: &[usize], perm: &[usize]) -> Vec<usize> {
    assert_eq!(dims.len(), perm.len());
    let total: usize = dims.iter().product();
    let k = dims.len();
    let mut sstride = vec![1usize; k];
    for i in (0..k.saturating_sub(1)).rev() {
        sstride[i] = sstride[i + 1] * dims[i + 1];
    }
    let tdims: Vec<usize> = perm.iter().map(|&s| dims[s]).collect();
    let mut tstride = vec![1usize; k];
    for i in (0..k.saturating_sub(1)).rev() {
        tstride[i] = tstride[i + 1] * tdims[i + 1];
    }
    let mut out = vec![0usize; total];
    let mut idx = vec![0usize; k];
    for (src, slot) in out.iter_mut().enumerate() {
        let mut rem = src;
        for i in 0..k {
            idx[i] = rem / sstride[i];
            rem %= sstride[i];
        }
        *slot = (0..k).map(|t| idx[perm[t]] * tstride[t]).sum();
    }
    out
}

/// The reordering as a dense permutation matrix; prefer the gather methods
/// on [`Mat`] for anything large.
pub fn tensor_permutation<F: Field>(field: &F, dims: &[usize], perm: &[usize]) -> Mat<F> {
    let idx = tensor_perm_indices(dims, perm);
    let total = idx.len();
    let mut m = Mat::zeros(field, total, total);
    for (src, &tgt) in idx.iter().enumerate() {
        m.set(tgt, src, field.one());
    }
    m
}

/// `(a tensor I_k) * m` without materializing the Kronecker factor.
pub fn kron_id_mul<F: Field>(a: &Mat<F>, k: usize, m: &Mat<F>) -> Mat<F> {
    let f = &a.field;
    assert_eq!(m.rows(), a.cols() * k);
    let mut out = Mat::zeros(f, a.rows() * k, m.cols());
    for r in 0..a.rows() {
        for s in 0..a.cols() {
            let av = a.get(r, s);
            if f.is_zero(av) {
                continue;
            }
            for j in 0..k {
                let (orow, mrow) = ((r * k + j) * m.cols(), (s * k + j) * m.cols());
                for c in 0..m.cols() {
                    let mv = &m.data[mrow + c];
                    if !f.is_zero(mv) {
                        f.mul_add_in(&mut out.data[orow + c], av, mv);
                    }
                }
            }
        }
    }
    out
}

/// `(I_k tensor a) * m`.
pub fn id_kron_mul<F: Field>(k: usize, a: &Mat<F>, m: &Mat<F>) -> Mat<F> {
    let f = &a.field;
    assert_eq!(m.rows(), k * a.cols());
    let mut out = Mat::zeros(f, k * a.rows(), m.cols());
    for j in 0..k {
        for r in 0..a.rows() {
            let orow = (j * a.rows() + r) * m.cols();
            for s in 0..a.cols() {
                let av = a.get(r, s);
                if f.is_zero(av) {
                    continue;
                }
                let mrow = (j * a.cols() + s) * m.cols();
                for c in 0..m.cols() {
                    let mv = &m.data[mrow + c];
                    if !f.is_zero(mv) {
                        f.mul_add_in(&mut out.data[orow + c], av, mv);
                    }
                }
            }
        }
    }
    out
}

/// `m * (a tensor I_k)`.
pub fn mul_kron_id<F: Field>(m: &Mat<F>, a: &Mat<F>, k: usize) -> Mat<F> {
    let f = &a.field;
    assert_eq!(m.cols(), a.rows() * k);
    let mut out = Mat::zeros(f, m.rows(), a.cols() * k);
    for s in 0..a.rows() {
        for c in 0..a.cols() {
            let av = a.get(s, c);
            if f.is_zero(av) {
                continue;
            }
            for r in 0..m.rows() {
                for j in 0..k {
                    let mv = m.get(r, s * k + j);
                    if !f.is_zero(mv) {
                        let slot = r * out.cols + c * k + j;
                        let add = f.mul(mv, av);
                        let cur = std::mem::replace(&mut out.data[slot], f.zero());
                        out.data[slot] = f.add(&cur, &add);
                    }
                }
            }
        }
    }
    out
}

/// `m * (I_k tensor a)`.
pub fn mul_id_kron<F: Field>(m: &Mat<F>, k: usize, a: &Mat<F>) -> Mat<F> {
    let f = &a.field;
    assert_eq!(m.cols(), k * a.rows());
    let mut out = Mat::zeros(f, m.rows(), k * a.cols());
    for s in 0..a.rows() {
        for c in 0..a.cols() {
            let av = a.get(s, c);
            if f.is_zero(av) {
                continue;
            }
            for r in 0..m.rows() {
                for j in 0..k {
                    let mv = m.get(r, j * a.rows() + s);
                    if !f.is_zero(mv) {
                        let slot = r * out.cols + j * a.cols() + c;
                        let add = f.mul(mv, av);
                        let cur = std::mem::replace(&mut out.data[slot], f.zero());
                        out.data[slot] = f.add(&cur, &add);
                    }
                }
            }
        }
    }
    out
}

/// Incremental row echelon structure: insert rows one at a time, keeping a
/// fully reduced basis. Used for rank, kernels, membership and coordinates.
pub struct Echelon<F: Field> {
    field: F,
    cols: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: &F, cols: usize) -> Self {
        Echelon { field: field.clone(), cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.rows[i]
    }

    /// Reduce `v` against the current basis, in place.
    pub fn reduce_in_place(&self, v: &mut [F::Elem]) {
        let f = &self.field;
        for (i, &p) in self.pivots.iter().enumerate() {
            if f.is_zero(&v[p]) {
                continue;
            }
            let factor = v[p].clone();
            let row = &self.rows[i];
            for c in p..self.cols {
                if !f.is_zero(&row[c]) {
                    f.mul_sub_in(&mut v[c], &factor, &row[c]);
                }
            }
        }
    }

    /// Reduce `v`, returning the coefficients used per basis row.
    pub fn reduce_with_coords(&self, v: &mut [F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut coords = vec![f.zero(); self.rows.len()];
        for (i, &p) in self.pivots.iter().enumerate() {
            if f.is_zero(&v[p]) {
                continue;
            }
            let factor = v[p].clone();
            let row = &self.rows[i];
            for c in p..self.cols {
                if !f.is_zero(&row[c]) {
                    f.mul_sub_in(&mut v[c], &factor, &row[c]);
                }
            }
            coords[i] = factor;
        }
        coords
    }

    /// Insert a row; returns true if it increased the rank.
    pub fn insert(&mut self, mut v: Vec<F::Elem>) -> bool {
        let f = self.field.clone();
        assert_eq!(v.len(), self.cols);
        self.reduce_in_place(&mut v);
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[p]).expect("nonzero");
        for c in p..self.cols {
            v[c] = f.mul(&v[c], &inv);
        }
        // back-eliminate the new pivot from existing rows
        for (i, row) in self.rows.iter_mut().enumerate() {
            let _ = i;
            if f.is_zero(&row[p]) {
                continue;
            }
            let factor = row[p].clone();
            for c in p..self.cols {
                if !f.is_zero(&v[c]) {
                    f.mul_sub_in(&mut row[c], &factor, &v[c]);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w);
        w.iter().all(|x| self.field.is_zero(x))
    }

    pub fn into_subspace(self, ambient: usize) -> Subspace<F> {
        assert_eq!(ambient, self.cols);
        Subspace { ambient, basis: Mat::from_rows(&self.field, self.cols, self.rows), pivots: self.pivots }
    }
}

/// A subspace of k^ambient, stored as a reduced-echelon row basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    pub ambient: usize,
    pub basis: Mat<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn from_rows(field: &F, ambient: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let mut ech = Echelon::new(field, ambient);
        for r in rows {
            ech.insert(r);
        }
        ech.into_subspace(ambient)
    }

    pub fn zero(field: &F, ambient: usize) -> Self {
        Subspace { ambient, basis: Mat::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let f = &self.basis.field;
        let mut w = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if f.is_zero(&w[p]) {
                continue;
            }
            let factor = w[p].clone();
            for c in 0..self.ambient {
                let b = self.basis.get(i, c).clone();
                if !f.is_zero(&b) {
                    f.mul_sub_in(&mut w[c], &factor, &b);
                }
            }
        }
        w.iter().all(|x| f.is_zero(x))
    }

    /// Coordinates of `v` in the basis; `None` if `v` is not in the subspace.
    pub fn coords(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = &self.basis.field;
        let mut w = v.to_vec();
        let mut coords = vec![f.zero(); self.dim()];
        for (i, &p) in self.pivots.iter().enumerate() {
            if f.is_zero(&w[p]) {
                continue;
            }
            let factor = w[p].clone();
            for c in 0..self.ambient {
                let b = self.basis.get(i, c).clone();
                if !f.is_zero(&b) {
                    f.mul_sub_in(&mut w[c], &factor, &b);
                }
            }
            coords[i] = factor;
        }
        if w.iter().all(|x| f.is_zero(x)) {
            Some(coords)
        } else {
            None
        }
    }

    /// Inclusion matrix: ambient x dim, columns are basis vectors.
    pub fn inclusion(&self) -> Mat<F> {
        self.basis.transpose()
    }

    /// The matrix expressing subspace coordinates of ambient vectors known to
    /// lie in the subspace: picks the pivot entries. Left inverse of
    /// `inclusion`.
    pub fn coords_matrix(&self) -> Mat<F> {
        let f = &self.basis.field;
        let mut m = Mat::zeros(f, self.dim(), self.ambient);
        for (i, &p) in self.pivots.iter().enumerate() {
            m.set(i, p, f.one());
        }
        m
    }
}

/// Projection and section realizing `k^ambient / s`. The projection reads the
/// free coordinates after reduction by the subspace basis; the section places
/// them back on the free axes. `projection * section = identity` and the
/// projection kills the subspace.
pub fn quotient_data<F: Field>(field: &F, ambient: usize, s: &Subspace<F>) -> (Mat<F>, Mat<F>) {
    assert_eq!(s.ambient, ambient, "ambient mismatch");
    let mut is_pivot = vec![false; ambient];
    for &p in &s.pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..ambient).filter(|c| !is_pivot[*c]).collect();
    let q = free.len();
    let mut proj = Mat::zeros(field, q, ambient);
    for (j, &fcol) in free.iter().enumerate() {
        proj.set(j, fcol, field.one());
        for (i, &p) in s.pivots.iter().enumerate() {
            proj.set(j, p, field.neg(s.basis.get(i, fcol)));
        }
    }
    let mut sect = Mat::zeros(field, ambient, q);
    for (j, &fcol) in free.iter().enumerate() {
        sect.set(fcol, j, field.one());
    }
    (proj, sect)
}

/// Matrix of the linear operator `X -> a * (I_s tensor X tensor I_t) * b`
/// acting on row-major vectorized `X` of shape `x_rows x x_cols`.
/// `a` may be `None` for the identity on the left, likewise `b`.
pub fn op_matrix<F: Field>(
    field: &F,
    a: Option<&Mat<F>>,
    s: usize,
    t: usize,
    b: Option<&Mat<F>>,
    x_rows: usize,
    x_cols: usize,
) -> Mat<F> {
    let mid_rows = s * x_rows * t;
    let mid_cols = s * x_cols * t;
    let out_rows = a.map(|m| m.rows()).unwrap_or(mid_rows);
    let a_cols = a.map(|m| m.cols()).unwrap_or(mid_rows);
    let b_rows = b.map(|m| m.rows()).unwrap_or(mid_cols);
    let out_cols = b.map(|m| m.cols()).unwrap_or(mid_cols);
    assert_eq!(a_cols, mid_rows, "left factor shape");
    assert_eq!(b_rows, mid_cols, "right factor shape");
    let mut out = Mat::zeros(field, out_rows * out_cols, x_rows * x_cols);
    for alpha in 0..s {
        for beta in 0..t {
            for i in 0..x_rows {
                let mid_r = (alpha * x_rows + i) * t + beta;
                // column of a at mid_r (or unit vector)
                for j in 0..x_cols {
                    let mid_c = (alpha * x_cols + j) * t + beta;
                    let xcol = i * x_cols + j;
                    match (a, b) {
                        (Some(am), Some(bm)) => {
                            for r in 0..out_rows {
                                let av = am.get(r, mid_r);
                                if field.is_zero(av) {
                                    continue;
                                }
                                for c in 0..out_cols {
                                    let bv = bm.get(mid_c, c);
                                    if !field.is_zero(bv) {
                                        let prod = field.mul(av, bv);
                                        let cur = out.get(r * out_cols + c, xcol).clone();
                                        out.set(r * out_cols + c, xcol, field.add(&cur, &prod));
                                    }
                                }
                            }
                        }
                        (Some(am), None) => {
                            for r in 0..out_rows {
                                let av = am.get(r, mid_r);
                                if !field.is_zero(av) {
                                    let cur = out.get(r * out_cols + mid_c, xcol).clone();
                                    out.set(r * out_cols + mid_c, xcol, field.add(&cur, av));
                                }
                            }
                        }
                        (None, Some(bm)) => {
                            for c in 0..out_cols {
                                let bv = bm.get(mid_c, c);
                                if !field.is_zero(bv) {
                                    let cur = out.get(mid_r * out_cols + c, xcol).clone();
                                    out.set(mid_r * out_cols + c, xcol, field.add(&cur, bv));
                                }
                            }
                        }
                        (None, None) => {
                            let cur = out.get(mid_r * out_cols + mid_c, xcol).clone();
                            out.set(mid_r * out_cols + mid_c, xcol, field.add(&cur, &field.one()));
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rat, Rationals};
    use proptest::prelude::*;

    fn q() -> Rationals {
        Rationals
    }

    #[test]
    fn rref_identity() {
        let m = Mat::identity(&q(), 3);
        let (r, p) = m.rref();
        assert_eq!(r, m);
        assert_eq!(p, vec![0, 1, 2]);
    }

    #[test]
    fn rref_rank_one() {
        let m = Mat::from_i64(&q(), &[&[1, 2], &[2, 4]]);
        let (r, p) = m.rref();
        assert_eq!(r, Mat::from_i64(&q(), &[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_char_two() {
        let f2 = PrimeField::new(2).unwrap();
        let m = Mat::from_i64(&f2, &[&[1, 1], &[1, 1]]);
        let (r, p) = m.rref();
        assert_eq!(r, Mat::from_i64(&f2, &[&[1, 1], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        let z = Mat::zeros(&q(), 2, 3);
        assert_eq!(z.kernel_basis().dim(), 3);

        let m = Mat::from_i64(&q(), &[&[1, 2], &[2, 4]]);
        let k = m.kernel_basis();
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&[Rat::from_int(-2), Rat::from_int(1)]));

        let inv = Mat::from_i64(&q(), &[&[1, 1, 0, 0], &[0, 1, 0, 0], &[0, 0, 2, 1], &[0, 0, 0, 1]]);
        assert_eq!(inv.kernel_basis().dim(), 0);
    }

    #[test]
    fn quotient_examples() {
        let f = q();
        let s0 = Subspace::zero(&f, 3);
        let (p, sec) = quotient_data(&f, 3, &s0);
        assert_eq!(p, Mat::identity(&f, 3));
        assert_eq!(p.mul(&sec), Mat::identity(&f, 3));

        let sfull = Subspace::full(&f, 2);
        let (p, _) = quotient_data(&f, 2, &sfull);
        assert_eq!(p.rows(), 0);

        let s = Subspace::from_rows(&f, 2, vec![vec![Rat::from_int(1), Rat::from_int(1)]]);
        let (p, sec) = quotient_data(&f, 2, &s);
        assert_eq!(p.rows(), 1);
        // projection kills the subspace
        assert!(p.apply(&[Rat::from_int(1), Rat::from_int(1)]).iter().all(|x| x.is_zero_val()));
        assert_eq!(p.mul(&sec), Mat::identity(&f, 1));
    }

    #[test]
    fn kron_examples() {
        let f = q();
        let i2 = Mat::identity(&f, 2);
        let i3 = Mat::identity(&f, 3);
        assert_eq!(i2.kron(&i3), Mat::identity(&f, 6));

        let a = Mat::from_i64(&f, &[&[3, 1], &[0, 2]]);
        let one = Mat::identity(&f, 1);
        assert_eq!(a.kron(&one), a);

        let n = Mat::from_i64(&f, &[&[0, 1], &[0, 0]]);
        let k = n.kron(&i2);
        let mut expect = Mat::zeros(&f, 4, 4);
        expect.set(0, 2, Rat::ONE);
        expect.set(1, 3, Rat::ONE);
        assert_eq!(k, expect);
    }

    #[test]
    fn structured_kron_products_match_dense() {
        let f = q();
        let a = Mat::from_i64(&f, &[&[1, 2], &[0, -1], &[3, 0]]);
        let m = Mat::from_i64(
            &f,
            &[&[1, 0, 2], &[0, 1, 0], &[1, 1, 1], &[2, 0, 0], &[0, 3, 0], &[1, 0, 1]],
        );
        let id3 = Mat::identity(&f, 3);
        assert_eq!(kron_id_mul(&a, 3, &m), a.kron(&id3).mul(&m));
        assert_eq!(id_kron_mul(3, &a, &m), id3.kron(&a).mul(&m));
        let w = Mat::from_i64(&f, &[&[1, 2, 0, 1, 0, 0], &[0, 1, 1, 0, 2, 1]]);
        let id2 = Mat::identity(&f, 2);
        assert_eq!(mul_kron_id(&w, &a, 2), w.mul(&a.kron(&id2)));
        let w = Mat::from_i64(&f, &[&[1, 2, 0, 1, 0, 0], &[0, 1, 1, 0, 2, 1]]);
        assert_eq!(mul_id_kron(&w, 2, &a), w.mul(&id2.kron(&a)));
    }

    #[test]
    fn gather_matches_permutation_matrix() {
        let f = q();
        let dims = [2usize, 3, 2];
        let perm = [2usize, 0, 1];
        let p = tensor_permutation(&f, &dims, &perm);
        let idx = tensor_perm_indices(&dims, &perm);
        let m = Mat::from_fn(&f, 12, 5, |r, c| Rat::from_int((r * 5 + c) as i64 % 7 - 3));
        assert_eq!(p.mul(&m), m.permute_rows_by(&idx));
        let m = Mat::from_fn(&f, 5, 12, |r, c| Rat::from_int((r * 12 + c) as i64 % 5 - 2));
        assert_eq!(m.mul(&p), m.permute_cols_by(&idx));
    }

    #[test]
    fn tensor_permutation_swaps() {
        let f = q();
        // swap two factors of dims 2 and 3
        let p = tensor_permutation(&f, &[2, 3], &[1, 0]);
        // e_(i,j) -> e_(j,i): source index i*3+j maps to target j*2+i
        for i in 0..2 {
            for j in 0..3 {
                assert_eq!(p.get(j * 2 + i, i * 3 + j), &Rat::ONE);
            }
        }
        // permutation matrices are invertible
        assert_eq!(p.mul(&p.transpose()), Mat::identity(&f, 6));
    }

    #[test]
    fn op_matrix_matches_direct() {
        let f = q();
        let a = Mat::from_i64(&f, &[&[1, 2, 0, 1], &[0, 1, 1, 0]]);
        let b = Mat::from_i64(&f, &[&[1, 0], &[2, 1], &[0, 3], &[1, 1]]);
        // X is 2x2, s = 2, t = 1: a * (I_2 ox X) * b
        let op = op_matrix(&f, Some(&a), 2, 1, Some(&b), 2, 2);
        let x = Mat::from_i64(&f, &[&[1, -1], &[2, 5]]);
        let ix = Mat::identity(&f, 2).kron(&x);
        let direct = a.mul(&ix).mul(&b);
        let vec_x: Vec<Rat> = (0..4).map(|i| x.get(i / 2, i % 2).clone()).collect();
        let got = op.apply(&vec_x);
        let want: Vec<Rat> = (0..direct.rows())
            .flat_map(|r| (0..direct.cols()).map(move |c| (r, c)))
            .map(|(r, c)| direct.get(r, c).clone())
            .collect();
        assert_eq!(got, want);
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in 1usize..5, cols in 1usize..5,
                        seed in proptest::collection::vec(-4i64..5, 25)) {
            let f = q();
            let m = Mat::from_fn(&f, rows, cols, |r, c| Rat::from_int(seed[r * 5 + c]));
            prop_assert_eq!(m.rank() + m.kernel_basis().dim(), cols);
        }

        #[test]
        fn kron_rank_multiplicative(a in proptest::collection::vec(-2i64..3, 9),
                                    b in proptest::collection::vec(-2i64..3, 9)) {
            let f = q();
            let ma = Mat::from_fn(&f, 3, 3, |r, c| Rat::from_int(a[r * 3 + c]));
            let mb = Mat::from_fn(&f, 3, 3, |r, c| Rat::from_int(b[r * 3 + c]));
            prop_assert_eq!(ma.kron(&mb).rank(), ma.rank() * mb.rank());
        }

        #[test]
        fn kron_associative(a in proptest::collection::vec(-2i64..3, 4),
                            b in proptest::collection::vec(-2i64..3, 4),
                            c in proptest::collection::vec(-2i64..3, 4)) {
            let f = q();
            let ma = Mat::from_fn(&f, 2, 2, |r, cc| Rat::from_int(a[r * 2 + cc]));
            let mb = Mat::from_fn(&f, 2, 2, |r, cc| Rat::from_int(b[r * 2 + cc]));
            let mc = Mat::from_fn(&f, 2, 2, |r, cc| Rat::from_int(c[r * 2 + cc]));
            prop_assert_eq!(ma.kron(&mb).kron(&mc), ma.kron(&mb.kron(&mc)));
        }

        #[test]
        fn quotient_projection_section(rows in 0usize..3,
                                       seed in proptest::collection::vec(-3i64..4, 12)) {
            let f = q();
            let s = Subspace::from_rows(&f, 4, (0..rows).map(|r| {
                (0..4).map(|c| Rat::from_int(seed[r * 4 + c])).collect()
            }).collect());
            let (p, sec) = quotient_data(&f, 4, &s);
            prop_assert_eq!(p.rows(), 4 - s.dim());
            prop_assert_eq!(p.mul(&sec), Mat::identity(&f, p.rows()));
            for i in 0..s.dim() {
                let img = p.apply(s.basis.row(i));
                prop_assert!(img.iter().all(|x| x.is_zero_val()));
            }
        }
    }
}
