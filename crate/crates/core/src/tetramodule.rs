//! The category of tetramodules over a bialgebra at desk scale: objects,
//! morphisms, axiom verification, kernels and cokernels, and the two
//! forgetful functors to bimodules and bicomodules.
//!
//! A tetramodule is a space with left/right actions and left/right coactions
//! of the base bialgebra, subject to the bimodule axioms, the bicomodule
//! axioms (including the mixed one, which the internal products need), and
//! four action-coaction compatibilities. Structure maps are stored against
//! fixed tensor bases in the lexicographic order of `kron`, A-factor slowest
//! in `A tensor M` and M-factor slowest in `M tensor A`.

use crate::bialgebra::{unflatten, AxiomReport, Bialgebra};
use crate::field::Field;
use crate::mat::{op_matrix, quotient_data, Mat, Subspace};
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum TetraError {
    #[error("objects live over different base bialgebras")]
    BaseMismatch,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("subspace is not stable under {0}")]
    NotStable(String),
    #[error("axiom failure: {0}")]
    Axiom(String),
    #[error("map is not invertible: {0}")]
    NotInvertible(String),
    #[error("size guard: {0}")]
    SizeGuard(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tetramodule<F: Field> {
    pub base: Arc<Bialgebra<F>>,
    pub dim: usize,
    /// `A tensor M -> M`, `dim x (n * dim)`.
    pub act_l: Mat<F>,
    /// `M tensor A -> M`, `dim x (dim * n)`.
    pub act_r: Mat<F>,
    /// `M -> A tensor M`, `(n * dim) x dim`.
    pub coact_l: Mat<F>,
    /// `M -> M tensor A`, `(dim * n) x dim`.
    pub coact_r: Mat<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule<F: Field> {
    pub base: Arc<Bialgebra<F>>,
    pub dim: usize,
    pub act_l: Mat<F>,
    pub act_r: Mat<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bicomodule<F: Field> {
    pub base: Arc<Bialgebra<F>>,
    pub dim: usize,
    pub coact_l: Mat<F>,
    pub coact_r: Mat<F>,
}

/// A linear map intertwining all four structure maps.
#[derive(Clone, Debug)]
pub struct TetraMap<F: Field> {
    pub source: Tetramodule<F>,
    pub target: Tetramodule<F>,
    pub matrix: Mat<F>,
}

pub fn same_base<F: Field>(a: &Arc<Bialgebra<F>>, b: &Arc<Bialgebra<F>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<F: Field> Tetramodule<F> {
    pub fn field(&self) -> &F {
        &self.base.field
    }

    pub fn forget_actions(&self) -> Bicomodule<F> {
        Bicomodule {
            base: self.base.clone(),
            dim: self.dim,
            coact_l: self.coact_l.clone(),
            coact_r: self.coact_r.clone(),
        }
    }

    pub fn forget_coactions(&self) -> Bimodule<F> {
        Bimodule {
            base: self.base.clone(),
            dim: self.dim,
            act_l: self.act_l.clone(),
            act_r: self.act_r.clone(),
        }
    }
}

/// The two forgetful functors.
pub fn forget1<F: Field>(m: &Tetramodule<F>) -> Bicomodule<F> {
    m.forget_actions()
}

pub fn forget2<F: Field>(m: &Tetramodule<F>) -> Bimodule<F> {
    m.forget_coactions()
}

impl<F: Field> Bimodule<F> {
    /// `A tensor M tensor A -> M`, `a (x) m (x) b -> a m b`.
    pub fn sandwich(&self) -> Mat<F> {
        let n = self.base.dim;
        self.act_l.mul(&Mat::identity(self.base.field(), n).kron(&self.act_r))
    }
}

impl<F: Field> Bicomodule<F> {
    /// `M -> A tensor M tensor A`, both coactions applied.
    pub fn double_coaction(&self) -> Mat<F> {
        let n = self.base.dim;
        self.coact_l.kron(&Mat::identity(self.base.field(), n)).mul(&self.coact_r)
    }
}

impl<F: Field> Bialgebra<F> {
    pub fn field(&self) -> &F {
        &self.field
    }
}

fn pair_witness(n_dims: &[usize], c: usize) -> String {
    let parts = unflatten(c, n_dims);
    parts.iter().map(|i| format!("e{}", i)).collect::<Vec<_>>().join("(x)")
}

/// All tetramodule axioms, grouped: bimodule, bicomodule, and the four
/// action-coaction compatibilities. Failures name a violating basis pair.
pub fn verify_tetramodule<F: Field>(m: &Tetramodule<F>) -> Result<AxiomReport, TetraError> {
    let b = &m.base;
    let f = b.field();
    let n = b.dim;
    let d = m.dim;
    if m.act_l.rows() != d || m.act_l.cols() != n * d {
        return Err(TetraError::Shape(format!("act_l is {}x{}", m.act_l.rows(), m.act_l.cols())));
    }
    if m.act_r.rows() != d || m.act_r.cols() != d * n {
        return Err(TetraError::Shape("act_r".into()));
    }
    if m.coact_l.rows() != n * d || m.coact_l.cols() != d {
        return Err(TetraError::Shape("coact_l".into()));
    }
    if m.coact_r.rows() != d * n || m.coact_r.cols() != d {
        return Err(TetraError::Shape("coact_r".into()));
    }

    let id_a = Mat::identity(f, n);
    let id_m = Mat::identity(f, d);
    let mut rep = AxiomReport::default();

    // bimodule group
    let lhs = m.act_l.mul(&b.mult.kron(&id_m));
    let rhs = m.act_l.mul(&id_a.kron(&m.act_l));
    rep.push_cmp("bimodule/assoc-left", &lhs, &rhs, |_, c| pair_witness(&[n, n, d], c));

    let lhs = m.act_r.mul(&id_m.kron(&b.mult));
    let rhs = m.act_r.mul(&m.act_r.kron(&id_a));
    rep.push_cmp("bimodule/assoc-right", &lhs, &rhs, |_, c| pair_witness(&[d, n, n], c));

    let lhs = m.act_r.mul(&m.act_l.kron(&id_a));
    let rhs = m.act_l.mul(&id_a.kron(&m.act_r));
    rep.push_cmp("bimodule/assoc-mixed", &lhs, &rhs, |_, c| pair_witness(&[n, d, n], c));

    let lhs = m.act_l.mul(&b.unit_mat().kron(&id_m));
    rep.push_cmp("bimodule/unit-left", &lhs, &id_m, |_, c| pair_witness(&[d], c));
    let lhs = m.act_r.mul(&id_m.kron(&b.unit_mat()));
    rep.push_cmp("bimodule/unit-right", &lhs, &id_m, |_, c| pair_witness(&[d], c));

    // bicomodule group
    let lhs = b.comult.kron(&id_m).mul(&m.coact_l);
    let rhs = id_a.kron(&m.coact_l).mul(&m.coact_l);
    rep.push_cmp("bicomodule/coassoc-left", &lhs, &rhs, |_, c| pair_witness(&[d], c));

    let lhs = id_m.kron(&b.comult).mul(&m.coact_r);
    let rhs = m.coact_r.kron(&id_a).mul(&m.coact_r);
    rep.push_cmp("bicomodule/coassoc-right", &lhs, &rhs, |_, c| pair_witness(&[d], c));

    let lhs = id_a.kron(&m.coact_r).mul(&m.coact_l);
    let rhs = m.coact_l.kron(&id_a).mul(&m.coact_r);
    rep.push_cmp("bicomodule/coassoc-mixed", &lhs, &rhs, |_, c| pair_witness(&[d], c));

    let lhs = b.counit_mat().kron(&id_m).mul(&m.coact_l);
    rep.push_cmp("bicomodule/counit-left", &lhs, &id_m, |_, c| pair_witness(&[d], c));
    let lhs = id_m.kron(&b.counit_mat()).mul(&m.coact_r);
    rep.push_cmp("bicomodule/counit-right", &lhs, &id_m, |_, c| pair_witness(&[d], c));

    // four action-coaction compatibilities; all share the middle swap
    let swap = |dims: &[usize]| crate::mat::tensor_perm_indices(dims, &[0, 2, 1, 3]);

    let lhs = m.coact_l.mul(&m.act_l);
    let rhs = b.mult.kron(&m.act_l).mul(&b.comult.kron(&m.coact_l).permute_rows_by(&swap(&[n, n, n, d])));
    rep.push_cmp("compat/coact-left-act-left", &lhs, &rhs, |_, c| pair_witness(&[n, d], c));

    let lhs = m.coact_l.mul(&m.act_r);
    let rhs = b.mult.kron(&m.act_r).mul(&m.coact_l.kron(&b.comult).permute_rows_by(&swap(&[n, d, n, n])));
    rep.push_cmp("compat/coact-left-act-right", &lhs, &rhs, |_, c| pair_witness(&[d, n], c));

    let lhs = m.coact_r.mul(&m.act_l);
    let rhs = m.act_l.kron(&b.mult).mul(&b.comult.kron(&m.coact_r).permute_rows_by(&swap(&[n, n, d, n])));
    rep.push_cmp("compat/coact-right-act-left", &lhs, &rhs, |_, c| pair_witness(&[n, d], c));

    let lhs = m.coact_r.mul(&m.act_r);
    let rhs = m.act_r.kron(&b.mult).mul(&m.coact_r.kron(&b.comult).permute_rows_by(&swap(&[d, n, n, n])));
    rep.push_cmp("compat/coact-right-act-right", &lhs, &rhs, |_, c| pair_witness(&[d, n], c));

    Ok(rep)
}

pub fn verify_bimodule<F: Field>(m: &Bimodule<F>) -> AxiomReport {
    let b = &m.base;
    let f = b.field();
    let (n, d) = (b.dim, m.dim);
    let id_a = Mat::identity(f, n);
    let id_m = Mat::identity(f, d);
    let mut rep = AxiomReport::default();
    let lhs = m.act_l.mul(&b.mult.kron(&id_m));
    let rhs = m.act_l.mul(&id_a.kron(&m.act_l));
    rep.push_cmp("bimodule/assoc-left", &lhs, &rhs, |_, c| pair_witness(&[n, n, d], c));
    let lhs = m.act_r.mul(&id_m.kron(&b.mult));
    let rhs = m.act_r.mul(&m.act_r.kron(&id_a));
    rep.push_cmp("bimodule/assoc-right", &lhs, &rhs, |_, c| pair_witness(&[d, n, n], c));
    let lhs = m.act_r.mul(&m.act_l.kron(&id_a));
    let rhs = m.act_l.mul(&id_a.kron(&m.act_r));
    rep.push_cmp("bimodule/assoc-mixed", &lhs, &rhs, |_, c| pair_witness(&[n, d, n], c));
    let lhs = m.act_l.mul(&b.unit_mat().kron(&id_m));
    rep.push_cmp("bimodule/unit-left", &lhs, &id_m, |_, c| pair_witness(&[d], c));
    let lhs = m.act_r.mul(&id_m.kron(&b.unit_mat()));
    rep.push_cmp("bimodule/unit-right", &lhs, &id_m, |_, c| pair_witness(&[d], c));
    rep
}

pub fn verify_bicomodule<F: Field>(m: &Bicomodule<F>) -> AxiomReport {
    let b = &m.base;
    let f = b.field();
    let (n, d) = (b.dim, m.dim);
    let id_a = Mat::identity(f, n);
    let id_m = Mat::identity(f, d);
    let mut rep = AxiomReport::default();
    let lhs = b.comult.kron(&id_m).mul(&m.coact_l);
    let rhs = id_a.kron(&m.coact_l).mul(&m.coact_l);
    rep.push_cmp("bicomodule/coassoc-left", &lhs, &rhs, |_, c| pair_witness(&[d], c));
    let lhs = id_m.kron(&b.comult).mul(&m.coact_r);
    let rhs = m.coact_r.kron(&id_a).mul(&m.coact_r);
    rep.push_cmp("bicomodule/coassoc-right", &lhs, &rhs, |_, c| pair_witness(&[d], c));
    let lhs = id_a.kron(&m.coact_r).mul(&m.coact_l);
    let rhs = m.coact_l.kron(&id_a).mul(&m.coact_r);
    rep.push_cmp("bicomodule/coassoc-mixed", &lhs, &rhs, |_, c| pair_witness(&[d], c));
    let lhs = b.counit_mat().kron(&id_m).mul(&m.coact_l);
    rep.push_cmp("bicomodule/counit-left", &lhs, &id_m, |_, c| pair_witness(&[d], c));
    let lhs = id_m.kron(&b.counit_mat()).mul(&m.coact_r);
    rep.push_cmp("bicomodule/counit-right", &lhs, &id_m, |_, c| pair_witness(&[d], c));
    rep
}

/// Check the four intertwining identities of a candidate map.
pub fn verify_tetra_map<F: Field>(f: &TetraMap<F>) -> Result<AxiomReport, TetraError> {
    if !same_base(&f.source.base, &f.target.base) {
        return Err(TetraError::BaseMismatch);
    }
    let b = &f.source.base;
    let fld = b.field();
    let n = b.dim;
    if f.matrix.rows() != f.target.dim || f.matrix.cols() != f.source.dim {
        return Err(TetraError::Shape(format!(
            "map is {}x{}, expected {}x{}",
            f.matrix.rows(),
            f.matrix.cols(),
            f.target.dim,
            f.source.dim
        )));
    }
    let id_a = Mat::identity(fld, n);
    let mut rep = AxiomReport::default();
    let lhs = f.matrix.mul(&f.source.act_l);
    let rhs = f.target.act_l.mul(&id_a.kron(&f.matrix));
    rep.push_cmp("map/act-left", &lhs, &rhs, |_, c| pair_witness(&[n, f.source.dim], c));
    let lhs = f.matrix.mul(&f.source.act_r);
    let rhs = f.target.act_r.mul(&f.matrix.kron(&id_a));
    rep.push_cmp("map/act-right", &lhs, &rhs, |_, c| pair_witness(&[f.source.dim, n], c));
    let lhs = f.target.coact_l.mul(&f.matrix);
    let rhs = id_a.kron(&f.matrix).mul(&f.source.coact_l);
    rep.push_cmp("map/coact-left", &lhs, &rhs, |_, c| pair_witness(&[f.source.dim], c));
    let lhs = f.target.coact_r.mul(&f.matrix);
    let rhs = f.matrix.kron(&id_a).mul(&f.source.coact_r);
    rep.push_cmp("map/coact-right", &lhs, &rhs, |_, c| pair_witness(&[f.source.dim], c));
    Ok(rep)
}

impl<F: Field> TetraMap<F> {
    pub fn identity(m: &Tetramodule<F>) -> Self {
        TetraMap {
            source: m.clone(),
            target: m.clone(),
            matrix: Mat::identity(m.field(), m.dim),
        }
    }

    pub fn is_valid(&self) -> bool {
        verify_tetra_map(self).map(|r| r.all_ok()).unwrap_or(false)
    }

    pub fn compose(&self, inner: &TetraMap<F>) -> TetraMap<F> {
        assert_eq!(inner.target.dim, self.source.dim, "composition shape");
        TetraMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&inner.matrix),
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

/// The base bialgebra acting and coacting on itself.
pub fn tautological<F: Field>(b: &Arc<Bialgebra<F>>) -> Tetramodule<F> {
    Tetramodule {
        base: b.clone(),
        dim: b.dim,
        act_l: b.mult.clone(),
        act_r: b.mult.clone(),
        coact_l: b.comult.clone(),
        coact_r: b.comult.clone(),
    }
}

/// Counit actions and unit coactions on a d-dimensional space. Over a base of
/// dimension > 1 this satisfies the bimodule and bicomodule axioms but *not*
/// the action-coaction compatibilities, so it is not a tetramodule; it stays
/// useful as the middle of induced/coinduced products, which only read half
/// of the structure. See [`trivial_bicomodule`] and [`trivial_bimodule`] for
/// the genuinely lawful halves.
pub fn trivial_tetramodule<F: Field>(b: &Arc<Bialgebra<F>>, d: usize) -> Tetramodule<F> {
    let f = b.field();
    let id = Mat::identity(f, d);
    Tetramodule {
        base: b.clone(),
        dim: d,
        act_l: b.counit_mat().kron(&id),
        act_r: id.kron(&b.counit_mat()),
        coact_l: b.unit_mat().kron(&id),
        coact_r: id.kron(&b.unit_mat()),
    }
}

pub fn trivial_bicomodule<F: Field>(b: &Arc<Bialgebra<F>>, d: usize) -> Bicomodule<F> {
    let f = b.field();
    let id = Mat::identity(f, d);
    Bicomodule {
        base: b.clone(),
        dim: d,
        coact_l: b.unit_mat().kron(&id),
        coact_r: id.kron(&b.unit_mat()),
    }
}

pub fn trivial_bimodule<F: Field>(b: &Arc<Bialgebra<F>>, d: usize) -> Bimodule<F> {
    let f = b.field();
    let id = Mat::identity(f, d);
    Bimodule {
        base: b.clone(),
        dim: d,
        act_l: b.counit_mat().kron(&id),
        act_r: id.kron(&b.counit_mat()),
    }
}

// ---------------------------------------------------------------------------
// Hom spaces by linear solve
// ---------------------------------------------------------------------------

fn stack_constraints<F: Field>(field: &F, blocks: Vec<Mat<F>>) -> Mat<F> {
    let mut it = blocks.into_iter();
    let mut acc = it.next().expect("at least one constraint");
    for b in it {
        acc = acc.vstack(&b);
    }
    let _ = field;
    acc
}

/// Basis of all structure-intertwining matrices `m -> n`, as a subspace of
/// row-major vectorized matrices. A pure linear solve; inputs need not pass
/// their verifiers.
pub fn hom_space<F: Field>(m: &Tetramodule<F>, n: &Tetramodule<F>) -> Result<Subspace<F>, TetraError> {
    if !same_base(&m.base, &n.base) {
        return Err(TetraError::BaseMismatch);
    }
    let f = m.field();
    let na = m.base.dim;
    let (ds, dt) = (m.dim, n.dim);
    let c1 = op_matrix(f, None, 1, 1, Some(&m.act_l), dt, ds)
        .sub(&op_matrix(f, Some(&n.act_l), na, 1, None, dt, ds));
    let c2 = op_matrix(f, None, 1, 1, Some(&m.act_r), dt, ds)
        .sub(&op_matrix(f, Some(&n.act_r), 1, na, None, dt, ds));
    let c3 = op_matrix(f, Some(&n.coact_l), 1, 1, None, dt, ds)
        .sub(&op_matrix(f, None, na, 1, Some(&m.coact_l), dt, ds));
    let c4 = op_matrix(f, Some(&n.coact_r), 1, 1, None, dt, ds)
        .sub(&op_matrix(f, None, 1, na, Some(&m.coact_r), dt, ds));
    Ok(stack_constraints(f, vec![c1, c2, c3, c4]).kernel_basis())
}

pub fn hom_space_bicomodule<F: Field>(m: &Bicomodule<F>, n: &Bicomodule<F>) -> Result<Subspace<F>, TetraError> {
    if !same_base(&m.base, &n.base) {
        return Err(TetraError::BaseMismatch);
    }
    let f = m.base.field();
    let na = m.base.dim;
    let (ds, dt) = (m.dim, n.dim);
    let c3 = op_matrix(f, Some(&n.coact_l), 1, 1, None, dt, ds)
        .sub(&op_matrix(f, None, na, 1, Some(&m.coact_l), dt, ds));
    let c4 = op_matrix(f, Some(&n.coact_r), 1, 1, None, dt, ds)
        .sub(&op_matrix(f, None, 1, na, Some(&m.coact_r), dt, ds));
    Ok(stack_constraints(f, vec![c3, c4]).kernel_basis())
}

pub fn hom_space_bimodule<F: Field>(m: &Bimodule<F>, n: &Bimodule<F>) -> Result<Subspace<F>, TetraError> {
    if !same_base(&m.base, &n.base) {
        return Err(TetraError::BaseMismatch);
    }
    let f = m.base.field();
    let na = m.base.dim;
    let (ds, dt) = (m.dim, n.dim);
    let c1 = op_matrix(f, None, 1, 1, Some(&m.act_l), dt, ds)
        .sub(&op_matrix(f, Some(&n.act_l), na, 1, None, dt, ds));
    let c2 = op_matrix(f, None, 1, 1, Some(&m.act_r), dt, ds)
        .sub(&op_matrix(f, Some(&n.act_r), 1, na, None, dt, ds));
    Ok(stack_constraints(f, vec![c1, c2]).kernel_basis())
}

/// Turn a vectorized hom-space row back into a map.
pub fn hom_element<F: Field>(m: &Tetramodule<F>, n: &Tetramodule<F>, row: &[F::Elem]) -> TetraMap<F> {
    let f = m.field();
    assert_eq!(row.len(), m.dim * n.dim);
    let matrix = Mat::from_fn(f, n.dim, m.dim, |r, c| row[r * m.dim + c].clone());
    TetraMap { source: m.clone(), target: n.clone(), matrix }
}

// ---------------------------------------------------------------------------
// Kernels, cokernels, direct sums
// ---------------------------------------------------------------------------

/// Express the rows of `map` (viewed per tensor block `s x d x t`) in the
/// coordinates of `sub`, failing if some block column leaves the subspace.
fn restrict_rows_factor<F: Field>(
    map: &Mat<F>,
    sub: &Subspace<F>,
    s: usize,
    t: usize,
    what: &str,
) -> Result<Mat<F>, TetraError> {
    let f = &map.field;
    let d = sub.ambient;
    let k = sub.dim();
    assert_eq!(map.rows(), s * d * t);
    let mut out = Mat::zeros(f, s * k * t, map.cols());
    for c in 0..map.cols() {
        let col = map.col_vec(c);
        for alpha in 0..s {
            for beta in 0..t {
                let slice: Vec<F::Elem> =
                    (0..d).map(|i| col[(alpha * d + i) * t + beta].clone()).collect();
                let coords = sub
                    .coords(&slice)
                    .ok_or_else(|| TetraError::NotStable(what.to_string()))?;
                for (i, v) in coords.into_iter().enumerate() {
                    out.set((alpha * k + i) * t + beta, c, v);
                }
            }
        }
    }
    Ok(out)
}

/// Kernel of a tetramodule map, with the inclusion. The kernel subspace must
/// be stable under all four structure maps; instability signals a corrupted
/// input map and is reported.
pub fn kernel_tetra<F: Field>(f: &TetraMap<F>) -> Result<(Tetramodule<F>, TetraMap<F>), TetraError> {
    let m = &f.source;
    let b = &m.base;
    let fld = m.field();
    let n = b.dim;
    let sub = f.matrix.kernel_basis();
    let incl = sub.inclusion();
    let id_a = Mat::identity(fld, n);

    let act_l = restrict_rows_factor(&m.act_l.mul(&id_a.kron(&incl)), &sub, 1, 1, "left action")?;
    let act_r = restrict_rows_factor(&m.act_r.mul(&incl.kron(&id_a)), &sub, 1, 1, "right action")?;
    let coact_l = restrict_rows_factor(&m.coact_l.mul(&incl), &sub, n, 1, "left coaction")?;
    let coact_r = restrict_rows_factor(&m.coact_r.mul(&incl), &sub, 1, n, "right coaction")?;

    let ker = Tetramodule { base: b.clone(), dim: sub.dim(), act_l, act_r, coact_l, coact_r };
    let inclusion = TetraMap { source: ker.clone(), target: m.clone(), matrix: incl };
    Ok((ker, inclusion))
}

/// Cokernel with the projection; the image must be stable, which holds for
/// genuine tetramodule maps.
pub fn cokernel_tetra<F: Field>(f: &TetraMap<F>) -> Result<(Tetramodule<F>, TetraMap<F>), TetraError> {
    let nmod = &f.target;
    let b = &nmod.base;
    let fld = nmod.field();
    let n = b.dim;
    let image = Subspace::from_rows(
        fld,
        nmod.dim,
        (0..f.matrix.cols()).map(|c| f.matrix.col_vec(c)).collect(),
    );
    // stability of the image under the structure maps
    let incl = image.inclusion();
    let id_a = Mat::identity(fld, n);
    restrict_rows_factor(&nmod.act_l.mul(&id_a.kron(&incl)), &image, 1, 1, "left action on image")?;
    restrict_rows_factor(&nmod.act_r.mul(&incl.kron(&id_a)), &image, 1, 1, "right action on image")?;
    // coaction stability: columns must lie in A (x) image resp. image (x) A
    restrict_rows_factor(&nmod.coact_l.mul(&incl), &image, n, 1, "left coaction on image")?;
    restrict_rows_factor(&nmod.coact_r.mul(&incl), &image, 1, n, "right coaction on image")?;

    let (proj, sect) = quotient_data(fld, nmod.dim, &image);
    let q = proj.rows();
    let act_l = proj.mul(&nmod.act_l).mul(&id_a.kron(&sect));
    let act_r = proj.mul(&nmod.act_r).mul(&sect.kron(&id_a));
    let coact_l = id_a.kron(&proj).mul(&nmod.coact_l).mul(&sect);
    let coact_r = proj.kron(&id_a).mul(&nmod.coact_r).mul(&sect);
    let coker = Tetramodule { base: b.clone(), dim: q, act_l, act_r, coact_l, coact_r };
    let projection = TetraMap { source: nmod.clone(), target: coker.clone(), matrix: proj };
    Ok((coker, projection))
}

fn sum_with_a_leg<F: Field>(
    f: &F,
    m1: &Mat<F>,
    m2: &Mat<F>,
    n: usize,
    d1: usize,
    d2: usize,
    leg_left: bool,
    codomain_leg: bool,
) -> Mat<F> {
    let d = d1 + d2;
    if codomain_leg {
        // coaction style: (leg arrangement x d) x d
        let rows = n * d;
        let mut out = Mat::zeros(f, rows, d);
        for c in 0..d {
            let (src, off, dk) = if c < d1 { (m1, 0, d1) } else { (m2, d1, d2) };
            let col = src.col_vec(c - off);
            for alpha in 0..n {
                for i in 0..dk {
                    let (r_src, r_dst) = if leg_left {
                        (alpha * dk + i, alpha * d + off + i)
                    } else {
                        (i * n + alpha, (off + i) * n + alpha)
                    };
                    out.set(r_dst, c, col[r_src].clone());
                }
            }
        }
        out
    } else {
        // action style: d x (leg arrangement x d)
        let cols = n * d;
        let mut out = Mat::zeros(f, d, cols);
        for alpha in 0..n {
            for i in 0..d {
                let (src, off, dk) = if i < d1 { (m1, 0, d1) } else { (m2, d1, d2) };
                let (c_src, c_dst) = if leg_left {
                    (alpha * dk + (i - off), alpha * d + i)
                } else {
                    ((i - off) * n + alpha, i * n + alpha)
                };
                let col = src.col_vec(c_src);
                for j in 0..dk {
                    out.set(off + j, c_dst, col[j].clone());
                }
            }
        }
        out
    }
}

/// Blockwise direct sum.
pub fn direct_sum<F: Field>(m: &Tetramodule<F>, n: &Tetramodule<F>) -> Result<Tetramodule<F>, TetraError> {
    if !same_base(&m.base, &n.base) {
        return Err(TetraError::BaseMismatch);
    }
    let f = m.field();
    let na = m.base.dim;
    Ok(Tetramodule {
        base: m.base.clone(),
        dim: m.dim + n.dim,
        act_l: sum_with_a_leg(f, &m.act_l, &n.act_l, na, m.dim, n.dim, true, false),
        act_r: sum_with_a_leg(f, &m.act_r, &n.act_r, na, m.dim, n.dim, false, false),
        coact_l: sum_with_a_leg(f, &m.coact_l, &n.coact_l, na, m.dim, n.dim, true, true),
        coact_r: sum_with_a_leg(f, &m.coact_r, &n.coact_r, na, m.dim, n.dim, false, true),
    })
}

pub fn direct_sum_bicomodule<F: Field>(m: &Bicomodule<F>, n: &Bicomodule<F>) -> Bicomodule<F> {
    let f = m.base.field();
    let na = m.base.dim;
    Bicomodule {
        base: m.base.clone(),
        dim: m.dim + n.dim,
        coact_l: sum_with_a_leg(f, &m.coact_l, &n.coact_l, na, m.dim, n.dim, true, true),
        coact_r: sum_with_a_leg(f, &m.coact_r, &n.coact_r, na, m.dim, n.dim, false, true),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialgebra::{cyclic_group_algebra, primitive_truncated_poly, sweedler_h4, trivial_bialgebra};
    use crate::field::{PrimeField, Rat, Rationals};

    #[test]
    fn tautological_passes_for_zoo() {
        let q = Rationals;
        for b in [
            trivial_bialgebra(&q),
            cyclic_group_algebra(&q, 2),
            cyclic_group_algebra(&q, 3),
            sweedler_h4(&q).unwrap(),
        ] {
            let t = tautological(&b);
            let rep = verify_tetramodule(&t).unwrap();
            assert!(rep.all_ok(), "{}: {:?}", b.label, rep.failures());
        }
        let f2 = PrimeField::new(2).unwrap();
        let t = tautological(&primitive_truncated_poly(&f2, 2).unwrap());
        assert!(verify_tetramodule(&t).unwrap().all_ok());
    }

    #[test]
    fn trivial_structure_is_only_lawful_over_the_point() {
        let q = Rationals;
        // over k everything holds
        let k = trivial_bialgebra(&q);
        let t = trivial_tetramodule(&k, 3);
        assert!(verify_tetramodule(&t).unwrap().all_ok());

        // over a 2-dimensional base the bimodule and bicomodule axioms hold
        // but the compatibilities fail
        let b = cyclic_group_algebra(&q, 2);
        let t = trivial_tetramodule(&b, 1);
        let rep = verify_tetramodule(&t).unwrap();
        assert!(!rep.all_ok());
        for c in &rep.checks {
            let compat = c.name.starts_with("compat/");
            assert_eq!(c.ok, !compat, "{}", c.name);
        }
        // the halves are lawful
        assert!(verify_bicomodule(&trivial_bicomodule(&b, 2)).all_ok());
        assert!(verify_bimodule(&trivial_bimodule(&b, 2)).all_ok());
    }

    #[test]
    fn corrupted_coaction_fails_counit_axiom() {
        let q = Rationals;
        let b = cyclic_group_algebra(&q, 2);
        let mut t = tautological(&b);
        t.coact_l = Mat::zeros(&q, 4, 2);
        let rep = verify_tetramodule(&t).unwrap();
        let c = rep.checks.iter().find(|c| c.name == "bicomodule/counit-left").unwrap();
        assert!(!c.ok);
    }

    #[test]
    fn hom_space_of_tautological_is_spanned_by_identity() {
        let q = Rationals;
        for b in [cyclic_group_algebra(&q, 2), cyclic_group_algebra(&q, 3), sweedler_h4(&q).unwrap()] {
            let t = tautological(&b);
            let h = hom_space(&t, &t).unwrap();
            assert_eq!(h.dim(), 1, "{}", b.label);
            let id: Vec<Rat> = Mat::identity(&q, b.dim)
                .col_vec(0)
                .into_iter()
                .chain((1..b.dim).flat_map(|r| {
                    let m = Mat::identity(&q, b.dim);
                    (0..b.dim).map(move |c| m.get(r, c).clone()).collect::<Vec<_>>()
                }))
                .collect();
            let _ = id;
            // identity is in the span
            let mut v = vec![Rat::ZERO; b.dim * b.dim];
            for i in 0..b.dim {
                v[i * b.dim + i] = Rat::ONE;
            }
            assert!(h.contains(&v));
        }
    }

    #[test]
    fn hom_from_trivial_into_tautological_needs_invariant_coinvariants() {
        // maps k -> A intertwining everything send 1 to a two-sided
        // coinvariant on which every a acts by its counit; over k[Z/2] there
        // is none
        let q = Rationals;
        let b = cyclic_group_algebra(&q, 2);
        let triv = trivial_tetramodule(&b, 1);
        let t = tautological(&b);
        let h = hom_space(&triv, &t).unwrap();
        assert_eq!(h.dim(), 0);
    }

    #[test]
    fn kernel_of_identity_and_cokernel_of_zero() {
        let q = Rationals;
        let b = cyclic_group_algebra(&q, 2);
        let t = tautological(&b);
        let (k, incl) = kernel_tetra(&TetraMap::identity(&t)).unwrap();
        assert_eq!(k.dim, 0);
        assert_eq!(incl.matrix.cols(), 0);

        let zero = TetraMap { source: t.clone(), target: t.clone(), matrix: Mat::zeros(&q, 2, 2) };
        let (c, proj) = cokernel_tetra(&zero).unwrap();
        assert_eq!(c.dim, 2);
        assert!(verify_tetramodule(&c).unwrap().all_ok());
        assert!(verify_tetra_map(&proj).unwrap().all_ok());
    }

    #[test]
    fn counit_map_out_of_tautological_is_not_a_tetra_map() {
        // the counit A -> (trivial 1-dim structure) fails intertwining, and
        // its kernel span(g - 1) is not coaction-stable
        let q = Rationals;
        let b = cyclic_group_algebra(&q, 2);
        let t = tautological(&b);
        let triv = trivial_tetramodule(&b, 1);
        let eps = TetraMap {
            source: t.clone(),
            target: triv,
            matrix: Mat::from_i64(&q, &[&[1, 1]]),
        };
        assert!(!eps.is_valid());
        let err = kernel_tetra(&eps).unwrap_err();
        assert!(matches!(err, TetraError::NotStable(_)));
    }

    #[test]
    fn direct_sum_is_verified_and_additive() {
        let q = Rationals;
        let b = cyclic_group_algebra(&q, 2);
        let t = tautological(&b);
        let s = direct_sum(&t, &t).unwrap();
        assert_eq!(s.dim, 4);
        assert!(verify_tetramodule(&s).unwrap().all_ok());
        // hom space of a double is 4-dimensional (2x2 scalar blocks)
        let h = hom_space(&s, &s).unwrap();
        assert_eq!(h.dim(), 4);
    }

    #[test]
    fn forgetting_halves_keeps_them_lawful() {
        let q = Rationals;
        let b = cyclic_group_algebra(&q, 3);
        let t = tautological(&b);
        assert!(verify_bicomodule(&forget1(&t)).all_ok());
        assert!(verify_bimodule(&forget2(&t)).all_ok());
    }

    #[test]
    fn composition_of_valid_maps_is_valid() {
        let q = Rationals;
        let b = cyclic_group_algebra(&q, 2);
        let t = tautological(&b);
        let s = direct_sum(&t, &t).unwrap();
        let h = hom_space(&t, &s).unwrap();
        assert!(h.dim() >= 1);
        let f = hom_element(&t, &s, h.basis.row(0));
        assert!(f.is_valid());
        let g = hom_space(&s, &t).unwrap();
        let g = hom_element(&s, &t, g.basis.row(0));
        assert!(g.is_valid());
        let gf = g.compose(&f);
        assert!(gf.is_valid());
    }
}
