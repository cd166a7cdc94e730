//! The interchange map between the two internal products and its full
//! coherence battery.
//!
//! The interchange is built in three steps, each an executable check here:
//! the factor swap on external products is a structure map (step one), the
//! swap followed by the product projections kills the first-product
//! relations and so descends (step two), and the descended map restricted to
//! the second-product subobject lands in the second-product subobject of the
//! target (step three). Because internal products live in witness bases, all
//! diagram checks below transport along stored projections and inclusions
//! and compare matrices exactly; iterated products on the two sides of an
//! associativity diagram are reconciled by the canonical associator
//! isomorphisms.

use crate::field::Field;
use crate::mat::{tensor_perm_indices, tensor_permutation, Mat};
use crate::sample::{sample_map, sample_tetramodule};
use crate::tensor::{
    assoc1_iso, assoc2_iso, boxtimes1, boxtimes2, otimes1, otimes1_map, otimes2, otimes2_map,
    tautological, unit_isos, ProductWitness,
};
use crate::tetramodule::{
    same_base, verify_tetra_map, TetraError, TetraMap, Tetramodule,
};
use crate::bialgebra::Bialgebra;
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum InterchangeError {
    #[error("step {step} failed: {detail}")]
    Step { step: &'static str, detail: String },
    #[error(transparent)]
    Tetra(#[from] TetraError),
}

/// The factor swap as a map of external products.
pub fn phi0<F: Field>(
    m: &Tetramodule<F>,
    n: &Tetramodule<F>,
    p: &Tetramodule<F>,
    q: &Tetramodule<F>,
) -> Result<TetraMap<F>, InterchangeError> {
    let f = m.field();
    let src = boxtimes1(&boxtimes2(m, n)?, &boxtimes2(p, q)?)?;
    let tgt = boxtimes2(&boxtimes1(m, p)?, &boxtimes1(n, q)?)?;
    let perm = tensor_permutation(f, &[m.dim, n.dim, p.dim, q.dim], &[0, 2, 1, 3]);
    let map = TetraMap { source: src, target: tgt, matrix: perm };
    let rep = verify_tetra_map(&map)?;
    if !rep.all_ok() {
        return Err(InterchangeError::Step {
            step: "swap-is-structure-map",
            detail: format!("{:?}", rep.failures().first().map(|c| &c.name)),
        });
    }
    Ok(map)
}

/// The interchange map together with every witness used to build it, so
/// coherence checks can normalize along the same objects.
#[derive(Clone, Debug)]
pub struct Eta<F: Field> {
    pub w_mn: ProductWitness<F>,
    pub w_pq: ProductWitness<F>,
    pub src: ProductWitness<F>,
    pub w_mp: ProductWitness<F>,
    pub w_nq: ProductWitness<F>,
    pub tgt: ProductWitness<F>,
    pub map: TetraMap<F>,
}

pub fn eta<F: Field>(
    m: &Tetramodule<F>,
    n: &Tetramodule<F>,
    p: &Tetramodule<F>,
    q: &Tetramodule<F>,
) -> Result<Eta<F>, InterchangeError> {
    if !same_base(&m.base, &n.base) || !same_base(&m.base, &p.base) || !same_base(&m.base, &q.base)
    {
        return Err(TetraError::BaseMismatch.into());
    }
    let f = m.field();
    let w_mn = otimes2(m, n)?;
    let w_pq = otimes2(p, q)?;
    let src = otimes1(&w_mn.result, &w_pq.result)?;
    let w_mp = otimes1(m, p)?;
    let w_nq = otimes1(n, q)?;
    let tgt = otimes2(&w_mp.result, &w_nq.result)?;

    // step one: the swap intertwines the external structures
    phi0(m, n, p, q)?;

    let idx = tensor_perm_indices(&[m.dim, n.dim, p.dim, q.dim], &[0, 2, 1, 3]);
    let phi1 = w_mp.map.kron(&w_nq.map).permute_cols_by(&idx);

    // step two: phi1 kills the first-product relations of the pair
    let embed = w_mn.map.kron(&w_pq.map);
    let (a, bdim) = (w_mn.result.dim, w_pq.result.dim);
    let na = m.base.dim;
    let idm = Mat::identity(f, a);
    let idn = Mat::identity(f, bdim);
    let rel = w_mn
        .result
        .act_r
        .kron(&idn)
        .sub(&idm.kron(&w_pq.result.act_l));
    let killed = phi1.mul(&embed).mul(&rel);
    let _ = na;
    if !killed.is_zero() {
        return Err(InterchangeError::Step {
            step: "relations-killed",
            detail: "swap does not descend to the first internal product".into(),
        });
    }
    let phi2 = phi1.mul(&embed).mul(&src.sect);

    // step three: the image lies in the second-product subobject
    let matrix = tgt.sect.mul(&phi2);
    if tgt.map.mul(&matrix) != phi2 {
        return Err(InterchangeError::Step {
            step: "image-in-equalizer",
            detail: "descended swap leaves the second internal product".into(),
        });
    }

    let map = TetraMap { source: src.result.clone(), target: tgt.result.clone(), matrix };
    let rep = verify_tetra_map(&map)?;
    if !rep.all_ok() {
        return Err(InterchangeError::Step {
            step: "interchange-is-structure-map",
            detail: format!("{:?}", rep.failures().first().map(|c| &c.name)),
        });
    }
    Ok(Eta { w_mn, w_pq, src, w_mp, w_nq, tgt, map })
}

// ---------------------------------------------------------------------------
// Unit conditions
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct UnitConditions {
    /// interchange with the unit pair on the right of the first product
    pub internal_right: bool,
    /// interchange with the unit pair on the left
    pub internal_left: bool,
    /// units in the second slots of both second-product factors
    pub external_right: bool,
    /// units in the first slots
    pub external_left: bool,
}

impl UnitConditions {
    pub fn all(&self) -> bool {
        self.internal_right && self.internal_left && self.external_right && self.external_left
    }
}

fn is_identity<F: Field>(m: &Mat<F>, f: &F) -> bool {
    m.rows() == m.cols() && *m == Mat::identity(f, m.rows())
}

/// Normalizations compose with the stored unit isomorphisms; each condition
/// asserts the normalized interchange is the identity matrix.
pub fn check_unit_conditions<F: Field>(
    m: &Tetramodule<F>,
    n: &Tetramodule<F>,
) -> Result<UnitConditions, InterchangeError> {
    let f = m.field();
    let a = tautological(&m.base);

    // eta(m, n, A, A) against the identity of m (x)_2 n
    let internal_right = {
        let e = eta(m, n, &a, &a)?;
        let x = e.w_mn.result.clone();
        let ux = unit_isos(&x)?;
        let ua = unit_isos(&a)?;
        // X -> X (x)_1 A -> X (x)_1 (A (x)_2 A) -> eta -> (m (x)_1 A) (x)_2 (n (x)_1 A) -> m (x)_2 n
        let widen = otimes1_map(
            &TetraMap::identity(&x),
            &ua.left_coact.map,
            &ux.right_mult.witness,
            &e.src,
        )?;
        let um = unit_isos(m)?;
        let un = unit_isos(n)?;
        let collapse = otimes2_map(&um.right_mult.map, &un.right_mult.map, &e.tgt, &e.w_mn)?;
        let total = collapse
            .matrix
            .mul(&e.map.matrix)
            .mul(&widen.matrix)
            .mul(&ux.right_mult.inverse);
        is_identity(&total, f)
    };

    // eta(A, A, m, n)
    let internal_left = {
        let e = eta(&a, &a, m, n)?;
        let x = e.w_pq.result.clone();
        let ux = unit_isos(&x)?;
        let ua = unit_isos(&a)?;
        let widen = otimes1_map(
            &ua.left_coact.map,
            &TetraMap::identity(&x),
            &ux.left_mult.witness,
            &e.src,
        )?;
        let um = unit_isos(m)?;
        let un = unit_isos(n)?;
        let collapse = otimes2_map(&um.left_mult.map, &un.left_mult.map, &e.tgt, &e.w_pq)?;
        let total = collapse
            .matrix
            .mul(&e.map.matrix)
            .mul(&widen.matrix)
            .mul(&ux.left_mult.inverse);
        is_identity(&total, f)
    };

    // eta(m, A, n, A) against the identity of m (x)_1 n
    let external_right = {
        let e = eta(m, &a, n, &a)?;
        let y = e.w_mp.result.clone(); // m (x)_1 n
        let um = unit_isos(m)?;
        let un = unit_isos(n)?;
        let w_mn1 = otimes1(m, n)?;
        let widen = otimes1_map(&um.right_coact.map, &un.right_coact.map, &w_mn1, &e.src)?;
        let uy = unit_isos(&y)?;
        let ua = unit_isos(&a)?;
        let collapse = otimes2_map(
            &TetraMap::identity(&y),
            &ua.left_mult.map,
            &e.tgt,
            &uy.right_coact.witness,
        )?;
        let total = uy
            .right_coact
            .inverse
            .mul(&collapse.matrix)
            .mul(&e.map.matrix)
            .mul(&widen.matrix);
        is_identity(&total, f)
    };

    // eta(A, m, A, n)
    let external_left = {
        let e = eta(&a, m, &a, n)?;
        let y = e.w_nq.result.clone(); // m (x)_1 n
        let um = unit_isos(m)?;
        let un = unit_isos(n)?;
        let w_mn1 = otimes1(m, n)?;
        let widen = otimes1_map(&um.left_coact.map, &un.left_coact.map, &w_mn1, &e.src)?;
        let uy = unit_isos(&y)?;
        let ua = unit_isos(&a)?;
        let collapse = otimes2_map(
            &ua.left_mult.map,
            &TetraMap::identity(&y),
            &e.tgt,
            &uy.left_coact.witness,
        )?;
        let total = uy
            .left_coact
            .inverse
            .mul(&collapse.matrix)
            .mul(&e.map.matrix)
            .mul(&widen.matrix);
        is_identity(&total, f)
    };

    Ok(UnitConditions { internal_right, internal_left, external_right, external_left })
}

// ---------------------------------------------------------------------------
// The two canonical comparison morphisms between the products
// ---------------------------------------------------------------------------

/// Direct formula for the straight comparison `m (x)_1 n -> m (x)_2 n`: pair
/// the right coaction legs of the first factor with the left action, and the
/// left coaction legs of the second factor with the right action, crosswise.
/// Serves as an independent oracle for the unit-normalized interchange.
pub fn straight_comparison<F: Field>(
    m: &Tetramodule<F>,
    n: &Tetramodule<F>,
) -> Result<TetraMap<F>, TetraError> {
    let _f = m.field();
    let na = m.base.dim;
    let w1 = otimes1(m, n)?;
    let w2 = otimes2(m, n)?;
    let legs = m.coact_r.kron(&n.coact_l);
    let idx = tensor_perm_indices(&[m.dim, na, na, n.dim], &[0, 2, 1, 3]);
    let big = m.act_r.kron(&n.act_l).mul(&legs.permute_rows_by(&idx));
    // descends from the quotient and lands in the subobject
    if big.mul(&w1.sect).mul(&w1.map) != big {
        return Err(TetraError::NotStable("straight comparison does not descend".into()));
    }
    let matrix = w2.sect.mul(&big).mul(&w1.sect);
    if w2.map.mul(&matrix) != big.mul(&w1.sect) {
        return Err(TetraError::NotStable("straight comparison misses the equalizer".into()));
    }
    Ok(TetraMap { source: w1.result, target: w2.result, matrix })
}

/// Direct formula for the crossed comparison `m (x)_1 n -> n (x)_2 m`.
pub fn crossed_comparison<F: Field>(
    m: &Tetramodule<F>,
    n: &Tetramodule<F>,
) -> Result<TetraMap<F>, TetraError> {
    let _f = m.field();
    let na = m.base.dim;
    let w1 = otimes1(m, n)?;
    let w2 = otimes2(n, m)?;
    let legs = m.coact_l.kron(&n.coact_r);
    let idx = tensor_perm_indices(&[na, m.dim, n.dim, na], &[0, 2, 1, 3]);
    let big = n.act_l.kron(&m.act_r).mul(&legs.permute_rows_by(&idx));
    if big.mul(&w1.sect).mul(&w1.map) != big {
        return Err(TetraError::NotStable("crossed comparison does not descend".into()));
    }
    let matrix = w2.sect.mul(&big).mul(&w1.sect);
    if w2.map.mul(&matrix) != big.mul(&w1.sect) {
        return Err(TetraError::NotStable("crossed comparison misses the equalizer".into()));
    }
    Ok(TetraMap { source: w1.result, target: w2.result, matrix })
}

/// The interchange with units in the outer slots, normalized down to
/// `m (x)_1 n -> m (x)_2 n`.
pub fn normalized_straight<F: Field>(
    m: &Tetramodule<F>,
    n: &Tetramodule<F>,
) -> Result<TetraMap<F>, InterchangeError> {
    let a = tautological(&m.base);
    let e = eta(m, &a, &a, n)?;
    let um = unit_isos(m)?;
    let un = unit_isos(n)?;
    let w_mn1 = otimes1(m, n)?;
    let widen = otimes1_map(&um.right_coact.map, &un.left_coact.map, &w_mn1, &e.src)?;
    let w_mn2 = otimes2(m, n)?;
    let collapse = otimes2_map(&um.right_mult.map, &un.left_mult.map, &e.tgt, &w_mn2)?;
    Ok(TetraMap {
        source: w_mn1.result,
        target: w_mn2.result,
        matrix: collapse.matrix.mul(&e.map.matrix).mul(&widen.matrix),
    })
}

/// The interchange with units in the inner slots, normalized down to
/// `m (x)_1 n -> n (x)_2 m`.
pub fn normalized_crossed<F: Field>(
    m: &Tetramodule<F>,
    n: &Tetramodule<F>,
) -> Result<TetraMap<F>, InterchangeError> {
    let a = tautological(&m.base);
    let e = eta(&a, m, n, &a)?;
    let um = unit_isos(m)?;
    let un = unit_isos(n)?;
    let w_mn1 = otimes1(m, n)?;
    let widen = otimes1_map(&um.left_coact.map, &un.right_coact.map, &w_mn1, &e.src)?;
    let w_nm2 = otimes2(n, m)?;
    let collapse = otimes2_map(&un.left_mult.map, &um.right_mult.map, &e.tgt, &w_nm2)?;
    Ok(TetraMap {
        source: w_mn1.result,
        target: w_nm2.result,
        matrix: collapse.matrix.mul(&e.map.matrix).mul(&widen.matrix),
    })
}

// ---------------------------------------------------------------------------
// Associativity diagrams
// ---------------------------------------------------------------------------

/// Internal associativity: the two ways of interchanging across a triple
/// first product agree, after reconciling the iterated-product bases with
/// the canonical associators.
pub fn check_internal_assoc<F: Field>(obj: &[&Tetramodule<F>; 6]) -> Result<bool, InterchangeError> {
    let [u, v, w, x, y, z] = *obj;
    let e1 = eta(u, v, w, x)?;
    let w_yz = otimes2(y, z)?;
    let s_a_outer = otimes1(&e1.src.result, &w_yz.result)?;
    let t_a1 = otimes1(&e1.tgt.result, &w_yz.result)?;
    let step_a1 = otimes1_map(&e1.map, &TetraMap::identity(&w_yz.result), &s_a_outer, &t_a1)?;
    let e2 = eta(&e1.w_mp.result, &e1.w_nq.result, y, z)?;
    let path_a = e2.map.matrix.mul(&step_a1.matrix);

    let e3 = eta(w, x, y, z)?;
    let s_b_outer = otimes1(&e1.w_mn.result, &e3.src.result)?;
    let t_b1 = otimes1(&e1.w_mn.result, &e3.tgt.result)?;
    let step_b1 = otimes1_map(&TetraMap::identity(&e1.w_mn.result), &e3.map, &s_b_outer, &t_b1)?;
    let e4 = eta(u, v, &e3.w_mp.result, &e3.w_nq.result)?;
    let path_b = e4.map.matrix.mul(&step_b1.matrix);

    let alpha = assoc1_iso(&e1.w_mn.result, &e1.w_pq.result, &w_yz.result)?;
    let beta_l = assoc1_iso(u, w, y)?;
    let beta_r = assoc1_iso(v, x, z)?;
    let beta = otimes2_map(&beta_l.map, &beta_r.map, &e2.tgt, &e4.tgt)?;

    Ok(beta.matrix.mul(&path_a) == path_b.mul(&alpha.map.matrix))
}

/// External associativity: interchanging a triple second product in two
/// orders agrees after associator reconciliation.
pub fn check_external_assoc<F: Field>(obj: &[&Tetramodule<F>; 6]) -> Result<bool, InterchangeError> {
    let [u, v, w, x, y, z] = *obj;
    let w_uv = otimes2(u, v)?;
    let w_xy = otimes2(x, y)?;
    let e_top = eta(&w_uv.result, w, &w_xy.result, z)?;
    let e_uvxy = eta(u, v, x, y)?;
    let w_wz = otimes1(w, z)?;
    let t_top2 = otimes2(&e_uvxy.tgt.result, &w_wz.result)?;
    let step_top2 = otimes2_map(&e_uvxy.map, &TetraMap::identity(&w_wz.result), &e_top.tgt, &t_top2)?;
    let path_top = step_top2.matrix.mul(&e_top.map.matrix);

    let w_vw = otimes2(v, w)?;
    let w_yz = otimes2(y, z)?;
    let e_left = eta(u, &w_vw.result, x, &w_yz.result)?;
    let e_vwyz = eta(v, w, y, z)?;
    let w_ux = otimes1(u, x)?;
    let t_b2 = otimes2(&w_ux.result, &e_vwyz.tgt.result)?;
    let step_b2 = otimes2_map(&TetraMap::identity(&w_ux.result), &e_vwyz.map, &e_left.tgt, &t_b2)?;
    let path_left = step_b2.matrix.mul(&e_left.map.matrix);

    let a_src_l = assoc2_iso(u, v, w)?;
    let a_src_r = assoc2_iso(x, y, z)?;
    let alpha = otimes1_map(&a_src_l.map, &a_src_r.map, &e_top.src, &e_left.src)?;

    let w_vy = otimes1(v, y)?;
    let beta_iso = assoc2_iso(&w_ux.result, &w_vy.result, &w_wz.result)?;

    Ok(beta_iso.map.matrix.mul(&path_top) == path_left.mul(&alpha.matrix))
}

// ---------------------------------------------------------------------------
// Naturality
// ---------------------------------------------------------------------------

/// The interchange commutes with a map inserted at one of its four argument
/// positions (1-indexed).
pub fn check_naturality<F: Field>(
    f: &TetraMap<F>,
    position: usize,
    others: [&Tetramodule<F>; 3],
) -> Result<bool, InterchangeError> {
    assert!((1..=4).contains(&position));
    let (s, t) = (&f.source, &f.target);
    let [o1, o2, o3] = others;
    let src_tuple: [&Tetramodule<F>; 4];
    let tgt_tuple: [&Tetramodule<F>; 4];
    match position {
        1 => {
            src_tuple = [s, o1, o2, o3];
            tgt_tuple = [t, o1, o2, o3];
        }
        2 => {
            src_tuple = [o1, s, o2, o3];
            tgt_tuple = [o1, t, o2, o3];
        }
        3 => {
            src_tuple = [o1, o2, s, o3];
            tgt_tuple = [o1, o2, t, o3];
        }
        _ => {
            src_tuple = [o1, o2, o3, s];
            tgt_tuple = [o1, o2, o3, t];
        }
    }
    let e_s = eta(src_tuple[0], src_tuple[1], src_tuple[2], src_tuple[3])?;
    let e_t = eta(tgt_tuple[0], tgt_tuple[1], tgt_tuple[2], tgt_tuple[3])?;
    let id = TetraMap::identity;

    // induced map on the source product
    let (inner_src, inner_tgt) = match position {
        1 => (
            otimes2_map(f, &id(src_tuple[1]), &e_s.w_mn, &e_t.w_mn)?,
            otimes1_map(f, &id(src_tuple[2]), &e_s.w_mp, &e_t.w_mp)?,
        ),
        2 => (
            otimes2_map(&id(src_tuple[0]), f, &e_s.w_mn, &e_t.w_mn)?,
            otimes1_map(&id(src_tuple[3]), f, &e_s.w_nq, &e_t.w_nq)?,
        ),
        3 => (
            otimes2_map(f, &id(src_tuple[3]), &e_s.w_pq, &e_t.w_pq)?,
            otimes1_map(&id(src_tuple[0]), f, &e_s.w_mp, &e_t.w_mp)?,
        ),
        _ => (
            otimes2_map(&id(src_tuple[2]), f, &e_s.w_pq, &e_t.w_pq)?,
            otimes1_map(&id(src_tuple[1]), f, &e_s.w_nq, &e_t.w_nq)?,
        ),
    };
    let src_map = if position <= 2 {
        otimes1_map(&inner_src, &id(&e_s.w_pq.result), &e_s.src, &e_t.src)?
    } else {
        otimes1_map(&id(&e_s.w_mn.result), &inner_src, &e_s.src, &e_t.src)?
    };
    let tgt_map = if position == 1 || position == 3 {
        otimes2_map(&inner_tgt, &id(&e_s.w_nq.result), &e_s.tgt, &e_t.tgt)?
    } else {
        otimes2_map(&id(&e_s.w_mp.result), &inner_tgt, &e_s.tgt, &e_t.tgt)?
    };

    Ok(e_t.map.matrix.mul(&src_map.matrix) == tgt_map.matrix.mul(&e_s.map.matrix))
}

// ---------------------------------------------------------------------------
// Sweep driver
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Default)]
pub struct SweepOutcome {
    pub checks_run: usize,
    pub failures: Vec<String>,
}

impl SweepOutcome {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn run(&mut self, name: String, outcome: Result<bool, InterchangeError>) {
        self.checks_run += 1;
        match outcome {
            Ok(true) => {}
            Ok(false) => self.failures.push(name),
            Err(e) => self.failures.push(format!("{}: {}", name, e)),
        }
    }
}

/// Seeded coherence sweep: interchange construction, both associativity
/// diagrams, the unit conditions and naturality on sampled objects.
pub fn coherence_sweep<F: Field>(
    b: &Arc<Bialgebra<F>>,
    seeds: u64,
    max_dim: usize,
) -> SweepOutcome {
    let mut out = SweepOutcome::default();
    for seed in 0..seeds {
        let objs: Vec<Tetramodule<F>> =
            (0..6).map(|i| sample_tetramodule(b, seed * 6 + i, max_dim)).collect();
        let tag = |s: &str| format!("seed {}: {}", seed, s);

        out.run(
            tag("interchange construction"),
            eta(&objs[0], &objs[1], &objs[2], &objs[3]).map(|_| true),
        );
        out.run(
            tag("swap structure map"),
            phi0(&objs[0], &objs[1], &objs[2], &objs[3]).map(|_| true),
        );
        out.run(
            tag("unit conditions"),
            check_unit_conditions(&objs[0], &objs[1]).map(|u| u.all()),
        );
        out.run(
            tag("internal associativity"),
            check_internal_assoc(&[&objs[0], &objs[1], &objs[2], &objs[3], &objs[4], &objs[5]]),
        );
        out.run(
            tag("external associativity"),
            check_external_assoc(&[&objs[0], &objs[1], &objs[2], &objs[3], &objs[4], &objs[5]]),
        );
        if let Some(f) = sample_map(b, seed, max_dim) {
            let pos = (seed % 4 + 1) as usize;
            out.run(
                tag(&format!("naturality at position {}", pos)),
                check_naturality(&f, pos, [&objs[0], &objs[1], &objs[2]]),
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialgebra::{cyclic_group_algebra, primitive_truncated_poly, trivial_bialgebra};
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn phi0_is_a_permutation_structure_map() {
        let q = Rationals;
        let b = cyclic_group_algebra(&q, 2);
        let t = tautological(&b);
        let p = phi0(&t, &t, &t, &t).unwrap();
        assert_eq!(p.matrix.rows(), 16);
        // a permutation composed with its transpose is the identity
        assert_eq!(p.matrix.mul(&p.matrix.transpose()), Mat::identity(&q, 16));
    }

    #[test]
    fn phi0_over_the_point_is_scalar_identity() {
        let q = Rationals;
        let k = trivial_bialgebra(&q);
        let t = tautological(&k);
        let p = phi0(&t, &t, &t, &t).unwrap();
        assert!(is_identity(&p.matrix, &q));
    }

    #[test]
    fn eta_exists_for_tautological_tuples() {
        let q = Rationals;
        for b in [cyclic_group_algebra(&q, 2), cyclic_group_algebra(&q, 3)] {
            let t = tautological(&b);
            let e = eta(&t, &t, &t, &t).unwrap();
            // both sides of the interchange collapse to the base dimension
            assert_eq!(e.src.result.dim, b.dim);
            assert_eq!(e.tgt.result.dim, b.dim);
        }
        let f2 = PrimeField::new(2).unwrap();
        let p = primitive_truncated_poly(&f2, 2).unwrap();
        let t = tautological(&p);
        eta(&t, &t, &t, &t).unwrap();
    }

    #[test]
    fn unit_conditions_hold_for_tautological_pairs() {
        let q = Rationals;
        let b = cyclic_group_algebra(&q, 2);
        let t = tautological(&b);
        let u = check_unit_conditions(&t, &t).unwrap();
        assert!(u.all(), "{:?}", u);
    }

    #[test]
    fn normalized_interchange_matches_direct_comparisons() {
        let q = Rationals;
        let b = cyclic_group_algebra(&q, 2);
        let t = tautological(&b);
        for (m, n) in [(&t, &t)] {
            let oracle = straight_comparison(m, n).unwrap();
            let viaeta = normalized_straight(m, n).unwrap();
            assert_eq!(oracle.matrix, viaeta.matrix);
            let oracle = crossed_comparison(m, n).unwrap();
            let viaeta = normalized_crossed(m, n).unwrap();
            assert_eq!(oracle.matrix, viaeta.matrix);
        }
        let f2 = PrimeField::new(2).unwrap();
        let p = primitive_truncated_poly(&f2, 2).unwrap();
        let t = tautological(&p);
        let oracle = straight_comparison(&t, &t).unwrap();
        let viaeta = normalized_straight(&t, &t).unwrap();
        assert_eq!(oracle.matrix, viaeta.matrix);
    }

    #[test]
    fn associativity_diagrams_commute_on_tautologicals() {
        let q = Rationals;
        let b = cyclic_group_algebra(&q, 2);
        let t = tautological(&b);
        let objs = [&t, &t, &t, &t, &t, &t];
        assert!(check_internal_assoc(&objs).unwrap());
        assert!(check_external_assoc(&objs).unwrap());

        let f2 = PrimeField::new(2).unwrap();
        let p = primitive_truncated_poly(&f2, 2).unwrap();
        let t = tautological(&p);
        let objs = [&t, &t, &t, &t, &t, &t];
        assert!(check_internal_assoc(&objs).unwrap());
        assert!(check_external_assoc(&objs).unwrap());
    }

    #[test]
    fn identity_is_natural() {
        let q = Rationals;
        let b = cyclic_group_algebra(&q, 2);
        let t = tautological(&b);
        let f = TetraMap::identity(&t);
        for pos in 1..=4 {
            assert!(check_naturality(&f, pos, [&t, &t, &t]).unwrap(), "position {}", pos);
        }
    }

    #[test]
    fn short_sweep_passes() {
        let q = Rationals;
        let b = cyclic_group_algebra(&q, 2);
        let out = coherence_sweep(&b, 4, 4);
        assert!(out.ok(), "{:?}", out.failures);
        assert!(out.checks_run >= 20);
    }
}
