//! Bialgebras presented by structure tensors, with executable axiom checks
//! and the example zoo used throughout the tests.
//!
//! A bialgebra is stored as matrices against a fixed basis: multiplication
//! `A tensor A -> A` (an `n x n^2` matrix), comultiplication `A -> A tensor A`
//! (`n^2 x n`), the unit vector, the counit covector and an optional
//! antipode. Besides associativity, coassociativity, the product/coproduct
//! compatibility and the multiplicativity of unit and counit, the verifier
//! also checks the structural unit/counit laws (the unit is group-like, the
//! counit splits the coproduct); the unit isomorphisms of the internal tensor
//! products need those.

use crate::field::Field;
use crate::mat::{kron_list, tensor_permutation, Mat};
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum BialgebraError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("multiplication table is not a group: {0}")]
    BadGroupTable(String),
    #[error("characteristic 2 not allowed here")]
    CharTwo,
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bialgebra<F: Field> {
    pub field: F,
    pub dim: usize,
    /// `A tensor A -> A`, `dim x dim^2`.
    pub mult: Mat<F>,
    /// `A -> A tensor A`, `dim^2 x dim`.
    pub comult: Mat<F>,
    /// Image of 1 under the unit map `k -> A`.
    pub unit: Vec<F::Elem>,
    /// The counit `A -> k`.
    pub counit: Vec<F::Elem>,
    pub antipode: Option<Mat<F>>,
    /// Short human-readable label used by reports.
    pub label: String,
}

/// Outcome of one axiom check; `witness` names a violating basis tuple.
#[derive(Clone, Debug)]
pub struct AxiomCheck {
    pub name: String,
    pub ok: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn push_cmp<F: Field>(&mut self, name: &str, lhs: &Mat<F>, rhs: &Mat<F>, describe: impl Fn(usize, usize) -> String) {
        let mut witness = None;
        'outer: for r in 0..lhs.rows() {
            for c in 0..lhs.cols() {
                if lhs.get(r, c) != rhs.get(r, c) {
                    witness = Some(describe(r, c));
                    break 'outer;
                }
            }
        }
        self.checks.push(AxiomCheck { name: name.to_string(), ok: witness.is_none(), witness });
    }

    pub fn failures(&self) -> Vec<&AxiomCheck> {
        self.checks.iter().filter(|c| !c.ok).collect()
    }
}

/// Decompose a flat tensor index into factor indices (leftmost slowest).
pub fn unflatten(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for i in (0..dims.len()).rev() {
        out[i] = idx % dims[i];
        idx /= dims[i];
    }
    out
}

fn basis_tuple(idx: usize, n: usize, k: usize) -> String {
    let parts = unflatten(idx, &vec![n; k]);
    let names: Vec<String> = parts.iter().map(|i| format!("e{}", i)).collect();
    names.join("(x)")
}

impl<F: Field> Bialgebra<F> {
    pub fn unit_mat(&self) -> Mat<F> {
        Mat::from_fn(&self.field, self.dim, 1, |r, _| self.unit[r].clone())
    }

    pub fn counit_mat(&self) -> Mat<F> {
        Mat::from_fn(&self.field, 1, self.dim, |_, c| self.counit[c].clone())
    }

    pub fn id(&self) -> Mat<F> {
        Mat::identity(&self.field, self.dim)
    }

    /// Product of two basis elements as a vector.
    pub fn mul_basis(&self, i: usize, j: usize) -> Vec<F::Elem> {
        self.mult.col_vec(i * self.dim + j)
    }

    /// `A -> A^{tensor n}` for `n >= 0`: counit for `n = 0`, identity for
    /// `n = 1`, then left-iterated coproducts. Coassociativity (verified
    /// separately) makes the bracketing immaterial.
    pub fn delta_power(&self, n: usize) -> Mat<F> {
        match n {
            0 => self.counit_mat(),
            1 => self.id(),
            _ => {
                let prev = self.delta_power(n - 1);
                let step = self.comult.kron(&Mat::identity(&self.field, self.dim.pow(n as u32 - 2)));
                step.mul(&prev)
            }
        }
    }

    /// `A^{tensor m} -> A` for `m >= 0`: unit for `m = 0`, left-folded
    /// multiplication otherwise.
    pub fn mu_power(&self, m: usize) -> Mat<F> {
        match m {
            0 => self.unit_mat(),
            1 => self.id(),
            _ => {
                let prev = self.mu_power(m - 1);
                let step = self.mult.mul(&prev.kron(&self.id()));
                step
            }
        }
    }

    /// Componentwise product `A^{tensor n} tensor A^{tensor n} -> A^{tensor n}`.
    pub fn componentwise_mult(&self, n: usize) -> Mat<F> {
        let f = &self.field;
        if n == 0 {
            return Mat::identity(f, 1);
        }
        // interleave (x_1..x_n, y_1..y_n) -> (x_1, y_1, .., x_n, y_n)
        let dims = vec![self.dim; 2 * n];
        let mut perm = Vec::with_capacity(2 * n);
        for i in 0..n {
            perm.push(i);
            perm.push(n + i);
        }
        let shuffle = tensor_permutation(f, &dims, &perm);
        let mults: Vec<&Mat<F>> = (0..n).map(|_| &self.mult).collect();
        kron_list(&mults).mul(&shuffle)
    }

    /// The swap `A tensor A -> A tensor A`.
    pub fn swap(&self) -> Mat<F> {
        tensor_permutation(&self.field, &[self.dim, self.dim], &[1, 0])
    }
}

/// Check every bialgebra axiom, naming a violating basis tuple per failure.
pub fn verify_bialgebra<F: Field>(b: &Bialgebra<F>) -> Result<AxiomReport, BialgebraError> {
    let f = &b.field;
    let n = b.dim;
    if b.mult.rows() != n || b.mult.cols() != n * n {
        return Err(BialgebraError::Shape(format!("mult is {}x{}", b.mult.rows(), b.mult.cols())));
    }
    if b.comult.rows() != n * n || b.comult.cols() != n {
        return Err(BialgebraError::Shape(format!("comult is {}x{}", b.comult.rows(), b.comult.cols())));
    }
    if b.unit.len() != n || b.counit.len() != n {
        return Err(BialgebraError::Shape("unit/counit length".into()));
    }
    if let Some(s) = &b.antipode {
        if s.rows() != n || s.cols() != n {
            return Err(BialgebraError::Shape("antipode".into()));
        }
    }

    let id = b.id();
    let mut rep = AxiomReport::default();

    // associativity: m(m x 1) = m(1 x m) on A^{x3}
    let lhs = b.mult.mul(&b.mult.kron(&id));
    let rhs = b.mult.mul(&id.kron(&b.mult));
    rep.push_cmp("associativity", &lhs, &rhs, |_, c| basis_tuple(c, n, 3));

    // coassociativity
    let lhs = b.comult.kron(&id).mul(&b.comult);
    let rhs = id.kron(&b.comult).mul(&b.comult);
    rep.push_cmp("coassociativity", &lhs, &rhs, |_, c| basis_tuple(c, n, 1));

    // compatibility: comult . mult = (mult x mult) . (1 x swap x 1) . (comult x comult)
    let lhs = b.comult.mul(&b.mult);
    let mid = tensor_permutation(f, &[n, n, n, n], &[0, 2, 1, 3]);
    let rhs = b.mult.kron(&b.mult).mul(&mid).mul(&b.comult.kron(&b.comult));
    rep.push_cmp("compatibility", &lhs, &rhs, |_, c| basis_tuple(c, n, 2));

    // unit laws: m(unit x 1) = id = m(1 x unit)
    let lhs = b.mult.mul(&b.unit_mat().kron(&id));
    rep.push_cmp("unit-left", &lhs, &id, |_, c| basis_tuple(c, n, 1));
    let lhs = b.mult.mul(&id.kron(&b.unit_mat()));
    rep.push_cmp("unit-right", &lhs, &id, |_, c| basis_tuple(c, n, 1));

    // counit laws: (counit x 1) . comult = id = (1 x counit) . comult
    let lhs = b.counit_mat().kron(&id).mul(&b.comult);
    rep.push_cmp("counit-left", &lhs, &id, |_, c| basis_tuple(c, n, 1));
    let lhs = id.kron(&b.counit_mat()).mul(&b.comult);
    rep.push_cmp("counit-right", &lhs, &id, |_, c| basis_tuple(c, n, 1));

    // unit is group-like: comult . unit = unit x unit
    let lhs = b.comult.mul(&b.unit_mat());
    let rhs = b.unit_mat().kron(&b.unit_mat());
    rep.push_cmp("unit-grouplike", &lhs, &rhs, |_, _| "1".to_string());

    // counit multiplicative: counit . mult = counit x counit
    let lhs = b.counit_mat().mul(&b.mult);
    let rhs = b.counit_mat().kron(&b.counit_mat());
    rep.push_cmp("counit-multiplicative", &lhs, &rhs, |_, c| basis_tuple(c, n, 2));

    // counit of unit is 1
    let mut dot = f.zero();
    for i in 0..n {
        f.mul_add_in(&mut dot, &b.counit[i], &b.unit[i]);
    }
    let ok = dot == f.one();
    rep.checks.push(AxiomCheck {
        name: "counit-unit".into(),
        ok,
        witness: if ok { None } else { Some(format!("counit(1) = {}", f.render(&dot))) },
    });

    // antipode: m(S x 1) . comult = unit . counit = m(1 x S) . comult
    if let Some(s) = &b.antipode {
        let target = b.unit_mat().mul(&b.counit_mat());
        let lhs = b.mult.mul(&s.kron(&id)).mul(&b.comult);
        rep.push_cmp("antipode-left", &lhs, &target, |_, c| basis_tuple(c, n, 1));
        let lhs = b.mult.mul(&id.kron(s)).mul(&b.comult);
        rep.push_cmp("antipode-right", &lhs, &target, |_, c| basis_tuple(c, n, 1));
    }

    Ok(rep)
}

/// `A -> A^{tensor n}`; rejects `n = 0` (use the counit directly for that).
pub fn iterated_coproduct<F: Field>(b: &Bialgebra<F>, n: usize) -> Result<Mat<F>, BialgebraError> {
    if n == 0 {
        return Err(BialgebraError::Invalid("iterated coproduct needs n >= 1".into()));
    }
    Ok(b.delta_power(n))
}

// ---------------------------------------------------------------------------
// The zoo
// ---------------------------------------------------------------------------

/// The one-dimensional bialgebra k.
pub fn trivial_bialgebra<F: Field>(field: &F) -> Arc<Bialgebra<F>> {
    let one = || field.one();
    Arc::new(Bialgebra {
        field: field.clone(),
        dim: 1,
        mult: Mat::from_fn(field, 1, 1, |_, _| one()),
        comult: Mat::from_fn(field, 1, 1, |_, _| one()),
        unit: vec![one()],
        counit: vec![one()],
        antipode: Some(Mat::identity(field, 1)),
        label: "k".to_string(),
    })
}

/// Group algebra of a finite group given by its multiplication table
/// (`table[i][j]` = index of `g_i g_j`). Basis elements are group-like.
pub fn group_algebra<F: Field>(field: &F, table: &[Vec<usize>]) -> Result<Arc<Bialgebra<F>>, BialgebraError> {
    let n = table.len();
    if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|&k| k >= n)) {
        return Err(BialgebraError::BadGroupTable("table is not square".into()));
    }
    // associativity
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(BialgebraError::BadGroupTable(format!(
                        "associativity fails at ({},{},{})",
                        a, b, c
                    )));
                }
            }
        }
    }
    // identity element
    let e = (0..n)
        .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
        .ok_or_else(|| BialgebraError::BadGroupTable("no identity element".into()))?;
    // inverses
    let mut inv = vec![None; n];
    for g in 0..n {
        inv[g] = (0..n).find(|&h| table[g][h] == e && table[h][g] == e);
        if inv[g].is_none() {
            return Err(BialgebraError::BadGroupTable(format!("element {} has no inverse", g)));
        }
    }

    let mut mult = Mat::zeros(field, n, n * n);
    for i in 0..n {
        for j in 0..n {
            mult.set(table[i][j], i * n + j, field.one());
        }
    }
    let mut comult = Mat::zeros(field, n * n, n);
    for g in 0..n {
        comult.set(g * n + g, g, field.one());
    }
    let mut unit = vec![field.zero(); n];
    unit[e] = field.one();
    let counit = vec![field.one(); n];
    let mut antipode = Mat::zeros(field, n, n);
    for g in 0..n {
        antipode.set(inv[g].unwrap(), g, field.one());
    }
    Ok(Arc::new(Bialgebra {
        field: field.clone(),
        dim: n,
        mult,
        comult,
        unit,
        counit,
        antipode: Some(antipode),
        label: format!("group-algebra(|G|={})", n),
    }))
}

/// The cyclic group Z/m.
pub fn cyclic_group_algebra<F: Field>(field: &F, m: usize) -> Arc<Bialgebra<F>> {
    let table: Vec<Vec<usize>> = (0..m).map(|i| (0..m).map(|j| (i + j) % m).collect()).collect();
    let b = group_algebra(field, &table).expect("cyclic table is a group");
    let mut b = (*b).clone();
    b.label = format!("k[Z/{}]", m);
    Arc::new(b)
}

/// The four-dimensional Hopf algebra with generators g, x, relations
/// g^2 = 1, x^2 = 0, xg = -gx, and x skew-primitive over g. Basis order:
/// 1, g, x, gx. Requires characteristic != 2.
pub fn sweedler_h4<F: Field>(field: &F) -> Result<Arc<Bialgebra<F>>, BialgebraError> {
    if field.characteristic() == 2 {
        return Err(BialgebraError::CharTwo);
    }
    let n = 4;
    // products on the basis 1, g, x, gx; entries (i, j) -> sum of basis terms
    let prod: [[&[(usize, i64)]; 4]; 4] = [
        [&[(0, 1)], &[(1, 1)], &[(2, 1)], &[(3, 1)]],
        [&[(1, 1)], &[(0, 1)], &[(3, 1)], &[(2, 1)]],
        [&[(2, 1)], &[(3, -1)], &[], &[]],
        [&[(3, 1)], &[(2, -1)], &[], &[]],
    ];
    let mut mult = Mat::zeros(field, n, n * n);
    for i in 0..n {
        for j in 0..n {
            for &(k, c) in prod[i][j] {
                mult.set(k, i * n + j, field.from_i64(c));
            }
        }
    }
    // comultiplication: 1 and g group-like, x -> x(x)1 + g(x)x, gx -> gx(x)g + 1(x)gx
    let mut comult = Mat::zeros(field, n * n, n);
    comult.set(0, 0, field.one());
    comult.set(1 * n + 1, 1, field.one());
    comult.set(2 * n + 0, 2, field.one());
    comult.set(1 * n + 2, 2, field.one());
    comult.set(3 * n + 1, 3, field.one());
    comult.set(0 * n + 3, 3, field.one());
    let mut unit = vec![field.zero(); n];
    unit[0] = field.one();
    let counit = vec![field.one(), field.one(), field.zero(), field.zero()];
    // antipode: S(1)=1, S(g)=g, S(x)=-gx, S(gx)=x
    let mut antipode = Mat::zeros(field, n, n);
    antipode.set(0, 0, field.one());
    antipode.set(1, 1, field.one());
    antipode.set(3, 2, field.from_i64(-1));
    antipode.set(2, 3, field.one());
    Ok(Arc::new(Bialgebra {
        field: field.clone(),
        dim: n,
        mult,
        comult,
        unit,
        counit,
        antipode: Some(antipode),
        label: "sweedler-H4".to_string(),
    }))
}

fn binomial_i64(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}

/// `F_p[x]/(x^p)` with x primitive; the finite-characteristic stand-in for a
/// polynomial bialgebra on one generator. Basis 1, x, .., x^{p-1}.
pub fn primitive_truncated_poly<F: Field>(field: &F, p: usize) -> Result<Arc<Bialgebra<F>>, BialgebraError> {
    if field.characteristic() as usize != p || !crate::field::is_prime(p as u64) {
        return Err(BialgebraError::Invalid(format!(
            "needs the prime field of characteristic {}",
            p
        )));
    }
    let n = p;
    let mut mult = Mat::zeros(field, n, n * n);
    for i in 0..n {
        for j in 0..n {
            if i + j < n {
                mult.set(i + j, i * n + j, field.one());
            }
        }
    }
    let mut comult = Mat::zeros(field, n * n, n);
    for k in 0..n {
        for i in 0..=k {
            comult.set(i * n + (k - i), k, field.from_i64(binomial_i64(k, i)));
        }
    }
    let mut unit = vec![field.zero(); n];
    unit[0] = field.one();
    let mut counit = vec![field.zero(); n];
    counit[0] = field.one();
    let mut antipode = Mat::zeros(field, n, n);
    for k in 0..n {
        antipode.set(k, k, field.from_i64(if k % 2 == 0 { 1 } else { -1 }));
    }
    Ok(Arc::new(Bialgebra {
        field: field.clone(),
        dim: n,
        mult,
        comult,
        unit,
        counit,
        antipode: Some(antipode),
        label: format!("F{}[x]/(x^{})", p, p),
    }))
}

/// Finite-dimensional duality: transposes swap product with coproduct and
/// unit with counit. Involutive on structure constants.
pub fn dual_bialgebra<F: Field>(b: &Bialgebra<F>) -> Bialgebra<F> {
    Bialgebra {
        field: b.field.clone(),
        dim: b.dim,
        mult: b.comult.transpose(),
        comult: b.mult.transpose(),
        unit: b.counit.clone(),
        counit: b.unit.clone(),
        antipode: b.antipode.as_ref().map(|s| s.transpose()),
        label: format!("dual({})", b.label),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rat, Rationals};

    #[test]
    fn zoo_passes_all_axioms() {
        let q = Rationals;
        for b in [
            trivial_bialgebra(&q),
            cyclic_group_algebra(&q, 2),
            cyclic_group_algebra(&q, 3),
            sweedler_h4(&q).unwrap(),
        ] {
            let rep = verify_bialgebra(&b).unwrap();
            assert!(rep.all_ok(), "{}: {:?}", b.label, rep.failures());
        }
        let f2 = PrimeField::new(2).unwrap();
        let f3 = PrimeField::new(3).unwrap();
        let f5 = PrimeField::new(5).unwrap();
        for rep in [
            verify_bialgebra(&cyclic_group_algebra(&f2, 2)).unwrap(),
            verify_bialgebra(&primitive_truncated_poly(&f2, 2).unwrap()).unwrap(),
            verify_bialgebra(&primitive_truncated_poly(&f3, 3).unwrap()).unwrap(),
            verify_bialgebra(&primitive_truncated_poly(&f5, 5).unwrap()).unwrap(),
            verify_bialgebra(&sweedler_h4(&f3).unwrap()).unwrap(),
        ] {
            assert!(rep.all_ok(), "{:?}", rep.failures());
        }
    }

    #[test]
    fn sweedler_rejects_char_two() {
        let f2 = PrimeField::new(2).unwrap();
        assert!(matches!(sweedler_h4(&f2), Err(BialgebraError::CharTwo)));
    }

    #[test]
    fn corrupted_mult_fails_with_named_triple() {
        let q = Rationals;
        let b = cyclic_group_algebra(&q, 3);
        let mut bad = (*b).clone();
        // redirect g * g^2 from e to g
        bad.mult.set(0, 5, Rat::from_int(0));
        bad.mult.set(1, 5, Rat::from_int(1));
        let rep = verify_bialgebra(&bad).unwrap();
        assert!(!rep.all_ok());
        let assoc = rep.checks.iter().find(|c| c.name == "associativity").unwrap();
        assert!(!assoc.ok);
        assert!(assoc.witness.as_ref().unwrap().contains("(x)"));
    }

    #[test]
    fn corrupted_product_breaks_counit_multiplicativity() {
        let q = Rationals;
        let b = cyclic_group_algebra(&q, 2);
        let mut bad = (*b).clone();
        bad.mult.set(0, 3, Rat::from_int(0)); // g*g := 0
        let rep = verify_bialgebra(&bad).unwrap();
        let c = rep.checks.iter().find(|c| c.name == "counit-multiplicative").unwrap();
        assert!(!c.ok);
    }

    #[test]
    fn bad_group_tables_rejected() {
        let q = Rationals;
        // non-associative magma
        let t = vec![vec![0, 1], vec![1, 1]];
        assert!(group_algebra(&q, &t).is_err());
    }

    #[test]
    fn dual_is_involutive_and_valid() {
        let q = Rationals;
        let b = cyclic_group_algebra(&q, 2);
        let d = dual_bialgebra(&b);
        assert!(verify_bialgebra(&d).unwrap().all_ok());
        let dd = dual_bialgebra(&d);
        assert_eq!(dd.mult, b.mult);
        assert_eq!(dd.comult, b.comult);
        assert_eq!(dd.unit, b.unit);
        assert_eq!(dd.counit, b.counit);

        let s = sweedler_h4(&q).unwrap();
        let dd = dual_bialgebra(&dual_bialgebra(&s));
        assert_eq!(dd.mult, s.mult);
        assert_eq!(dd.comult, s.comult);

        let t = trivial_bialgebra(&q);
        let d = dual_bialgebra(&t);
        assert_eq!(d.mult, t.mult);
    }

    #[test]
    fn iterated_coproduct_examples() {
        let q = Rationals;
        let b = cyclic_group_algebra(&q, 2);
        assert_eq!(iterated_coproduct(&b, 1).unwrap(), b.id());
        assert!(iterated_coproduct(&b, 0).is_err());
        // group-like g: third coproduct power sends g to g(x)g(x)g
        let d3 = iterated_coproduct(&b, 3).unwrap();
        let g = vec![Rat::ZERO, Rat::ONE];
        let img = d3.apply(&g);
        for (i, v) in img.iter().enumerate() {
            let expect = if i == 7 { Rat::ONE } else { Rat::ZERO };
            assert_eq!(*v, expect, "index {}", i);
        }

        // primitive x in F2[x]/(x^2): coproduct is x(x)1 + 1(x)x
        let f2 = PrimeField::new(2).unwrap();
        let p = primitive_truncated_poly(&f2, 2).unwrap();
        let d2 = iterated_coproduct(&p, 2).unwrap();
        let x = vec![0u64, 1];
        let img = d2.apply(&x);
        assert_eq!(img, vec![0, 1, 1, 0]);
    }

    #[test]
    fn truncated_poly_structure_constants() {
        let f3 = PrimeField::new(3).unwrap();
        let p = primitive_truncated_poly(&f3, 3).unwrap();
        // coproduct of x^2 is x^2(x)1 + 2 x(x)x + 1(x)x^2
        let img = p.comult.col_vec(2);
        let mut expect = vec![0u64; 9];
        expect[2 * 3 + 0] = 1;
        expect[1 * 3 + 1] = 2;
        expect[0 * 3 + 2] = 1;
        assert_eq!(img, expect);
    }

    #[test]
    fn counit_collapse_of_iterated_coproduct() {
        // applying the counit to any slot of the iterated coproduct gives the
        // lower power back
        let q = Rationals;
        let b = sweedler_h4(&q).unwrap();
        let d3 = b.delta_power(3);
        let d2 = b.delta_power(2);
        let id = b.id();
        for slot in 0..3 {
            let mut factors: Vec<&Mat<Rationals>> = vec![&id; 3];
            let cu = b.counit_mat();
            factors[slot] = &cu;
            let collapse = kron_list(&factors).mul(&d3);
            assert_eq!(collapse, d2, "slot {}", slot);
        }
    }
}
