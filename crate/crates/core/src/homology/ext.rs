//! Derived-functor cohomology of the tautological object against itself,
//! computed from a chosen pair of resolutions, plus the direct bicomplex
//! route packaged the same way.

use crate::bialgebra::Bialgebra;
use crate::field::Field;
use crate::report::{CohomologyReport, DegreeDim, DegreeReps, TOOL_VERSION};
use crate::tetramodule::tautological;
use std::sync::Arc;

use super::gs::{gs_complex_capped, HomologyError, DEFAULT_GS_CAP};
use super::homcx::hom_double_complex;
use super::res::{
    bar_resolution, cobar_resolution, coinduced_resolution_capped, induced_resolution_capped,
    DEFAULT_MATERIALIZE_CAP, DEFAULT_MAT_CAP,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtMethod {
    /// Tensor-power resolutions on both sides.
    BarCobar,
    /// Canonical surjections onto kernels and injections into cokernels.
    Canonical,
}

impl ExtMethod {
    pub fn tag(&self) -> &'static str {
        match self {
            ExtMethod::BarCobar => "ext-bar-cobar",
            ExtMethod::Canonical => "ext-canonical",
        }
    }
}

/// Cap on the dimension of a single total degree of the reduced hom complex.
pub const DEFAULT_DEGREE_CAP: usize = 100_000;

const REP_RENDER_CAP: usize = 256;

/// Derived-functor dimensions in degrees `0..max_degree`, computed from
/// resolutions of length `max_degree` of the tautological object.
pub fn ext<F: Field>(
    b: &Arc<Bialgebra<F>>,
    max_degree: usize,
    method: ExtMethod,
) -> Result<CohomologyReport, HomologyError> {
    if max_degree < 2 {
        return Err(HomologyError::Internal("max degree must be at least 2".into()));
    }
    let f = b.field();
    let len = max_degree;
    let (p, q) = match method {
        ExtMethod::BarCobar => (bar_resolution(b, len)?, cobar_resolution(b, len)?),
        ExtMethod::Canonical => {
            let t = tautological(b);
            (
                induced_resolution_capped(&t, len, DEFAULT_MAT_CAP, DEFAULT_MATERIALIZE_CAP)?,
                coinduced_resolution_capped(&t, len, DEFAULT_MAT_CAP, DEFAULT_MATERIALIZE_CAP)?,
            )
        }
    };
    let hom = hom_double_complex(&p, &q, DEFAULT_DEGREE_CAP)?;
    let coh = hom.total.cohomology(f);
    let mut degrees = Vec::new();
    let mut representatives = Vec::new();
    for c in &coh {
        let k = c.degree as usize;
        let valid = k < max_degree;
        degrees.push(DegreeDim { k, dim: c.dim, valid });
        if valid && c.representatives.cols() <= REP_RENDER_CAP && c.dim > 0 {
            representatives.push(DegreeReps {
                k,
                cocycles: (0..c.representatives.rows())
                    .map(|r| crate::report::render_sparse(f, c.representatives.row(r)))
                    .collect(),
            });
        }
    }
    Ok(CohomologyReport {
        method: method.tag().to_string(),
        base: b.label.clone(),
        degrees,
        representatives,
        checks: Vec::new(),
        notes: vec![format!("resolutions of length {}", len)],
        timing_ms: None,
        tool_version: TOOL_VERSION.to_string(),
    })
}

/// The direct bicomplex route, packaged as a report with the validity
/// window.
pub fn gs_cohomology<F: Field>(
    b: &Arc<Bialgebra<F>>,
    max_degree: usize,
) -> Result<CohomologyReport, HomologyError> {
    gs_cohomology_capped(b, max_degree, DEFAULT_GS_CAP)
}

pub fn gs_cohomology_capped<F: Field>(
    b: &Arc<Bialgebra<F>>,
    max_degree: usize,
    cap: u128,
) -> Result<CohomologyReport, HomologyError> {
    if max_degree < 2 {
        return Err(HomologyError::Internal("max degree must be at least 2".into()));
    }
    let f = b.field();
    let gs = gs_complex_capped(b, max_degree, cap)?;
    let coh = gs.total.cohomology(f);
    let mut degrees = Vec::new();
    let mut representatives = Vec::new();
    for c in &coh {
        let k = c.degree as usize;
        let valid = k < max_degree;
        degrees.push(DegreeDim { k, dim: c.dim, valid });
        if valid && c.representatives.cols() <= REP_RENDER_CAP && c.dim > 0 {
            representatives.push(DegreeReps {
                k,
                cocycles: (0..c.representatives.rows())
                    .map(|r| crate::report::render_sparse(f, c.representatives.row(r)))
                    .collect(),
            });
        }
    }
    let spots: Vec<String> = gs
        .spots
        .iter()
        .enumerate()
        .map(|(g, row)| {
            format!(
                "degree {} stacks source/target powers {:?}",
                g,
                row.iter().map(|&(m, n)| (m, n)).collect::<Vec<_>>()
            )
        })
        .collect();
    Ok(CohomologyReport {
        method: "gs-bicomplex".to_string(),
        base: b.label.clone(),
        degrees,
        representatives,
        checks: Vec::new(),
        notes: spots,
        timing_ms: None,
        tool_version: TOOL_VERSION.to_string(),
    })
}
