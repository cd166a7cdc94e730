//! Exact computer algebra for the tetramodule category over a
//! finite-dimensional bialgebra: the two external and internal monoidal
//! products, the interchange map with its coherence battery, and
//! Gerstenhaber-Schack cohomology computed along independent routes
//! (explicit bicomplex and Ext via resolutions), plus the Koszul route for
//! the free commutative cocommutative bialgebra.

pub mod complex;
pub mod field;
pub mod mat;

pub mod bialgebra;
pub mod graded;
pub mod tetramodule;

pub mod sample;
pub mod tensor;

pub mod interchange;

pub mod homology;
pub mod koszul;

pub mod json;
pub mod report;
pub mod zoo;

pub mod cli;

pub use field::{Field, FieldSpec, PrimeField, Rat, Rationals};
pub use mat::{Mat, Subspace};
