//! Deformation cohomology along two independent routes: the explicit
//! bicomplex with its formula-level differentials, and derived-functor
//! computation through resolutions by induced and coinduced objects.

pub mod gs;
pub mod res;
pub mod homcx;
pub mod ext;

pub use ext::{ext, gs_cohomology, ExtMethod};
pub use gs::{gs_complex, gs_d1, gs_d2, GsComplex, HomologyError};
pub use homcx::{hom_double_complex, HomComplex};
pub use res::{
    bar_resolution, cobar_resolution, coinduced_resolution, induced_resolution,
    CoinducedResolution, InducedResolution, MaterializedResolution,
};
