//! Taylor resolutions of monomial quotients, degreewise graded Hom and Ext,
//! and colimits of Ext along powers of an ideal.

mod colimit;
mod complex;
mod hom;
mod subsets;
mod taylor;

use std::sync::Arc;

pub use colimit::{colimit_cohomology, ColimitTable, DirectSystem, ExtSystem, PowerFamily};
pub use complex::{
    cohomology_data, cohomology_dim, cohomology_table, d_squared_vanishes, CochainModel, CohomologyData, HomComplex,
};
pub use hom::{graded_hom, graded_hom_windowed, hom_constraints, hom_support, GradedHomSpace};
pub use subsets::{sort_sign, without, Subsets};
pub use taylor::TaylorResolution;

pub(crate) use colimit::warmup_bound;

use crate::error::Result;
use crate::grading::DegreeWindow;
use crate::ringcore::{GradedPolynomialRing, HilbertTable, MonomialIdeal, Presentation};
use crate::scalar::Field;

/// The Taylor resolution of `R/a`.
pub fn taylor_resolution(ring: &Arc<GradedPolynomialRing>, ideal: &MonomialIdeal) -> TaylorResolution {
    TaylorResolution::new(Arc::clone(ring), ideal)
}

/// `Ext^i(R/a, N)` degreewise on `window`. Zero past the resolution length.
pub fn graded_ext<F: Field>(i: usize, ideal: &MonomialIdeal, target: &Presentation<F>, window: &DegreeWindow) -> HilbertTable {
    let complex = HomComplex::new(taylor_resolution(target.ring(), ideal), target.clone());
    cohomology_table(&complex, i, window)
}

/// `colim_n Ext^i(R/a^n, N)` or `colim_n Ext^i(a^n, N)` on `window`.
pub fn colim_ext<F: Field>(
    i: usize,
    ideal: &MonomialIdeal,
    target: &Presentation<F>,
    family: PowerFamily,
    window: &DegreeWindow,
    cap: usize,
) -> Result<ColimitTable> {
    colimit_cohomology(&ExtSystem::new(ideal, target, family), i, window, cap)
}
