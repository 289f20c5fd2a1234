//! Torsion, local cohomology by the Čech and Ext routes, ideal transforms,
//! and the four-term sequence linking them.

mod cech;
mod prop70;
mod torsion;

pub use cech::{CechComplex, CechStage, LocalizationModel};
pub use prop70::{check_prop70_sequence, HigherRow, SequenceReport, SequenceRow};
pub use torsion::{annihilated_by_power, is_killed_by, torsion_submodule, TorsionSubmodule};

use crate::error::Result;
use crate::grading::DegreeWindow;
use crate::homres::{colim_ext, colimit_cohomology, ColimitTable, PowerFamily};
use crate::ringcore::{Monomial, MonomialIdeal, Presentation};
use crate::scalar::Field;

/// Default number of ray steps for localization components.
pub const DEFAULT_RAY_CAP: usize = 8;

/// The Čech cocomplex of `M` on the given monomials.
pub fn cech_complex<F: Field>(gens: &[Monomial], module: &Presentation<F>) -> CechComplex<F> {
    CechComplex::new(gens.to_vec(), module)
}

/// `H^i` of the Čech cocomplex on `gens`, evaluated as a colimit of stages.
pub fn local_cohomology_cech<F: Field>(
    i: usize,
    gens: &[Monomial],
    module: &Presentation<F>,
    window: &DegreeWindow,
    cap: usize,
) -> Result<ColimitTable> {
    let complex = cech_complex(gens, module);
    colimit_cohomology(&&complex, i, window, cap)
}

/// `H^i_a(M) = colim_n Ext^i(R/a^n, M)`.
pub fn local_cohomology_ext<F: Field>(
    i: usize,
    ideal: &MonomialIdeal,
    module: &Presentation<F>,
    window: &DegreeWindow,
    cap: usize,
) -> Result<ColimitTable> {
    colim_ext(i, ideal, module, PowerFamily::Quotients, window, cap)
}

/// `D^i_a(M) = colim_n Ext^i(a^n, M)`.
pub fn ideal_transform<F: Field>(
    i: usize,
    ideal: &MonomialIdeal,
    module: &Presentation<F>,
    window: &DegreeWindow,
    cap: usize,
) -> Result<ColimitTable> {
    colim_ext(i, ideal, module, PowerFamily::Ideals, window, cap)
}

#[cfg(test)]
mod tests;
