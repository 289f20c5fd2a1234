//! Coarsening along a group epimorphism `ψ: G -> H`: rings, modules and
//! tables, the comparison of graded Hom and torsion before and after
//! coarsening, and the commutation checker for local cohomology.

mod commute;
mod gamma;
mod hom;
mod table;

use std::sync::Arc;

pub use commute::{check_commutation, compare_tables, CommutationInput, Provenance, ScenarioReport, ScenarioRow, Verdict};
pub use gamma::{check_gamma_identity, GammaIdentityReport, GammaRow};
pub use hom::{embed_hom, hom_comparison, HomComparison};
pub use table::{certify_module_support, coarsen_table, support_candidates, SupportClaim};

use crate::error::{Error, Result};
use crate::grading::{Degree, DegreeGroup, DegreeWindow, GroupEpimorphism};
use crate::ringcore::{GradedPolynomialRing, Presentation};
use crate::scalar::Field;
use crate::Rational;

/// A fine ring over `G`, an epimorphism `ψ: G -> H`, the coarse ring
/// `R_[ψ]` over `H`, and the paired windows `gw ⊆ G`, `hw ⊆ H`.
#[derive(Clone, Debug)]
pub struct CoarsenedScenario {
    pub fine: Arc<GradedPolynomialRing>,
    pub psi: GroupEpimorphism,
    pub coarse: Arc<GradedPolynomialRing>,
    pub gw: DegreeWindow,
    pub hw: DegreeWindow,
}

impl CoarsenedScenario {
    /// Validates `ψ` (onto, source = grading group of the ring) and the
    /// windows, and builds `R_[ψ]`. With `certificate = None` a positivity
    /// certificate for `R_[ψ]` is searched for.
    pub fn new(
        fine: Arc<GradedPolynomialRing>,
        psi: GroupEpimorphism,
        certificate: Option<Vec<Rational>>,
        gw: DegreeWindow,
        hw: DegreeWindow,
    ) -> Result<Self> {
        let coarse = Arc::new(coarsen_ring(&fine, &psi, certificate)?);
        if gw.group() != fine.group() {
            return Err(Error::InvalidArgument("fine window is not over the grading group".into()));
        }
        if hw.group() != psi.target() {
            return Err(Error::InvalidArgument("coarse window is not over the target group".into()));
        }
        let image = gw.image(&psi)?;
        let outside: Vec<Degree> = hw.iter().filter(|h| !image.contains(h)).cloned().collect();
        if !outside.is_empty() {
            return Err(Error::WindowInadequate { missing: outside });
        }
        Ok(CoarsenedScenario {
            fine,
            psi,
            coarse,
            gw,
            hw,
        })
    }

    pub fn coarsen_module<F: Field>(&self, module: &Presentation<F>) -> Result<Presentation<F>> {
        coarsen_module(module, &self.coarse, &self.psi)
    }
}

/// `R_[ψ]`: same variables, `deg x_i ↦ ψ(deg x_i)`.
pub fn coarsen_ring(
    fine: &GradedPolynomialRing,
    psi: &GroupEpimorphism,
    certificate: Option<Vec<Rational>>,
) -> Result<GradedPolynomialRing> {
    if psi.source() != fine.group() {
        return Err(Error::InvalidArgument(format!(
            "ψ has source {} but the ring is graded by {}",
            psi.source(),
            fine.group()
        )));
    }
    if !psi.verify_surjective() {
        return Err(Error::NotSurjective);
    }
    let degrees = fine
        .var_degrees()
        .iter()
        .map(|d| psi.apply(d))
        .collect::<Result<Vec<_>>>()?;
    let certificate = match certificate {
        Some(c) => c,
        None => derive_certificate(psi.target(), &degrees)?,
    };
    fine.regraded(psi.target().clone(), |d| psi.apply(d), certificate)
}

/// A small integer vector positive on every degree: all ones if that works,
/// else the first hit among vectors with entries in `-3..=3`.
pub fn derive_certificate(group: &DegreeGroup, degrees: &[Degree]) -> Result<Vec<Rational>> {
    let r = group.free_rank();
    let positive = |c: &[i64]| {
        degrees
            .iter()
            .all(|d| d.free_part().iter().zip(c).map(|(a, b)| a * b).sum::<i64>() > 0)
    };
    let to_q = |c: Vec<i64>| c.into_iter().map(|x| Rational::from_integer(x.into())).collect();
    if r > 0 {
        let ones = vec![1; r];
        if positive(&ones) {
            return Ok(to_q(ones));
        }
        let mut cand = vec![-3i64; r];
        loop {
            if positive(&cand) {
                return Ok(to_q(cand));
            }
            let Some(i) = cand.iter().rposition(|&x| x < 3) else { break };
            cand[i] += 1;
            for x in cand.iter_mut().skip(i + 1) {
                *x = -3;
            }
        }
    }
    Err(Error::InvalidCertificate(format!(
        "no positivity certificate found for the coarse grading by {group}; supply one"
    )))
}

/// `M_[ψ]`: identical generators and relations, every degree mapped by `ψ`.
pub fn coarsen_module<F: Field>(
    module: &Presentation<F>,
    coarse: &Arc<GradedPolynomialRing>,
    psi: &GroupEpimorphism,
) -> Result<Presentation<F>> {
    module.regraded(Arc::clone(coarse), |d| psi.apply(d))
}
