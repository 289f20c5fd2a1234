use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grading::{Degree, DegreeWindow, GroupEpimorphism};
use crate::ringcore::{GradedPolynomialRing, HilbertTable, Presentation};
use crate::scalar::Field;

/// Why a fiber sum over a finite window equals the full fiber sum.
#[derive(Clone, Copy, Debug)]
pub enum SupportClaim<'a, F: Field> {
    /// Accept only fibers that lie entirely in the window (finite kernel).
    FiberOnly,
    /// The table vanishes wherever `module` does; the support of `module`
    /// in each fiber is enumerated through the coarse ring.
    WithinModule {
        module: &'a Presentation<F>,
        coarse: &'a Arc<GradedPolynomialRing>,
    },
    /// The caller asserts that the window covers every fiber's support.
    Assumed,
}

/// Degrees `g` with `ψ(g) = h` at which `module` can be nonzero:
/// `g = d_j + deg u` for a generator degree `d_j` and a monomial `u` of
/// coarse degree `h - ψ(d_j)`. Finite because the coarse ring is positively graded.
pub fn support_candidates<F: Field>(
    module: &Presentation<F>,
    coarse: &GradedPolynomialRing,
    psi: &GroupEpimorphism,
    h: &Degree,
) -> Result<Vec<Degree>> {
    let fine = module.ring();
    let (fg, cg) = (fine.group(), coarse.group());
    let mut out = Vec::new();
    for d in module.gen_degrees() {
        let c = cg.sub(h, &psi.apply(d)?);
        for u in coarse.monomials_of_degree(&c).iter() {
            out.push(fg.add(d, &fine.monomial_degree(u)));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The candidate support degrees over `h` missing from `gw`.
pub fn certify_module_support<F: Field>(
    module: &Presentation<F>,
    coarse: &GradedPolynomialRing,
    psi: &GroupEpimorphism,
    h: &Degree,
    gw: &DegreeWindow,
) -> Result<Vec<Degree>> {
    Ok(support_candidates(module, coarse, psi, h)?
        .into_iter()
        .filter(|g| !gw.contains(g))
        .collect())
}

/// Checks that summing over `fiber(ψ, h) ∩ gw` loses nothing.
pub(crate) fn check_coverage<F: Field>(
    psi: &GroupEpimorphism,
    h: &Degree,
    gw: &DegreeWindow,
    claim: &SupportClaim<'_, F>,
) -> Result<()> {
    if psi.fiber_is_complete(h, gw)? {
        return Ok(());
    }
    match claim {
        SupportClaim::Assumed => Ok(()),
        SupportClaim::WithinModule { module, coarse } => {
            let missing = certify_module_support(module, coarse, psi, h, gw)?;
            if missing.is_empty() {
                Ok(())
            } else {
                let list: Vec<String> = missing.iter().map(ToString::to_string).collect();
                Err(Error::CoverageNotCertified {
                    degree: h.clone(),
                    reason: format!("module support reaches {} outside the fine window", list.join(", ")),
                })
            }
        }
        SupportClaim::FiberOnly => Err(Error::CoverageNotCertified {
            degree: h.clone(),
            reason: if psi.kernel_is_finite()? {
                "the fine window does not contain the whole fiber".into()
            } else {
                "ψ has infinite kernel, so fibers are infinite; pass the support-covered assertion to sum over the window".into()
            },
        }),
    }
}

/// `h ↦ Σ_{g ∈ fiber(ψ, h) ∩ gw} T(g)` over `hw`, where `gw` is the window of `T`.
pub fn coarsen_table<F: Field>(
    table: &HilbertTable,
    psi: &GroupEpimorphism,
    hw: &DegreeWindow,
    claim: &SupportClaim<'_, F>,
) -> Result<HilbertTable> {
    let gw = DegreeWindow::from_degrees(psi.source(), table.degrees().cloned())?;
    HilbertTable::try_from_fn(hw, |h| {
        check_coverage(psi, h, &gw, claim)?;
        Ok(psi
            .fiber(h, &gw)?
            .iter()
            .map(|g| table.get(g).expect("fiber lies in the table window"))
            .sum())
    })
}
