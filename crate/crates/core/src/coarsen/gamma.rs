use serde::Serialize;

use crate::error::Result;
use crate::grading::Degree;
use crate::linalg::RowEchelon;
use crate::localcoh::torsion_submodule;
use crate::ringcore::{MonomialIdeal, Presentation};
use crate::scalar::Field;

use super::table::{check_coverage, SupportClaim};
use super::CoarsenedScenario;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaRow {
    pub degree: Degree,
    pub fine_sum: usize,
    pub coarse_dim: usize,
    pub span_equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaIdentityReport {
    pub rows: Vec<GammaRow>,
    pub fine_stage: usize,
    pub coarse_stage: usize,
    pub holds: bool,
}

/// Compares, inside `(M_[ψ])_h` for each `h ∈ hw`, the subspace spanned by
/// `Γ_a(M)_g` over the fiber of `h` with `Γ_a(M_[ψ])_h`.
///
/// Both are compared as subspaces of the free component containing the
/// relations, so equality is an equality of subspaces of `M_h`, not of
/// dimensions. The fiber must cover the support of `M` over `h` (finite
/// kernel, enumerated module support, or `assume_covered`).
pub fn check_gamma_identity<F: Field>(
    ideal: &MonomialIdeal,
    module: &Presentation<F>,
    scenario: &CoarsenedScenario,
    cap: usize,
    assume_covered: bool,
) -> Result<GammaIdentityReport> {
    let claim = if assume_covered {
        SupportClaim::Assumed
    } else {
        SupportClaim::WithinModule {
            module,
            coarse: &scenario.coarse,
        }
    };
    for h in scenario.hw.iter() {
        check_coverage(&scenario.psi, h, &scenario.gw, &claim)?;
    }
    let coarse_module = scenario.coarsen_module(module)?;
    let fine = torsion_submodule(ideal, module, &scenario.gw, cap)?;
    let coarse = torsion_submodule(ideal, &coarse_module, &scenario.hw, cap)?;

    let mut rows = Vec::new();
    for h in scenario.hw.iter() {
        let comp = coarse_module.component(h);
        let width = comp.ambient_dim();
        let relations: Vec<Vec<F>> = comp.relations().basis().to_vec();

        let mut fine_span = RowEchelon::from_rows(width, relations.iter().cloned());
        let mut fine_sum = 0;
        for g in scenario.psi.fiber(h, &scenario.gw)? {
            let fine_comp = module.component(&g);
            for v in &fine.bases[&g] {
                fine_sum += 1;
                let amb = fine_comp.lift(v);
                let mut w = vec![F::zero(); width];
                for (label, c) in fine_comp.labels().iter().zip(amb) {
                    if !c.is_zero() {
                        w[comp.ambient_index(label).expect("fine label is a coarse label")] = c;
                    }
                }
                fine_span.insert(w);
            }
        }
        let coarse_vectors: Vec<Vec<F>> = coarse.bases[h].iter().map(|v| comp.lift(v)).collect();
        let coarse_span = RowEchelon::from_rows(width, relations.into_iter().chain(coarse_vectors.iter().cloned()));
        let mut joint = fine_span.clone();
        for v in coarse_vectors {
            joint.insert(v);
        }
        let span_equal = fine_span.rank() == coarse_span.rank() && joint.rank() == fine_span.rank();
        rows.push(GammaRow {
            degree: h.clone(),
            fine_sum,
            coarse_dim: coarse.bases[h].len(),
            span_equal,
        });
    }
    Ok(GammaIdentityReport {
        holds: rows.iter().all(|r| r.span_equal),
        rows,
        fine_stage: fine.stable_stage,
        coarse_stage: coarse.stable_stage,
    })
}
