use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grading::{Degree, DegreeWindow, GroupEpimorphism};
use crate::homres::{graded_hom, hom_constraints, GradedHomSpace};
use crate::linalg::RowEchelon;
use crate::ringcore::{GradedPolynomialRing, Presentation};
use crate::scalar::Field;

use super::coarsen_module;
use super::table::support_candidates;

/// Fiber-summed fine Hom against coarse Hom at one coarse degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomComparison {
    pub degree: Degree,
    pub fiber: Vec<(Degree, usize)>,
    pub fine_sum: usize,
    pub coarse_dim: usize,
    /// Every fine basis map, regraded, satisfies the coarse relations.
    pub embedded_valid: bool,
    /// The regraded fine basis maps are linearly independent over `h`.
    pub embedded_independent: bool,
}

impl HomComparison {
    pub fn monomorphism(&self) -> bool {
        self.fine_sum <= self.coarse_dim && self.embedded_valid && self.embedded_independent
    }

    pub fn equal(&self) -> bool {
        self.fine_sum == self.coarse_dim
    }
}

/// Rewrites a fine homomorphism (basis element `b` of `space`) in the
/// coordinates of `Hom(M_[ψ], N_[ψ])_h`: each generator image is lifted to
/// the free module, relabelled, and reduced in the coarse component.
pub fn embed_hom<F: Field>(
    space: &GradedHomSpace<F>,
    b: usize,
    target: &Presentation<F>,
    coarse_blocks: &[(Degree, usize, usize)],
    coarse_target: &Presentation<F>,
) -> Vec<F> {
    let total = coarse_blocks.last().map_or(0, |x| x.1 + x.2);
    let mut out = vec![F::zero(); total];
    for (j, (fine_deg, _, _)) in space.blocks().iter().enumerate() {
        let fine_comp = target.component(fine_deg);
        let amb = fine_comp.lift(space.image(b, j));
        let (coarse_deg, off, _) = &coarse_blocks[j];
        let coarse_comp = coarse_target.component(coarse_deg);
        let mut v = vec![F::zero(); coarse_comp.ambient_dim()];
        for (label, c) in fine_comp.labels().iter().zip(amb) {
            if !c.is_zero() {
                let i = coarse_comp.ambient_index(label).expect("fine monomials reappear in the coarse component");
                v[i] = c;
            }
        }
        for (k, c) in coarse_comp.quotient_coords(v).into_iter().enumerate() {
            out[off + k] = c;
        }
    }
    out
}

/// Compares `⊕_{g ∈ ψ⁻¹(h)} Hom(M, N)_g` with `Hom(M_[ψ], N_[ψ])_h`.
///
/// Refuses with [`Error::WindowInadequate`] when some `g` over `h` at which
/// `Hom(M, N)_g` can be nonzero lies outside `gw`.
pub fn hom_comparison<F: Field>(
    source: &Presentation<F>,
    target: &Presentation<F>,
    coarse: &Arc<GradedPolynomialRing>,
    psi: &GroupEpimorphism,
    h: &Degree,
    gw: &DegreeWindow,
) -> Result<HomComparison> {
    let fg = source.ring().group();
    if !psi.fiber_is_complete(h, gw)? {
        let mut missing = Vec::new();
        for d in source.gen_degrees() {
            let e_deg = coarse.group().add(h, &psi.apply(d)?);
            for e in support_candidates(target, coarse, psi, &e_deg)? {
                let g = fg.sub(&e, d);
                if !gw.contains(&g) && !missing.contains(&g) {
                    missing.push(g);
                }
            }
        }
        if !missing.is_empty() {
            missing.sort();
            return Err(Error::WindowInadequate { missing });
        }
    }
    let coarse_source = coarsen_module(source, coarse, psi)?;
    let coarse_target = coarsen_module(target, coarse, psi)?;
    let (constraints, coarse_blocks) = hom_constraints(&coarse_source, &coarse_target, h);
    let coarse_dim = constraints.cols() - constraints.rank();

    let mut fiber = Vec::new();
    let mut embedded = Vec::new();
    for g in psi.fiber(h, gw)? {
        let space = graded_hom(source, target, &g);
        for b in 0..space.dim() {
            embedded.push(embed_hom(&space, b, target, &coarse_blocks, &coarse_target));
        }
        fiber.push((g, space.dim()));
    }
    let fine_sum = embedded.len();
    let embedded_valid = embedded
        .iter()
        .all(|v| constraints.apply(v).iter().all(|x| x.is_zero()));
    let width = constraints.cols();
    let embedded_independent = RowEchelon::from_rows(width, embedded).rank() == fine_sum;
    Ok(HomComparison {
        degree: h.clone(),
        fiber,
        fine_sum,
        coarse_dim,
        embedded_valid,
        embedded_independent,
    })
}
