use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grading::{Degree, DegreeWindow, GroupEpimorphism};
use crate::localcoh::{local_cohomology_cech, local_cohomology_ext};
use crate::ringcore::{HilbertTable, MonomialIdeal, Presentation};
use crate::scalar::Field;

use super::table::{coarsen_table, SupportClaim};
use super::CoarsenedScenario;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    CommutesOnWindow,
    Fails,
    Unstabilized,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::CommutesOnWindow => "COMMUTES_ON_WINDOW",
            Verdict::Fails => "FAILS",
            Verdict::Unstabilized => "UNSTABILIZED",
        })
    }
}

/// One coarse degree: fiber sums of the fine tables and the coarse values, per route.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScenarioRow {
    pub degree: Degree,
    pub fine: BTreeMap<String, usize>,
    pub coarse: BTreeMap<String, usize>,
    pub agree: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub i: usize,
    pub routes: Vec<String>,
    pub fine_stages: BTreeMap<String, usize>,
    pub coarse_stages: BTreeMap<String, usize>,
    pub fine_window: Vec<Degree>,
    pub coarse_window: Vec<Degree>,
    pub kernel_finite: bool,
    pub support: String,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScenarioReport {
    pub verdict: Verdict,
    pub rows: Vec<ScenarioRow>,
    pub witnesses: Vec<Degree>,
    pub provenance: Provenance,
}

/// Fine tables (over `G`) and coarse tables (over `H`), keyed by route.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CommutationInput {
    pub fine: Vec<(String, HilbertTable)>,
    pub coarse: Vec<(String, HilbertTable)>,
}

/// Coarsens every fine table onto `hw` and compares all values at each `h`.
/// The verdict is FAILS with the disagreeing degrees as witnesses, or
/// COMMUTES_ON_WINDOW.
pub fn compare_tables<F: Field>(
    input: &CommutationInput,
    psi: &GroupEpimorphism,
    hw: &DegreeWindow,
    claim: &SupportClaim<'_, F>,
    provenance: Provenance,
) -> Result<ScenarioReport> {
    let coarsened = input
        .fine
        .iter()
        .map(|(name, t)| Ok((name.clone(), coarsen_table(t, psi, hw, claim)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    let mut witnesses = Vec::new();
    for h in hw.iter() {
        let pick = |tables: &[(String, HilbertTable)]| -> Result<BTreeMap<String, usize>> {
            tables
                .iter()
                .map(|(name, t)| {
                    t.get(h)
                        .map(|v| (name.clone(), v))
                        .ok_or_else(|| Error::WindowInadequate { missing: vec![h.clone()] })
                })
                .collect()
        };
        let fine = pick(&coarsened)?;
        let coarse = pick(&input.coarse)?;
        let mut values = fine.values().chain(coarse.values());
        let first = values.next().copied();
        let agree = values.all(|v| Some(*v) == first);
        if !agree {
            witnesses.push(h.clone());
        }
        rows.push(ScenarioRow {
            degree: h.clone(),
            fine,
            coarse,
            agree,
        });
    }
    Ok(ScenarioReport {
        verdict: if witnesses.is_empty() {
            Verdict::CommutesOnWindow
        } else {
            Verdict::Fails
        },
        rows,
        witnesses,
        provenance,
    })
}

/// Computes `H^i_a(M)` over `G` on `gw` and `H^i_a(M_[ψ])` over `H` on `hw`,
/// each by the Čech and the Ext route, coarsens the fine tables and
/// compares all four.
///
/// Fiber sums are accepted when the fiber lies in `gw` (finite kernel), for
/// `i = 0` when the support of `M` over `h` lies in `gw`, or when
/// `assume_covered` is set; otherwise the call is refused with
/// [`Error::CoverageNotCertified`]. A colimit that does not stabilize yields
/// an UNSTABILIZED report whose provenance names it.
pub fn check_commutation<F: Field>(
    i: usize,
    ideal: &MonomialIdeal,
    module: &Presentation<F>,
    scenario: &CoarsenedScenario,
    cap: usize,
    assume_covered: bool,
) -> Result<ScenarioReport> {
    let coarse_module = scenario.coarsen_module(module)?;
    let kernel_finite = scenario.psi.kernel_is_finite()?;
    let (claim, support) = if kernel_finite {
        (SupportClaim::FiberOnly, "finite kernel, fibers checked complete")
    } else if assume_covered {
        (SupportClaim::Assumed, "asserted by caller")
    } else if i == 0 {
        (
            SupportClaim::WithinModule {
                module,
                coarse: &scenario.coarse,
            },
            "torsion lies in the module; module support enumerated",
        )
    } else {
        (SupportClaim::FiberOnly, "uncertified")
    };
    let mut provenance = Provenance {
        i,
        routes: vec!["cech".into(), "ext".into()],
        fine_window: scenario.gw.degrees().to_vec(),
        coarse_window: scenario.hw.degrees().to_vec(),
        kernel_finite,
        support: support.into(),
        ..Provenance::default()
    };
    // refuse before doing the expensive work
    for h in scenario.hw.iter() {
        super::table::check_coverage(&scenario.psi, h, &scenario.gw, &claim)?;
    }

    let runs = [
        ("cech", true, local_cohomology_cech(i, ideal.gens(), module, &scenario.gw, cap)),
        ("ext", true, local_cohomology_ext(i, ideal, module, &scenario.gw, cap)),
        ("cech", false, local_cohomology_cech(i, ideal.gens(), &coarse_module, &scenario.hw, cap)),
        ("ext", false, local_cohomology_ext(i, ideal, &coarse_module, &scenario.hw, cap)),
    ];
    let mut input = CommutationInput::default();
    for (route, is_fine, run) in runs {
        match run {
            Ok(t) => {
                let (stages, tables) = if is_fine {
                    (&mut provenance.fine_stages, &mut input.fine)
                } else {
                    (&mut provenance.coarse_stages, &mut input.coarse)
                };
                stages.insert(route.into(), t.stable_stage);
                tables.push((route.into(), t.table));
            }
            Err(e @ Error::Unstabilized { .. }) => {
                let side = if is_fine { "fine" } else { "coarse" };
                provenance.note = Some(format!("{side} {route} route: {e}"));
                return Ok(ScenarioReport {
                    verdict: Verdict::Unstabilized,
                    rows: Vec::new(),
                    witnesses: Vec::new(),
                    provenance,
                });
            }
            Err(e) => return Err(e),
        }
    }
    compare_tables(&input, &scenario.psi, &scenario.hw, &claim, provenance)
}
