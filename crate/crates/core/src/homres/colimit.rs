use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result, Trajectory};
use crate::grading::{Degree, DegreeWindow};
use crate::linalg::Matrix;
use crate::ringcore::{GradedPolynomialRing, HilbertTable, MonomialIdeal, Presentation};
use crate::scalar::Field;

use super::complex::{cohomology_data, CochainModel, CohomologyData, HomComplex};
use super::subsets::sort_sign;
use super::taylor::TaylorResolution;

/// A sequence of cochain complexes `C(1) -> C(2) -> ...` with cochain maps
/// between consecutive stages.
pub trait DirectSystem<F: Field> {
    type Stage: CochainModel<F>;

    /// Stage `n`, for `n ≥ 1`.
    fn stage(&self, n: usize) -> Self::Stage;

    /// `C^p(n)_g -> C^p(n+1)_g`.
    fn transition(&self, n: usize, from: &Self::Stage, to: &Self::Stage, p: usize, g: &Degree) -> Matrix<F>;

    /// First stage at which a stable verdict may be declared on `window`.
    fn warmup(&self, _window: &DegreeWindow) -> usize {
        1
    }

    fn describe(&self) -> String;
}

/// Cohomology of a colimit, read off at the stage where it stabilized.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ColimitTable {
    pub table: HilbertTable,
    pub stable_stage: usize,
    pub trajectory: Trajectory,
}

/// Cohomology at position `p` of the colimit of `system` on `window`.
///
/// Stage `n` is declared stable once `n` is past the system's warm-up and
/// the transition `n -> n+1` induces an isomorphism on cohomology at every
/// window degree. Stages `1..=cap` are available; without a verdict by then
/// the result is [`Error::Unstabilized`] with the dimension trajectory.
pub fn colimit_cohomology<F: Field, S: DirectSystem<F>>(
    system: &S,
    p: usize,
    window: &DegreeWindow,
    cap: usize,
) -> Result<ColimitTable> {
    if cap < 2 {
        return Err(Error::InvalidArgument(format!("stage cap must be at least 2, got {cap}")));
    }
    let warmup = system.warmup(window);
    let degrees: Vec<Degree> = window.degrees().to_vec();
    let mut history: BTreeMap<Degree, Vec<usize>> = degrees.iter().map(|g| (g.clone(), Vec::new())).collect();
    let mut cur_stage = system.stage(1);
    let mut cur: Vec<CohomologyData<F>> = degrees.iter().map(|g| cohomology_data(&cur_stage, p, g)).collect();
    for (g, d) in degrees.iter().zip(&cur) {
        history.get_mut(g).expect("window degree").push(d.dim());
    }
    for n in 1..cap {
        let next_stage = system.stage(n + 1);
        let next: Vec<CohomologyData<F>> = degrees.iter().map(|g| cohomology_data(&next_stage, p, g)).collect();
        let mut iso = true;
        for ((g, a), b) in degrees.iter().zip(&cur).zip(&next) {
            history.get_mut(g).expect("window degree").push(b.dim());
            if iso && (a.dim() != b.dim() || !transition_is_iso(system, n, &cur_stage, &next_stage, p, g, a, b)) {
                iso = false;
            }
        }
        if iso && n >= warmup {
            let table = HilbertTable::from_entries(degrees.iter().cloned().zip(cur.iter().map(CohomologyData::dim)));
            return Ok(ColimitTable {
                table,
                stable_stage: n,
                trajectory: trajectory(n + 1, history),
            });
        }
        cur_stage = next_stage;
        cur = next;
    }
    Err(Error::Unstabilized {
        what: system.describe(),
        cap,
        trajectory: trajectory(cap, history),
    })
}

#[allow(clippy::too_many_arguments)]
fn transition_is_iso<F: Field, S: DirectSystem<F>>(
    system: &S,
    n: usize,
    from: &S::Stage,
    to: &S::Stage,
    p: usize,
    g: &Degree,
    a: &CohomologyData<F>,
    b: &CohomologyData<F>,
) -> bool {
    if a.dim() == 0 {
        return b.dim() == 0;
    }
    let t = system.transition(n, from, to, p, g);
    a.induced_rank(&t, b) == a.dim()
}

fn trajectory(stages: usize, history: BTreeMap<Degree, Vec<usize>>) -> Trajectory {
    Trajectory {
        stages,
        dims: history.into_iter().collect(),
    }
}

/// Which family of modules indexed by powers of `a` feeds the first argument of Ext.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerFamily {
    /// `R/a^n`: the colimit is local cohomology.
    Quotients,
    /// `a^n`: the colimit is the ideal transform.
    Ideals,
}

/// `n ↦ Hom(Taylor(a^n), N)` with the maps induced by `a^{n+1} ⊆ a^n`.
#[derive(Clone, Debug)]
pub struct ExtSystem<F: Field> {
    ring: Arc<GradedPolynomialRing>,
    ideal: MonomialIdeal,
    target: Presentation<F>,
    family: PowerFamily,
}

impl<F: Field> ExtSystem<F> {
    pub fn new(ideal: &MonomialIdeal, target: &Presentation<F>, family: PowerFamily) -> Self {
        ExtSystem {
            ring: Arc::clone(target.ring()),
            ideal: ideal.clone(),
            target: target.clone(),
            family,
        }
    }

    pub fn family(&self) -> PowerFamily {
        self.family
    }
}

/// For each generator of `small ⊆ big`, the first generator of `big` dividing it.
pub(crate) fn divisor_assignment(small: &TaylorResolution, big: &TaylorResolution) -> Vec<usize> {
    small
        .generators()
        .iter()
        .map(|m| {
            big.generators()
                .iter()
                .position(|d| d.divides(m))
                .expect("generators of the smaller ideal lie in the larger")
        })
        .collect()
}

impl<F: Field> DirectSystem<F> for ExtSystem<F> {
    type Stage = HomComplex<F>;

    fn stage(&self, n: usize) -> HomComplex<F> {
        let taylor = TaylorResolution::new(Arc::clone(&self.ring), &self.ideal.power(n as u32));
        match self.family {
            PowerFamily::Quotients => HomComplex::new(taylor, self.target.clone()),
            PowerFamily::Ideals => HomComplex::truncated(taylor, self.target.clone()),
        }
    }

    /// Dual of the lift of `a^{n+1} ⊆ a^n` to Taylor complexes: `e_S` goes to
    /// `±(lcm m_S / lcm n_φ(S)) e_φ(S)` when `φ` is injective on `S`, else to 0.
    fn transition(&self, _n: usize, from: &HomComplex<F>, to: &HomComplex<F>, p: usize, g: &Degree) -> Matrix<F> {
        let q = from.taylor_position(p);
        let grp = self.ring.group();
        let src = from.blocks(q, g);
        let tgt = to.blocks(q, g);
        let rows = tgt.last().map_or(0, |b| b.1 + b.2);
        let cols = src.last().map_or(0, |b| b.1 + b.2);
        let mut m = Matrix::zeros(rows, cols);
        if rows == 0 || cols == 0 {
            return m;
        }
        let phi = divisor_assignment(to.taylor(), from.taylor());
        let big_subsets = from.taylor().subsets(q).expect("position within the complex");
        for (s, row_off, _) in &tgt {
            let image: Vec<usize> = s.iter().map(|&i| phi[i]).collect();
            let mut sorted = image.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() < image.len() {
                continue;
            }
            let (_, col_off, _) = &src[big_subsets.position(&sorted).expect("image is a subset")];
            let from_lcm = from.taylor().lcm(&sorted);
            let coeff = from_lcm
                .quotient_of(&to.taylor().lcm(s))
                .expect("lcm of the smaller ideal's generators is divisible");
            let block = self.target.monomial_map(&coeff, &grp.add(g, &self.ring.monomial_degree(&from_lcm)));
            if sort_sign(&image) > 0 {
                m.add_block(*row_off, *col_off, &block);
            } else {
                m.add_block(*row_off, *col_off, &block.scaled(&-F::one()));
            }
        }
        m
    }

    /// Smallest `n` with `weight(g) + n·w_min(a) ≥ μ(N)` for every window degree,
    /// so that every shifted summand of stage `n` lies above the generator
    /// weights of `N`.
    fn warmup(&self, window: &DegreeWindow) -> usize {
        warmup_bound(&self.ring, &self.target, self.ideal.gens().iter().map(|m| self.ring.monomial_weight(m)), window)
    }

    fn describe(&self) -> String {
        let what = match self.family {
            PowerFamily::Quotients => "Ext(R/a^n, N)",
            PowerFamily::Ideals => "Ext(a^n, N)",
        };
        let gens: Vec<String> = self.ideal.gens().iter().map(|m| self.ring.format_monomial(m)).collect();
        format!("{what} for a = ({})", gens.join(", "))
    }
}

pub(crate) fn warmup_bound<F: Field>(
    ring: &GradedPolynomialRing,
    module: &Presentation<F>,
    step_weights: impl Iterator<Item = i64>,
    window: &DegreeWindow,
) -> usize {
    let Some(step) = step_weights.filter(|&w| w > 0).min() else { return 1 };
    let Some(mu) = module.min_generator_weight() else { return 1 };
    window
        .iter()
        .map(|g| {
            let gap = mu - ring.weight(g);
            if gap <= 0 {
                1
            } else {
                (gap as usize).div_ceil(step as usize).max(1)
            }
        })
        .max()
        .unwrap_or(1)
}
