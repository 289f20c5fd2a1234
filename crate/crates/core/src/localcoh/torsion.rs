use std::collections::BTreeMap;

use crate::error::{Error, Result, Trajectory};
use crate::grading::{Degree, DegreeWindow};
use crate::homres::warmup_bound;
use crate::linalg::{Matrix, RowEchelon};
use crate::ringcore::{HilbertTable, MonomialIdeal, Presentation};
use crate::scalar::Field;

/// `Γ_a(M)` on a window, with an explicit basis of each component.
#[derive(Clone, Debug)]
pub struct TorsionSubmodule<F> {
    pub table: HilbertTable,
    /// Per degree, a basis in the quotient coordinates of `M_g`.
    pub bases: BTreeMap<Degree, Vec<Vec<F>>>,
    pub stable_stage: usize,
    pub trajectory: Trajectory,
}

/// Elements of `M_g` killed by every generator of `a^n`.
pub fn annihilated_by_power<F: Field>(module: &Presentation<F>, ideal: &MonomialIdeal, n: u32, g: &Degree) -> Vec<Vec<F>> {
    let dim = module.dim(g);
    if dim == 0 {
        return Vec::new();
    }
    let power = ideal.power(n);
    let mut rows = Vec::new();
    for m in power.gens() {
        let block = module.monomial_map(m, g);
        rows.extend((0..block.rows()).map(|i| block.row(i).to_vec()));
    }
    RowEchelon::from_rows(dim, rows).null_space()
}

/// The `a`-torsion submodule as the increasing union of `(0 :_M a^n)`.
///
/// The chain is declared stable at `n` when `(0 :_M a^n)_g = (0 :_M a^{n+1})_g`
/// at every window degree and `n` is past the weight warm-up.
pub fn torsion_submodule<F: Field>(
    ideal: &MonomialIdeal,
    module: &Presentation<F>,
    window: &DegreeWindow,
    cap: usize,
) -> Result<TorsionSubmodule<F>> {
    if cap < 2 {
        return Err(Error::InvalidArgument(format!("stage cap must be at least 2, got {cap}")));
    }
    let ring = module.ring();
    let warmup = warmup_bound(ring, module, ideal.gens().iter().map(|m| ring.monomial_weight(m)), window);
    let mut history: BTreeMap<Degree, Vec<usize>> = window.iter().map(|g| (g.clone(), Vec::new())).collect();
    let kernels = |n: usize| -> Vec<Vec<Vec<F>>> {
        window.iter().map(|g| annihilated_by_power(module, ideal, n as u32, g)).collect()
    };
    let mut cur = kernels(1);
    for (g, k) in window.iter().zip(&cur) {
        history.get_mut(g).expect("window degree").push(k.len());
    }
    for n in 1..cap {
        let next = kernels(n + 1);
        let mut same = true;
        for ((g, a), b) in window.iter().zip(&cur).zip(&next) {
            history.get_mut(g).expect("window degree").push(b.len());
            same &= a.len() == b.len();
        }
        if same && n >= warmup {
            let table = HilbertTable::from_entries(window.iter().cloned().zip(cur.iter().map(Vec::len)));
            return Ok(TorsionSubmodule {
                table,
                bases: window.iter().cloned().zip(cur).collect(),
                stable_stage: n,
                trajectory: Trajectory {
                    stages: n + 1,
                    dims: history.into_iter().collect(),
                },
            });
        }
        cur = next;
    }
    Err(Error::Unstabilized {
        what: "torsion submodule".into(),
        cap,
        trajectory: Trajectory {
            stages: cap,
            dims: history.into_iter().collect(),
        },
    })
}

/// Whether each vector of `basis` is killed by `a^n` in `M_g`.
pub fn is_killed_by<F: Field>(module: &Presentation<F>, ideal: &MonomialIdeal, n: u32, g: &Degree, v: &[F]) -> bool {
    ideal.power(n).gens().iter().all(|m| {
        let block: std::sync::Arc<Matrix<F>> = module.monomial_map(m, g);
        block.apply(v).iter().all(|x| x.is_zero())
    })
}
