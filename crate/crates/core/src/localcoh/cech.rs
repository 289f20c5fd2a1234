use std::sync::Arc;

use crate::error::{Error, Result, Trajectory};
use crate::grading::{Degree, DegreeWindow};
use crate::homres::{warmup_bound, without, CochainModel, DirectSystem, Subsets};
use crate::linalg::{Matrix, RowEchelon};
use crate::ringcore::{Monomial, Presentation};
use crate::scalar::Field;

/// The Čech cocomplex of `M` on monomials `f_1..f_r`, position `p` being
/// `⊕_{|S|=p} M_{f_S}`.
///
/// Localizations are colimits `M_d -> M_{d+e} -> ...` under multiplication
/// by `f`, so the complex itself is the colimit over `k` of the stage
/// complexes `C(k)^p_g = ⊕_{|S|=p} M_{g + k·deg f_S}` with differential
/// blocks `±f_j^k` and transition maps `f_S`. Cohomology commutes with this
/// colimit, which is how [`local_cohomology_cech`](super::local_cohomology_cech)
/// evaluates it.
#[derive(Clone, Debug)]
pub struct CechComplex<F: Field> {
    gens: Vec<Monomial>,
    module: Presentation<F>,
    subsets: Arc<Vec<Subsets>>,
}

impl<F: Field> CechComplex<F> {
    pub fn new(gens: Vec<Monomial>, module: &Presentation<F>) -> Self {
        let r = gens.len();
        CechComplex {
            gens,
            module: module.clone(),
            subsets: Arc::new((0..=r).map(|p| Subsets::new(r, p)).collect()),
        }
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn module(&self) -> &Presentation<F> {
        &self.module
    }

    /// Highest nonzero position.
    pub fn length(&self) -> usize {
        self.gens.len()
    }

    /// `f_S`, the product of the chosen generators.
    pub fn product(&self, s: &[usize]) -> Monomial {
        s.iter()
            .fold(self.module.ring().one(), |acc, &i| acc.mul(&self.gens[i]))
    }

    pub fn subsets(&self, p: usize) -> Option<&Subsets> {
        self.subsets.get(p)
    }

    pub fn stage(&self, k: usize) -> CechStage<'_, F> {
        CechStage { complex: self, k }
    }

    /// Degree-`g` components of the summands of `C^p`, one localization each.
    pub fn term_components(&self, p: usize, g: &Degree, ray_cap: usize) -> Result<Vec<(Vec<usize>, LocalizationModel)>> {
        let Some(subs) = self.subsets(p) else { return Ok(Vec::new()) };
        subs.iter()
            .map(|s| Ok((s.clone(), LocalizationModel::new(&self.module, &self.product(s), g, ray_cap)?)))
            .collect()
    }

    /// `dim C^p_g` when every localization summand stabilizes along its ray.
    pub fn term_dim(&self, p: usize, g: &Degree, ray_cap: usize) -> Result<usize> {
        Ok(self.term_components(p, g, ray_cap)?.iter().map(|(_, l)| l.dim).sum())
    }
}

/// Stage `k` of a [`CechComplex`].
#[derive(Clone, Copy, Debug)]
pub struct CechStage<'a, F: Field> {
    complex: &'a CechComplex<F>,
    k: usize,
}

impl<F: Field> CechStage<'_, F> {
    pub fn k(&self) -> usize {
        self.k
    }

    fn shifted(&self, s: &[usize], g: &Degree) -> Degree {
        let ring = self.complex.module.ring();
        let e = ring.monomial_degree(&self.complex.product(s).pow(self.k as u32));
        ring.group().add(g, &e)
    }

    /// `(subset, offset, dim)` for each summand of position `p`.
    pub fn blocks(&self, p: usize, g: &Degree) -> Vec<(Vec<usize>, usize, usize)> {
        let Some(subs) = self.complex.subsets(p) else { return Vec::new() };
        let mut off = 0;
        subs.iter()
            .map(|s| {
                let d = self.complex.module.dim(&self.shifted(s, g));
                let entry = (s.clone(), off, d);
                off += d;
                entry
            })
            .collect()
    }
}

impl<F: Field> CochainModel<F> for CechStage<'_, F> {
    fn length(&self) -> usize {
        self.complex.length()
    }

    fn term_dim(&self, p: usize, g: &Degree) -> usize {
        self.blocks(p, g).iter().map(|b| b.2).sum()
    }

    fn coboundary(&self, p: usize, g: &Degree) -> Matrix<F> {
        let src = self.blocks(p, g);
        let tgt = self.blocks(p + 1, g);
        let rows = tgt.last().map_or(0, |b| b.1 + b.2);
        let cols = src.last().map_or(0, |b| b.1 + b.2);
        let mut m = Matrix::zeros(rows, cols);
        if rows == 0 || cols == 0 {
            return m;
        }
        let lower = self.complex.subsets(p).expect("position within the complex");
        for (big, row_off, _) in &tgt {
            for t in 0..big.len() {
                let small = without(big, t);
                let (_, col_off, _) = &src[lower.position(&small).expect("face is a subset")];
                let f = self.complex.gens[big[t]].pow(self.k as u32);
                let block = self.complex.module.monomial_map(&f, &self.shifted(&small, g));
                if t % 2 == 0 {
                    m.add_block(*row_off, *col_off, &block);
                } else {
                    m.add_block(*row_off, *col_off, &block.scaled(&-F::one()));
                }
            }
        }
        m
    }
}

impl<'a, F: Field> DirectSystem<F> for &'a CechComplex<F> {
    type Stage = CechStage<'a, F>;

    fn stage(&self, n: usize) -> CechStage<'a, F> {
        CechStage { complex: *self, k: n }
    }

    fn transition(&self, _n: usize, from: &CechStage<'a, F>, to: &CechStage<'a, F>, p: usize, g: &Degree) -> Matrix<F> {
        let src = from.blocks(p, g);
        let tgt = to.blocks(p, g);
        let rows = tgt.last().map_or(0, |b| b.1 + b.2);
        let cols = src.last().map_or(0, |b| b.1 + b.2);
        let mut m = Matrix::zeros(rows, cols);
        for ((s, col_off, _), (_, row_off, _)) in src.iter().zip(&tgt) {
            let block = self.module.monomial_map(&self.product(s), &from.shifted(s, g));
            m.add_block(*row_off, *col_off, &block);
        }
        m
    }

    fn warmup(&self, window: &DegreeWindow) -> usize {
        let ring = self.module.ring();
        warmup_bound(ring, &self.module, self.gens.iter().map(|m| ring.monomial_weight(m)), window)
    }

    fn describe(&self) -> String {
        let ring = self.module.ring();
        let gens: Vec<String> = self.gens.iter().map(|m| ring.format_monomial(m)).collect();
        format!("Čech cohomology on ({})", gens.join(", "))
    }
}

/// `(M_f)_d` as the colimit of `M_d -> M_{d+e} -> M_{d+2e} -> ...`, `e = deg f`.
///
/// Along the ray, the image of `M_{d+ke}` in the colimit is `M_{d+ke}`
/// modulo the kernel of `f^c` (`c` the ray cap). Those images inject into
/// each other; the model is stable at the first `k` past the weight
/// warm-up where two consecutive images have equal dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizationModel {
    pub degree: Degree,
    pub ray_dims: Vec<usize>,
    pub image_dims: Vec<usize>,
    pub stable_index: usize,
    pub dim: usize,
}

impl LocalizationModel {
    pub fn new<F: Field>(module: &Presentation<F>, f: &Monomial, d: &Degree, ray_cap: usize) -> Result<Self> {
        if ray_cap < 1 {
            return Err(Error::InvalidArgument("ray cap must be positive".into()));
        }
        let ring = module.ring();
        let grp = ring.group();
        let e = ring.monomial_degree(f);
        let step = ring.monomial_weight(f);
        let floor = match module.min_generator_weight() {
            Some(mu) if step > 0 => {
                let gap = mu - ring.weight(d);
                if gap <= 0 {
                    0
                } else {
                    (gap as usize).div_ceil(step as usize)
                }
            }
            _ => 0,
        };
        let far = f.pow(ray_cap as u32);
        let mut ray_dims = Vec::new();
        let mut image_dims = Vec::new();
        for k in 0..=ray_cap + floor {
            let dk = grp.add(d, &grp.scale(k as i64, &e));
            let dim = module.dim(&dk);
            let killed = if dim == 0 {
                0
            } else {
                let m = module.monomial_map(&far, &dk);
                dim - RowEchelon::from_rows(dim, (0..m.rows()).map(|i| m.row(i).to_vec())).rank()
            };
            ray_dims.push(dim);
            image_dims.push(dim - killed);
            if k > floor && image_dims[k] == image_dims[k - 1] {
                return Ok(LocalizationModel {
                    degree: d.clone(),
                    ray_dims,
                    stable_index: k - 1,
                    dim: image_dims[k],
                    image_dims,
                });
            }
        }
        let stages = image_dims.len();
        Err(Error::Unstabilized {
            what: format!("localization at {} in degree {d}", ring.format_monomial(f)),
            cap: ray_cap,
            trajectory: Trajectory {
                stages,
                dims: vec![(d.clone(), image_dims)],
            },
        })
    }
}
