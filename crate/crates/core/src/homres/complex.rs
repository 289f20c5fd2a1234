use crate::grading::{Degree, DegreeWindow};
use crate::linalg::{Matrix, RowEchelon};
use crate::ringcore::{HilbertTable, Presentation};
use crate::scalar::Field;

use super::subsets::without;
use super::taylor::TaylorResolution;

/// A cochain complex `C^0 -> C^1 -> ... -> C^L` of graded vector spaces,
/// evaluated one degree at a time. Positions beyond `length` are zero.
pub trait CochainModel<F: Field> {
    fn length(&self) -> usize;

    fn term_dim(&self, p: usize, g: &Degree) -> usize;

    /// `δ^p : C^p_g -> C^{p+1}_g`.
    fn coboundary(&self, p: usize, g: &Degree) -> Matrix<F>;
}

/// Cocycles and coboundaries at one position and degree.
#[derive(Clone, Debug)]
pub struct CohomologyData<F> {
    pub term_dim: usize,
    pub cocycles: Vec<Vec<F>>,
    pub coboundaries: RowEchelon<F>,
}

impl<F: Field> CohomologyData<F> {
    pub fn dim(&self) -> usize {
        self.cocycles.len() - self.coboundaries.rank()
    }

    /// Rank of the map induced on cohomology by a cochain map `t` into the
    /// complex described by `target`.
    pub fn induced_rank(&self, t: &Matrix<F>, target: &CohomologyData<F>) -> usize {
        let mut span = target.coboundaries.clone();
        let base = span.rank();
        for z in &self.cocycles {
            span.insert(t.apply(z));
        }
        span.rank() - base
    }
}

pub fn cohomology_data<F: Field, C: CochainModel<F> + ?Sized>(c: &C, p: usize, g: &Degree) -> CohomologyData<F> {
    let term_dim = if p > c.length() { 0 } else { c.term_dim(p, g) };
    if term_dim == 0 {
        return CohomologyData {
            term_dim,
            cocycles: Vec::new(),
            coboundaries: RowEchelon::new(0),
        };
    }
    let cocycles = if p < c.length() {
        c.coboundary(p, g).kernel()
    } else {
        Matrix::<F>::identity(term_dim).columns()
    };
    let coboundaries = if p == 0 {
        RowEchelon::new(term_dim)
    } else {
        let d = c.coboundary(p - 1, g);
        RowEchelon::from_rows(term_dim, d.columns())
    };
    CohomologyData {
        term_dim,
        cocycles,
        coboundaries,
    }
}

pub fn cohomology_dim<F: Field, C: CochainModel<F> + ?Sized>(c: &C, p: usize, g: &Degree) -> usize {
    cohomology_data(c, p, g).dim()
}

pub fn cohomology_table<F: Field, C: CochainModel<F> + ?Sized>(c: &C, p: usize, window: &DegreeWindow) -> HilbertTable {
    HilbertTable::from_fn(window, |g| cohomology_dim(c, p, g))
}

/// `δ^{p+1} ∘ δ^p = 0` at every window degree.
pub fn d_squared_vanishes<F: Field, C: CochainModel<F> + ?Sized>(c: &C, window: &DegreeWindow) -> bool {
    window.iter().all(|g| {
        (0..c.length().saturating_sub(1)).all(|p| c.coboundary(p + 1, g).mul(&c.coboundary(p, g)).is_zero())
    })
}

/// `Hom(T, N)` for a Taylor complex `T`.
///
/// Position `p` is `⊕_{|S|=p} N_{g + deg lcm S}`. The truncated variant
/// drops `T_0` and renumbers, so that it computes `Ext(a, N)` from the
/// resolution `T_{≥1} -> a`.
#[derive(Clone, Debug)]
pub struct HomComplex<F: Field> {
    taylor: TaylorResolution,
    target: Presentation<F>,
    truncated: bool,
}

impl<F: Field> HomComplex<F> {
    pub fn new(taylor: TaylorResolution, target: Presentation<F>) -> Self {
        HomComplex {
            taylor,
            target,
            truncated: false,
        }
    }

    pub fn truncated(taylor: TaylorResolution, target: Presentation<F>) -> Self {
        HomComplex {
            taylor,
            target,
            truncated: true,
        }
    }

    pub fn taylor(&self) -> &TaylorResolution {
        &self.taylor
    }

    pub fn target(&self) -> &Presentation<F> {
        &self.target
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Taylor position underlying cochain position `p`.
    pub fn taylor_position(&self, p: usize) -> usize {
        p + usize::from(self.truncated)
    }

    /// `(subset, offset, dim)` for each summand of Taylor position `q`.
    pub fn blocks(&self, q: usize, g: &Degree) -> Vec<(Vec<usize>, usize, usize)> {
        let grp = self.taylor.ring().group();
        let mut off = 0;
        let Some(subs) = self.taylor.subsets(q) else { return Vec::new() };
        subs.iter()
            .map(|s| {
                let d = self.target.dim(&grp.add(g, &self.taylor.shift_degree(s)));
                let entry = (s.clone(), off, d);
                off += d;
                entry
            })
            .collect()
    }
}

impl<F: Field> CochainModel<F> for HomComplex<F> {
    fn length(&self) -> usize {
        self.taylor.length().saturating_sub(usize::from(self.truncated))
    }

    fn term_dim(&self, p: usize, g: &Degree) -> usize {
        if self.truncated && self.taylor.length() == 0 {
            return 0;
        }
        self.blocks(self.taylor_position(p), g).iter().map(|b| b.2).sum()
    }

    fn coboundary(&self, p: usize, g: &Degree) -> Matrix<F> {
        let q = self.taylor_position(p);
        let grp = self.taylor.ring().group();
        let src = self.blocks(q, g);
        let tgt = self.blocks(q + 1, g);
        let rows = tgt.last().map_or(0, |b| b.1 + b.2);
        let cols = src.last().map_or(0, |b| b.1 + b.2);
        let mut m = Matrix::zeros(rows, cols);
        if self.truncated && self.taylor.length() == 0 {
            return m;
        }
        let lower = self.taylor.subsets(q).expect("position within the complex");
        for (big, row_off, _) in &tgt {
            let big_lcm = self.taylor.lcm(big);
            for t in 0..big.len() {
                let small = without(big, t);
                let (_, col_off, _) = &src[lower.position(&small).expect("face is a subset")];
                let small_lcm = self.taylor.lcm(&small);
                let coeff = small_lcm.quotient_of(&big_lcm).expect("lcm divides");
                let from = grp.add(g, &self.taylor.ring().monomial_degree(&small_lcm));
                let block = self.target.monomial_map(&coeff, &from);
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
