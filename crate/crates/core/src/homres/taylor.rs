use std::sync::Arc;

use crate::grading::{Degree, DegreeWindow};
use crate::linalg::Matrix;
use crate::ringcore::{GradedPolynomialRing, Monomial, MonomialIdeal, Presentation};
use crate::scalar::Field;

use super::subsets::{without, Subsets};

/// The Taylor complex of a list of monomials `m_1..m_s`.
///
/// Term `p` is free of rank `C(s, p)` with basis `e_S`, `|S| = p`, sitting in
/// degree `deg lcm(m_S)`. The boundary is
/// `d(e_S) = Σ_t (-1)^t (lcm S / lcm S∖s_t) e_{S∖s_t}`.
/// It is a free resolution of `R/(m_1..m_s)`.
#[derive(Clone, Debug)]
pub struct TaylorResolution {
    ring: Arc<GradedPolynomialRing>,
    gens: Vec<Monomial>,
    subsets: Vec<Subsets>,
}

impl TaylorResolution {
    /// Resolution of `R/a` on the minimal generators of `a`.
    pub fn new(ring: Arc<GradedPolynomialRing>, ideal: &MonomialIdeal) -> Self {
        Self::from_generators(ring, ideal.gens().to_vec())
    }

    /// Taylor complex on an explicit generator list (need not be minimal).
    pub fn from_generators(ring: Arc<GradedPolynomialRing>, gens: Vec<Monomial>) -> Self {
        let s = gens.len();
        let subsets = (0..=s).map(|p| Subsets::new(s, p)).collect();
        TaylorResolution { ring, gens, subsets }
    }

    pub fn ring(&self) -> &Arc<GradedPolynomialRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    /// Number of generators, which is also the length of the complex.
    pub fn length(&self) -> usize {
        self.gens.len()
    }

    pub fn rank(&self, p: usize) -> usize {
        self.subsets.get(p).map_or(0, Subsets::len)
    }

    pub fn ranks(&self) -> Vec<usize> {
        (0..=self.length()).map(|p| self.rank(p)).collect()
    }

    pub(crate) fn subsets(&self, p: usize) -> Option<&Subsets> {
        self.subsets.get(p)
    }

    pub fn lcm(&self, subset: &[usize]) -> Monomial {
        subset
            .iter()
            .fold(self.ring.one(), |acc, &i| acc.lcm(&self.gens[i]))
    }

    pub fn shift_degree(&self, subset: &[usize]) -> Degree {
        self.ring.monomial_degree(&self.lcm(subset))
    }

    /// Generator degrees of term `p`.
    pub fn shifts(&self, p: usize) -> Vec<Degree> {
        self.subsets(p)
            .map(|s| s.iter().map(|sub| self.shift_degree(sub)).collect())
            .unwrap_or_default()
    }

    pub fn term<F: Field>(&self, p: usize) -> Presentation<F> {
        Presentation::free(Arc::clone(&self.ring), self.shifts(p)).expect("shift degrees lie in the group")
    }

    /// `d_p : F_p -> F_{p-1}` in degree `g`, on the monomial bases of the terms.
    pub fn boundary_matrix<F: Field>(&self, p: usize, g: &Degree) -> Matrix<F> {
        let src: Presentation<F> = self.term(p);
        if p == 0 {
            return Matrix::zeros(0, src.dim(g));
        }
        let tgt: Presentation<F> = self.term(p - 1);
        let grp = self.ring.group();
        let src_blocks = block_offsets(&src, g);
        let tgt_blocks = block_offsets(&tgt, g);
        let mut m = Matrix::zeros(tgt.dim(g), src.dim(g));
        let Some(subs) = self.subsets(p) else { return m };
        let lower = self.subsets(p - 1).expect("lower term exists");
        let ring_module = Presentation::<F>::ring_module(Arc::clone(&self.ring));
        for (col, big) in subs.iter().enumerate() {
            let big_lcm = self.lcm(big);
            for t in 0..big.len() {
                let small = without(big, t);
                let row = lower.position(&small).expect("face is a subset");
                let coeff = self.lcm(&small).quotient_of(&big_lcm).expect("lcm divides");
                // R_{g - deg lcm S} -> R_{g - deg lcm(S∖t)}
                let source_deg = grp.sub(g, &self.ring.monomial_degree(&big_lcm));
                let block = ring_module.monomial_map(&coeff, &source_deg);
                let block = if t % 2 == 0 { (*block).clone() } else { block.scaled(&-F::one()) };
                m.add_block(tgt_blocks[row], src_blocks[col], &block);
            }
        }
        m
    }

    /// `d_{p-1} ∘ d_p = 0` in every window degree.
    pub fn check_d_squared<F: Field>(&self, window: &DegreeWindow) -> bool {
        window.iter().all(|g| {
            (2..=self.length()).all(|p| {
                let a: Matrix<F> = self.boundary_matrix(p - 1, g);
                let b: Matrix<F> = self.boundary_matrix(p, g);
                a.mul(&b).is_zero()
            })
        })
    }

    /// Degrees and positions where the complex fails to resolve `R/a`:
    /// homology must vanish for `p ≥ 1` and equal `(R/a)_g` at `p = 0`.
    pub fn exactness_defects<F: Field>(&self, window: &DegreeWindow) -> Vec<(usize, Degree)> {
        let quotient = Presentation::<F>::quotient(
            Arc::clone(&self.ring),
            &MonomialIdeal::new(self.ring.nvars(), self.gens.iter().cloned()),
        );
        let mut out = Vec::new();
        for g in window.iter() {
            for p in 0..=self.length() {
                let d_out: Matrix<F> = self.boundary_matrix(p, g);
                let d_in: Matrix<F> = self.boundary_matrix(p + 1, g);
                let cycles = d_out.cols() - d_out.rank();
                let boundaries = if p < self.length() { d_in.rank() } else { 0 };
                let homology = cycles - boundaries;
                let expect = if p == 0 { quotient.dim(g) } else { 0 };
                if homology != expect {
                    out.push((p, g.clone()));
                }
            }
        }
        out
    }
}

/// Offsets of the generator blocks of a free module's degree-`g` component.
fn block_offsets<F: Field>(free: &Presentation<F>, g: &Degree) -> Vec<usize> {
    let comp = free.component(g);
    let mut offsets = vec![0; free.ngens() + 1];
    for (j, _) in comp.labels() {
        offsets[j + 1] += 1;
    }
    for j in 0..free.ngens() {
        offsets[j + 1] += offsets[j];
    }
    offsets
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn maximal_ideal_fine() {
        let r = Arc::new(GradedPolynomialRing::fine(&["x", "y"]));
        let a = MonomialIdeal::new(2, [mono(&[1, 0]), mono(&[0, 1])]);
        let t = TaylorResolution::new(r.clone(), &a);
        assert_eq!(t.ranks(), vec![1, 2, 1]);
        assert_eq!(t.shifts(2), vec![r.group().free_degree(&[1, 1])]);
        let w = DegreeWindow::cube(r.group(), -1, 3).unwrap();
        assert!(t.check_d_squared::<Rational>(&w));
        assert!(t.exactness_defects::<Rational>(&w).is_empty());
    }

    #[test]
    fn principal() {
        let r = Arc::new(GradedPolynomialRing::standard(&["x"]));
        let t = TaylorResolution::new(r.clone(), &MonomialIdeal::new(1, [mono(&[2])]));
        assert_eq!(t.ranks(), vec![1, 1]);
        let w = DegreeWindow::cube(r.group(), -1, 5).unwrap();
        assert!(t.exactness_defects::<Rational>(&w).is_empty());
    }

    #[test]
    fn nonreduced_pair() {
        let r = Arc::new(GradedPolynomialRing::fine(&["x", "y"]));
        let a = MonomialIdeal::new(2, [mono(&[2, 0]), mono(&[1, 1])]);
        let t = TaylorResolution::new(r.clone(), &a);
        assert_eq!(t.ranks(), vec![1, 2, 1]);
        assert_eq!(t.shifts(2), vec![r.group().free_degree(&[2, 1])]);
        let w = DegreeWindow::cube(r.group(), -1, 3).unwrap();
        assert!(t.exactness_defects::<Rational>(&w).is_empty());
    }

    #[test]
    fn three_generators_non_minimal() {
        // Taylor is not minimal here (x*z is redundant in the lcm lattice) but still exact
        let r = Arc::new(GradedPolynomialRing::standard(&["x", "y", "z"]));
        let a = MonomialIdeal::new(3, [mono(&[1, 1, 0]), mono(&[0, 1, 1]), mono(&[1, 0, 1])]);
        let t = TaylorResolution::new(r.clone(), &a);
        assert_eq!(t.ranks(), vec![1, 3, 3, 1]);
        let w = DegreeWindow::cube(r.group(), 0, 5).unwrap();
        assert!(t.check_d_squared::<Rational>(&w));
        assert!(t.exactness_defects::<Rational>(&w).is_empty());
    }
}
