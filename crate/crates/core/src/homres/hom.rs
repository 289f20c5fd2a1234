use crate::error::{Error, Result};
use crate::grading::{Degree, DegreeWindow};
use crate::linalg::Matrix;
use crate::ringcore::Presentation;
use crate::scalar::Field;

/// A basis of `Hom(M, N)_g`, the degree-preserving maps `M -> N(g)`.
///
/// A map is stored by the images of the generators of `M`: generator `j`
/// goes to `N_{d_j + g}`, and the coordinate vector is the concatenation of
/// those images in the quotient bases of `N`.
#[derive(Clone, Debug)]
pub struct GradedHomSpace<F> {
    degree: Degree,
    blocks: Vec<(Degree, usize, usize)>,
    basis: Vec<Vec<F>>,
}

impl<F: Field> GradedHomSpace<F> {
    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    /// For each generator of the source: target degree, offset, length.
    pub fn blocks(&self) -> &[(Degree, usize, usize)] {
        &self.blocks
    }

    /// Image of generator `j` under basis map `b`.
    pub fn image(&self, b: usize, j: usize) -> &[F] {
        let (_, off, len) = &self.blocks[j];
        &self.basis[b][*off..off + len]
    }

    /// Recomputes every relation of `source` on every basis map, using
    /// polynomial multiplication in `target` directly.
    pub fn verify(&self, source: &Presentation<F>, target: &Presentation<F>) -> bool {
        let grp = source.ring().group();
        (0..self.dim()).all(|b| {
            source.columns().iter().all(|col| {
                let out_deg = grp.add(&col.degree, &self.degree);
                let mut acc = vec![F::zero(); target.dim(&out_deg)];
                for (j, p) in col.entries.iter().enumerate() {
                    if p.is_zero() {
                        continue;
                    }
                    let m = target
                        .multiplication_map(p, &self.blocks[j].0)
                        .expect("relation entries are homogeneous");
                    for (a, v) in acc.iter_mut().zip(m.apply(self.image(b, j))) {
                        *a = a.clone() + v;
                    }
                }
                acc.iter().all(|x| x.is_zero())
            })
        })
    }
}

/// The linear system whose kernel is `Hom(M, N)_g`: one row block per
/// relation of `M`, one column block per generator.
pub fn hom_constraints<F: Field>(
    source: &Presentation<F>,
    target: &Presentation<F>,
    g: &Degree,
) -> (Matrix<F>, Vec<(Degree, usize, usize)>) {
    let grp = source.ring().group();
    let mut blocks = Vec::with_capacity(source.ngens());
    let mut off = 0;
    for d in source.gen_degrees() {
        let e = grp.add(d, g);
        let len = target.dim(&e);
        blocks.push((e, off, len));
        off += len;
    }
    let row_degs: Vec<Degree> = source.columns().iter().map(|c| grp.add(&c.degree, g)).collect();
    let row_dims: Vec<usize> = row_degs.iter().map(|e| target.dim(e)).collect();
    let mut m = Matrix::zeros(row_dims.iter().sum(), off);
    let mut row_off = 0;
    for (col, rows) in source.columns().iter().zip(&row_dims) {
        for (j, p) in col.entries.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let block = target
                .multiplication_map(p, &blocks[j].0)
                .expect("relation entries are homogeneous");
            m.add_block(row_off, blocks[j].1, &block);
        }
        row_off += rows;
    }
    (m, blocks)
}

/// `Hom(M, N)_g` as the kernel of [`hom_constraints`].
pub fn graded_hom<F: Field>(source: &Presentation<F>, target: &Presentation<F>, g: &Degree) -> GradedHomSpace<F> {
    let (m, blocks) = hom_constraints(source, target, g);
    GradedHomSpace {
        degree: g.clone(),
        blocks,
        basis: m.kernel(),
    }
}

/// Degrees of `N` that computing `Hom(M, N)_g` touches.
pub fn hom_support<F: Field>(source: &Presentation<F>, g: &Degree) -> Vec<Degree> {
    let grp = source.ring().group();
    let mut out: Vec<Degree> = source
        .gen_degrees()
        .iter()
        .chain(source.columns().iter().map(|c| &c.degree))
        .map(|d| grp.add(d, g))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// [`graded_hom`], refusing when a needed component of `N` lies outside
/// the window on which `N` is available.
pub fn graded_hom_windowed<F: Field>(
    source: &Presentation<F>,
    target: &Presentation<F>,
    g: &Degree,
    available: &DegreeWindow,
) -> Result<GradedHomSpace<F>> {
    let missing: Vec<Degree> = hom_support(source, g)
        .into_iter()
        .filter(|d| !available.contains(d))
        .collect();
    if !missing.is_empty() {
        return Err(Error::WindowInadequate { missing });
    }
    Ok(graded_hom(source, target, g))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::ringcore::{GradedPolynomialRing, Monomial, MonomialIdeal};
    use crate::Rational;

    fn kx() -> Arc<GradedPolynomialRing> {
        Arc::new(GradedPolynomialRing::standard(&["x"]))
    }

    fn quot(r: &Arc<GradedPolynomialRing>, e: u32) -> Presentation<Rational> {
        Presentation::quotient(r.clone(), &MonomialIdeal::new(1, [Monomial::new(vec![e])]))
    }

    #[test]
    fn free_source_reads_off_target() {
        let r = kx();
        let n = quot(&r, 2);
        let src = Presentation::ring_module(r.clone());
        let h = graded_hom(&src, &n, &r.group().free_degree(&[1]));
        assert_eq!(h.dim(), 1);
        assert!(h.verify(&src, &n));
    }

    #[test]
    fn residue_field_endomorphisms() {
        let r = kx();
        let k = quot(&r, 1);
        let h = graded_hom(&k, &k, &r.group().zero());
        assert_eq!(h.dim(), 1);
        assert!(h.verify(&k, &k));
    }

    #[test]
    fn no_maps_from_torsion_into_domain() {
        let r = kx();
        let k = quot(&r, 1);
        let free = Presentation::ring_module(r.clone());
        for g in -3..=3 {
            assert_eq!(graded_hom(&k, &free, &r.group().free_degree(&[g])).dim(), 0);
        }
    }

    #[test]
    fn window_refusal_names_degrees() {
        let r = kx();
        let k = quot(&r, 1);
        let w = DegreeWindow::cube(r.group(), 0, 0).unwrap();
        let err = graded_hom_windowed(&k, &k, &r.group().zero(), &w).unwrap_err();
        match err {
            Error::WindowInadequate { missing } => assert_eq!(missing, vec![r.group().free_degree(&[1])]),
            other => panic!("{other}"),
        }
    }
}
