use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::grading::{DegreeGroup, DegreeWindow};
use crate::Rational;

fn mono(e: &[u32]) -> Monomial {
    Monomial::new(e.to_vec())
}

fn kx() -> Arc<GradedPolynomialRing> {
    Arc::new(GradedPolynomialRing::standard(&["x"]))
}

fn z1(r: &GradedPolynomialRing, d: i64) -> crate::Degree {
    r.group().free_degree(&[d])
}

#[test]
fn component_dimensions_over_kx() {
    let r = kx();
    let free = Presentation::<Rational>::ring_module(r.clone());
    assert_eq!(free.dim(&z1(&r, 3)), 1);
    let q = Presentation::<Rational>::quotient(r.clone(), &MonomialIdeal::new(1, [mono(&[2])]));
    assert_eq!(q.dim(&z1(&r, 2)), 0);
    // R(-3) has its generator in degree 3
    let shifted = Presentation::<Rational>::free(r.clone(), vec![z1(&r, 3)]).unwrap();
    assert_eq!(shifted.dim(&z1(&r, 3)), 1);
    assert_eq!(shifted.dim(&z1(&r, 2)), 0);
    assert_eq!(free.shift(&z1(&r, -3)), shifted);
}

#[test]
fn hilbert_examples() {
    let fine = Arc::new(GradedPolynomialRing::fine(&["x", "y"]));
    let w = DegreeWindow::cube(fine.group(), 0, 1).unwrap();
    let r = Presentation::<Rational>::ring_module(fine.clone());
    assert!(hilbert(&r, &w).iter().all(|(_, v)| v == 1));
    let m = MonomialIdeal::new(2, [mono(&[1, 0]), mono(&[0, 1])]);
    let k = Presentation::<Rational>::quotient(fine.clone(), &m);
    for (d, v) in hilbert(&k, &w).iter() {
        assert_eq!(v, usize::from(d.free_part() == [0, 0]));
    }

    let std = Arc::new(GradedPolynomialRing::standard(&["x", "y"]));
    let a = MonomialIdeal::new(2, [mono(&[2, 0]), mono(&[1, 1])]);
    let q = Presentation::<Rational>::quotient(std.clone(), &a);
    let w = DegreeWindow::cube(std.group(), 0, 3).unwrap();
    let dims: Vec<usize> = hilbert(&q, &w).iter().map(|(_, v)| v).collect();
    // oracle: monomials of degree d avoiding x^2 and xy
    let oracle: Vec<usize> = (0..=3u32)
        .map(|d| (0..=d).filter(|&i| !(i >= 2 || (i >= 1 && d - i >= 1))).count())
        .collect();
    assert_eq!(oracle, vec![1, 2, 1, 1]);
    assert_eq!(dims, oracle);
}

#[test]
fn multiplication_map_examples() {
    let r = kx();
    let x = Poly::<Rational>::monomial(mono(&[1]));
    let m = Presentation::ring_module(r.clone());
    let mat = m.multiplication_map(&x, &z1(&r, 0)).unwrap();
    assert_eq!((mat.rows(), mat.cols()), (1, 1));
    assert_eq!(*mat.get(0, 0), Rational::from_integer(1.into()));

    let q = Presentation::quotient(r.clone(), &MonomialIdeal::new(1, [mono(&[2])]));
    assert!(q.multiplication_map(&x, &z1(&r, 1)).unwrap().is_zero());

    let std = Arc::new(GradedPolynomialRing::standard(&["x", "y"]));
    let x = Poly::<Rational>::monomial(mono(&[1, 0]));
    let m = Presentation::ring_module(std.clone());
    let mat = m.multiplication_map(&x, &std.group().free_degree(&[1])).unwrap();
    // source {x, y}, target {x^2, xy, y^2}
    assert_eq!((mat.cols(), mat.rows()), (2, 3));
    assert_eq!(mat.rank(), 2);
}

#[test]
fn multiplication_rejects_mixed_degree() {
    let std = Arc::new(GradedPolynomialRing::standard(&["x", "y"]));
    let f = Poly::<Rational>::from_terms([
        (Rational::from_integer(1.into()), mono(&[1, 0])),
        (Rational::from_integer(1.into()), mono(&[0, 2])),
    ]);
    let m = Presentation::ring_module(std.clone());
    assert!(matches!(
        m.multiplication_map(&f, &std.group().free_degree(&[0])),
        Err(crate::Error::NotHomogeneous(_))
    ));
}

#[test]
fn quotient_presentations() {
    let fine = Arc::new(GradedPolynomialRing::fine(&["x", "y"]));
    let m = MonomialIdeal::new(2, [mono(&[1, 0]), mono(&[0, 1])]);
    let q = Presentation::<Rational>::quotient(fine.clone(), &m);
    assert_eq!(q.gen_degrees(), &[fine.group().zero()]);
    let cols: Vec<_> = q.columns().iter().map(|c| c.degree.clone()).collect();
    assert_eq!(cols, vec![fine.group().free_degree(&[1, 0]), fine.group().free_degree(&[0, 1])]);

    let unit = Presentation::<Rational>::quotient(fine.clone(), &MonomialIdeal::unit(2));
    let w = DegreeWindow::cube(fine.group(), -1, 2).unwrap();
    assert!(hilbert(&unit, &w).is_zero());

    let r = kx();
    let q = Presentation::<Rational>::quotient(r.clone(), &MonomialIdeal::new(1, [mono(&[2])]));
    let w = DegreeWindow::cube(r.group(), 0, 3).unwrap();
    let dims: Vec<usize> = hilbert(&q, &w).iter().map(|(_, v)| v).collect();
    assert_eq!(dims, vec![1, 1, 0, 0]);
}

#[test]
fn presentation_rejects_mixed_column() {
    let std = Arc::new(GradedPolynomialRing::standard(&["x", "y"]));
    let z = std.group().zero();
    let one = Rational::from_integer(1.into());
    // column (x^2 ; y) against generators in degrees 0, 0
    let res = Presentation::new(
        std.clone(),
        vec![z.clone(), z],
        vec![vec![Poly::term(one.clone(), mono(&[2, 0])), Poly::term(one, mono(&[0, 1]))]],
    );
    let msg = res.unwrap_err().to_string();
    assert!(msg.contains("relation 0, entry 1"), "{msg}");
}

#[test]
fn non_monomial_relations() {
    // K[x,y]/(x - y) standard graded is K[t]: dimension 1 everywhere
    let std = Arc::new(GradedPolynomialRing::standard(&["x", "y"]));
    let one = Rational::from_integer(1.into());
    let f = Poly::from_terms([(one.clone(), mono(&[1, 0])), (-one, mono(&[0, 1]))]);
    let m = Presentation::new(std.clone(), vec![std.group().zero()], vec![vec![f]]).unwrap();
    let w = DegreeWindow::cube(std.group(), 0, 4).unwrap();
    assert!(hilbert(&m, &w).iter().all(|(_, v)| v == 1));
}

#[test]
fn torsion_grading_components() {
    let g = DegreeGroup::new(1, vec![2]).unwrap();
    let dx = g.degree(vec![1], vec![1]).unwrap();
    let dy = g.degree(vec![1], vec![0]).unwrap();
    let r = Arc::new(GradedPolynomialRing::with_int_certificate(g.clone(), &["x", "y"], vec![dx, dy], &[1]).unwrap());
    let m = Presentation::<Rational>::ring_module(r.clone());
    let w = DegreeWindow::cube(&g, 0, 4).unwrap();
    let t = hilbert(&m, &w);
    // the two torsion classes of degree d split the d+1 monomials
    for d in 0..=4i64 {
        let a = t.get(&g.degree(vec![d], vec![0]).unwrap()).unwrap();
        let b = t.get(&g.degree(vec![d], vec![1]).unwrap()).unwrap();
        assert_eq!(a + b, d as usize + 1);
    }
}

#[test]
fn generic_over_fields() {
    let std = Arc::new(GradedPolynomialRing::standard(&["x", "y"]));
    let a = MonomialIdeal::new(2, [mono(&[2, 0]), mono(&[1, 1])]);
    let w = DegreeWindow::cube(std.group(), 0, 5).unwrap();
    let exact = hilbert(&Presentation::<Rational>::quotient(std.clone(), &a), &w);
    let small = hilbert(&Presentation::<num_rational::Rational64>::quotient(std.clone(), &a), &w);
    let float = hilbert(&Presentation::<f64>::quotient(std.clone(), &a), &w);
    assert_eq!(exact, small);
    assert_eq!(exact, float);
}

fn small_ideal() -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(prop::collection::vec(0u32..3, 2), 0..4)
        .prop_map(|gens| MonomialIdeal::new(2, gens.into_iter().map(Monomial::new)))
}

proptest! {
    #[test]
    fn quotient_plus_ideal_is_ring(a in small_ideal(), lo in -1i64..1, hi in 0i64..4) {
        let fine = Arc::new(GradedPolynomialRing::fine(&["x", "y"]));
        let w = DegreeWindow::cube(fine.group(), lo, hi).unwrap();
        let q = hilbert(&Presentation::<Rational>::quotient(fine.clone(), &a), &w);
        let r = hilbert(&Presentation::<Rational>::ring_module(fine.clone()), &w);
        for d in w.iter() {
            let ideal = ideal_component_dim(&fine, &a, d);
            prop_assert_eq!(q.get(d).unwrap() + ideal, r.get(d).unwrap());
        }
    }

    #[test]
    fn shift_coherence(a in small_ideal(), s in -2i64..3) {
        let std = Arc::new(GradedPolynomialRing::standard(&["x", "y"]));
        let m = Presentation::<Rational>::quotient(std.clone(), &a);
        let g = std.group().free_degree(&[s]);
        let shifted = m.shift(&g);
        for d in -3i64..5 {
            let d = std.group().free_degree(&[d]);
            prop_assert_eq!(shifted.dim(&d), m.dim(&std.group().add(&g, &d)));
        }
    }
}
