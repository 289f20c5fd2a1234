use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::grading::DegreeWindow;
use crate::ringcore::{hilbert, GradedPolynomialRing, Monomial, MonomialIdeal, Presentation};
use crate::{Error, HilbertTable, Rational};

type Q = Rational;

fn mono(e: &[u32]) -> Monomial {
    Monomial::new(e.to_vec())
}

fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::new(n, gens.iter().map(|g| mono(g)))
}

fn kx() -> Arc<GradedPolynomialRing> {
    Arc::new(GradedPolynomialRing::standard(&["x"]))
}

fn fine2() -> Arc<GradedPolynomialRing> {
    Arc::new(GradedPolynomialRing::fine(&["x", "y"]))
}

/// Laurent monomial `x^a y^b` lies in `K[x^±, y^±]` but neither in
/// `K[x^±, y]` nor in `K[x, y^±]` iff both exponents are negative.
fn top_fine_oracle(a: i64, b: i64) -> usize {
    let in_x_localization = b >= 0;
    let in_y_localization = a >= 0;
    usize::from(!(in_x_localization || in_y_localization))
}

#[test]
fn torsion_examples() {
    let r = kx();
    let w = DegreeWindow::cube(r.group(), -2, 4).unwrap();
    let x = ideal(1, &[&[1]]);
    let free = Presentation::<Q>::ring_module(r.clone());
    assert!(torsion_submodule(&x, &free, &w, 8).unwrap().table.is_zero());
    let q = Presentation::<Q>::quotient(r.clone(), &ideal(1, &[&[2]]));
    let t = torsion_submodule(&x, &q, &w, 8).unwrap();
    assert_eq!(t.table, hilbert(&q, &w));

    let f = fine2();
    let m = ideal(2, &[&[1, 0], &[0, 1]]);
    let sum = Presentation::<Q>::ring_module(f.clone())
        .direct_sum(&Presentation::quotient(f.clone(), &m))
        .unwrap();
    let w = DegreeWindow::cube(f.group(), -1, 2).unwrap();
    let t = torsion_submodule(&m, &sum, &w, 8).unwrap();
    for g in w.iter() {
        let basis = &t.bases[g];
        let expect = usize::from(g.free_part() == [0, 0]);
        assert_eq!(basis.len(), expect, "degree {g}");
        let comp = sum.component(g);
        for v in basis {
            for ((j, _), c) in comp.basis_labels().iter().zip(v) {
                assert!(*j == 1 || num_traits::Zero::is_zero(c));
            }
            assert!(is_killed_by(&sum, &m, 1, g, v));
        }
    }
}

#[test]
fn cech_complex_terms() {
    let r = kx();
    let free = Presentation::<Q>::ring_module(r.clone());
    let c = cech_complex(&[mono(&[1])], &free);
    let g = r.group().free_degree(&[-1]);
    assert_eq!(c.term_dim(0, &g, DEFAULT_RAY_CAP).unwrap(), 0);
    assert_eq!(c.term_dim(1, &g, DEFAULT_RAY_CAP).unwrap(), 1);

    let f = fine2();
    let free = Presentation::<Q>::ring_module(f.clone());
    let c = cech_complex(&[mono(&[1, 0]), mono(&[0, 1])], &free);
    for d in [[0, 0], [2, 1]] {
        let g = f.group().free_degree(&d);
        let dims: Vec<usize> = (0..=2).map(|p| c.term_dim(p, &g, DEFAULT_RAY_CAP).unwrap()).collect();
        assert_eq!(dims, vec![1, 2, 1]);
    }
    let g = f.group().free_degree(&[-1, -1]);
    let dims: Vec<usize> = (0..=2).map(|p| c.term_dim(p, &g, DEFAULT_RAY_CAP).unwrap()).collect();
    assert_eq!(dims, vec![0, 0, 1]);

    let empty = cech_complex(&[], &free);
    assert_eq!(empty.length(), 0);
    let w = DegreeWindow::cube(f.group(), -1, 2).unwrap();
    assert_eq!(local_cohomology_cech(0, &[], &free, &w, 4).unwrap().table, hilbert(&free, &w));
    assert!(local_cohomology_cech(1, &[], &free, &w, 4).unwrap().table.is_zero());
}

#[test]
fn coarse_localization_is_unstabilized() {
    let std = Arc::new(GradedPolynomialRing::standard(&["x", "y"]));
    let free = Presentation::<Q>::ring_module(std.clone());
    let err = LocalizationModel::new(&free, &mono(&[1, 0]), &std.group().zero(), 5).unwrap_err();
    assert!(matches!(err, Error::Unstabilized { cap: 5, .. }));
    // x-torsion is invisible after localizing
    let r = kx();
    let q = Presentation::<Q>::quotient(r.clone(), &ideal(1, &[&[3]]));
    let l = LocalizationModel::new(&q, &mono(&[1]), &r.group().zero(), 8).unwrap();
    assert_eq!(l.dim, 0);
}

#[test]
fn laurent_first_cohomology() {
    let r = kx();
    let free = Presentation::<Q>::ring_module(r.clone());
    let x = ideal(1, &[&[1]]);
    let w = DegreeWindow::cube(r.group(), -4, 2).unwrap();
    let cech = local_cohomology_cech(1, x.gens(), &free, &w, 12).unwrap();
    let ext = local_cohomology_ext(1, &x, &free, &w, 12).unwrap();
    for (g, v) in cech.table.iter() {
        let d = g.free_part()[0];
        // (K[x]_x)_d is spanned by x^d; K[x]_d is nonzero iff d ≥ 0
        let oracle = 1 - usize::from(d >= 0);
        assert_eq!(v, oracle, "degree {d}");
    }
    assert_eq!(cech.table, ext.table);
    assert!(local_cohomology_cech(0, x.gens(), &free, &w, 12).unwrap().table.is_zero());
}

#[test]
fn fine_top_cohomology() {
    let f = fine2();
    let free = Presentation::<Q>::ring_module(f.clone());
    let m = ideal(2, &[&[1, 0], &[0, 1]]);
    let w = DegreeWindow::cube(f.group(), -3, 1).unwrap();
    let h2 = local_cohomology_cech(2, m.gens(), &free, &w, 12).unwrap();
    for (g, v) in h2.table.iter() {
        let (a, b) = (g.free_part()[0], g.free_part()[1]);
        assert_eq!(v, top_fine_oracle(a, b), "degree {g}");
    }
    assert_eq!(h2.table, local_cohomology_ext(2, &m, &free, &w, 12).unwrap().table);
    for i in [0, 1, 3] {
        assert!(local_cohomology_cech(i, m.gens(), &free, &w, 12).unwrap().table.is_zero());
        assert!(local_cohomology_ext(i, &m, &free, &w, 12).unwrap().table.is_zero());
    }
}

#[test]
fn ideal_transform_examples() {
    let r = kx();
    let free = Presentation::<Q>::ring_module(r.clone());
    let w = DegreeWindow::cube(r.group(), -3, 3).unwrap();
    let d0 = ideal_transform(0, &ideal(1, &[&[1]]), &free, &w, 8).unwrap();
    assert!(d0.table.iter().all(|(_, v)| v == 1));
    assert!(ideal_transform(2, &ideal(1, &[&[1]]), &free, &w, 8).unwrap().table.is_zero());

    let std = Arc::new(GradedPolynomialRing::standard(&["x", "y"]));
    let free = Presentation::<Q>::ring_module(std.clone());
    let w = DegreeWindow::cube(std.group(), -2, 3).unwrap();
    let m = ideal(2, &[&[1, 0], &[0, 1]]);
    assert_eq!(ideal_transform(0, &m, &free, &w, 8).unwrap().table, hilbert(&free, &w));
}

#[test]
fn ext_route_at_zero_is_torsion() {
    let std = Arc::new(GradedPolynomialRing::standard(&["x", "y"]));
    let a = ideal(2, &[&[1, 1]]);
    let m = Presentation::<Q>::quotient(std.clone(), &ideal(2, &[&[2, 2], &[3, 0]]));
    let w = DegreeWindow::cube(std.group(), 0, 5).unwrap();
    let ext = local_cohomology_ext(0, &a, &m, &w, 10).unwrap();
    let gamma = torsion_submodule(&a, &m, &w, 10).unwrap();
    assert_eq!(ext.table, gamma.table);
}

#[test]
fn four_term_sequence_scenarios() {
    let r = kx();
    let free = Presentation::<Q>::ring_module(r.clone());
    let w = DegreeWindow::cube(r.group(), -4, 2).unwrap();
    let rep = check_prop70_sequence(&ideal(1, &[&[1]]), &free, &w, 12).unwrap();
    assert!(rep.holds, "{:?}", rep.failures);
    for row in &rep.rows {
        assert_eq!(row.gamma, 0);
        assert_eq!(row.insertion_rank, row.module);
        assert_eq!(row.d0 - row.insertion_rank, row.h1);
        assert_eq!(row.h1, usize::from(row.degree.free_part()[0] <= -1));
    }

    let f = fine2();
    let free = Presentation::<Q>::ring_module(f.clone());
    let w = DegreeWindow::cube(f.group(), -3, 1).unwrap();
    let rep = check_prop70_sequence(&ideal(2, &[&[1, 0], &[0, 1]]), &free, &w, 12).unwrap();
    assert!(rep.holds, "{:?}", rep.failures);
    assert!(rep.rows.iter().all(|r| r.gamma == 0 && r.h1 == 0 && r.d0 == r.module));
    assert!(rep.higher.iter().filter(|h| h.i == 1).any(|h| h.d == 1));

    let tors = Presentation::<Q>::quotient(f.clone(), &ideal(2, &[&[2, 0], &[0, 1]]));
    let rep = check_prop70_sequence(&ideal(2, &[&[1, 0], &[0, 1]]), &tors, &w, 12).unwrap();
    assert!(rep.holds);
    assert!(rep.rows.iter().all(|r| r.gamma == r.module && r.d0 == 0 && r.h1 == 0));
}

#[test]
fn degenerate_ideals() {
    let std = Arc::new(GradedPolynomialRing::standard(&["x", "y"]));
    let m = Presentation::<Q>::quotient(std.clone(), &ideal(2, &[&[1, 2]]));
    let w = DegreeWindow::cube(std.group(), -1, 4).unwrap();
    let zero = MonomialIdeal::zero(2);
    assert_eq!(torsion_submodule(&zero, &m, &w, 4).unwrap().table, hilbert(&m, &w));
    assert!(local_cohomology_cech(1, zero.gens(), &m, &w, 4).unwrap().table.is_zero());
    assert!(ideal_transform(0, &zero, &m, &w, 4).unwrap().table.is_zero());
    assert!(check_prop70_sequence(&zero, &m, &w, 4).unwrap().holds);
    let unit = MonomialIdeal::unit(2);
    assert!(torsion_submodule(&unit, &m, &w, 4).unwrap().table.is_zero());
    assert_eq!(ideal_transform(0, &unit, &m, &w, 4).unwrap().table, hilbert(&m, &w));
    assert!(check_prop70_sequence(&unit, &m, &w, 4).unwrap().holds);
}

fn table_at_shift(t: &HilbertTable, g: &crate::Degree, grp: &crate::DegreeGroup) -> Vec<(crate::Degree, usize)> {
    t.iter().map(|(d, v)| (grp.add(g, d), v)).collect()
}

fn ideal_strategy() -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(prop::collection::vec(0u32..3, 2), 1..3)
        .prop_map(|g| MonomialIdeal::new(2, g.into_iter().map(Monomial::new)))
}

fn module_strategy() -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(prop::collection::vec(0u32..4, 2), 0..3)
        .prop_map(|g| MonomialIdeal::new(2, g.into_iter().map(Monomial::new)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn routes_agree(a in ideal_strategy(), b in module_strategy(), i in 0usize..3) {
        let f = fine2();
        let m = Presentation::<Q>::quotient(f.clone(), &b);
        let w = DegreeWindow::cube(f.group(), -2, 1).unwrap();
        let cech = local_cohomology_cech(i, a.gens(), &m, &w, 14).unwrap();
        let ext = local_cohomology_ext(i, &a, &m, &w, 14).unwrap();
        prop_assert_eq!(cech.table, ext.table);
    }

    #[test]
    fn h0_is_torsion(a in ideal_strategy(), b in module_strategy()) {
        let f = fine2();
        let m = Presentation::<Q>::quotient(f.clone(), &b);
        let w = DegreeWindow::cube(f.group(), -1, 3).unwrap();
        let h0 = local_cohomology_cech(0, a.gens(), &m, &w, 14).unwrap();
        prop_assert_eq!(h0.table, torsion_submodule(&a, &m, &w, 14).unwrap().table);
    }

    #[test]
    fn radical_invariance(b in module_strategy(), i in 0usize..3) {
        let f = fine2();
        let m = Presentation::<Q>::quotient(f.clone(), &b);
        let w = DegreeWindow::cube(f.group(), -2, 1).unwrap();
        let lhs = local_cohomology_cech(i, &[mono(&[1, 0]), mono(&[0, 1])], &m, &w, 14).unwrap();
        let rhs = local_cohomology_cech(i, &[mono(&[2, 0]), mono(&[0, 1])], &m, &w, 14).unwrap();
        prop_assert_eq!(lhs.table, rhs.table);
    }

    #[test]
    fn shift_equivariance(b in module_strategy(), s in -1i64..2, t in -1i64..2, i in 0usize..3) {
        let f = fine2();
        let grp = f.group().clone();
        let g = grp.free_degree(&[s, t]);
        let m = Presentation::<Q>::quotient(f.clone(), &b);
        let gens = [mono(&[1, 0]), mono(&[0, 1])];
        let w = DegreeWindow::cube(&grp, -2, 1).unwrap();
        let shifted = local_cohomology_cech(i, &gens, &m.shift(&g), &w, 14).unwrap();
        let base = local_cohomology_cech(i, &gens, &m, &w.translate(&grp.neg(&g)), 14).unwrap();
        let moved = table_at_shift(&shifted.table, &g, &grp);
        for (d, v) in moved {
            prop_assert_eq!(base.table.get(&d), Some(v));
        }
    }

    #[test]
    fn alternating_sum_vanishes(a in ideal_strategy(), b in module_strategy()) {
        let f = fine2();
        let m = Presentation::<Q>::quotient(f.clone(), &b);
        let w = DegreeWindow::cube(f.group(), -2, 1).unwrap();
        let rep = check_prop70_sequence(&a, &m, &w, 14).unwrap();
        prop_assert!(rep.holds, "{:?}", rep.failures);
        for r in &rep.rows {
            prop_assert_eq!(r.gamma + r.d0, r.module + r.h1);
        }
    }
}
