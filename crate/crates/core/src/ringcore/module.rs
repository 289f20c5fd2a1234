use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::grading::Degree;
use crate::linalg::{Matrix, RowEchelon};
use crate::scalar::Field;

use super::ideal::MonomialIdeal;
use super::poly::Poly;
use super::ring::{GradedPolynomialRing, Monomial};

/// One relation: a homogeneous column of the presentation matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationColumn<F> {
    pub degree: Degree,
    pub entries: Vec<Poly<F>>,
}

type ComponentCache<F> = Arc<RwLock<HashMap<Degree, Arc<ComponentBasis<F>>>>>;
type ProductCache<F> = Arc<RwLock<HashMap<(Monomial, Degree), Arc<Matrix<F>>>>>;

/// The cokernel of a homogeneous matrix `⊕_k R(-c_k) -> ⊕_j R(-d_j)`.
///
/// Generator `j` sits in degree `d_j`. Entry `(j, k)` is zero or homogeneous
/// of degree `c_k - d_j`. With this convention `M(g)_d = M_{g+d}`.
///
/// Component bases and monomial multiplication matrices are memoized; the
/// caches are write-once per key, so a presentation can be shared freely
/// between threads.
#[derive(Clone)]
pub struct Presentation<F> {
    ring: Arc<GradedPolynomialRing>,
    gen_degrees: Vec<Degree>,
    columns: Vec<RelationColumn<F>>,
    components: ComponentCache<F>,
    products: ProductCache<F>,
}

impl<F: Field> PartialEq for Presentation<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.gen_degrees == other.gen_degrees && self.columns == other.columns
    }
}

impl<F: Field> fmt::Debug for Presentation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Presentation")
            .field("gen_degrees", &self.gen_degrees)
            .field("columns", &self.columns)
            .finish()
    }
}

impl<F: Field> Presentation<F> {
    /// Builds a presentation from relation columns, inferring each column's
    /// degree from its entries. All-zero columns are dropped.
    pub fn new(
        ring: Arc<GradedPolynomialRing>,
        gen_degrees: Vec<Degree>,
        columns: Vec<Vec<Poly<F>>>,
    ) -> Result<Self> {
        let mut cols = Vec::new();
        for (k, entries) in columns.into_iter().enumerate() {
            if entries.len() != gen_degrees.len() {
                return Err(Error::DimensionMismatch(format!(
                    "relation {k} has {} entries for {} generators",
                    entries.len(),
                    gen_degrees.len()
                )));
            }
            let mut degree: Option<Degree> = None;
            for (j, e) in entries.iter().enumerate() {
                let d = e
                    .homogeneous_degree(&ring)
                    .map_err(|err| Error::NotHomogeneous(format!("relation {k}, entry {j}: {err}")))?;
                if let Some(d) = d {
                    let c = ring.group().add(&d, &gen_degrees[j]);
                    match &degree {
                        None => degree = Some(c),
                        Some(prev) if *prev != c => {
                            return Err(Error::NotHomogeneous(format!(
                                "relation {k}, entry {j} ({}) has column degree {c}, expected {prev}",
                                e.format(&ring)
                            )))
                        }
                        _ => {}
                    }
                }
            }
            if let Some(degree) = degree {
                cols.push(RelationColumn { degree, entries });
            }
        }
        Self::with_columns(ring, gen_degrees, cols)
    }

    /// Builds a presentation from columns with explicit degrees, verifying homogeneity.
    pub fn with_columns(
        ring: Arc<GradedPolynomialRing>,
        gen_degrees: Vec<Degree>,
        columns: Vec<RelationColumn<F>>,
    ) -> Result<Self> {
        for d in &gen_degrees {
            ring.group().check(d)?;
        }
        for (k, col) in columns.iter().enumerate() {
            ring.group().check(&col.degree)?;
            if col.entries.len() != gen_degrees.len() {
                return Err(Error::DimensionMismatch(format!(
                    "relation {k} has {} entries for {} generators",
                    col.entries.len(),
                    gen_degrees.len()
                )));
            }
            for (j, e) in col.entries.iter().enumerate() {
                if let Some(d) = e.homogeneous_degree(&ring)? {
                    let expect = ring.group().sub(&col.degree, &gen_degrees[j]);
                    if d != expect {
                        return Err(Error::NotHomogeneous(format!(
                            "relation {k}, entry {j} ({}) has degree {d}, expected {expect}",
                            e.format(&ring)
                        )));
                    }
                }
            }
        }
        Ok(Presentation {
            ring,
            gen_degrees,
            columns,
            components: Arc::default(),
            products: Arc::default(),
        })
    }

    pub fn free(ring: Arc<GradedPolynomialRing>, gen_degrees: Vec<Degree>) -> Result<Self> {
        Self::with_columns(ring, gen_degrees, Vec::new())
    }

    /// The ring as a module over itself.
    pub fn ring_module(ring: Arc<GradedPolynomialRing>) -> Self {
        let zero = ring.group().zero();
        Self::free(ring, vec![zero]).expect("zero degree is valid")
    }

    /// `R/a`: one generator in degree 0, one relation per minimal generator of `a`.
    pub fn quotient(ring: Arc<GradedPolynomialRing>, ideal: &MonomialIdeal) -> Self {
        let cols = ideal
            .gens()
            .iter()
            .map(|m| RelationColumn {
                degree: ring.monomial_degree(m),
                entries: vec![Poly::monomial(m.clone())],
            })
            .collect();
        let zero = ring.group().zero();
        Self::with_columns(ring, vec![zero], cols).expect("monomial relations are homogeneous")
    }

    pub fn ring(&self) -> &Arc<GradedPolynomialRing> {
        &self.ring
    }

    pub fn gen_degrees(&self) -> &[Degree] {
        &self.gen_degrees
    }

    pub fn columns(&self) -> &[RelationColumn<F>] {
        &self.columns
    }

    pub fn ngens(&self) -> usize {
        self.gen_degrees.len()
    }

    /// `M(g)`, with `M(g)_d = M_{g+d}`.
    pub fn shift(&self, g: &Degree) -> Self {
        let grp = self.ring.group();
        let gens = self.gen_degrees.iter().map(|d| grp.sub(d, g)).collect();
        let cols = self
            .columns
            .iter()
            .map(|c| RelationColumn {
                degree: grp.sub(&c.degree, g),
                entries: c.entries.clone(),
            })
            .collect();
        Self::with_columns(Arc::clone(&self.ring), gens, cols).expect("shift preserves homogeneity")
    }

    pub fn direct_sum(&self, other: &Presentation<F>) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::InvalidArgument("direct sum over different rings".into()));
        }
        let (a, b) = (self.ngens(), other.ngens());
        let mut gens = self.gen_degrees.clone();
        gens.extend(other.gen_degrees.iter().cloned());
        let mut cols = Vec::new();
        for c in &self.columns {
            let mut entries = c.entries.clone();
            entries.extend((0..b).map(|_| Poly::zero()));
            cols.push(RelationColumn { degree: c.degree.clone(), entries });
        }
        for c in &other.columns {
            let mut entries: Vec<Poly<F>> = (0..a).map(|_| Poly::zero()).collect();
            entries.extend(c.entries.iter().cloned());
            cols.push(RelationColumn { degree: c.degree.clone(), entries });
        }
        Self::with_columns(Arc::clone(&self.ring), gens, cols)
    }

    /// Same generators and relations over a regraded ring.
    pub fn regraded(
        &self,
        ring: Arc<GradedPolynomialRing>,
        degree_map: impl Fn(&Degree) -> Result<Degree>,
    ) -> Result<Self> {
        let gens = self.gen_degrees.iter().map(&degree_map).collect::<Result<Vec<_>>>()?;
        let cols = self
            .columns
            .iter()
            .map(|c| {
                Ok(RelationColumn {
                    degree: degree_map(&c.degree)?,
                    entries: c.entries.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::with_columns(ring, gens, cols)
    }

    /// The smallest certificate weight of a generator; the module vanishes
    /// in every degree of smaller weight. `None` for the zero-generator module.
    pub fn min_generator_weight(&self) -> Option<i64> {
        self.gen_degrees.iter().map(|d| self.ring.weight(d)).min()
    }

    /// Basis of `M_g` as a quotient of the free component.
    pub fn component(&self, g: &Degree) -> Arc<ComponentBasis<F>> {
        if let Some(hit) = self.components.read().expect("component cache poisoned").get(g) {
            return Arc::clone(hit);
        }
        let basis = Arc::new(self.compute_component(g));
        self.components
            .write()
            .expect("component cache poisoned")
            .entry(g.clone())
            .or_insert(basis)
            .clone()
    }

    fn compute_component(&self, g: &Degree) -> ComponentBasis<F> {
        let grp = self.ring.group();
        let mut labels = Vec::new();
        for (j, d) in self.gen_degrees.iter().enumerate() {
            for m in self.ring.monomials_of_degree(&grp.sub(g, d)).iter() {
                labels.push((j, m.clone()));
            }
        }
        let index: HashMap<(usize, Monomial), usize> =
            labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let mut relations = RowEchelon::new(labels.len());
        for col in &self.columns {
            let shifts = self.ring.monomials_of_degree(&grp.sub(g, &col.degree));
            for u in shifts.iter() {
                let mut v = vec![F::zero(); labels.len()];
                for (j, e) in col.entries.iter().enumerate() {
                    for (t, c) in e.terms() {
                        let i = index[&(j, t.mul(u))];
                        v[i] = v[i].clone() + c.clone();
                    }
                }
                relations.insert(v);
            }
        }
        let basis = relations.free_columns();
        ComponentBasis {
            degree: g.clone(),
            labels,
            index,
            relations,
            basis,
        }
    }

    pub fn dim(&self, g: &Degree) -> usize {
        self.component(g).dim()
    }

    /// Matrix of multiplication by the homogeneous `f`, `M_g -> M_{g + deg f}`.
    pub fn multiplication_map(&self, f: &Poly<F>, g: &Degree) -> Result<Matrix<F>> {
        let Some(e) = f.homogeneous_degree(&self.ring)? else {
            return Err(Error::InvalidArgument(
                "multiplication by zero has no target degree".into(),
            ));
        };
        let target_deg = self.ring.group().add(g, &e);
        let src = self.component(g);
        let tgt = self.component(&target_deg);
        let mut m = Matrix::zeros(tgt.dim(), src.dim());
        for (col, &amb) in src.basis.iter().enumerate() {
            let (j, mono) = &src.labels[amb];
            let mut v = vec![F::zero(); tgt.ambient_dim()];
            for (t, c) in f.terms() {
                let i = tgt.index[&(*j, mono.mul(t))];
                v[i] = v[i].clone() + c.clone();
            }
            for (row, x) in tgt.quotient_coords(v).into_iter().enumerate() {
                if !x.is_zero() {
                    m.set(row, col, x);
                }
            }
        }
        Ok(m)
    }

    /// Cached multiplication by a monomial, `M_g -> M_{g + deg m}`.
    pub fn monomial_map(&self, m: &Monomial, g: &Degree) -> Arc<Matrix<F>> {
        let key = (m.clone(), g.clone());
        if let Some(hit) = self.products.read().expect("product cache poisoned").get(&key) {
            return Arc::clone(hit);
        }
        let mat = Arc::new(
            self.multiplication_map(&Poly::monomial(m.clone()), g)
                .expect("monomials are homogeneous"),
        );
        self.products
            .write()
            .expect("product cache poisoned")
            .entry(key)
            .or_insert(mat)
            .clone()
    }

    /// Degree of a monomial shift in the underlying ring.
    pub fn monomial_degree(&self, m: &Monomial) -> Degree {
        self.ring.monomial_degree(m)
    }
}

/// A basis of `M_g`: the free component `F_g` modulo relations.
///
/// The basis of the quotient consists of the ambient coordinates that carry
/// no pivot in the reduced relation space; reducing a vector modulo the
/// relations and reading off those coordinates gives a normal form.
#[derive(Clone, Debug)]
pub struct ComponentBasis<F> {
    degree: Degree,
    labels: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
    relations: RowEchelon<F>,
    basis: Vec<usize>,
}

impl<F: Field> ComponentBasis<F> {
    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.labels.len()
    }

    /// `(generator index, monomial)` for each ambient coordinate.
    pub fn labels(&self) -> &[(usize, Monomial)] {
        &self.labels
    }

    pub fn ambient_index(&self, label: &(usize, Monomial)) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Ambient coordinates forming the quotient basis.
    pub fn basis_positions(&self) -> &[usize] {
        &self.basis
    }

    pub fn basis_labels(&self) -> Vec<(usize, Monomial)> {
        self.basis.iter().map(|&i| self.labels[i].clone()).collect()
    }

    pub fn relations(&self) -> &RowEchelon<F> {
        &self.relations
    }

    pub fn quotient_coords(&self, mut ambient: Vec<F>) -> Vec<F> {
        self.relations.reduce(&mut ambient);
        self.basis.iter().map(|&i| ambient[i].clone()).collect()
    }

    /// A representative in the free component.
    pub fn lift(&self, coords: &[F]) -> Vec<F> {
        let mut v = vec![F::zero(); self.ambient_dim()];
        for (&i, c) in self.basis.iter().zip(coords) {
            v[i] = c.clone();
        }
        v
    }
}
