use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::grading::{Degree, DegreeGroup};
use crate::Rational;

/// An exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }
}

/// `K[x_1..x_n]` over the rationals, graded by a [`DegreeGroup`], with a
/// rational functional `w` that is strictly positive on the free parts of
/// all variable degrees. The certificate makes every component finite.
#[derive(Clone)]
pub struct GradedPolynomialRing {
    group: DegreeGroup,
    names: Vec<String>,
    degrees: Vec<Degree>,
    certificate: Vec<Rational>,
    int_weights: Vec<i64>,
    var_weights: Vec<i64>,
    cache: Arc<RwLock<HashMap<Degree, Arc<Vec<Monomial>>>>>,
}

impl PartialEq for GradedPolynomialRing {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
            && self.names == other.names
            && self.degrees == other.degrees
            && self.certificate == other.certificate
    }
}

impl fmt::Debug for GradedPolynomialRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedPolynomialRing")
            .field("group", &self.group)
            .field("names", &self.names)
            .field("degrees", &self.degrees)
            .field("certificate", &self.certificate)
            .finish()
    }
}

impl GradedPolynomialRing {
    pub fn new(
        group: DegreeGroup,
        names: Vec<String>,
        degrees: Vec<Degree>,
        certificate: Vec<Rational>,
    ) -> Result<Self> {
        if names.len() != degrees.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} variable names but {} degrees",
                names.len(),
                degrees.len()
            )));
        }
        for d in &degrees {
            group.check(d)?;
        }
        if certificate.len() != group.free_rank() {
            return Err(Error::InvalidCertificate(format!(
                "certificate has length {}, free rank is {}",
                certificate.len(),
                group.free_rank()
            )));
        }
        let denom_lcm = certificate
            .iter()
            .fold(num_bigint::BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        let int_weights = certificate
            .iter()
            .map(|c| {
                (c * Rational::from_integer(denom_lcm.clone()))
                    .to_integer()
                    .to_i64()
                    .ok_or_else(|| Error::InvalidCertificate("certificate entries too large".into()))
            })
            .collect::<Result<Vec<i64>>>()?;
        let weight = |d: &Degree| -> i64 {
            d.free_part().iter().zip(&int_weights).map(|(a, b)| a * b).sum()
        };
        let var_weights: Vec<i64> = degrees.iter().map(weight).collect();
        if let Some(i) = var_weights.iter().position(|&w| w <= 0) {
            return Err(Error::InvalidCertificate(format!(
                "certificate is not strictly positive on deg {} = {}",
                names[i], degrees[i]
            )));
        }
        Ok(GradedPolynomialRing {
            group,
            names,
            degrees,
            certificate,
            int_weights,
            var_weights,
            cache: Arc::default(),
        })
    }

    /// Integer certificate shorthand.
    pub fn with_int_certificate(
        group: DegreeGroup,
        names: &[&str],
        degrees: Vec<Degree>,
        certificate: &[i64],
    ) -> Result<Self> {
        Self::new(
            group,
            names.iter().map(|s| s.to_string()).collect(),
            degrees,
            certificate.iter().map(|&c| Rational::from_integer(c.into())).collect(),
        )
    }

    /// `K[x_1..x_n]` with every variable in degree 1 of `Z`.
    pub fn standard(names: &[&str]) -> Self {
        let g = DegreeGroup::free(1);
        let degs = names.iter().map(|_| g.free_degree(&[1])).collect();
        Self::with_int_certificate(g, names, degs, &[1]).expect("standard grading is positive")
    }

    /// `K[x_1..x_n]` with `deg x_i = e_i` in `Z^n`.
    pub fn fine(names: &[&str]) -> Self {
        let n = names.len();
        let g = DegreeGroup::free(n);
        let degs = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                g.free_degree(&e)
            })
            .collect();
        Self::with_int_certificate(g, names, degs, &vec![1; n]).expect("fine grading is positive")
    }

    pub fn group(&self) -> &DegreeGroup {
        &self.group
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var_degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn certificate(&self) -> &[Rational] {
        &self.certificate
    }

    pub fn var(&self, i: usize) -> Monomial {
        Monomial::var(self.nvars(), i)
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self.nvars())
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Integer-scaled certificate value of a degree.
    pub fn weight(&self, d: &Degree) -> i64 {
        d.free_part().iter().zip(&self.int_weights).map(|(a, b)| a * b).sum()
    }

    pub fn monomial_weight(&self, m: &Monomial) -> i64 {
        m.exponents()
            .iter()
            .zip(&self.var_weights)
            .map(|(&e, w)| e as i64 * w)
            .sum()
    }

    pub fn monomial_degree(&self, m: &Monomial) -> Degree {
        let mut d = self.group.zero();
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                d = self.group.add(&d, &self.group.scale(e as i64, &self.degrees[i]));
            }
        }
        d
    }

    /// Every monomial of degree `g`, in descending lexicographic order.
    pub fn monomials_of_degree(&self, g: &Degree) -> Arc<Vec<Monomial>> {
        if let Some(hit) = self.cache.read().expect("monomial cache poisoned").get(g) {
            return Arc::clone(hit);
        }
        let mut out = Vec::new();
        let budget = self.weight(g);
        if budget >= 0 && self.group.contains(g) {
            let mut exps = vec![0u32; self.nvars()];
            self.enumerate(0, budget, &mut exps, g, &mut out);
        }
        let out = Arc::new(out);
        self.cache
            .write()
            .expect("monomial cache poisoned")
            .entry(g.clone())
            .or_insert(out)
            .clone()
    }

    fn enumerate(&self, i: usize, budget: i64, exps: &mut Vec<u32>, g: &Degree, out: &mut Vec<Monomial>) {
        if i == self.nvars() {
            if budget == 0 {
                let m = Monomial(exps.clone());
                if self.monomial_degree(&m) == *g {
                    out.push(m);
                }
            }
            return;
        }
        let w = self.var_weights[i];
        let max = budget / w;
        for e in (0..=max).rev() {
            exps[i] = e as u32;
            self.enumerate(i + 1, budget - e * w, exps, g, out);
        }
        exps[i] = 0;
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        m.exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.names[i].clone()
                } else {
                    format!("{}^{}", self.names[i], e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// The same variables regraded through `degree_map`, with a new
    /// certificate. Used by coarsening.
    pub fn regraded(
        &self,
        group: DegreeGroup,
        degree_map: impl Fn(&Degree) -> Result<Degree>,
        certificate: Vec<Rational>,
    ) -> Result<Self> {
        let degrees = self.degrees.iter().map(degree_map).collect::<Result<Vec<_>>>()?;
        Self::new(group, self.names.clone(), degrees, certificate)
    }
}

/// Checks that a rational vector is strictly positive on the given degrees.
pub fn certificate_is_positive(cert: &[Rational], degrees: &[Degree]) -> bool {
    degrees.iter().all(|d| {
        d.free_part().len() == cert.len() && {
            let s: Rational = d
                .free_part()
                .iter()
                .zip(cert)
                .map(|(&a, c)| c * Rational::from_integer(a.into()))
                .fold(Rational::zero(), |x, y| x + y);
            s.is_positive()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomials_standard() {
        let r = GradedPolynomialRing::standard(&["x", "y"]);
        let d2 = r.group().free_degree(&[2]);
        let ms: Vec<String> = r.monomials_of_degree(&d2).iter().map(|m| r.format_monomial(m)).collect();
        assert_eq!(ms, vec!["x^2", "x*y", "y^2"]);
        assert!(r.monomials_of_degree(&r.group().free_degree(&[-1])).is_empty());
    }

    #[test]
    fn monomials_fine() {
        let r = GradedPolynomialRing::fine(&["x", "y"]);
        let ms = r.monomials_of_degree(&r.group().free_degree(&[2, 1]));
        assert_eq!(ms.len(), 1);
        assert_eq!(r.format_monomial(&ms[0]), "x^2*y");
    }

    #[test]
    fn monomials_with_torsion() {
        let g = DegreeGroup::new(1, vec![2]).unwrap();
        let dx = g.degree(vec![1], vec![1]).unwrap();
        let dy = g.degree(vec![1], vec![0]).unwrap();
        let r = GradedPolynomialRing::with_int_certificate(g.clone(), &["x", "y"], vec![dx, dy], &[1]).unwrap();
        // degree (3;1): x^i y^j with i+j=3, i odd
        let ms = r.monomials_of_degree(&g.degree(vec![3], vec![1]).unwrap());
        let names: Vec<String> = ms.iter().map(|m| r.format_monomial(m)).collect();
        assert_eq!(names, vec!["x^3", "x*y^2"]);
    }

    #[test]
    fn rejects_bad_certificate() {
        let g = DegreeGroup::free(2);
        let degs = vec![g.free_degree(&[1, 0]), g.free_degree(&[0, 1])];
        let err = GradedPolynomialRing::with_int_certificate(g, &["x", "y"], degs, &[0, 0]);
        assert!(matches!(err, Err(Error::InvalidCertificate(_))));
    }

    #[test]
    fn rational_certificate() {
        let g = DegreeGroup::free(1);
        let degs = vec![g.free_degree(&[2]), g.free_degree(&[3])];
        let half = Rational::new(1.into(), 2.into());
        let r = GradedPolynomialRing::new(g.clone(), vec!["x".into(), "y".into()], degs, vec![half]).unwrap();
        // x^3, y^2 in degree 6
        assert_eq!(r.monomials_of_degree(&g.free_degree(&[6])).len(), 2);
    }
}
