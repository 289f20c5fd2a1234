use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::grading::Degree;
use crate::scalar::Field;

use super::ring::{GradedPolynomialRing, Monomial};

/// A polynomial as a finite map monomial -> nonzero coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Default for Poly<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(F::one(), m)
    }

    pub fn term(c: F, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(c, m);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (F, Monomial)>) -> Self {
        let mut p = Self::zero();
        for (c, m) in terms {
            p.add_term(c, m);
        }
        p
    }

    pub fn add_term(&mut self, c: F, m: Monomial) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(F::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly<F>) -> Poly<F> {
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(c.clone(), m.clone());
        }
        p
    }

    pub fn neg(&self) -> Poly<F> {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Poly<F> {
        Poly::from_terms(self.terms.iter().map(|(m, v)| (v.clone() * c.clone(), m.clone())))
    }

    pub fn mul(&self, other: &Poly<F>) -> Poly<F> {
        let mut p = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                p.add_term(ca.clone() * cb.clone(), a.mul(b));
            }
        }
        p
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly<F> {
        Poly {
            terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect(),
        }
    }

    /// The common degree of all terms; `Ok(None)` for zero.
    pub fn homogeneous_degree(&self, ring: &GradedPolynomialRing) -> Result<Option<Degree>> {
        let mut deg: Option<Degree> = None;
        for m in self.terms.keys() {
            let d = ring.monomial_degree(m);
            match &deg {
                None => deg = Some(d),
                Some(e) if *e != d => {
                    return Err(Error::NotHomogeneous(format!(
                        "{} mixes degrees {} and {}",
                        self.format(ring),
                        e,
                        d
                    )))
                }
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn format(&self, ring: &GradedPolynomialRing) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let coeff = format!("{c}");
            let (neg, mag) = match coeff.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, coeff),
            };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = ring.format_monomial(m);
            let unit = F::one();
            let is_unit = *c == unit || *c == -unit;
            if is_unit {
                s.push_str(&mono);
            } else if m.is_one() {
                s.push_str(&mag);
            } else {
                s.push_str(&format!("{mag}*{mono}"));
            }
        }
        s
    }
}
