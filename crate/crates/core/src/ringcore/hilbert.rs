use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grading::{Degree, DegreeWindow};
use crate::scalar::Field;

use super::ideal::MonomialIdeal;
use super::module::Presentation;
use super::ring::GradedPolynomialRing;

/// Dimensions over the base field, defined exactly on a window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertTable {
    dims: BTreeMap<Degree, usize>,
}

impl HilbertTable {
    pub fn from_fn(window: &DegreeWindow, mut f: impl FnMut(&Degree) -> usize) -> Self {
        HilbertTable {
            dims: window.iter().map(|d| (d.clone(), f(d))).collect(),
        }
    }

    pub fn try_from_fn(window: &DegreeWindow, mut f: impl FnMut(&Degree) -> Result<usize>) -> Result<Self> {
        let mut dims = BTreeMap::new();
        for d in window.iter() {
            dims.insert(d.clone(), f(d)?);
        }
        Ok(HilbertTable { dims })
    }

    pub fn zeros(window: &DegreeWindow) -> Self {
        Self::from_fn(window, |_| 0)
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (Degree, usize)>) -> Self {
        HilbertTable {
            dims: entries.into_iter().collect(),
        }
    }

    pub fn get(&self, d: &Degree) -> Option<usize> {
        self.dims.get(d).copied()
    }

    /// Overwrites one entry; used to build golden-table mutations.
    pub fn set(&mut self, d: &Degree, v: usize) -> Result<()> {
        match self.dims.get_mut(d) {
            Some(x) => {
                *x = v;
                Ok(())
            }
            None => Err(Error::WindowInadequate { missing: vec![d.clone()] }),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Degree, usize)> {
        self.dims.iter().map(|(d, &v)| (d, v))
    }

    pub fn degrees(&self) -> impl Iterator<Item = &Degree> {
        self.dims.keys()
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.values().all(|&v| v == 0)
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    /// Degrees where the two tables differ (including degrees present in only one).
    pub fn differences(&self, other: &HilbertTable) -> Vec<Degree> {
        let mut out: Vec<Degree> = self
            .dims
            .iter()
            .filter(|(d, v)| other.dims.get(*d) != Some(*v))
            .map(|(d, _)| d.clone())
            .collect();
        out.extend(other.dims.keys().filter(|d| !self.dims.contains_key(*d)).cloned());
        out.sort();
        out
    }
}

impl fmt::Display for HilbertTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (d, v) in &self.dims {
            writeln!(f, "{d}\t{v}")?;
        }
        Ok(())
    }
}

/// Dimension table of `M` over the window.
pub fn hilbert<F: Field>(module: &Presentation<F>, window: &DegreeWindow) -> HilbertTable {
    HilbertTable::from_fn(window, |d| module.dim(d))
}

/// `dim a_g`, computed as the span of the generators shifted into degree `g`
/// (for a monomial ideal: the number of degree-`g` monomials it contains).
pub fn ideal_component_dim(ring: &GradedPolynomialRing, ideal: &MonomialIdeal, g: &Degree) -> usize {
    ring.monomials_of_degree(g).iter().filter(|m| ideal.contains(m)).count()
}
