//! The monoid algebra `K[Q≥0]` graded by `Q`, its idempotent ideal
//! `m = ⟨e_α | α > 0⟩`, and a family of homomorphisms `f_K` out of `m` whose
//! graded support grows without bound.
//!
//! Every claim here is finitely checkable for a given `K`; nothing is said
//! about `K = ∞`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::Rational;

/// Exponent in `Q≥0`.
pub type Exponent = Rational;

fn q(n: i64, d: i64) -> Exponent {
    Exponent::new(n.into(), d.into())
}

/// A finite sum `Σ c_α e_α` with `α ≥ 0`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidAlgebraElement<F> {
    terms: BTreeMap<Exponent, F>,
}

impl<F: Field> MonoidAlgebraElement<F> {
    pub fn zero() -> Self {
        MonoidAlgebraElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::basis(Exponent::zero()).expect("0 is a valid exponent")
    }

    /// `e_α`.
    pub fn basis(alpha: Exponent) -> Result<Self> {
        Self::term(F::one(), alpha)
    }

    /// `c · e_α`.
    pub fn term(c: F, alpha: Exponent) -> Result<Self> {
        Self::from_terms([(alpha, c)])
    }

    /// Sums repeated exponents and drops zeros. Rejects negative exponents.
    pub fn from_terms(terms: impl IntoIterator<Item = (Exponent, F)>) -> Result<Self> {
        let mut out = Self::zero();
        for (a, c) in terms {
            if a.is_negative() {
                return Err(Error::InvalidArgument(format!("exponent {a} is negative")));
            }
            out.add_term(a, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, a: Exponent, c: F) {
        match self.terms.entry(a) {
            Entry::Occupied(mut o) => {
                let v = o.get().clone() + c;
                if v.is_zero() {
                    o.remove();
                } else {
                    o.insert(v);
                }
            }
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &F)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, alpha: &Exponent) -> F {
        self.terms.get(alpha).cloned().unwrap_or_else(F::zero)
    }

    pub fn exponents(&self) -> impl Iterator<Item = &Exponent> {
        self.terms.keys()
    }

    pub fn min_exponent(&self) -> Option<&Exponent> {
        self.terms.keys().next()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(α)` when the element is `c · e_α`.
    pub fn homogeneous_degree(&self) -> Option<&Exponent> {
        (self.terms.len() == 1).then(|| self.terms.keys().next().unwrap())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MonoidAlgebraElement {
            terms: self.terms.iter().map(|(a, v)| (a.clone(), v.clone() * c.clone())).collect(),
        }
    }

    /// Keeps only the terms whose exponent satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Exponent) -> bool) -> Self {
        MonoidAlgebraElement {
            terms: self.terms.iter().filter(|(a, _)| keep(a)).map(|(a, c)| (a.clone(), c.clone())).collect(),
        }
    }
}

impl<F: Field> fmt::Display for MonoidAlgebraElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (a, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "e_{{{a}}}")?;
            } else {
                write!(f, "({c})e_{{{a}}}")?;
            }
        }
        Ok(())
    }
}

/// Convolution product, `e_α · e_β = e_{α+β}`.
pub fn monoid_multiply<F: Field>(u: &MonoidAlgebraElement<F>, v: &MonoidAlgebraElement<F>) -> MonoidAlgebraElement<F> {
    let mut out = MonoidAlgebraElement::zero();
    for (a, c) in &u.terms {
        for (b, d) in &v.terms {
            out.add_term(a + b, c.clone() * d.clone());
        }
    }
    out
}

/// `a_τ = ⟨e_α | α ≥ τ⟩` or `m = ⟨e_α | α > 0⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TailIdeal {
    AtLeast(Exponent),
    Positive,
}

impl TailIdeal {
    pub fn admits(&self, alpha: &Exponent) -> bool {
        match self {
            TailIdeal::AtLeast(t) => alpha >= t,
            TailIdeal::Positive => alpha.is_positive(),
        }
    }
}

impl fmt::Display for TailIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TailIdeal::AtLeast(t) => write!(f, "a_{{{t}}}"),
            TailIdeal::Positive => f.write_str("m"),
        }
    }
}

/// Whether `u` lies in the tail ideal: every exponent of `u` meets the threshold.
pub fn tail_membership<F: Field>(ideal: &TailIdeal, u: &MonoidAlgebraElement<F>) -> bool {
    u.exponents().all(|a| ideal.admits(a))
}

/// `e_α = e_{α/2} · e_{α/2}` with `e_{α/2} ∈ m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdempotencyCertificate {
    pub alpha: String,
    pub half: String,
    pub factor_in_m: bool,
    pub product_matches: bool,
}

impl IdempotencyCertificate {
    pub fn holds(&self) -> bool {
        self.factor_in_m && self.product_matches
    }
}

/// Writes `e_α` (α > 0) as a product of two elements of `m` and checks it.
pub fn idempotency_witness<F: Field>(alpha: &Exponent) -> Result<IdempotencyCertificate> {
    if !alpha.is_positive() {
        return Err(Error::InvalidArgument(format!("α = {alpha} must be positive")));
    }
    let half = alpha / Exponent::from_integer(2.into());
    let factor = MonoidAlgebraElement::<F>::basis(half.clone())?;
    let product = monoid_multiply(&factor, &factor);
    Ok(IdempotencyCertificate {
        alpha: alpha.to_string(),
        half: half.to_string(),
        factor_in_m: tail_membership(&TailIdeal::Positive, &factor),
        product_matches: product == MonoidAlgebraElement::basis(alpha.clone())?,
    })
}

/// `e_{μ/2} ∉ ⟨S⟩`, where `μ` is the least exponent occurring in `S`.
///
/// Every element of `⟨S⟩` is `Σ r_i s_i` with `r_i` supported on `α ≥ 0`, so
/// `⟨S⟩ ⊆ a_μ`; the certificate records that each `s ∈ S` lies in `a_μ` and
/// that `e_{μ/2}` does not.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NonFiniteGenerationCertificate {
    pub generators: Vec<String>,
    pub min_exponent: String,
    pub witness: String,
    pub generators_in_tail: bool,
    pub witness_in_m: bool,
    pub witness_outside_tail: bool,
}

impl NonFiniteGenerationCertificate {
    pub fn holds(&self) -> bool {
        self.generators_in_tail && self.witness_in_m && self.witness_outside_tail
    }
}

/// Returns `e_{μ/2}` and its certificate. Rejects an empty `S`, a zero
/// element, or an element outside `m`.
pub fn non_finite_generation_witness<F: Field>(
    gens: &[MonoidAlgebraElement<F>],
) -> Result<(MonoidAlgebraElement<F>, NonFiniteGenerationCertificate)> {
    if gens.is_empty() {
        return Err(Error::InvalidArgument("generator set is empty".into()));
    }
    if let Some(s) = gens.iter().find(|s| s.is_zero() || !tail_membership(&TailIdeal::Positive, *s)) {
        return Err(Error::InvalidArgument(format!("{s} is not a nonzero element of m")));
    }
    let mu = gens.iter().filter_map(|s| s.min_exponent()).min().expect("nonzero generators").clone();
    let witness = MonoidAlgebraElement::basis(&mu / Exponent::from_integer(2.into()))?;
    let tail = TailIdeal::AtLeast(mu.clone());
    let cert = NonFiniteGenerationCertificate {
        generators: gens.iter().map(ToString::to_string).collect(),
        min_exponent: mu.to_string(),
        witness: witness.to_string(),
        generators_in_tail: gens.iter().all(|s| tail_membership(&tail, s)),
        witness_in_m: tail_membership(&TailIdeal::Positive, &witness),
        witness_outside_tail: !tail_membership(&tail, &witness),
    };
    Ok((witness, cert))
}

/// `f_K: m → ⊕_{k ≤ K} (R/a_{1/k})(−g_k)`, `g_k = k`, with `k`-th component
/// the projection `π_k` dropping exponents `≥ 1/k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessHom {
    components: Vec<(Exponent, Exponent)>,
}

impl WitnessHom {
    pub fn zero() -> Self {
        WitnessHom { components: Vec::new() }
    }

    pub fn truncation(&self) -> usize {
        self.components.len()
    }

    /// `(g_k, 1/k)` for each `k`.
    pub fn components(&self) -> &[(Exponent, Exponent)] {
        &self.components
    }

    /// `π_k(u)` for `k` in `1..=K`.
    pub fn project<F: Field>(&self, k: usize, u: &MonoidAlgebraElement<F>) -> MonoidAlgebraElement<F> {
        let threshold = &self.components[k - 1].1;
        u.filter(|a| a < threshold)
    }

    /// The nonzero components of `f_K(u)` as `(k, π_k(u))`.
    pub fn apply<F: Field>(&self, u: &MonoidAlgebraElement<F>) -> Vec<(usize, MonoidAlgebraElement<F>)> {
        (1..=self.truncation())
            .map(|k| (k, self.project(k, u)))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }

    /// Indices `k` with `π_k(e_β) ≠ 0`.
    pub fn components_hit(&self, beta: &Exponent) -> Vec<usize> {
        let e = MonoidAlgebraElement::<Rational>::basis(beta.clone()).expect("probe exponent is nonnegative");
        self.apply(&e).into_iter().map(|(k, _)| k).collect()
    }
}

/// Builds `f_K` (`K ≥ 1`).
pub fn build_witness_hom(k: usize) -> Result<WitnessHom> {
    if k == 0 {
        return Err(Error::InvalidArgument("K must be at least 1".into()));
    }
    Ok(WitnessHom {
        components: (1..=k as i64).map(|i| (q(i, 1), q(1, i))).collect(),
    })
}

/// Number of degrees carrying a nonzero component, each certified by
/// `π_k(e_{t/2}) ≠ 0` for the threshold `t` of that component.
pub fn graded_component_count(f: &WitnessHom) -> usize {
    let mut degrees: Vec<&Exponent> = Vec::new();
    for (k, (g, t)) in f.components.iter().enumerate() {
        let probe = MonoidAlgebraElement::<Rational>::basis(t / Exponent::from_integer(2.into())).expect("positive");
        if !f.project(k + 1, &probe).is_zero() && !degrees.contains(&g) {
            degrees.push(g);
        }
    }
    degrees.len()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportRow {
    pub k: usize,
    pub degree: String,
    pub probe: String,
    pub image: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeRow {
    pub beta: String,
    pub hit: Vec<usize>,
    pub expected: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CounterexampleReport {
    pub k: usize,
    pub support: Vec<SupportRow>,
    pub component_count: usize,
    pub local_finiteness: Vec<ProbeRow>,
    pub idempotency: Vec<IdempotencyCertificate>,
    pub non_finite_generation: Vec<NonFiniteGenerationCertificate>,
    pub certified: bool,
    pub not_claimed: Vec<String>,
}

/// Runs every finite check for `f_K`: support via the probes
/// `e_{1/(k+1)}`, local finiteness on `probes`, idempotency at each probe
/// exponent, and one non-finite-generation certificate per generator set.
pub fn counterexample_report(
    k: usize,
    probes: &[Exponent],
    generator_sets: &[Vec<MonoidAlgebraElement<Rational>>],
) -> Result<CounterexampleReport> {
    let f = build_witness_hom(k)?;
    let mut support = Vec::new();
    for (i, (g, _)) in f.components().iter().enumerate() {
        let probe = MonoidAlgebraElement::<Rational>::basis(q(1, i as i64 + 2))?;
        let image = f.project(i + 1, &probe);
        support.push(SupportRow {
            k: i + 1,
            degree: g.to_string(),
            probe: probe.to_string(),
            image: image.to_string(),
        });
    }
    let mut local_finiteness = Vec::new();
    for beta in probes {
        if !beta.is_positive() {
            return Err(Error::InvalidArgument(format!("probe e_{{{beta}}} is not in m")));
        }
        let expected = (1..=k).filter(|&j| q(1, j as i64) > *beta).collect();
        local_finiteness.push(ProbeRow {
            beta: beta.to_string(),
            hit: f.components_hit(beta),
            expected,
        });
    }
    let idempotency = probes
        .iter()
        .map(idempotency_witness::<Rational>)
        .collect::<Result<Vec<_>>>()?;
    let non_finite_generation = generator_sets
        .iter()
        .map(|s| non_finite_generation_witness(s).map(|(_, c)| c))
        .collect::<Result<Vec<_>>>()?;
    let component_count = graded_component_count(&f);
    let certified = support.iter().all(|r| r.image != "0")
        && component_count == k
        && local_finiteness.iter().all(|r| r.hit == r.expected)
        && idempotency.iter().all(IdempotencyCertificate::holds)
        && non_finite_generation.iter().all(NonFiniteGenerationCertificate::holds);
    Ok(CounterexampleReport {
        k,
        support,
        component_count,
        local_finiteness,
        idempotency,
        non_finite_generation,
        certified,
        not_claimed: vec![
            "the limit K → ∞ (that the induced map on graded Hom is not an epimorphism) is a published theorem, not certified here".into(),
            "the consequence for first local cohomology is a published theorem, not certified here".into(),
        ],
    })
}
