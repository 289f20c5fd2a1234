//! Scenario files: line-oriented `name { key = value; ... }` blocks.
//!
//! ```text
//! group   { free = 2; torsion = [] }
//! ring    { vars = [x, y]; degrees = [(1,0), (0,1)]; certificate = (1,1) }
//! ideal   { gens = [x, y] }
//! module  { generators = [(0,0)]; relations = [[x^2], [x*y]] }
//! target  { generators = [(0,0)]; relations = [] }
//! psi     { target_free = 1; target_torsion = []; matrix = [[1, 1]] }
//! gwindow { lo = (-4,-4); hi = (0,0) }
//! hwindow { degrees = [(-2), (-1)] }
//! caps    { n_cap = 12; ray_cap = 8 }
//! ```
//!
//! Degrees are `(free,...;torsion,...)`. Entries may be separated by `;` or
//! newlines, and `#` starts a comment. Every block except `ring` is optional.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use grlc::coarsen::{coarsen_ring, derive_certificate};
use grlc::localcoh::DEFAULT_RAY_CAP;
use grlc::ringcore::{Poly, Presentation};
use grlc::{Degree, DegreeGroup, DegreeWindow, GradedPolynomialRing, GroupEpimorphism, Module, Monomial, MonomialIdeal, QPoly, Rational};
use num_traits::{One, ToPrimitive};
use pest::iterators::Pair;
use pest::Parser;
use pest_derive::Parser;

#[derive(Parser)]
#[grammar = "scenario.pest"]
struct Grammar;

pub const DEFAULT_N_CAP: usize = 12;

/// A located message.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {0}")]
    Syntax(Diagnostic),
    #[error("invalid scenario:\n{}", .0.iter().map(|d| format!("  {d}")).collect::<Vec<_>>().join("\n"))]
    Semantic(Vec<Diagnostic>),
}

type Pos = (usize, usize);

#[derive(Clone, Debug)]
enum Value {
    List(Vec<Spanned>),
    Tuple(Vec<Rational>, Vec<Rational>),
    /// Signed coefficient and `(variable, exponent)` factors per term.
    Poly(Vec<(Rational, Vec<(String, u32)>)>),
}

#[derive(Clone, Debug)]
struct Spanned {
    value: Value,
    pos: Pos,
}

fn diag(pos: Pos, message: impl Into<String>) -> Diagnostic {
    Diagnostic {
        line: pos.0,
        col: pos.1,
        message: message.into(),
    }
}

type Check<T> = std::result::Result<T, Diagnostic>;

fn rational(s: &str) -> Rational {
    match s.split_once('/') {
        Some((n, d)) => Rational::new(n.parse().expect("grammar digits"), d.parse().expect("grammar digits")),
        None => Rational::from_integer(s.parse().expect("grammar digits")),
    }
}

fn build_value(pair: Pair<'_, Rule>) -> Check<Spanned> {
    let pos = pair.line_col();
    let inner = match pair.as_rule() {
        Rule::value => return build_value(pair.into_inner().next().expect("value has one child")),
        r => (r, pair),
    };
    let value = match inner {
        (Rule::list, p) => Value::List(p.into_inner().map(build_value).collect::<Check<_>>()?),
        (Rule::tuple, p) => {
            let mut parts = p.into_inner().map(|nums| {
                nums.into_inner().map(|n| {
                    let s = n.as_str();
                    if s.ends_with("/0") {
                        Err(diag(n.line_col(), format!("zero denominator in `{s}`")))
                    } else {
                        Ok(rational(s))
                    }
                })
                .collect::<Check<Vec<_>>>()
            });
            let free = parts.next().expect("tuple has a free part")?;
            let torsion = parts.next().transpose()?.unwrap_or_default();
            Value::Tuple(free, torsion)
        }
        (Rule::poly, p) => {
            let mut terms = Vec::new();
            let mut negative = false;
            for child in p.into_inner() {
                match child.as_rule() {
                    Rule::sign => negative = child.as_str() == "-",
                    Rule::term => {
                        let mut coeff = Rational::one();
                        let mut factors = Vec::new();
                        for f in child.into_inner() {
                            match f.as_rule() {
                                Rule::coeff => {
                                    if f.as_str().ends_with("/0") {
                                        return Err(diag(f.line_col(), "zero denominator"));
                                    }
                                    coeff *= rational(f.as_str());
                                }
                                Rule::factor => {
                                    let fpos = f.line_col();
                                    let mut it = f.into_inner();
                                    let name = it.next().expect("factor has a name").as_str().to_string();
                                    let exp = match it.next() {
                                        Some(e) => e
                                            .as_str()
                                            .parse::<u32>()
                                            .map_err(|_| diag(fpos, format!("exponent of {name} too large")))?,
                                        None => 1,
                                    };
                                    factors.push((name, exp));
                                }
                                _ => unreachable!("term children are coefficients and factors"),
                            }
                        }
                        if negative {
                            coeff = -coeff;
                        }
                        negative = false;
                        terms.push((coeff, factors));
                    }
                    _ => unreachable!("poly children are signs and terms"),
                }
            }
            Value::Poly(terms)
        }
        (r, _) => unreachable!("unexpected rule {r:?}"),
    };
    Ok(Spanned { value, pos })
}

impl Spanned {
    fn list(&self) -> Check<&[Spanned]> {
        match &self.value {
            Value::List(v) => Ok(v),
            _ => Err(diag(self.pos, "expected a list `[...]`")),
        }
    }

    fn tuple(&self) -> Check<(&[Rational], &[Rational])> {
        match &self.value {
            Value::Tuple(a, b) => Ok((a, b)),
            _ => Err(diag(self.pos, "expected a tuple `(...)`")),
        }
    }

    fn integer(&self) -> Check<i64> {
        let bad = || diag(self.pos, "expected an integer");
        match &self.value {
            Value::Poly(terms) if terms.len() == 1 && terms[0].1.is_empty() && terms[0].0.is_integer() => {
                terms[0].0.to_integer().to_i64().ok_or_else(bad)
            }
            _ => Err(bad()),
        }
    }

    fn count(&self) -> Check<usize> {
        let n = self.integer()?;
        usize::try_from(n).map_err(|_| diag(self.pos, "expected a nonnegative integer"))
    }

    fn ident(&self) -> Check<&str> {
        match &self.value {
            Value::Poly(terms)
                if terms.len() == 1 && terms[0].0.is_one() && terms[0].1.len() == 1 && terms[0].1[0].1 == 1 =>
            {
                Ok(&terms[0].1[0].0)
            }
            _ => Err(diag(self.pos, "expected a name")),
        }
    }

    fn degree(&self, group: &DegreeGroup) -> Check<Degree> {
        let (free, torsion) = self.tuple()?;
        let ints = |v: &[Rational]| -> Check<Vec<i64>> {
            v.iter()
                .map(|q| q.is_integer().then(|| q.to_integer().to_i64()).flatten().ok_or_else(|| diag(self.pos, "degree entries must be integers")))
                .collect()
        };
        group
            .degree(ints(free)?, ints(torsion)?)
            .map_err(|e| diag(self.pos, e.to_string()))
    }

    fn rationals(&self) -> Check<Vec<Rational>> {
        let (free, torsion) = self.tuple()?;
        if !torsion.is_empty() {
            return Err(diag(self.pos, "a certificate has no torsion part"));
        }
        Ok(free.to_vec())
    }

    fn poly(&self, ring: &GradedPolynomialRing) -> Check<QPoly> {
        let Value::Poly(terms) = &self.value else {
            return Err(diag(self.pos, "expected a polynomial"));
        };
        let mut out = Poly::zero();
        for (c, factors) in terms {
            let mut e = vec![0u32; ring.nvars()];
            for (name, k) in factors {
                let i = ring
                    .var_index(name)
                    .ok_or_else(|| diag(self.pos, format!("unknown variable `{name}`")))?;
                e[i] += k;
            }
            out.add_term(c.clone(), Monomial::new(e));
        }
        Ok(out)
    }

    fn monomial(&self, ring: &GradedPolynomialRing) -> Check<Monomial> {
        let p = self.poly(ring)?;
        let mut terms = p.terms();
        match (terms.next(), terms.next()) {
            (Some((m, c)), None) if c.is_one() => Ok(m.clone()),
            _ => Err(diag(self.pos, "expected a monomial")),
        }
    }
}

struct Block {
    name: String,
    pos: Pos,
    entries: BTreeMap<String, Spanned>,
}

impl Block {
    fn get(&self, key: &str) -> Option<&Spanned> {
        self.entries.get(key)
    }

    fn require(&self, key: &str) -> Check<&Spanned> {
        self.get(key)
            .ok_or_else(|| diag(self.pos, format!("block `{}` needs `{key}`", self.name)))
    }
}

fn syntax_error(e: pest::error::Error<Rule>) -> ParseError {
    let (line, col) = match e.line_col {
        pest::error::LineColLocation::Pos(p) | pest::error::LineColLocation::Span(p, _) => p,
    };
    ParseError::Syntax(diag((line, col), e.variant.message().to_string()))
}

/// `ψ: G -> H` together with the certificate of the coarse ring.
#[derive(Clone, Debug, PartialEq)]
pub struct PsiSpec {
    pub psi: GroupEpimorphism,
    /// Positivity certificate of the coarse ring, supplied or derived.
    pub certificate: Vec<Rational>,
}

/// A validated scenario.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub ring: Arc<GradedPolynomialRing>,
    pub ideal: Option<MonomialIdeal>,
    pub module: Module,
    pub target: Option<Module>,
    pub psi: Option<PsiSpec>,
    pub gwindow: Option<DegreeWindow>,
    pub hwindow: Option<DegreeWindow>,
    pub n_cap: usize,
    pub ray_cap: usize,
}

const KEYS: &[(&str, &[&str])] = &[
    ("group", &["free", "torsion"]),
    ("ring", &["vars", "degrees", "certificate"]),
    ("ideal", &["gens"]),
    ("module", &["generators", "relations"]),
    ("target", &["generators", "relations"]),
    ("psi", &["target_free", "target_torsion", "matrix", "certificate"]),
    ("gwindow", &["lo", "hi", "degrees"]),
    ("hwindow", &["lo", "hi", "degrees"]),
    ("caps", &["n_cap", "ray_cap"]),
];

/// Parses and validates a scenario, reporting every violated invariant found.
pub fn parse_scenario(text: &str) -> Result<Scenario, ParseError> {
    let file = Grammar::parse(Rule::file, text)
        .map_err(syntax_error)?
        .next()
        .expect("file rule");
    let mut diags = Vec::new();
    let mut blocks: BTreeMap<String, Block> = BTreeMap::new();
    for b in file.into_inner().filter(|p| p.as_rule() == Rule::block) {
        let pos = b.line_col();
        let mut it = b.into_inner();
        let name = it.next().expect("block name").as_str().to_string();
        let Some((_, allowed)) = KEYS.iter().find(|(n, _)| *n == name) else {
            diags.push(diag(pos, format!("unknown block `{name}`")));
            continue;
        };
        let mut entries = BTreeMap::new();
        for e in it {
            let epos = e.line_col();
            let mut parts = e.into_inner();
            let key = parts.next().expect("entry key").as_str().to_string();
            if !allowed.contains(&key.as_str()) {
                diags.push(diag(epos, format!("unknown key `{key}` in block `{name}`")));
                continue;
            }
            match build_value(parts.next().expect("entry value")) {
                Ok(v) => {
                    if entries.insert(key.clone(), v).is_some() {
                        diags.push(diag(epos, format!("duplicate key `{key}` in block `{name}`")));
                    }
                }
                Err(d) => diags.push(d),
            }
        }
        if blocks.contains_key(&name) {
            diags.push(diag(pos, format!("duplicate block `{name}`")));
        } else {
            blocks.insert(name.clone(), Block { name, pos, entries });
        }
    }
    let scenario = validate(&blocks, &mut diags);
    match scenario {
        Some(s) if diags.is_empty() => Ok(s),
        _ => {
            if diags.is_empty() {
                diags.push(diag((1, 1), "scenario is incomplete"));
            }
            diags.sort_by_key(|d| (d.line, d.col));
            Err(ParseError::Semantic(diags))
        }
    }
}

fn keep<T>(r: Check<T>, diags: &mut Vec<Diagnostic>) -> Option<T> {
    r.map_err(|d| diags.push(d)).ok()
}

fn validate(blocks: &BTreeMap<String, Block>, diags: &mut Vec<Diagnostic>) -> Option<Scenario> {
    let Some(ring_block) = blocks.get("ring") else {
        diags.push(diag((1, 1), "missing `ring` block"));
        return None;
    };
    let ring = keep(ring_from(blocks.get("group"), ring_block), diags)?;
    let ring = Arc::new(ring);

    let ideal = blocks.get("ideal").and_then(|b| {
        keep(
            b.require("gens").and_then(|g| {
                let gens = g.list()?.iter().map(|m| m.monomial(&ring)).collect::<Check<Vec<_>>>()?;
                Ok(MonomialIdeal::new(ring.nvars(), gens))
            }),
            diags,
        )
    });
    let module = match blocks.get("module") {
        Some(b) => keep(module_from(&ring, b, diags), diags).flatten(),
        None => Some(Presentation::ring_module(ring.clone())),
    };
    let target = blocks
        .get("target")
        .map(|b| keep(module_from(&ring, b, diags), diags).flatten());
    let psi = blocks.get("psi").map(|b| keep(psi_from(&ring, b), diags));
    let gwindow = blocks
        .get("gwindow")
        .map(|b| keep(window_from(ring.group(), b), diags));
    let hwindow = blocks.get("hwindow").map(|b| match &psi {
        Some(Some(p)) => keep(window_from(p.psi.target(), b), diags),
        Some(None) => None,
        None => {
            diags.push(diag(b.pos, "`hwindow` needs a `psi` block"));
            None
        }
    });
    let mut n_cap = DEFAULT_N_CAP;
    let mut ray_cap = DEFAULT_RAY_CAP;
    if let Some(b) = blocks.get("caps") {
        if let Some(v) = b.get("n_cap") {
            match v.count() {
                Ok(n) if n >= 2 => n_cap = n,
                Ok(_) => diags.push(diag(v.pos, "n_cap must be at least 2")),
                Err(d) => diags.push(d),
            }
        }
        if let Some(v) = b.get("ray_cap") {
            match v.count() {
                Ok(n) if n >= 1 => ray_cap = n,
                Ok(_) => diags.push(diag(v.pos, "ray_cap must be at least 1")),
                Err(d) => diags.push(d),
            }
        }
    }
    Some(Scenario {
        ring,
        ideal,
        module: module?,
        target: present(target)?,
        psi: present(psi)?,
        gwindow: present(gwindow)?,
        hwindow: present(hwindow)?,
        n_cap,
        ray_cap,
    })
}

/// `None` when an optional block was given but failed to validate.
fn present<T>(x: Option<Option<T>>) -> Option<Option<T>> {
    match x {
        None => Some(None),
        Some(inner) => inner.map(Some),
    }
}

fn ring_from(group: Option<&Block>, b: &Block) -> Check<GradedPolynomialRing> {
    let vars = b.require("vars")?.list()?;
    let names = vars.iter().map(|v| v.ident().map(str::to_string)).collect::<Check<Vec<_>>>()?;
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(diag(vars[i].pos, format!("variable `{n}` declared twice")));
        }
    }
    let degs = b.require("degrees")?.list()?;
    let group = match group {
        Some(g) => {
            let free = g.require("free")?.count()?;
            let torsion = match g.get("torsion") {
                Some(t) => t.list()?.iter().map(Spanned::integer).collect::<Check<Vec<_>>>()?,
                None => Vec::new(),
            };
            DegreeGroup::new(free, torsion).map_err(|e| diag(g.pos, e.to_string()))?
        }
        None => {
            let first = degs.first().ok_or_else(|| diag(b.pos, "cannot infer the grading group; add a `group` block"))?;
            let (free, torsion) = first.tuple()?;
            if !torsion.is_empty() {
                return Err(diag(first.pos, "torsion degrees need a `group` block"));
            }
            DegreeGroup::free(free.len())
        }
    };
    let degrees = degs.iter().map(|d| d.degree(&group)).collect::<Check<Vec<_>>>()?;
    let certificate = match b.get("certificate") {
        Some(c) => c.rationals()?,
        None => derive_certificate(&group, &degrees).map_err(|e| diag(b.pos, e.to_string()))?,
    };
    let pos = b.get("certificate").map_or(b.pos, |c| c.pos);
    GradedPolynomialRing::new(group, names, degrees, certificate).map_err(|e| diag(pos, e.to_string()))
}

fn module_from(ring: &Arc<GradedPolynomialRing>, b: &Block, diags: &mut Vec<Diagnostic>) -> Check<Option<Module>> {
    let gens = match b.get("generators") {
        Some(g) => g.list()?.iter().map(|d| d.degree(ring.group())).collect::<Check<Vec<_>>>()?,
        None => vec![ring.group().zero()],
    };
    let mut columns = Vec::new();
    let mut ok = true;
    if let Some(rels) = b.get("relations") {
        for col in rels.list()? {
            let entries = col.list()?;
            if entries.len() != gens.len() {
                diags.push(diag(col.pos, format!("relation has {} entries for {} generators", entries.len(), gens.len())));
                ok = false;
                continue;
            }
            let mut polys = Vec::new();
            for e in entries {
                let p = e.poly(ring)?;
                if let Err(err) = p.homogeneous_degree(ring) {
                    diags.push(diag(e.pos, format!("relation entry `{}` is not homogeneous: {err}", p.format(ring))));
                    ok = false;
                }
                polys.push(p);
            }
            columns.push((col.pos, polys));
        }
    }
    if !ok {
        return Ok(None);
    }
    let pos = b.get("relations").map_or(b.pos, |r| r.pos);
    for (cpos, col) in &columns {
        Presentation::new(ring.clone(), gens.clone(), vec![col.clone()]).map_err(|e| diag(*cpos, e.to_string()))?;
    }
    Presentation::new(ring.clone(), gens, columns.into_iter().map(|c| c.1).collect())
        .map(Some)
        .map_err(|e| diag(pos, e.to_string()))
}

fn psi_from(ring: &GradedPolynomialRing, b: &Block) -> Check<PsiSpec> {
    let free = b.require("target_free")?.count()?;
    let torsion = match b.get("target_torsion") {
        Some(t) => t.list()?.iter().map(Spanned::integer).collect::<Check<Vec<_>>>()?,
        None => Vec::new(),
    };
    let target = DegreeGroup::new(free, torsion).map_err(|e| diag(b.pos, e.to_string()))?;
    let m = b.require("matrix")?;
    let matrix = m
        .list()?
        .iter()
        .map(|row| row.list()?.iter().map(Spanned::integer).collect::<Check<Vec<_>>>())
        .collect::<Check<Vec<_>>>()?;
    let psi = GroupEpimorphism::epi(ring.group().clone(), target, matrix).map_err(|e| diag(m.pos, e.to_string()))?;
    let given = b.get("certificate").map(Spanned::rationals).transpose()?;
    let pos = b.get("certificate").map_or(b.pos, |c| c.pos);
    let coarse = coarsen_ring(ring, &psi, given).map_err(|e| diag(pos, e.to_string()))?;
    Ok(PsiSpec {
        psi,
        certificate: coarse.certificate().to_vec(),
    })
}

fn window_from(group: &DegreeGroup, b: &Block) -> Check<DegreeWindow> {
    if let Some(d) = b.get("degrees") {
        if b.get("lo").is_some() || b.get("hi").is_some() {
            return Err(diag(b.pos, "give either `degrees` or `lo`/`hi`, not both"));
        }
        let degs = d.list()?.iter().map(|x| x.degree(group)).collect::<Check<Vec<_>>>()?;
        return DegreeWindow::from_degrees(group, degs).map_err(|e| diag(d.pos, e.to_string()));
    }
    let bound = |key: &str| -> Check<Vec<i64>> {
        let v = b.require(key)?;
        let (free, torsion) = v.tuple()?;
        if !torsion.is_empty() {
            return Err(diag(v.pos, "window bounds are free coordinates only"));
        }
        free.iter()
            .map(|q| q.is_integer().then(|| q.to_integer().to_i64()).flatten().ok_or_else(|| diag(v.pos, "bounds must be integers")))
            .collect()
    };
    let (lo, hi) = (bound("lo")?, bound("hi")?);
    if lo.iter().zip(&hi).any(|(a, b)| a > b) {
        return Err(diag(b.pos, "window has lo > hi"));
    }
    DegreeWindow::boxed(group, &lo, &hi).map_err(|e| diag(b.pos, e.to_string()))
}

/// Parses a standalone value, for command-line overrides.
fn parse_value(text: &str) -> Result<Spanned, ParseError> {
    let pair = Grammar::parse(Rule::value_only, text)
        .map_err(syntax_error)?
        .next()
        .expect("value_only rule")
        .into_inner()
        .next()
        .expect("value");
    build_value(pair).map_err(|d| ParseError::Semantic(vec![d]))
}

fn semantic<T>(r: Check<T>) -> Result<T, ParseError> {
    r.map_err(|d| ParseError::Semantic(vec![d]))
}

/// `x, y^2` or `[x, y^2]`.
pub fn parse_ideal(ring: &GradedPolynomialRing, text: &str) -> Result<MonomialIdeal, ParseError> {
    let t = text.trim();
    let v = parse_value(&if t.starts_with('[') { t.to_string() } else { format!("[{t}]") })?;
    let gens = semantic(v.list().and_then(|l| l.iter().map(|m| m.monomial(ring)).collect::<Check<Vec<_>>>()))?;
    Ok(MonomialIdeal::new(ring.nvars(), gens))
}

/// `lo:hi` (two free-part tuples) or a list of degrees.
pub fn parse_window(group: &DegreeGroup, text: &str) -> Result<DegreeWindow, ParseError> {
    let t = text.trim();
    if let Some((lo, hi)) = t.split_once(':') {
        let mut entries = BTreeMap::new();
        entries.insert("lo".to_string(), parse_value(lo)?);
        entries.insert("hi".to_string(), parse_value(hi)?);
        let b = Block {
            name: "window".into(),
            pos: (1, 1),
            entries,
        };
        return semantic(window_from(group, &b));
    }
    let v = parse_value(t)?;
    let degs = semantic(v.list().and_then(|l| l.iter().map(|d| d.degree(group)).collect::<Check<Vec<_>>>()))?;
    DegreeWindow::from_degrees(group, degs).map_err(|e| ParseError::Semantic(vec![diag((1, 1), e.to_string())]))
}

/// A matrix `[[a, b, ...], ...]` for `ψ`; the target keeps its torsion from
/// `current` when the row count matches, else it is free of rank `#rows`.
pub fn parse_psi(ring: &GradedPolynomialRing, current: Option<&PsiSpec>, text: &str) -> Result<PsiSpec, ParseError> {
    let v = parse_value(text.trim())?;
    let matrix = semantic(
        v.list()
            .and_then(|rows| rows.iter().map(|r| r.list()?.iter().map(Spanned::integer).collect()).collect::<Check<Vec<Vec<i64>>>>()),
    )?;
    let target = match current {
        Some(p) if p.psi.target().ngens() == matrix.len() => p.psi.target().clone(),
        _ => DegreeGroup::free(matrix.len()),
    };
    let err = |e: grlc::Error| ParseError::Semantic(vec![diag((1, 1), e.to_string())]);
    let psi = GroupEpimorphism::epi(ring.group().clone(), target, matrix).map_err(err)?;
    let coarse = coarsen_ring(ring, &psi, None).map_err(err)?;
    Ok(PsiSpec {
        psi,
        certificate: coarse.certificate().to_vec(),
    })
}

fn join<T>(items: impl IntoIterator<Item = T>, f: impl Fn(T) -> String) -> String {
    items.into_iter().map(f).collect::<Vec<_>>().join(", ")
}

fn tuple(qs: &[Rational]) -> String {
    format!("({})", join(qs, |q| q.to_string()))
}

fn module_block(name: &str, m: &Module) -> String {
    let ring = m.ring();
    let rels = join(m.columns(), |c| format!("[{}]", join(&c.entries, |p| p.format(ring))));
    format!(
        "{name} {{ generators = [{}]; relations = [{rels}] }}\n",
        join(m.gen_degrees(), |d| d.to_string())
    )
}

/// Renders a scenario in the format accepted by [`parse_scenario`].
pub fn serialize_scenario(s: &Scenario) -> String {
    let ring = &s.ring;
    let g = ring.group();
    let mut out = format!(
        "group {{ free = {}; torsion = [{}] }}\n",
        g.free_rank(),
        join(g.torsion_orders(), |t| t.to_string())
    );
    out += &format!(
        "ring {{ vars = [{}]; degrees = [{}]; certificate = {} }}\n",
        ring.names().join(", "),
        join(ring.var_degrees(), |d| d.to_string()),
        tuple(ring.certificate())
    );
    if let Some(a) = &s.ideal {
        out += &format!("ideal {{ gens = [{}] }}\n", join(a.gens(), |m| ring.format_monomial(m)));
    }
    out += &module_block("module", &s.module);
    if let Some(t) = &s.target {
        out += &module_block("target", t);
    }
    if let Some(p) = &s.psi {
        let t = p.psi.target();
        out += &format!(
            "psi {{ target_free = {}; target_torsion = [{}]; matrix = [{}]; certificate = {} }}\n",
            t.free_rank(),
            join(t.torsion_orders(), |x| x.to_string()),
            join(p.psi.matrix(), |row| format!("[{}]", join(row, |x| x.to_string()))),
            tuple(&p.certificate)
        );
    }
    for (name, w) in [("gwindow", &s.gwindow), ("hwindow", &s.hwindow)] {
        if let Some(w) = w {
            out += &format!("{name} {{ degrees = [{}] }}\n", join(w.degrees(), |d| d.to_string()));
        }
    }
    out += &format!("caps {{ n_cap = {}; ray_cap = {} }}\n", s.n_cap, s.ray_cap);
    out
}

