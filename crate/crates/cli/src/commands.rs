//! Command dispatch.

use std::fmt;

use grlc::coarsen::{check_commutation, coarsen_table, CoarsenedScenario, SupportClaim, Verdict};
use grlc::homres::{graded_ext, graded_hom, ColimitTable};
use grlc::localcoh::{
    cech_complex, check_prop70_sequence, ideal_transform, local_cohomology_cech, local_cohomology_ext,
    torsion_submodule,
};
use grlc::monoidx::{counterexample_report, Exponent, MonoidAlgebraElement};
use grlc::ringcore::hilbert;
use grlc::{Error, HilbertTable, MonomialIdeal, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::{Meta, Parameters, Report, Status, Table};
use crate::scenario::{parse_ideal, parse_psi, parse_window, ParseError, Scenario};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Hilbert,
    Hom,
    Ext,
    Gamma,
    Cech,
    Lc,
    Dtransform,
    Coarsen,
    CheckCommute,
    CheckProp70,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Hilbert => "hilbert",
            Command::Hom => "hom",
            Command::Ext => "ext",
            Command::Gamma => "gamma",
            Command::Cech => "cech",
            Command::Lc => "lc",
            Command::Dtransform => "dtransform",
            Command::Coarsen => "coarsen",
            Command::CheckCommute => "check-commute",
            Command::CheckProp70 => "check-prop70",
        })
    }
}

/// Command-line overrides of scenario fields.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub i: usize,
    pub ideal: Option<String>,
    pub psi: Option<String>,
    pub gwindow: Option<String>,
    pub hwindow: Option<String>,
    pub n_cap: Option<usize>,
    pub assume_support_covered: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Missing(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Applies overrides in place.
pub fn apply_overrides(s: &mut Scenario, o: &Overrides) -> Result<(), CliError> {
    if let Some(t) = &o.ideal {
        s.ideal = Some(parse_ideal(&s.ring, t)?);
    }
    if let Some(t) = &o.psi {
        let p = parse_psi(&s.ring, s.psi.as_ref(), t)?;
        if s.psi.as_ref().map(|q| q.psi.target()) != Some(p.psi.target()) {
            s.hwindow = None;
        }
        s.psi = Some(p);
    }
    if let Some(t) = &o.gwindow {
        s.gwindow = Some(parse_window(s.ring.group(), t)?);
    }
    if let Some(t) = &o.hwindow {
        let psi = s.psi.as_ref().ok_or_else(|| CliError::Missing("--hwindow needs a psi".into()))?;
        s.hwindow = Some(parse_window(psi.psi.target(), t)?);
    }
    if let Some(n) = o.n_cap {
        if n < 2 {
            return Err(CliError::Missing("--ncap must be at least 2".into()));
        }
        s.n_cap = n;
    }
    Ok(())
}

fn need<'a, T>(x: &'a Option<T>, what: &str) -> Result<&'a T, CliError> {
    x.as_ref().ok_or_else(|| CliError::Missing(format!("this command needs {what}")))
}

fn parameters(command: Command, s: &Scenario, o: &Overrides) -> Parameters {
    let uses_i = matches!(
        command,
        Command::Ext | Command::Cech | Command::Lc | Command::Dtransform | Command::CheckCommute
    );
    Parameters {
        i: uses_i.then_some(o.i),
        ideal: s
            .ideal
            .as_ref()
            .map(|a| a.gens().iter().map(|m| s.ring.format_monomial(m)).collect()),
        psi: s.psi.as_ref().map(|p| p.psi.matrix().to_vec()),
        gwindow: s.gwindow.as_ref().map(|w| w.degrees().to_vec()),
        hwindow: s.hwindow.as_ref().map(|w| w.degrees().to_vec()),
        n_cap: Some(s.n_cap),
        ray_cap: Some(s.ray_cap),
        assume_support_covered: o.assume_support_covered,
        k: None,
        seed: None,
    }
}

struct Outcome {
    verdict: String,
    status: Status,
    result: Value,
    table: Table,
}

impl Outcome {
    fn ok(verdict: &str, result: Value, table: Table) -> Self {
        Outcome {
            verdict: verdict.into(),
            status: Status::Ok,
            result,
            table,
        }
    }

    fn judged(pass: &str, holds: bool, result: Value, table: Table) -> Self {
        Outcome {
            verdict: if holds { pass.into() } else { "FAILS".into() },
            status: if holds { Status::Ok } else { Status::Fails },
            result,
            table,
        }
    }
}

fn colimit_json(t: &ColimitTable) -> Value {
    json!({ "table": t.table, "stable_stage": t.stable_stage })
}

/// Converts unstabilized and refused computations into reports.
fn from_error(e: Error) -> Result<Outcome, CliError> {
    match e {
        Error::Unstabilized { what, cap, trajectory } => {
            let mut header = vec!["degree".to_string()];
            header.extend((1..=trajectory.stages).map(|n| format!("stage_{n}")));
            let mut table = Table {
                header,
                rows: Vec::new(),
            };
            for (g, dims) in &trajectory.dims {
                let mut row = vec![g.to_string()];
                row.extend(dims.iter().map(ToString::to_string));
                table.push(row);
            }
            Ok(Outcome {
                verdict: "UNSTABILIZED".into(),
                status: Status::Unstabilized,
                result: json!({ "what": what, "cap": cap, "trajectory": trajectory }),
                table,
            })
        }
        e @ (Error::WindowInadequate { .. } | Error::CoverageNotCertified { .. }) => {
            let mut table = Table::new(&["reason"]);
            table.push(vec![e.to_string()]);
            Ok(Outcome {
                verdict: "REFUSED".into(),
                status: Status::Refused,
                result: json!({ "reason": e.to_string() }),
                table,
            })
        }
        e => Err(e.into()),
    }
}

fn coarse_scenario(s: &Scenario) -> Result<CoarsenedScenario, Error> {
    let p = s.psi.as_ref().expect("checked by caller");
    CoarsenedScenario::new(
        s.ring.clone(),
        p.psi.clone(),
        Some(p.certificate.clone()),
        s.gwindow.clone().expect("checked by caller"),
        s.hwindow.clone().expect("checked by caller"),
    )
}

fn execute(command: Command, s: &Scenario, o: &Overrides) -> Result<Outcome, CliError> {
    let module = &s.module;
    let gw = need(&s.gwindow, "a fine window (gwindow block or --gwindow)")?;
    let ideal = || -> Result<&MonomialIdeal, CliError> { need(&s.ideal, "an ideal (ideal block or --ideal)") };
    let coarse_inputs = || -> Result<(), CliError> {
        need(&s.psi, "psi (psi block or --psi)")?;
        need(&s.hwindow, "a coarse window (hwindow block or --hwindow)")?;
        Ok(())
    };
    let i = o.i;
    let single = |name: &str, t: &HilbertTable, result: Value| Outcome::ok("OK", result, Table::from_tables(&[(name, t)]));

    let outcome = match command {
        Command::Hilbert => {
            let t = hilbert(module, gw);
            single("dim", &t, json!({ "table": t }))
        }
        Command::Hom => {
            let target = s.target.as_ref().unwrap_or(module);
            let t = HilbertTable::from_fn(gw, |g| graded_hom(module, target, g).dim());
            single("hom", &t, json!({ "table": t }))
        }
        Command::Ext => {
            let t = graded_ext(i, ideal()?, module, gw);
            single(&format!("ext{i}"), &t, json!({ "table": t }))
        }
        Command::Gamma => match torsion_submodule(ideal()?, module, gw, s.n_cap) {
            Ok(t) => single("gamma", &t.table, json!({ "table": t.table, "stable_stage": t.stable_stage })),
            Err(e) => return from_error(e),
        },
        Command::Cech => {
            let a = ideal()?;
            match local_cohomology_cech(i, a.gens(), module, gw, s.n_cap) {
                Ok(t) => {
                    let complex = cech_complex(a.gens(), module);
                    let mut terms = serde_json::Map::new();
                    for p in [i.checked_sub(1), Some(i), Some(i + 1)].into_iter().flatten() {
                        let dims: Vec<Value> = gw
                            .iter()
                            .map(|g| complex.term_dim(p, g, s.ray_cap).map_or(Value::Null, |d| json!(d)))
                            .collect();
                        terms.insert(format!("C{p}"), Value::Array(dims));
                    }
                    let mut result = colimit_json(&t);
                    result["terms"] = Value::Object(terms);
                    single(&format!("H{i}"), &t.table, result)
                }
                Err(e) => return from_error(e),
            }
        }
        Command::Lc => {
            let a = ideal()?;
            let cech = match local_cohomology_cech(i, a.gens(), module, gw, s.n_cap) {
                Ok(t) => t,
                Err(e) => return from_error(e),
            };
            let ext = match local_cohomology_ext(i, a, module, gw, s.n_cap) {
                Ok(t) => t,
                Err(e) => return from_error(e),
            };
            let agree = cech.table == ext.table;
            let table = Table::from_tables(&[("cech", &cech.table), ("ext", &ext.table)]);
            Outcome::judged(
                "ROUTES_AGREE",
                agree,
                json!({ "cech": colimit_json(&cech), "ext": colimit_json(&ext), "differences": cech.table.differences(&ext.table) }),
                table,
            )
        }
        Command::Dtransform => match ideal_transform(i, ideal()?, module, gw, s.n_cap) {
            Ok(t) => single(&format!("D{i}"), &t.table, colimit_json(&t)),
            Err(e) => return from_error(e),
        },
        Command::Coarsen => {
            coarse_inputs()?;
            let sc = match coarse_scenario(s) {
                Ok(sc) => sc,
                Err(e) => return from_error(e),
            };
            let coarse_module = sc.coarsen_module(module)?;
            let direct = hilbert(&coarse_module, &sc.hw);
            let claim = if o.assume_support_covered {
                SupportClaim::Assumed
            } else {
                SupportClaim::WithinModule {
                    module,
                    coarse: &sc.coarse,
                }
            };
            let fiber_sums = match coarsen_table(&hilbert(module, gw), &sc.psi, &sc.hw, &claim) {
                Ok(t) => t,
                Err(e) => return from_error(e),
            };
            let table = Table::from_tables(&[("coarse_module", &direct), ("fiber_sum", &fiber_sums)]);
            Outcome::judged(
                "OK",
                direct == fiber_sums,
                json!({
                    "coarse_ring_degrees": sc.coarse.var_degrees(),
                    "coarse_module": direct,
                    "fiber_sums": fiber_sums,
                    "differences": direct.differences(&fiber_sums),
                }),
                table,
            )
        }
        Command::CheckCommute => {
            coarse_inputs()?;
            let sc = match coarse_scenario(s) {
                Ok(sc) => sc,
                Err(e) => return from_error(e),
            };
            let rep = match check_commutation(i, ideal()?, module, &sc, s.n_cap, o.assume_support_covered) {
                Ok(r) => r,
                Err(e) => return from_error(e),
            };
            let mut table = Table::new(&["degree", "fine_cech", "fine_ext", "coarse_cech", "coarse_ext", "agree"]);
            for r in &rep.rows {
                let get = |m: &std::collections::BTreeMap<String, usize>, k: &str| m.get(k).map_or("-".into(), ToString::to_string);
                table.push(vec![
                    r.degree.to_string(),
                    get(&r.fine, "cech"),
                    get(&r.fine, "ext"),
                    get(&r.coarse, "cech"),
                    get(&r.coarse, "ext"),
                    r.agree.to_string(),
                ]);
            }
            let status = match rep.verdict {
                Verdict::CommutesOnWindow => Status::Ok,
                Verdict::Fails => Status::Fails,
                Verdict::Unstabilized => Status::Unstabilized,
            };
            Outcome {
                verdict: rep.verdict.to_string(),
                status,
                result: serde_json::to_value(&rep).expect("serializable"),
                table,
            }
        }
        Command::CheckProp70 => {
            let rep = match check_prop70_sequence(ideal()?, module, gw, s.n_cap) {
                Ok(r) => r,
                Err(e) => return from_error(e),
            };
            let mut table = Table::new(&["degree", "gamma", "module", "d0", "h1", "insertion_rank", "exact"]);
            for r in &rep.rows {
                table.push(vec![
                    r.degree.to_string(),
                    r.gamma.to_string(),
                    r.module.to_string(),
                    r.d0.to_string(),
                    r.h1.to_string(),
                    r.insertion_rank.to_string(),
                    r.exact.to_string(),
                ]);
            }
            let holds = rep.holds;
            Outcome::judged("HOLDS", holds, serde_json::to_value(&rep).expect("serializable"), table)
        }
    };
    Ok(outcome)
}

/// Runs a scenario command after applying overrides.
pub fn run_scenario(command: Command, mut scenario: Scenario, o: &Overrides) -> Result<Report, CliError> {
    apply_overrides(&mut scenario, o)?;
    let out = execute(command, &scenario, o)?;
    Ok(Report {
        command: command.to_string(),
        parameters: parameters(command, &scenario, o),
        verdict: out.verdict,
        status: out.status,
        result: out.result,
        meta: Meta::now(),
        table: out.table,
    })
}

fn random_positive(rng: &mut ChaCha8Rng) -> Exponent {
    Exponent::new(rng.gen_range(1..=30i64).into(), rng.gen_range(1..=12i64).into())
}

/// Five seeded finite subsets of `m`, each of one to four elements.
pub fn random_generator_sets(seed: u64) -> Vec<Vec<MonoidAlgebraElement<Rational>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..5)
        .map(|_| {
            (0..rng.gen_range(1..=4))
                .map(|_| {
                    let terms: Vec<(Exponent, Rational)> = (0..rng.gen_range(1..=3))
                        .map(|_| {
                            let c = rng.gen_range(1..=5i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
                            (random_positive(&mut rng), Rational::from_integer(c.into()))
                        })
                        .collect();
                    MonoidAlgebraElement::from_terms(terms).expect("positive exponents")
                })
                .filter(|e| !e.is_zero())
                .collect::<Vec<_>>()
        })
        .map(|s| if s.is_empty() { vec![MonoidAlgebraElement::basis(Exponent::new(1.into(), 2.into())).expect("positive")] } else { s })
        .collect()
}

/// The witness family for `f_K`, with seeded probes and generator sets.
pub fn run_counterexample(k: usize, seed: u64) -> Result<Report, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut probes: Vec<Exponent> = (1..=k as i64 + 1).map(|j| Exponent::new(1.into(), (j + 1).into())).collect();
    probes.extend((0..5).map(|_| random_positive(&mut rng)));
    let rep = counterexample_report(k, &probes, &random_generator_sets(seed))?;
    let mut table = Table::new(&["k", "degree", "probe", "image"]);
    for r in &rep.support {
        table.push(vec![r.k.to_string(), r.degree.clone(), r.probe.clone(), r.image.clone()]);
    }
    let certified = rep.certified;
    Ok(Report {
        command: "counterexample".into(),
        parameters: Parameters {
            k: Some(k),
            seed: Some(seed),
            ..Parameters::default()
        },
        verdict: if certified { "CERTIFIED".into() } else { "FAILS".into() },
        status: if certified { Status::Ok } else { Status::Fails },
        result: serde_json::to_value(&rep).expect("serializable"),
        meta: Meta::now(),
        table,
    })
}

