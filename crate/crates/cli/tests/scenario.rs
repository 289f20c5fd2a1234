use grlc::{DegreeGroup, Module};
use grlc_cli::{parse_scenario, serialize_scenario, ParseError};
use proptest::prelude::*;

const FINE: &str = "
# fine plane
ring { vars = [x, y]; degrees = [(1,0), (0,1)]; certificate = (1,1) }
ideal { gens = [x, y] }
module { generators = [(0,0), (1,0)]; relations = [[x^2, -x], [0, 3/2*y]] }
psi { target_free = 1; matrix = [[1, 1]] }
gwindow { lo = (-1,-1); hi = (1,1) }
hwindow { lo = (0); hi = (1) }
caps { n_cap = 9; ray_cap = 5 }
";

fn semantic(text: &str) -> Vec<String> {
    match parse_scenario(text) {
        Err(ParseError::Semantic(d)) => d.into_iter().map(|d| d.to_string()).collect(),
        other => panic!("expected a semantic error, got {other:?}"),
    }
}

#[test]
fn parses_fine_scenario() {
    let s = parse_scenario(FINE).unwrap();
    assert_eq!(s.ring.names(), &["x".to_string(), "y".to_string()]);
    assert_eq!(s.ideal.as_ref().unwrap().gens().len(), 2);
    assert_eq!(s.module.ngens(), 2);
    assert_eq!(s.module.columns().len(), 2);
    assert_eq!(s.gwindow.as_ref().unwrap().len(), 9);
    assert_eq!(s.hwindow.as_ref().unwrap().len(), 2);
    assert_eq!(s.psi.as_ref().unwrap().psi.target(), &DegreeGroup::free(1));
    assert_eq!((s.n_cap, s.ray_cap), (9, 5));
}

#[test]
fn defaults_and_torsion_groups() {
    let s = parse_scenario(
        "group { free = 1; torsion = [2] }
         ring { vars = [x, y]; degrees = [(1;1), (1;0)] }",
    )
    .unwrap();
    assert_eq!(s.ring.group(), &DegreeGroup::new(1, vec![2]).unwrap());
    assert_eq!(s.module, Module::ring_module(s.ring.clone()));
    assert!(s.ideal.is_none() && s.psi.is_none());
}

#[test]
fn mixed_degree_entry_is_named() {
    let d = semantic(
        "ring { vars = [x, y]; degrees = [(1,0), (0,1)] }
module { generators = [(0,0)]; relations = [[x + y^2]] }",
    );
    assert_eq!(d.len(), 1);
    assert!(d[0].starts_with("2:46:"), "{d:?}");
    assert!(d[0].contains("x + y^2") || d[0].contains("y^2 + x"), "{d:?}");
}

#[test]
fn inconsistent_column_is_rejected() {
    let d = semantic(
        "ring { vars = [x, y]; degrees = [(1,0), (0,1)] }
module { generators = [(0,0), (0,0)]; relations = [[x, y]] }",
    );
    assert!(d[0].contains("column degree"), "{d:?}");
}

#[test]
fn zero_certificate_is_rejected() {
    let d = semantic("ring { vars = [x, y]; degrees = [(1,0), (0,1)]; certificate = (0,0) }");
    assert!(d[0].contains("not strictly positive"), "{d:?}");
}

#[test]
fn every_violation_is_listed() {
    let d = semantic(
        "ring { vars = [x]; degrees = [(1)] }
ideal { gens = [z] }
caps { n_cap = 1; frobnicate = 3 }
hwindow { lo = (0); hi = (1) }",
    );
    assert_eq!(d.len(), 4, "{d:?}");
    assert!(d.iter().any(|m| m.contains("unknown variable `z`")));
    assert!(d.iter().any(|m| m.contains("n_cap must be at least 2")));
    assert!(d.iter().any(|m| m.contains("unknown key `frobnicate`")));
    assert!(d.iter().any(|m| m.contains("needs a `psi` block")));
}

#[test]
fn syntax_error_has_position() {
    match parse_scenario("ring { vars = [x]\n  degrees = [(1)] ;; }") {
        Err(ParseError::Syntax(d)) => assert_eq!((d.line, d.col), (2, 20)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn missing_ring_is_reported() {
    assert!(semantic("ideal { gens = [x] }")[0].contains("missing `ring`"));
}

#[test]
fn fine_scenario_round_trips() {
    let s = parse_scenario(FINE).unwrap();
    let text = serialize_scenario(&s);
    assert_eq!(parse_scenario(&text).unwrap(), s, "{text}");
}

fn monomial_text(names: &[&str], e: &[u32]) -> String {
    let parts: Vec<String> = names
        .iter()
        .zip(e)
        .filter(|(_, &k)| k > 0)
        .map(|(n, &k)| if k == 1 { n.to_string() } else { format!("{n}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

prop_compose! {
    fn scenario_text()(
        nvars in 1usize..4,
        torsion in prop::option::of(2i64..4),
        raw_degs in prop::collection::vec((1i64..3, 0i64..4), 3),
        ideal in prop::collection::vec(prop::collection::vec(0u32..3, 3), 0..3),
        rels in prop::collection::vec((prop::collection::vec(0u32..3, 3), -3i64..4, 1i64..4), 0..3),
        gen_shift in -2i64..3,
        n_cap in 2usize..20,
    ) -> String {
        let names = ["x", "y", "z"];
        let names = &names[..nvars];
        let degs: Vec<String> = raw_degs[..nvars]
            .iter()
            .map(|(f, t)| match torsion { Some(m) => format!("({f};{})", t % m), None => format!("({f})") })
            .collect();
        let mut text = match torsion {
            Some(m) => format!("group {{ free = 1; torsion = [{m}] }}\n"),
            None => String::new(),
        };
        text += &format!("ring {{ vars = [{}]; degrees = [{}] }}\n", names.join(", "), degs.join(", "));
        let gens: Vec<String> = ideal.iter().map(|e| monomial_text(names, &e[..nvars])).collect();
        text += &format!("ideal {{ gens = [{}] }}\n", gens.join(", "));
        let gen_deg = match torsion { Some(_) => format!("({gen_shift};0)"), None => format!("({gen_shift})") };
        let cols: Vec<String> = rels
            .iter()
            .map(|(e, n, d)| match monomial_text(names, &e[..nvars]).as_str() {
                "1" => format!("[{n}/{d}]"),
                m => format!("[{n}/{d}*{m}]"),
            })
            .collect();
        text += &format!("module {{ generators = [{gen_deg}]; relations = [{}] }}\n", cols.join(", "));
        text += &format!("gwindow {{ lo = ({gen_shift}); hi = ({}) }}\n", gen_shift + 2);
        text += &format!("caps {{ n_cap = {n_cap} }}\n");
        text
    }
}

proptest! {
    #[test]
    fn parse_serialize_parse_is_identity(text in scenario_text()) {
        let s = parse_scenario(&text).unwrap();
        let again = parse_scenario(&serialize_scenario(&s)).unwrap();
        prop_assert_eq!(again, s);
    }
}
