//! The golden suite: every published number the library reproduces, as named
//! expected/actual pairs.

use std::collections::BTreeSet;

use num_rational::BigRational;
use serde::Serialize;

use crate::casework::decompose::{decompose_class, PartsSelector};
use crate::casework::diff::diff_table;
use crate::casework::preimage::{feasible_labels, preimage_configuration_search, preimage_search, PreimageQuery};
use crate::casework::tables::{enumerate_table, printed_table, Constraint, TableCase, TableRow};
use crate::cohomology::{h0, is_effective, verify_no_moving_half};
use crate::config::Configuration::{self, *};
use crate::contraction::{ade_types, format_ade, pullback_decomposition, sigma_intersect, singularity_types, SigmaClass};
use crate::covers::{
    albanese_gate, double_cover_invariants, ramification_check, same_family, surface_numerology,
    DoubleCoverScenario,
};
use crate::curves::{incidence_graph, is_irreducible, line_classes, minus_one_curves, minus_two_curves, ruling_classes};
use crate::error::Result;
use crate::lattice::{anticanonical_class, canonical_class, Basis, DivisorClass};
use crate::scenario::{bundled, report_fields, run_scenario, Scenario};
use crate::symmetry::{generate_group, parse_automorphism, transport_cover_data, verify_line_transitivity};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldenCheck {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

struct Suite(Vec<GoldenCheck>);

impl Suite {
    fn check(&mut self, name: &str, expected: impl ToString, actual: Result<String>) {
        let expected = expected.to_string();
        let (actual, pass) = match actual {
            Ok(a) => {
                let pass = a == expected;
                (a, pass)
            }
            Err(e) => (format!("error: {e}"), false),
        };
        self.0.push(GoldenCheck { name: name.into(), expected, actual, pass });
    }
}

fn curve(s: &str, cfg: Configuration) -> DivisorClass {
    DivisorClass::parse(s, Basis::Curve, cfg).expect("golden literal parses")
}

fn std(s: &str) -> DivisorClass {
    DivisorClass::parse(s, Basis::Standard, General).expect("golden literal parses")
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn render_set(classes: &[DivisorClass], cfg: Configuration) -> String {
    let mut v: Vec<String> = classes.iter().map(|c| c.render(Basis::Curve, cfg)).collect();
    v.sort();
    format!("{{{}}}", v.join(", "))
}

fn scenario_field(name: &str, field: &str) -> Result<String> {
    let s = bundled(name).expect("bundled scenario exists");
    let r = run_scenario(&s)?;
    Ok(report_fields(&r).get(field).map(ToString::to_string).unwrap_or_else(|| "missing".into()))
}

fn lattice_checks(s: &mut Suite) {
    s.check("anticanonical self-intersection", 5, Ok(anticanonical_class().sq().to_string()));
    s.check("canonical class, GENERAL", "-3l+e1+e2+e3+e4", Ok(canonical_class(General).render(Basis::Standard, General)));
    s.check(
        "anticanonical class in P2 curve basis",
        "3l-e1-e2-2e3-e4",
        Ok(anticanonical_class().render(Basis::Curve, P2)),
    );
    s.check("collinearity line in P2 curve basis", "l-e1-e2-2e3", Ok(std("l-e1-e2-e3").render(Basis::Curve, P2)));
    s.check("collinearity line in P6 curve basis", "l-e1-2e2-3e3-3e4", Ok(std("l-e1-e2-e3").render(Basis::Curve, P6)));
}

fn h0_checks(s: &mut Suite) {
    let cases: [(&str, Configuration, &str, i64); 7] = [
        ("h0 of cubics through three points", General, "3l-e1-e2-e3", 7),
        ("h0 of lines through the fourth point", General, "l-e4", 2),
        ("h0 of the anticanonical class", General, "3l-e1-e2-e3-e4", 6),
        ("h0 of conics through four points, P2", P2, "2l-e1-e2-e3-e4", 3),
        ("h0 of conics through four points, P3", P3, "2l-e1-e2-e3-e4", 4),
        ("h0 of 2l-e1-2e2-2e3-e4, P3", P3, "2l-e1-2e2-2e3-e4", 3),
        ("h0 of 2l-e2-e3-2e4, P5", P5, "2l-e2-e3-2e4", 4),
    ];
    for (name, cfg, class, want) in cases {
        s.check(name, want, h0(&curve(class, cfg), cfg).map(|h| h.to_string()));
    }
    for cfg in [P1, P2, P3] {
        s.check(&format!("h0 of l-e4, {cfg}"), 2, h0(&curve("l-e4", cfg), cfg).map(|h| h.to_string()));
    }
    s.check("no moving half-anticanonical class up to coefficient 3", "[]", Ok(format!("{:?}", verify_no_moving_half(3))));
}

fn curve_checks(s: &mut Suite) {
    s.check(
        "(-2)-curves of P1",
        "{l-e1-e2-e3}",
        Ok(render_set(&minus_two_curves(P1).iter().map(|c| c.cls.clone()).collect::<Vec<_>>(), General)),
    );
    let g = incidence_graph(General);
    let degrees: BTreeSet<usize> =
        (0..g.curves.len()).map(|i| (0..g.curves.len()).filter(|&j| j != i && g.matrix[i][j] == 1).count()).collect();
    s.check("GENERAL line count and valence", "10 lines, each meeting 3", Ok(format!("{} lines, each meeting {:?}", g.curves.len(), degrees.iter().next().unwrap_or(&0))));
    let p6 = minus_two_curves(P6);
    let gram: Vec<Vec<i64>> =
        p6.iter().map(|a| p6.iter().map(|b| i64::try_from(a.cls.dot(&b.cls)).unwrap_or(i64::MAX)).collect()).collect();
    s.check(
        "P6 (-2)-curves form one chain",
        "4 curves: A4",
        Ok(format!("{} curves: {}", p6.len(), ade_types(&gram).map(|t| format_ade(&t)).unwrap_or_default())),
    );
    s.check("line through two points is irreducible", "true", is_irreducible(&std("l-e1-e2"), General).map(|b| b.to_string()));
    s.check("no line through three general points", "false", Ok(is_effective(&std("l+e1-e2-e3-e4"), General).to_string()));
    s.check("line through two points is effective", "true", Ok(is_effective(&std("l-e1-e2"), General).to_string()));
    s.check("collinearity curve of P1 is effective", "true", Ok(is_effective(&curve("l-e1-e2-e3", P1), P1).to_string()));
    let counts: Vec<String> = Configuration::ALL.iter().map(|&c| minus_one_curves(c).len().to_string()).collect();
    s.check("(-1)-curve counts GENERAL..P6", "10,7,5,3,4,2,1", Ok(counts.join(",")));
    let rulings = [
        (P1, "{l-e1, l-e2, l-e3}"),
        (P2, "{l-e1}"),
        (P3, "{}"),
        (P4, "{l-e1, l-e2}"),
        (P5, "{l-e1}"),
        (P6, "{}"),
    ];
    for (cfg, want) in rulings {
        s.check(&format!("rulings containing every (-2)-curve, {cfg}"), want, Ok(render_set(&ruling_classes(cfg, true), cfg)));
    }
    s.check("rulings of GENERAL", 5, Ok(ruling_classes(General, false).len().to_string()));
}

fn contraction_checks(s: &mut Suite) {
    let pullbacks = [
        (P4, "l-e3-e4", "l-e3-e4 + 2/3 e3 + 1/3 c"),
        (P4, "e4", "e4 + 2/3 e3 + 1/3 c"),
        (P3, "l-e4", "l-e4 + 1/2 c"),
        (P3, "l-e1-e2-e3", "l-e1-e2-e3 + 2/3 e1 + 1/3 e2"),
        (P5, "l-e2-e3-e4", "l-e2-e3-e4 + 3/4 e2 + 1/2 e3 + 1/4 c"),
    ];
    for (cfg, rep, want) in pullbacks {
        let sc = SigmaClass::new(curve(rep, cfg), cfg);
        s.check(&format!("pullback of {rep}, {cfg}"), want, pullback_decomposition(&sc).map(|p| p.render(&sc.rep, cfg)));
    }
    let products = [
        (P4, "e1", "e1", rat(-1, 3)),
        (P4, "l-e3-e4", "e1", rat(1, 3)),
        (P4, "e2", "e1", rat(2, 3)),
        (P3, "l-e4", "l-e4", rat(1, 2)),
        (P3, "l-e1-e2-e3", "l-e1-e2-e3", rat(2, 3)),
        (P3, "e3", "e3", rat(1, 6)),
        (P5, "l-e2-e3-e4", "l-e2-e3-e4", rat(3, 4)),
        (P5, "e4", "e4", rat(0, 1)),
        (P5, "e4", "e1", rat(1, 2)),
        (P6, "l-e1-e2-e3-e4", "l-e1-e2-e3-e4", rat(4, 5)),
    ];
    for (cfg, a, b, want) in products {
        let (x, y) = (SigmaClass::new(curve(a, cfg), cfg), SigmaClass::new(curve(b, cfg), cfg));
        s.check(&format!("contracted product ({a}).({b}), {cfg}"), want, sigma_intersect(&x, &y).map(|r| r.to_string()));
    }
    let types = ["smooth", "A1", "A1+A1", "A1+A2", "A2", "A3", "A4"];
    for (cfg, want) in Configuration::ALL.iter().zip(types) {
        s.check(&format!("singularities of {cfg}"), want, Ok(format_ade(&singularity_types(*cfg))));
    }
}

fn symmetry_checks(s: &mut Suite) {
    s.check("order of the automorphism group", 120, generate_group().map(|g| g.len().to_string()));
    s.check(
        "transitivity on lines, on disjoint lines from a stabilizer, on disjoint pairs",
        "(true, true, true)",
        verify_line_transitivity().map(|r| {
            format!("({}, {}, {})", r.transitive_on_lines, r.stabilizer_transitive_on_disjoint, r.transitive_on_disjoint_pairs)
        }),
    );
    let tau = parse_automorphism("tau").expect("named automorphism");
    s.check("quadratic transformation of l", "2l-e1-e2-e3", Ok(tau.apply(&std("l")).render(Basis::Standard, General)));
    s.check(
        "quadratic transformation of the conic through four points",
        "l-e4",
        Ok(tau.apply(&std("2l-e1-e2-e3-e4")).render(Basis::Standard, General)),
    );
    let swap = parse_automorphism("swap:34").expect("named automorphism");
    s.check("transposition of e3 and e4", "l-e1-e2-e4", Ok(swap.apply(&std("l-e1-e2-e3")).render(Basis::Standard, General)));

    let data = |name: &str| match bundled(name) {
        Some(Scenario::Bidouble(f)) => f.to_data(),
        _ => unreachable!("bundled bidouble scenario"),
    };
    let result = (|| -> Result<(String, String, bool)> {
        let first = data("bidouble_four_lines")?;
        let second = data("bidouble_with_conic")?;
        let after_tau = transport_cover_data(&second, &tau);
        let d3 = after_tau.total(2).render(Basis::Standard, General);
        let both = transport_cover_data(&second, &parse_automorphism("tau,swap:34")?);
        let totals: Vec<String> = (0..3).map(|i| both.total(i).render(Basis::Standard, General)).collect();
        Ok((d3, totals.join(", "), same_family(&both, &first)))
    })();
    s.check("third branch total after the quadratic transformation", "3l-e1+e2-e3-3e4", result.clone().map(|r| r.0));
    s.check(
        "branch totals after the quadratic transformation and transposition",
        "3l-3e1-e2+e3-e4, 3l+e1-3e2-e3-e4, 3l-e1+e2-3e3-e4",
        result.clone().map(|r| r.1),
    );
    s.check("transported data lies in the four-lines family", "true", result.map(|r| r.2.to_string()));
}

fn cover_checks(s: &mut Suite) {
    for (field, want) in [("chi", "2"), ("k_sq", "14"), ("pg_lower", "3"), ("albanese_gate", "0")] {
        s.check(&format!("half-conic branch: {field}"), want, scenario_field("general_half_conic_branch", field));
    }
    for (field, want) in [("chi", "3"), ("pg_lower", "3")] {
        s.check(&format!("exceptional branch: {field}"), want, scenario_field("general_exceptional_branch", field));
    }
    let integral: Vec<String> = (-8..=-4)
        .rev()
        .filter_map(|d2| {
            let sc = DoubleCoverScenario::from_numbers("family", 1, rat(5, 1), rat(1, 1), rat(d2, 4), None);
            let inv = double_cover_invariants(&sc).ok()?;
            inv.chi_integral.then(|| d2.to_string())
        })
        .collect();
    s.check("branch squares in -8..-4 with integral chi", "-4", Ok(integral.join(",")));
    for (field, want) in [("chi", "2"), ("k_sq", "12"), ("q_lower", "2"), ("albanese_gate", "0")] {
        s.check(&format!("reduced exceptional branch on P1: {field}"), want, scenario_field("p1_reduced_exceptional_branch", field));
    }
    let scenarios = [
        ("p1_minus_two_branch", "2", "2"),
        ("p2_conic_bound", "3", "3"),
        ("p2_pencil_bound", "2", "2"),
        ("p3_reduced_triple_exceptional", "4", "4"),
        ("p3_split_triple_exceptional", "3", "3"),
    ];
    for (name, chi, pg) in scenarios {
        s.check(&format!("{name}: chi"), chi, scenario_field(name, "chi"));
        s.check(&format!("{name}: pg lower bound"), pg, scenario_field(name, "pg_lower"));
    }
    s.check("albanese gate (14, 2)", "false", Ok(albanese_gate(&rat(14, 1), &2.into()).to_string()));
    s.check("albanese gate (12, 2)", "false", Ok(albanese_gate(&rat(12, 1), &2.into()).to_string()));
    for name in ["bidouble_four_lines", "bidouble_with_conic"] {
        let got = (|| {
            let f: Vec<String> =
                ["pg", "q", "k_sq", "bicanonical_is_cover"].iter().map(|k| scenario_field(name, k)).collect::<Result<_>>()?;
            Ok(f.join(","))
        })();
        s.check(&format!("{name}: pg, q, K^2, bicanonical"), "0,0,5,1", got);
    }
    s.check("ramification (-2, -2)", "false", ramification_check(&rat(-2, 1), &rat(-2, 1)).map(|b| b.to_string()));
    s.check("ramification (-4/3, -4/3)", "false", ramification_check(&rat(-4, 3), &rat(-4, 3)).map(|b| b.to_string()));
    let n = surface_numerology(1, 5);
    s.check("euler number, b2, disjoint (-4)-curves for chi 1, K^2 5", "7,5,2", Ok(format!("{},{},{}", n.euler, n.h2, n.max_disjoint_minus4)));
}

fn casework_checks(s: &mut Suite) {
    let rows = |c| enumerate_table(c).into_iter().map(|r| r.into_row()).collect::<BTreeSet<TableRow>>();
    let p4 = rows(TableCase::P4);
    let printed: BTreeSet<TableRow> = printed_table(TableCase::P4).into_iter().collect();
    s.check("A2 table rows", 12, Ok(p4.len().to_string()));
    s.check("A2 table equals the printed table", "true", Ok((p4 == printed).to_string()));
    let p5 = rows(TableCase::P5);
    for r in [TableRow::new(&[1, 1, 1], 2, 4, -6, 2), TableRow::new(&[4, 4, 3], 0, 0, -6, 10)] {
        s.check(&format!("A3 table contains {r}"), "true", Ok(p5.contains(&r).to_string()));
    }
    let d5 = diff_table(TableCase::P5, &enumerate_table(TableCase::P5));
    let flagged = d5
        .printed_only
        .iter()
        .find(|p| p.row == TableRow::new(&[3, 2, 1], 3, 0, -4, 8))
        .map(|p| format!("{:?}", p.violated))
        .unwrap_or_else(|| "not flagged".into());
    s.check("printed A3 row with L^2 = 3 is flagged", format!("{:?}", vec![Constraint::LineSquareRange]), Ok(flagged));
    let p6 = rows(TableCase::P6);
    for r in [TableRow::new(&[1, 2, 2, 1], 2, 3, -4, 2), TableRow::new(&[1, 1, 1, 1], 2, 4, -6, 2)] {
        s.check(&format!("A4 table contains {r}"), "true", Ok(p6.contains(&r).to_string()));
    }
    s.check(
        "two-curve configurations for pullback square -4/3",
        "[\"A2\"]",
        Ok(format!("{:?}", feasible_labels(&preimage_configuration_search(2, &rat(-4, 3), 4)))),
    );
    let joint = preimage_search(&PreimageQuery {
        max_curves: 3,
        target_gram: vec![vec![rat(-1, 1), rat(2, 1)], vec![rat(2, 1), rat(0, 1)]],
        canonical_degree: vec![0, 0],
        pairing_bound: 4,
    });
    s.check("configurations for pullback squares -1 and 0 meeting in 2", "[\"A1+A1\", \"A3\"]", Ok(format!("{:?}", feasible_labels(&joint))));
    let minus_k = anticanonical_class();
    let nef = PartsSelector::Nef.parts(&minus_k, General);
    s.check(
        "two-part splittings of the anticanonical class",
        5,
        decompose_class(&minus_k, &nef, 2, General).map(|v| v.len().to_string()),
    );
    s.check(
        "reducible members of the pencil l-e4",
        3,
        decompose_class(&std("l-e4"), &line_classes(), 2, General).map(|v| v.len().to_string()),
    );
}

pub fn run_golden() -> Vec<GoldenCheck> {
    let mut s = Suite(Vec::new());
    lattice_checks(&mut s);
    h0_checks(&mut s);
    curve_checks(&mut s);
    contraction_checks(&mut s);
    symmetry_checks(&mut s);
    cover_checks(&mut s);
    casework_checks(&mut s);
    s.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_suite_passes() {
        let failed: Vec<GoldenCheck> = run_golden().into_iter().filter(|c| !c.pass).collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }
}
