//! JSON scenario files: `{"kind": "double_cover" | "bidouble" | "constraint_table", ...}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::casework::diff::{diff_table, TableDiff};
use crate::casework::tables::{ConstraintSystem, SolutionRow, TableCase};
use crate::config::Configuration;
use crate::covers::{
    albanese_gate, bidouble_invariants, double_cover_invariants, scenario_from_branch, BidoubleData,
    BidoubleInvariants, BoundClass, CoverClass, DoubleCoverInvariants, DoubleCoverScenario,
};
use crate::error::{Error, Result};
use crate::lattice::{Basis, Coeff, DivisorClass, QDivisorClass};

fn one() -> i64 {
    1
}

fn five() -> Coeff {
    Coeff(BigRational::from_integer(5.into()))
}

fn general() -> Configuration {
    Configuration::General
}

fn standard() -> Basis {
    Basis::Standard
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Scenario {
    DoubleCover(DoubleCoverFile),
    Bidouble(BidoubleFile),
    ConstraintTable(TableFile),
}

/// Half the branch divisor as x·K + φ*(base) on the degree-4 cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchHalf {
    pub canonical: Coeff,
    /// Rational class literal on the quintic del Pezzo, standard basis.
    pub pullback: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundFile {
    pub config: Configuration,
    #[serde(default = "standard")]
    pub basis: Basis,
    pub class: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoubleCoverFile {
    #[serde(default, skip_serializing)]
    kind: Option<String>,
    pub name: String,
    #[serde(default = "one")]
    pub chi_base: i64,
    #[serde(default = "five")]
    pub k_sq: Coeff,
    #[serde(default)]
    pub m_dot_k: Option<Coeff>,
    #[serde(default)]
    pub m_sq: Option<Coeff>,
    #[serde(default)]
    pub branch_half: Option<BranchHalf>,
    #[serde(default)]
    pub pg_bound: Option<BoundFile>,
    /// Expected outputs keyed by report field name.
    #[serde(default)]
    pub expected: BTreeMap<String, Coeff>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BidoubleFile {
    #[serde(default, skip_serializing)]
    kind: Option<String>,
    pub name: String,
    #[serde(default = "general")]
    pub config: Configuration,
    #[serde(default = "standard")]
    pub basis: Basis,
    pub d1: Vec<String>,
    pub d2: Vec<String>,
    pub d3: Vec<String>,
    #[serde(default)]
    pub expected: BTreeMap<String, Coeff>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableFile {
    #[serde(default, skip_serializing)]
    kind: Option<String>,
    pub name: String,
    pub case: TableCase,
    #[serde(default)]
    pub coefficient_bound: Option<i64>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse { input: "scenario file".into(), reason: e.to_string() }
}

/// Parses a scenario, reporting serde's line and column on failure. The body
/// is decoded straight from the text (not through the tagged enum, which
/// buffers and loses positions), so errors point at the offending field.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    #[derive(Deserialize)]
    struct Probe {
        kind: String,
    }
    let probe: Probe = serde_json::from_str::<serde_json::Value>(text)
        .and_then(serde_json::from_value)
        .map_err(json_error)?;
    match probe.kind.as_str() {
        "double_cover" => serde_json::from_str(text).map(Scenario::DoubleCover),
        "bidouble" => serde_json::from_str(text).map(Scenario::Bidouble),
        "constraint_table" => serde_json::from_str(text).map(Scenario::ConstraintTable),
        other => {
            return Err(Error::Parse {
                input: format!("kind `{other}`"),
                reason: "expected double_cover, bidouble or constraint_table".into(),
            })
        }
    }
    .map_err(json_error)
}

impl DoubleCoverFile {
    pub fn to_scenario(&self) -> Result<DoubleCoverScenario> {
        let pg_bound = match &self.pg_bound {
            Some(b) => Some(BoundClass { cfg: b.config, class: DivisorClass::parse(&b.class, b.basis, b.config)? }),
            None => None,
        };
        match (&self.branch_half, &self.m_dot_k, &self.m_sq) {
            (Some(h), None, None) => {
                let base = QDivisorClass::parse(&h.pullback, Basis::Standard, Configuration::General)?;
                let m = CoverClass::canonical().scale(&h.canonical.0).add(&CoverClass::pullback(base));
                if self.k_sq.0 != BigRational::from_integer(5.into()) || self.chi_base != 1 {
                    return Err(Error::Scenario("branch_half assumes chi_base = 1 and K^2 = 5".into()));
                }
                Ok(scenario_from_branch(&self.name, &m, pg_bound))
            }
            (None, Some(mk), Some(msq)) => Ok(DoubleCoverScenario::from_numbers(
                &self.name,
                self.chi_base,
                self.k_sq.0.clone(),
                mk.0.clone(),
                msq.0.clone(),
                pg_bound,
            )),
            _ => Err(Error::Scenario(format!(
                "scenario `{}` needs either branch_half or both m_dot_k and m_sq",
                self.name
            ))),
        }
    }
}

impl BidoubleFile {
    pub fn to_data(&self) -> Result<BidoubleData> {
        let parse = |v: &[String]| -> Result<Vec<DivisorClass>> {
            v.iter().map(|s| DivisorClass::parse(s, self.basis, self.config)).collect()
        };
        Ok(BidoubleData { cfg: self.config, d: [parse(&self.d1)?, parse(&self.d2)?, parse(&self.d3)?] })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoubleCoverReport {
    pub name: String,
    pub m_dot_k: Coeff,
    pub m_sq: Coeff,
    pub chi: Coeff,
    pub chi_integral: bool,
    pub k_sq: Coeff,
    pub pg_lower: Coeff,
    pub q_lower: Coeff,
    /// K_Y² ≥ 16(q − 1) at q = q_lower; absent when χ is not an integer.
    pub albanese_gate: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BidoubleReport {
    pub name: String,
    pub pg: Coeff,
    pub q: Coeff,
    pub k_sq: Coeff,
    pub chi: Coeff,
    pub bicanonical_is_cover: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub name: String,
    pub case: TableCase,
    pub rows: Vec<SolutionRow>,
    pub diff: TableDiff,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Report {
    DoubleCover(DoubleCoverReport),
    Bidouble(BidoubleReport),
    ConstraintTable(TableReport),
}

fn int(n: &BigInt) -> Coeff {
    Coeff(BigRational::from_integer(n.clone()))
}

pub fn double_cover_report(s: &DoubleCoverScenario, inv: &DoubleCoverInvariants) -> DoubleCoverReport {
    let gate = inv.chi_integral.then(|| {
        let q = inv.q_lower.to_integer();
        let q = if q.is_negative() { BigInt::zero() } else { q };
        albanese_gate(&inv.k_y_sq, &q)
    });
    DoubleCoverReport {
        name: s.name.clone(),
        m_dot_k: Coeff(s.m_dot_k.clone()),
        m_sq: Coeff(s.m_sq.clone()),
        chi: Coeff(inv.chi_y.clone()),
        chi_integral: inv.chi_integral,
        k_sq: Coeff(inv.k_y_sq.clone()),
        pg_lower: int(&inv.pg_lower),
        q_lower: Coeff(inv.q_lower.clone()),
        albanese_gate: gate,
    }
}

pub fn bidouble_report(name: &str, inv: &BidoubleInvariants) -> BidoubleReport {
    BidoubleReport {
        name: name.into(),
        pg: int(&inv.pg),
        q: int(&inv.q),
        k_sq: int(&inv.k_sq),
        chi: int(&inv.chi),
        bicanonical_is_cover: inv.bicanonical_is_cover,
    }
}

pub fn run_scenario(s: &Scenario) -> Result<Report> {
    match s {
        Scenario::DoubleCover(f) => {
            let sc = f.to_scenario()?;
            let inv = double_cover_invariants(&sc)?;
            Ok(Report::DoubleCover(double_cover_report(&sc, &inv)))
        }
        Scenario::Bidouble(f) => {
            let inv = bidouble_invariants(&f.to_data()?)?;
            Ok(Report::Bidouble(bidouble_report(&f.name, &inv)))
        }
        Scenario::ConstraintTable(f) => {
            let mut sys = ConstraintSystem::for_case(f.case);
            if let Some(b) = f.coefficient_bound {
                if b < 1 {
                    return Err(Error::Scenario("coefficient_bound must be positive".into()));
                }
                sys = sys.with_coefficient_bound(b);
            }
            let rows = sys.enumerate();
            let diff = diff_table(f.case, &rows);
            Ok(Report::ConstraintTable(TableReport { name: f.name.clone(), case: f.case, rows, diff }))
        }
    }
}

/// Fields of the report as exact numbers (booleans as 0/1), for comparison
/// against a scenario's `expected` block.
pub fn report_fields(r: &Report) -> BTreeMap<String, BigRational> {
    let b = |x: bool| BigRational::from_integer(i64::from(x).into());
    let mut m = BTreeMap::new();
    match r {
        Report::DoubleCover(d) => {
            m.insert("m_dot_k".into(), d.m_dot_k.0.clone());
            m.insert("m_sq".into(), d.m_sq.0.clone());
            m.insert("chi".into(), d.chi.0.clone());
            m.insert("chi_integral".into(), b(d.chi_integral));
            m.insert("k_sq".into(), d.k_sq.0.clone());
            m.insert("pg_lower".into(), d.pg_lower.0.clone());
            m.insert("q_lower".into(), d.q_lower.0.clone());
            if let Some(g) = d.albanese_gate {
                m.insert("albanese_gate".into(), b(g));
            }
        }
        Report::Bidouble(d) => {
            m.insert("pg".into(), d.pg.0.clone());
            m.insert("q".into(), d.q.0.clone());
            m.insert("k_sq".into(), d.k_sq.0.clone());
            m.insert("chi".into(), d.chi.0.clone());
            m.insert("bicanonical_is_cover".into(), b(d.bicanonical_is_cover));
        }
        Report::ConstraintTable(t) => {
            m.insert("rows".into(), BigRational::from_integer(t.rows.len().into()));
            m.insert("matched".into(), BigRational::from_integer(t.diff.matched.len().into()));
        }
    }
    m
}

/// (field, expected, actual) for every mismatch against the scenario's `expected` block.
pub fn check_expected(s: &Scenario, r: &Report) -> Vec<(String, String, String)> {
    let expected = match s {
        Scenario::DoubleCover(f) => &f.expected,
        Scenario::Bidouble(f) => &f.expected,
        Scenario::ConstraintTable(_) => return vec![],
    };
    let actual = report_fields(r);
    expected
        .iter()
        .filter_map(|(k, v)| match actual.get(k) {
            Some(a) if *a == v.0 => None,
            Some(a) => Some((k.clone(), v.0.to_string(), a.to_string())),
            None => Some((k.clone(), v.0.to_string(), "missing".into())),
        })
        .collect()
}

/// Bundled scenario files, by file stem.
pub const BUNDLED: &[(&str, &str)] = &[
    ("bidouble_four_lines", include_str!("../data/scenarios/bidouble_four_lines.json")),
    ("bidouble_with_conic", include_str!("../data/scenarios/bidouble_with_conic.json")),
    ("general_half_conic_branch", include_str!("../data/scenarios/general_half_conic_branch.json")),
    ("general_exceptional_branch", include_str!("../data/scenarios/general_exceptional_branch.json")),
    ("p1_reduced_exceptional_branch", include_str!("../data/scenarios/p1_reduced_exceptional_branch.json")),
    ("p1_minus_two_branch", include_str!("../data/scenarios/p1_minus_two_branch.json")),
    ("p2_conic_bound", include_str!("../data/scenarios/p2_conic_bound.json")),
    ("p2_pencil_bound", include_str!("../data/scenarios/p2_pencil_bound.json")),
    ("p3_reduced_triple_exceptional", include_str!("../data/scenarios/p3_reduced_triple_exceptional.json")),
    ("p3_split_triple_exceptional", include_str!("../data/scenarios/p3_split_triple_exceptional.json")),
    ("table_p5", include_str!("../data/scenarios/table_p5.json")),
];

pub fn bundled(name: &str) -> Option<Scenario> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, t)| parse_scenario(t).expect("bundled scenario parses"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_bundled_match_expectations() {
        for (name, text) in BUNDLED {
            let s = parse_scenario(text).unwrap();
            let r = run_scenario(&s).unwrap();
            assert!(check_expected(&s, &r).is_empty(), "{name}: {:?}", check_expected(&s, &r));
        }
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = parse_scenario("{\n  \"kind\": \"double_cover\",\n  \"name\": 3\n}").unwrap_err();
        match err {
            Error::Parse { reason, .. } => assert!(reason.contains("line 3"), "{reason}"),
            e => panic!("{e:?}"),
        }
        assert!(parse_scenario(r#"{"kind":"triple_cover"}"#).is_err());
    }

    #[test]
    fn needs_branch_data() {
        let s = parse_scenario(r#"{"kind":"double_cover","name":"x","m_sq":-2}"#).unwrap();
        assert!(run_scenario(&s).is_err());
    }
}
