//! Symmetric-difference report between an enumerated table and its printed copy.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use super::tables::{printed_table, Constraint, ConstraintSystem, SolutionRow, TableCase, TableRow};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrintedOnlyRow {
    pub row: TableRow,
    pub violated: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "printed", rename_all = "snake_case")]
pub enum Explanation {
    /// Chain reversal of a printed row; same surface data.
    MirrorDuplicate(TableRow),
    /// A printed row with the same Z, L², L·E, E² but an E·Z that breaks the identity.
    CorrectsPrintedRow(TableRow),
    /// Passes every constraint and has no printed counterpart.
    OmittedFromPrint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumeratorOnlyRow {
    pub row: TableRow,
    pub satisfied: Vec<Constraint>,
    pub explanation: Explanation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableDiff {
    pub case: TableCase,
    pub printed_count: usize,
    pub enumerated_count: usize,
    pub matched: Vec<TableRow>,
    pub printed_only: Vec<PrintedOnlyRow>,
    pub enumerator_only: Vec<EnumeratorOnlyRow>,
    /// Pairs of printed rows that are chain reversals of each other.
    pub printed_mirror_pairs: Vec<(TableRow, TableRow)>,
}

impl TableDiff {
    pub fn is_exact(&self) -> bool {
        self.printed_only.is_empty() && self.enumerator_only.is_empty()
    }

    pub fn render(&self) -> String {
        let c = self.case;
        let mut s = String::new();
        let _ = writeln!(
            s,
            "table {c}: {} printed, {} enumerated, {} matched",
            self.printed_count,
            self.enumerated_count,
            self.matched.len()
        );
        for p in &self.printed_only {
            let names: Vec<String> = p.violated.iter().map(|v| format!("{v:?} [{}]", v.describe(c))).collect();
            let _ = writeln!(s, "only printed    {}  violates {}", p.row, names.join("; "));
        }
        for e in &self.enumerator_only {
            let why = match &e.explanation {
                Explanation::MirrorDuplicate(r) => format!("mirror of printed {r}"),
                Explanation::CorrectsPrintedRow(r) => format!("corrects E.Z of printed {r}"),
                Explanation::OmittedFromPrint => "valid, absent from print".into(),
            };
            let names: Vec<String> = e.satisfied.iter().map(|v| format!("{v:?}")).collect();
            let _ = writeln!(s, "only enumerated {}  {why}; satisfies {}", e.row, names.join(", "));
        }
        for (a, b) in &self.printed_mirror_pairs {
            let _ = writeln!(s, "printed mirror pair {a} ~ {b}");
        }
        s
    }
}

pub fn diff_against(case: TableCase, enumerated: &[SolutionRow], printed: &[TableRow]) -> TableDiff {
    let system = ConstraintSystem::for_case(case);
    let ours: BTreeSet<TableRow> = enumerated.iter().map(|r| r.row().clone()).collect();
    let theirs: BTreeSet<TableRow> = printed.iter().cloned().collect();

    let matched = ours.intersection(&theirs).cloned().collect();
    let printed_only = theirs
        .difference(&ours)
        .map(|r| PrintedOnlyRow { row: r.clone(), violated: system.violations(r) })
        .collect();
    let enumerator_only = ours
        .difference(&theirs)
        .map(|r| {
            let mirror = r.mirrored();
            let explanation = if mirror != *r && theirs.contains(&mirror) {
                Explanation::MirrorDuplicate(mirror)
            } else if let Some(p) = theirs.iter().find(|p| {
                p.z == r.z && p.l_sq == r.l_sq && p.l_dot_e == r.l_dot_e && p.e_sq == r.e_sq && p.e_dot_z != r.e_dot_z
            }) {
                Explanation::CorrectsPrintedRow(p.clone())
            } else {
                Explanation::OmittedFromPrint
            };
            EnumeratorOnlyRow { row: r.clone(), satisfied: system.constraints.clone(), explanation }
        })
        .collect();
    let mut printed_mirror_pairs = Vec::new();
    for r in &theirs {
        let m = r.mirrored();
        if m > *r && theirs.contains(&m) {
            printed_mirror_pairs.push((r.clone(), m));
        }
    }
    TableDiff {
        case,
        printed_count: printed.len(),
        enumerated_count: ours.len(),
        matched,
        printed_only,
        enumerator_only,
        printed_mirror_pairs,
    }
}

pub fn diff_table(case: TableCase, enumerated: &[SolutionRow]) -> TableDiff {
    diff_against(case, enumerated, &printed_table(case))
}
