//! The three Diophantine tables: for a branch part Z = Σ zᵢθᵢ over an Aₙ chain
//! of (−2)-curves, together with the moving class L and the (−1)-pullback E.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableCase {
    P4,
    P5,
    P6,
}

impl TableCase {
    pub const ALL: [TableCase; 3] = [TableCase::P4, TableCase::P5, TableCase::P6];

    /// Number of (−2)-curves carrying Z.
    pub fn chain_length(self) -> usize {
        match self {
            TableCase::P4 => 2,
            TableCase::P5 => 3,
            TableCase::P6 => 4,
        }
    }

    fn line_index(self) -> usize {
        match self {
            TableCase::P4 => 3,
            TableCase::P5 => 2,
            TableCase::P6 => 1,
        }
    }

    pub fn header(self) -> String {
        let z = ["a", "b", "c", "d"][..self.chain_length()].join(",");
        let i = self.line_index();
        format!("{z},L{i}^2,L{i}E4,E4^2,E4Z")
    }

    pub fn name(self) -> &'static str {
        match self {
            TableCase::P4 => "p4",
            TableCase::P5 => "p5",
            TableCase::P6 => "p6",
        }
    }
}

impl fmt::Display for TableCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TableCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "p4" => Ok(TableCase::P4),
            "p5" => Ok(TableCase::P5),
            "p6" => Ok(TableCase::P6),
            _ => Err(Error::Parse { input: s.into(), reason: "table case must be p4, p5 or p6".into() }),
        }
    }
}

/// One line of a table, valid or not.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TableRow {
    pub z: Vec<i64>,
    pub l_sq: i64,
    pub l_dot_e: i64,
    pub e_sq: i64,
    pub e_dot_z: i64,
}

impl TableRow {
    pub fn new(z: &[i64], l_sq: i64, l_dot_e: i64, e_sq: i64, e_dot_z: i64) -> Self {
        TableRow { z: z.to_vec(), l_sq, l_dot_e, e_sq, e_dot_z }
    }

    /// The same data read along the chain in the opposite direction.
    pub fn mirrored(&self) -> TableRow {
        let mut m = self.clone();
        m.z.reverse();
        m
    }

    pub fn fields(&self) -> Vec<i64> {
        self.z.iter().copied().chain([self.l_sq, self.l_dot_e, self.e_sq, self.e_dot_z]).collect()
    }

    pub fn to_csv(&self) -> String {
        self.fields().iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z: Vec<String> = self.z.iter().map(ToString::to_string).collect();
        write!(f, "({} | {}, {}, {}, {})", z.join(","), self.l_sq, self.l_dot_e, self.e_sq, self.e_dot_z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Constraint {
    PositiveCoefficients,
    LineSquareRange,
    ExceptionalSquareRange,
    LineDotExceptionalNonnegative,
    LineDotBranchPositive,
    LineDotExceptionalBelowFive,
    ExceptionalDotBranchPositive,
    ExceptionalDotBranchIdentity,
    BranchSquare,
    ChainInequalities,
    MirrorTieBreak,
    MinCoefficient,
}

impl Constraint {
    pub fn describe(self, case: TableCase) -> String {
        let n = case.chain_length();
        match self {
            Constraint::PositiveCoefficients => "every Z coefficient is >= 1".into(),
            Constraint::LineSquareRange => "L^2 = 0 or 2".into(),
            Constraint::ExceptionalSquareRange => "E^2 in {-2,-4,-6}".into(),
            Constraint::LineDotExceptionalNonnegative => "L.E >= 0 (L moves)".into(),
            Constraint::LineDotBranchPositive => "L.Z = 8 - 2L^2 - L.E > 0".into(),
            Constraint::LineDotExceptionalBelowFive => "L.E < 5".into(),
            Constraint::ExceptionalDotBranchPositive => "E.Z = 4 - E^2 - 2L.E > 0".into(),
            Constraint::ExceptionalDotBranchIdentity => "listed E.Z equals 4 - E^2 - 2L.E".into(),
            Constraint::BranchSquare => {
                format!("-Z^2/2 over the A{n} chain = 10 - 2L^2 - 2L.E - E^2/2")
            }
            Constraint::ChainInequalities => "Z.theta_i <= 0 for every curve of the chain".into(),
            Constraint::MirrorTieBreak => match case {
                TableCase::P4 => "b <= a".into(),
                TableCase::P5 => "a >= c".into(),
                TableCase::P6 => "a >= d".into(),
            },
            Constraint::MinCoefficient => match case {
                TableCase::P4 => "min{a,b} <= 8".into(),
                _ => "min{a,b,c} <= 10".into(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub case: TableCase,
    pub chain_length: usize,
    pub constraints: Vec<Constraint>,
    pub min_coefficient_bound: Option<i64>,
    /// Scan range for each Z coefficient: 1..=coefficient_bound.
    pub coefficient_bound: i64,
}

/// −Z²/2 for Z = Σ zᵢθᵢ on an Aₙ chain.
pub fn chain_form(z: &[i64]) -> i64 {
    z.iter().map(|x| x * x).sum::<i64>() - z.windows(2).map(|w| w[0] * w[1]).sum::<i64>()
}

/// Z·θᵢ for each curve of the chain.
pub fn chain_pairings(z: &[i64]) -> Vec<i64> {
    (0..z.len())
        .map(|i| {
            let left = if i > 0 { z[i - 1] } else { 0 };
            let right = z.get(i + 1).copied().unwrap_or(0);
            left - 2 * z[i] + right
        })
        .collect()
}

impl ConstraintSystem {
    pub fn for_case(case: TableCase) -> Self {
        use Constraint::*;
        let mut constraints = vec![
            PositiveCoefficients,
            LineSquareRange,
            ExceptionalSquareRange,
            LineDotExceptionalNonnegative,
        ];
        let min_coefficient_bound = match case {
            TableCase::P4 => {
                constraints.push(LineDotBranchPositive);
                Some(8)
            }
            TableCase::P5 => {
                constraints.push(LineDotExceptionalBelowFive);
                Some(10)
            }
            TableCase::P6 => {
                constraints.push(LineDotExceptionalBelowFive);
                None
            }
        };
        constraints.extend([ExceptionalDotBranchPositive, ExceptionalDotBranchIdentity, BranchSquare, ChainInequalities, MirrorTieBreak]);
        if min_coefficient_bound.is_some() {
            constraints.push(MinCoefficient);
        }
        ConstraintSystem { case, chain_length: case.chain_length(), constraints, min_coefficient_bound, coefficient_bound: 16 }
    }

    pub fn with_coefficient_bound(mut self, bound: i64) -> Self {
        self.coefficient_bound = bound;
        self
    }

    fn holds(&self, c: Constraint, r: &TableRow) -> bool {
        use Constraint::*;
        let z = &r.z;
        match c {
            PositiveCoefficients => z.len() == self.chain_length && z.iter().all(|&x| x >= 1),
            LineSquareRange => r.l_sq == 0 || r.l_sq == 2,
            ExceptionalSquareRange => [-2, -4, -6].contains(&r.e_sq),
            LineDotExceptionalNonnegative => r.l_dot_e >= 0,
            LineDotBranchPositive => 8 - 2 * r.l_sq - r.l_dot_e > 0,
            LineDotExceptionalBelowFive => r.l_dot_e < 5,
            ExceptionalDotBranchPositive => r.e_dot_z > 0,
            ExceptionalDotBranchIdentity => r.e_dot_z == 4 - r.e_sq - 2 * r.l_dot_e,
            // both sides doubled to stay integral
            BranchSquare => 2 * chain_form(z) == 20 - 4 * r.l_sq - 4 * r.l_dot_e - r.e_sq,
            ChainInequalities => chain_pairings(z).iter().all(|&p| p <= 0),
            MirrorTieBreak => z.first() >= z.last(),
            MinCoefficient => {
                let bound = self.min_coefficient_bound.unwrap_or(i64::MAX);
                z.iter().min().is_some_and(|&m| m <= bound)
            }
        }
    }

    /// Constraints the row fails, in declaration order.
    pub fn violations(&self, r: &TableRow) -> Vec<Constraint> {
        self.constraints.iter().copied().filter(|&c| !self.holds(c, r)).collect()
    }

    /// Exhaustive scan. L·E is solved from the quadratic relation rather than
    /// scanned, so this path shares no code with `violations`.
    pub fn enumerate(&self) -> Vec<SolutionRow> {
        let n = self.chain_length;
        let b = self.coefficient_bound;
        let mut out = BTreeSet::new();
        let mut z = vec![1i64; n];
        loop {
            let form: i64 = {
                let sq: i64 = z.iter().map(|x| x * x).sum();
                let cross: i64 = (1..n).map(|i| z[i - 1] * z[i]).sum();
                sq - cross
            };
            let chain_ok = (0..n).all(|i| {
                let l = if i == 0 { 0 } else { z[i - 1] };
                let r = if i + 1 == n { 0 } else { z[i + 1] };
                2 * z[i] >= l + r
            });
            let tie_ok = z[0] >= z[n - 1];
            let min_ok = self.min_coefficient_bound.is_none_or(|m| *z.iter().min().unwrap() <= m);
            if chain_ok && tie_ok && min_ok {
                for l_sq in [0i64, 2] {
                    for e_sq in [-2i64, -4, -6] {
                        let four_le = 20 - 4 * l_sq - e_sq - 2 * form;
                        if four_le < 0 || four_le % 4 != 0 {
                            continue;
                        }
                        let le = four_le / 4;
                        let line_ok = match self.case {
                            TableCase::P4 => 8 - 2 * l_sq - le > 0,
                            _ => le < 5,
                        };
                        let ez = 4 - e_sq - 2 * le;
                        if line_ok && ez > 0 {
                            out.insert(TableRow::new(&z, l_sq, le, e_sq, ez));
                        }
                    }
                }
            }
            // odometer over 1..=b
            let mut i = n;
            loop {
                if i == 0 {
                    return out
                        .into_iter()
                        .map(|r| SolutionRow::new(self, r).expect("generated row must re-validate"))
                        .collect();
                }
                i -= 1;
                if z[i] < b {
                    z[i] += 1;
                    break;
                }
                z[i] = 1;
            }
        }
    }
}

/// A row certified against its constraint system.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SolutionRow {
    row: TableRow,
}

impl SolutionRow {
    pub fn new(system: &ConstraintSystem, row: TableRow) -> std::result::Result<Self, Vec<Constraint>> {
        let v = system.violations(&row);
        if v.is_empty() {
            Ok(SolutionRow { row })
        } else {
            Err(v)
        }
    }

    pub fn row(&self) -> &TableRow {
        &self.row
    }

    pub fn into_row(self) -> TableRow {
        self.row
    }
}

impl std::ops::Deref for SolutionRow {
    type Target = TableRow;
    fn deref(&self) -> &TableRow {
        &self.row
    }
}

pub fn enumerate_table(case: TableCase) -> Vec<SolutionRow> {
    ConstraintSystem::for_case(case).enumerate()
}

pub fn enumerate_table_p4() -> Vec<SolutionRow> {
    enumerate_table(TableCase::P4)
}

pub fn enumerate_table_p5() -> Vec<SolutionRow> {
    enumerate_table(TableCase::P5)
}

pub fn enumerate_table_p6() -> Vec<SolutionRow> {
    enumerate_table(TableCase::P6)
}

pub fn parse_table_csv(case: TableCase, text: &str) -> Result<Vec<TableRow>> {
    let width = case.chain_length() + 4;
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with(|c: char| c.is_ascii_alphabetic()) {
            continue;
        }
        let err = |reason: String| Error::Parse { input: format!("line {}: {line}", lineno + 1), reason };
        let v: Vec<i64> = line
            .split(',')
            .map(|f| f.trim().parse::<i64>().map_err(|e| err(e.to_string())))
            .collect::<Result<_>>()?;
        if v.len() != width {
            return Err(err(format!("expected {width} fields, found {}", v.len())));
        }
        let n = case.chain_length();
        out.push(TableRow::new(&v[..n], v[n], v[n + 1], v[n + 2], v[n + 3]));
    }
    Ok(out)
}

/// The tables as printed, in printed order.
pub fn printed_table(case: TableCase) -> Vec<TableRow> {
    let text = match case {
        TableCase::P4 => include_str!("../../data/tables/p4.csv"),
        TableCase::P5 => include_str!("../../data/tables/p5.csv"),
        TableCase::P6 => include_str!("../../data/tables/p6.csv"),
    };
    parse_table_csv(case, text).expect("bundled table is well formed")
}

pub fn table_csv<'a>(case: TableCase, rows: impl IntoIterator<Item = &'a TableRow>) -> String {
    let mut s = case.header();
    s.push('\n');
    for r in rows {
        s.push_str(&r.to_csv());
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(case: TableCase) -> BTreeSet<TableRow> {
        enumerate_table(case).into_iter().map(SolutionRow::into_row).collect()
    }

    #[test]
    fn p4_matches_print() {
        let got = rows(TableCase::P4);
        let printed: BTreeSet<TableRow> = printed_table(TableCase::P4).into_iter().collect();
        assert_eq!(got.len(), 12);
        assert_eq!(got, printed);
        assert!(got.contains(&TableRow::new(&[2, 1], 2, 2, -2, 2)));
        assert!(got.contains(&TableRow::new(&[4, 3], 0, 0, -6, 10)));
    }

    #[test]
    fn p5_examples() {
        let got = rows(TableCase::P5);
        assert!(got.contains(&TableRow::new(&[1, 1, 1], 2, 4, -6, 2)));
        assert!(got.contains(&TableRow::new(&[4, 4, 3], 0, 0, -6, 10)));
        let bad = TableRow::new(&[3, 2, 1], 3, 0, -4, 8);
        assert!(!got.contains(&bad));
        let sys = ConstraintSystem::for_case(TableCase::P5);
        assert_eq!(sys.violations(&bad), vec![Constraint::LineSquareRange]);
    }

    #[test]
    fn p6_examples() {
        let got = rows(TableCase::P6);
        assert!(got.contains(&TableRow::new(&[1, 2, 2, 1], 2, 3, -4, 2)));
        assert!(got.contains(&TableRow::new(&[1, 1, 1, 1], 2, 4, -6, 2)));
    }

    #[test]
    fn chain_helpers() {
        assert_eq!(chain_form(&[2, 1]), 3);
        assert_eq!(chain_pairings(&[1, 2, 2, 1]), vec![0, -1, -1, 0]);
    }

    #[test]
    fn csv_round_trip() {
        let printed = printed_table(TableCase::P5);
        let text = table_csv(TableCase::P5, &printed);
        assert!(text.starts_with("a,b,c,L2^2,L2E4,E4^2,E4Z\n"));
        assert_eq!(parse_table_csv(TableCase::P5, &text).unwrap(), printed);
        assert!(parse_table_csv(TableCase::P4, "1,2,3").is_err());
    }
}
