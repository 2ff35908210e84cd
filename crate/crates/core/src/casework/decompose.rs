//! Splittings of a class into effective parts.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::cohomology::{h0, is_effective};
use crate::config::Configuration;
use crate::curves::{line_classes, negative_curves};
use crate::error::{Error, Result};
use crate::lattice::{anticanonical_class, Basis, DivisorClass};

/// All multisets of at most `max_parts` elements of `parts` summing to `target`,
/// each sorted, the list sorted and free of repeats.
pub fn decompose_class(
    target: &DivisorClass,
    parts: &[DivisorClass],
    max_parts: usize,
    cfg: Configuration,
) -> Result<Vec<Vec<DivisorClass>>> {
    let parts: Vec<DivisorClass> = parts.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    if let Some(bad) = parts.iter().find(|p| !is_effective(p, cfg)) {
        return Err(Error::NotEffective(bad.render(Basis::Curve, cfg)));
    }
    let mut out = BTreeSet::new();
    let mut chosen = Vec::new();
    extend(target, &parts, 0, max_parts, &mut chosen, &mut out);
    Ok(out.into_iter().collect())
}

fn extend(
    remaining: &DivisorClass,
    parts: &[DivisorClass],
    from: usize,
    budget: usize,
    chosen: &mut Vec<DivisorClass>,
    out: &mut BTreeSet<Vec<DivisorClass>>,
) {
    if remaining.is_zero() {
        out.insert(chosen.clone());
    }
    if budget == 0 {
        return;
    }
    // effective classes have non-negative anticanonical degree
    if remaining.anticanonical_degree().is_negative() {
        return;
    }
    for (i, p) in parts.iter().enumerate().skip(from) {
        chosen.push(p.clone());
        extend(&(remaining - p), parts, i, budget - 1, chosen, out);
        chosen.pop();
    }
}

/// Named sets of parts for the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartsSelector {
    /// The ten (−1)-classes.
    Lines,
    /// The negative curves of the configuration.
    NegativeCurves,
    /// Nef effective classes of degree 1..=deg(target), other than the lines and the target.
    Nef,
}

impl FromStr for PartsSelector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lines" => Ok(PartsSelector::Lines),
            "negative" | "negative-curves" => Ok(PartsSelector::NegativeCurves),
            "nef" => Ok(PartsSelector::Nef),
            _ => Err(Error::Parse { input: s.into(), reason: "parts must be lines, negative or nef".into() }),
        }
    }
}

impl fmt::Display for PartsSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PartsSelector::Lines => "lines",
            PartsSelector::NegativeCurves => "negative",
            PartsSelector::Nef => "nef",
        })
    }
}

impl PartsSelector {
    pub fn parts(self, target: &DivisorClass, cfg: Configuration) -> Vec<DivisorClass> {
        match self {
            PartsSelector::Lines => line_classes(),
            PartsSelector::NegativeCurves => negative_curves(cfg).into_iter().map(|c| c.cls).collect(),
            PartsSelector::Nef => nef_parts(target, cfg),
        }
    }
}

fn nef_parts(target: &DivisorClass, cfg: Configuration) -> Vec<DivisorClass> {
    let deg = target.anticanonical_degree();
    let Ok(d) = i64::try_from(&deg) else { return vec![] };
    if d < 1 {
        return vec![];
    }
    let lines: BTreeSet<DivisorClass> = line_classes().into_iter().collect();
    let negs = negative_curves(cfg);
    let minus_k = anticanonical_class();
    let mut out = Vec::new();
    for a in 0..=d {
        for c1 in -d..=d {
            for c2 in -d..=d {
                for c3 in -d..=d {
                    for c4 in -d..=d {
                        let x = DivisorClass::new([a, c1, c2, c3, c4]);
                        let xd = x.dot(&minus_k);
                        if xd < BigInt::one() || xd > deg || &x == target || lines.contains(&x) {
                            continue;
                        }
                        if negs.iter().any(|c| x.dot(&c.cls).is_negative()) {
                            continue;
                        }
                        if h0(&x, cfg).map(|h| h >= BigInt::one()).unwrap_or(false) {
                            out.push(x);
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Configuration::General;

    fn c(s: &str) -> DivisorClass {
        DivisorClass::parse(s, Basis::Curve, General).unwrap()
    }

    fn set(v: &[&[&str]]) -> Vec<Vec<DivisorClass>> {
        let mut out: Vec<Vec<DivisorClass>> = v
            .iter()
            .map(|m| {
                let mut m: Vec<DivisorClass> = m.iter().map(|s| c(s)).collect();
                m.sort();
                m
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn anticanonical_splits() {
        let t = anticanonical_class();
        let parts = PartsSelector::Nef.parts(&t, General);
        let got = decompose_class(&t, &parts, 2, General).unwrap();
        let want = set(&[
            &["l", "2l-e1-e2-e3-e4"],
            &["l-e1", "2l-e2-e3-e4"],
            &["l-e2", "2l-e1-e3-e4"],
            &["l-e3", "2l-e1-e2-e4"],
            &["l-e4", "2l-e1-e2-e3"],
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn conic_through_lines() {
        let got = decompose_class(&c("l-e4"), &line_classes(), 2, General).unwrap();
        assert_eq!(got, set(&[&["l-e1-e4", "e1"], &["l-e2-e4", "e2"], &["l-e3-e4", "e3"]]));
    }

    #[test]
    fn zero_target() {
        let got = decompose_class(&DivisorClass::zero(), &line_classes(), 3, General).unwrap();
        assert_eq!(got, vec![Vec::<DivisorClass>::new()]);
    }

    #[test]
    fn rejects_non_effective() {
        assert!(decompose_class(&c("l"), &[c("e1-e2")], 2, General).is_err());
    }
}
