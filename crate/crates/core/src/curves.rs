//! Negative curves, their incidence matrix, and conic-bundle (ruling) classes.

use std::sync::OnceLock;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cohomology::h0;
use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::lattice::{anticanonical_class, Basis, DivisorClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CurveKind {
    #[serde(rename = "-1")]
    MinusOne,
    #[serde(rename = "-2")]
    MinusTwo,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NegativeCurve {
    pub cls: DivisorClass,
    pub kind: CurveKind,
}

/// The ten (−1)-classes: ε₁..ε₄, then L − εᵢ − εⱼ for i < j.
pub fn line_classes() -> Vec<DivisorClass> {
    let mut out: Vec<DivisorClass> = (1..=4).map(DivisorClass::e).collect();
    for i in 1..=4 {
        for j in i + 1..=4 {
            out.push(&(&DivisorClass::l() - &DivisorClass::e(i)) - &DivisorClass::e(j));
        }
    }
    out
}

fn minus_two_candidates(cfg: Configuration) -> Vec<DivisorClass> {
    let mut out = Vec::new();
    let col = cfg.collinear_set();
    if !col.is_empty() {
        let mut c = DivisorClass::l();
        for &i in col {
            c -= &DivisorClass::e(i);
        }
        out.push(c);
    }
    for chain in cfg.near_chains() {
        for w in chain.windows(2) {
            out.push(&DivisorClass::e(w[0]) - &DivisorClass::e(w[1]));
        }
    }
    out
}

struct Inventory {
    minus_one: Vec<NegativeCurve>,
    minus_two: Vec<NegativeCurve>,
}

fn inventory(cfg: Configuration) -> &'static Inventory {
    static CACHE: OnceLock<Vec<Inventory>> = OnceLock::new();
    &CACHE.get_or_init(|| {
        Configuration::ALL
            .iter()
            .map(|&cfg| {
                let minus_two: Vec<NegativeCurve> = minus_two_candidates(cfg)
                    .into_iter()
                    .map(|cls| NegativeCurve { cls, kind: CurveKind::MinusTwo })
                    .collect();
                let minus_one = line_classes()
                    .into_iter()
                    .filter(|c| minus_two.iter().all(|t| !c.dot(&t.cls).is_negative()))
                    .map(|cls| NegativeCurve { cls, kind: CurveKind::MinusOne })
                    .collect();
                Inventory { minus_one, minus_two }
            })
            .collect::<Vec<_>>()
    })[cfg.index()]
}

pub fn minus_two_curves(cfg: Configuration) -> &'static [NegativeCurve] {
    &inventory(cfg).minus_two
}

pub fn minus_one_curves(cfg: Configuration) -> &'static [NegativeCurve] {
    &inventory(cfg).minus_one
}

/// (−1)-curves followed by (−2)-curves.
pub fn negative_curves(cfg: Configuration) -> Vec<NegativeCurve> {
    let inv = inventory(cfg);
    inv.minus_one.iter().chain(&inv.minus_two).cloned().collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceGraph {
    pub curves: Vec<NegativeCurve>,
    pub matrix: Vec<Vec<i64>>,
}

pub fn incidence_graph(cfg: Configuration) -> IncidenceGraph {
    let curves = negative_curves(cfg);
    let matrix = curves
        .iter()
        .map(|a| curves.iter().map(|b| a.cls.dot(&b.cls).to_i64().expect("small pairing")).collect())
        .collect();
    IncidenceGraph { curves, matrix }
}

pub fn curve_kind(d: &DivisorClass) -> Option<CurveKind> {
    let sq = d.sq();
    let deg = d.anticanonical_degree();
    if sq == (-1).into() && deg == 1.into() {
        Some(CurveKind::MinusOne)
    } else if sq == (-2).into() && deg.is_zero() {
        Some(CurveKind::MinusTwo)
    } else {
        None
    }
}

/// Mori-cone test: a negative class is a curve iff it meets every other
/// irreducible negative curve non-negatively.
pub fn is_irreducible(d: &DivisorClass, cfg: Configuration) -> Result<bool> {
    if curve_kind(d).is_none() {
        return Err(Error::NotNegativeClass(d.to_string()));
    }
    Ok(negative_curves(cfg).iter().filter(|c| &c.cls != d).all(|c| !d.dot(&c.cls).is_negative()))
}

/// The name the exceptional-curve notation gives a negative curve: `c` for the
/// collinearity class, otherwise its curve-basis rendering.
pub fn curve_label(d: &DivisorClass, cfg: Configuration) -> String {
    let col = cfg.collinear_set();
    if !col.is_empty() && minus_two_candidates(cfg).first() == Some(d) {
        return "c".into();
    }
    d.render(Basis::Curve, cfg)
}

/// Classes f with f² = 0, −K·f = 2 that move in a pencil without fixed part.
pub fn ruling_classes(cfg: Configuration, require_minus_two_orthogonal: bool) -> Vec<DivisorClass> {
    let minus_k = anticanonical_class();
    let negs = negative_curves(cfg);
    let mut out = Vec::new();
    let r = -3i64..=3;
    for a in r.clone() {
        for b1 in r.clone() {
            for b2 in r.clone() {
                for b3 in r.clone() {
                    for b4 in r.clone() {
                        let f = DivisorClass::new([a, b1, b2, b3, b4]);
                        if !f.sq().is_zero() || f.dot(&minus_k) != 2.into() {
                            continue;
                        }
                        if negs.iter().any(|c| f.dot(&c.cls).is_negative()) {
                            continue;
                        }
                        if require_minus_two_orthogonal
                            && minus_two_curves(cfg).iter().any(|t| !f.dot(&t.cls).is_zero())
                        {
                            continue;
                        }
                        if h0(&f, cfg).map(|h| h >= 2.into()).unwrap_or(false) {
                            out.push(f);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Configuration::*;

    #[test]
    fn minus_two_inventory() {
        assert!(minus_two_curves(General).is_empty());
        assert_eq!(minus_two_curves(P1).len(), 1);
        assert_eq!(minus_two_curves(P1)[0].cls, DivisorClass::new([1, -1, -1, -1, 0]));
        let p6: Vec<_> = minus_two_curves(P6).iter().map(|c| c.cls.clone()).collect();
        assert_eq!(p6.len(), 4);
        assert!(p6.contains(&DivisorClass::new([0, 0, 0, 1, -1])));
    }

    #[test]
    fn minus_one_counts() {
        let counts: Vec<usize> = Configuration::ALL.iter().map(|&c| minus_one_curves(c).len()).collect();
        assert_eq!(counts, vec![10, 7, 5, 3, 4, 2, 1]);
        for c in minus_one_curves(General) {
            let meets = minus_one_curves(General).iter().filter(|d| c.cls.dot(&d.cls) == 1.into()).count();
            assert_eq!(meets, 3);
        }
    }

    #[test]
    fn irreducibility() {
        let g = DivisorClass::new([1, -1, -1, 0, 0]);
        assert!(is_irreducible(&g, General).unwrap());
        assert!(!is_irreducible(&g, P1).unwrap());
        assert!(is_irreducible(&DivisorClass::e(3), P2).unwrap());
        assert!(!is_irreducible(&DivisorClass::e(2), P2).unwrap());
        assert!(is_irreducible(&DivisorClass::l(), General).is_err());
    }

    #[test]
    fn p2_curves_disjoint() {
        let ts = minus_two_curves(P2);
        assert_eq!(ts[0].cls.dot(&ts[1].cls), 0.into());
    }

    #[test]
    fn labels() {
        assert_eq!(curve_label(&minus_two_curves(P4)[0].cls, P4), "c");
        assert_eq!(curve_label(&minus_two_curves(P4)[1].cls, P4), "e3");
    }

    #[test]
    fn general_rulings() {
        let r = ruling_classes(General, false);
        assert_eq!(r.len(), 5);
        assert!(r.contains(&DivisorClass::new([2, -1, -1, -1, -1])));
    }
}
