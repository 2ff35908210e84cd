//! h⁰ by fixed-part reduction followed by Riemann–Roch on the nef remainder.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::config::Configuration;
use crate::curves::{minus_two_curves, negative_curves};
use crate::error::{Error, Result};
use crate::lattice::{anticanonical_class, riemann_roch_chi, DivisorClass};
use crate::linalg;

pub const ITERATION_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub steps: Vec<(DivisorClass, BigInt)>,
    /// The nef remainder, or `None` when the reduction proved d non-effective.
    pub residual: Option<DivisorClass>,
    pub h0: BigInt,
}

fn trace_string(steps: &[(DivisorClass, BigInt)]) -> String {
    steps.iter().map(|(c, m)| format!("-{m}*({c})")).collect::<Vec<_>>().join(" ")
}

/// True when d is a non-negative integer combination of the (−2)-curves.
fn in_minus_two_cone(d: &DivisorClass, cfg: Configuration) -> bool {
    let thetas = minus_two_curves(cfg);
    if thetas.is_empty() {
        return d.is_zero();
    }
    // The (−2)-curves are independent, so the coefficients are the solution of
    // the Gram system (Σ xᵢθᵢ)·θⱼ = d·θⱼ.
    let gram: linalg::Matrix = thetas
        .iter()
        .map(|a| thetas.iter().map(|b| BigRational::from_integer(a.cls.dot(&b.cls))).collect())
        .collect();
    let rhs: Vec<BigRational> = thetas.iter().map(|t| BigRational::from_integer(d.dot(&t.cls))).collect();
    let Ok(x) = linalg::solve(&gram, &rhs) else { return false };
    if x.iter().any(|v| !v.is_integer() || v.is_negative()) {
        return false;
    }
    let mut sum = DivisorClass::zero();
    for (v, t) in x.iter().zip(thetas) {
        sum += &(&v.to_integer() * &t.cls);
    }
    &sum == d
}

pub fn h0_with_trace(d: &DivisorClass, cfg: Configuration) -> Result<Reduction> {
    let minus_k = anticanonical_class();
    let negs = negative_curves(cfg);
    let mut cur = d.clone();
    let mut steps = Vec::new();
    let zero = |steps| Ok(Reduction { steps, residual: None, h0: BigInt::zero() });
    if cur.dot(&minus_k).is_negative() {
        return zero(steps);
    }
    while let Some(c) = negs.iter().find(|c| cur.dot(&c.cls).is_negative()) {
        if steps.len() >= ITERATION_CAP {
            return Err(Error::IterationCap { cap: ITERATION_CAP, trace: trace_string(&steps) });
        }
        // both pairings negative, so this is the positive ceiling of their quotient
        let m = cur.dot(&c.cls).div_ceil(&c.cls.sq());
        cur -= &(&m * &c.cls);
        steps.push((c.cls.clone(), m));
        if cur.dot(&minus_k).is_negative() {
            return zero(steps);
        }
    }
    let deg = cur.dot(&minus_k);
    let h0 = if deg.is_positive() {
        riemann_roch_chi(&cur)?
    } else if cur.is_zero() || in_minus_two_cone(&cur, cfg) {
        BigInt::from(1)
    } else {
        BigInt::zero()
    };
    Ok(Reduction { steps, residual: Some(cur), h0 })
}

pub fn h0(d: &DivisorClass, cfg: Configuration) -> Result<BigInt> {
    Ok(h0_with_trace(d, cfg)?.h0)
}

pub fn is_effective(d: &DivisorClass, cfg: Configuration) -> bool {
    h0(d, cfg).map(|h| h.is_positive()).unwrap_or(false)
}

/// Scans |coefficients| ≤ bound for classes with h⁰(d) > 1 and −K − 2d effective
/// (GENERAL). With `require_residual_effective = false` only the first condition is kept.
pub fn scan_moving_halves(bound: i64, require_residual_effective: bool) -> Vec<DivisorClass> {
    let cfg = Configuration::General;
    let minus_k = anticanonical_class();
    let r = -bound..=bound;
    let mut out = Vec::new();
    for a in r.clone() {
        for b1 in r.clone() {
            for b2 in r.clone() {
                for b3 in r.clone() {
                    for b4 in r.clone() {
                        let d = DivisorClass::new([a, b1, b2, b3, b4]);
                        if h0(&d, cfg).map(|h| h <= BigInt::from(1)).unwrap_or(true) {
                            continue;
                        }
                        if require_residual_effective && !is_effective(&(&minus_k - &(2 * &d)), cfg) {
                            continue;
                        }
                        out.push(d);
                    }
                }
            }
        }
    }
    out
}

pub fn verify_no_moving_half(coefficient_bound: i64) -> Vec<DivisorClass> {
    scan_moving_halves(coefficient_bound, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Basis;
    use Configuration::*;

    fn h(s: &str, cfg: Configuration) -> BigInt {
        h0(&DivisorClass::parse(s, Basis::Curve, cfg).unwrap(), cfg).unwrap()
    }

    #[test]
    fn golden_values() {
        assert_eq!(h("3l-e1-e2-e3", General), 7.into());
        assert_eq!(h("l-e4", General), 2.into());
        assert_eq!(h("3l-e1-e2-e3-e4", General), 6.into());
        assert_eq!(h("2l-e1-e2-e3-e4", P2), 3.into());
        assert_eq!(h("2l-e1-e2-e3-e4", P3), 4.into());
        assert_eq!(h("2l-e1-2e2-2e3-e4", P3), 3.into());
        assert_eq!(h("2l-e2-e3-2e4", P5), 4.into());
        assert_eq!(h("0", P4), 1.into());
        assert_eq!(h("-e1", General), 0.into());
    }

    #[test]
    fn l_minus_e4_everywhere() {
        for cfg in [General, P1, P2, P3] {
            assert_eq!(h("l-e4", cfg), 2.into(), "{cfg}");
        }
    }

    #[test]
    fn effectivity() {
        let std = |s: &str| DivisorClass::parse(s, Basis::Standard, General).unwrap();
        assert!(!is_effective(&std("l+e1-e2-e3-e4"), General));
        assert!(is_effective(&std("l-e1-e2"), General));
        assert!(is_effective(&std("l-e1-e2-e3"), P1));
        assert!(!is_effective(&std("l-e1-e2-e3"), General));
        // a (−2)-curve and a chain of them: h⁰ = 1
        assert_eq!(h0(&std("e1-e3"), P3).unwrap(), 1.into());
        assert_eq!(h0(&std("e1-e2"), General).unwrap(), 0.into());
    }

    #[test]
    fn trace_records_fixed_part() {
        let d = DivisorClass::parse("l-e1-e2", Basis::Standard, General).unwrap();
        let r = h0_with_trace(&d, P1).unwrap();
        assert_eq!(r.h0, 1.into());
        assert!(!r.steps.is_empty());
    }

    #[test]
    fn small_scans() {
        assert!(verify_no_moving_half(1).is_empty());
        assert!(scan_moving_halves(1, false).contains(&DivisorClass::l()));
    }
}
