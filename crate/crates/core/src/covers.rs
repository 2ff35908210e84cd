//! Numerical invariants of double and bidouble covers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::cohomology::h0;
use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::lattice::{anticanonical_class, canonical_class, DivisorClass, QDivisorClass};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// A class on P̂ whose h⁰ bounds p_g of the cover from below.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundClass {
    pub cfg: Configuration,
    pub class: DivisorClass,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCoverScenario {
    pub name: String,
    pub chi_base: BigInt,
    pub m_dot_k: BigRational,
    pub m_sq: BigRational,
    pub k_plus_m_sq: BigRational,
    pub pg_bound: Option<BoundClass>,
}

impl DoubleCoverScenario {
    /// Fills (K+M)² from K² when the scenario does not state it.
    pub fn from_numbers(
        name: &str,
        chi_base: i64,
        k_sq: BigRational,
        m_dot_k: BigRational,
        m_sq: BigRational,
        pg_bound: Option<BoundClass>,
    ) -> Self {
        let k_plus_m_sq = &k_sq + rat(2) * &m_dot_k + &m_sq;
        DoubleCoverScenario { name: name.into(), chi_base: chi_base.into(), m_dot_k, m_sq, k_plus_m_sq, pg_bound }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCoverInvariants {
    pub chi_y: BigRational,
    pub chi_integral: bool,
    pub k_y_sq: BigRational,
    pub pg_lower: BigInt,
    /// p_g lower bound + 1 − χ; a lower bound for q only.
    pub q_lower: BigRational,
}

pub fn double_cover_invariants(s: &DoubleCoverScenario) -> Result<DoubleCoverInvariants> {
    let chi_y = BigRational::from_integer(2 * &s.chi_base) + (&s.m_dot_k + &s.m_sq) / rat(2);
    let k_y_sq = rat(2) * &s.k_plus_m_sq;
    let pg_lower = match &s.pg_bound {
        Some(b) => h0(&b.class, b.cfg)?,
        None => BigInt::zero(),
    };
    let q_lower = BigRational::from_integer(pg_lower.clone() + 1) - &chi_y;
    Ok(DoubleCoverInvariants { chi_integral: chi_y.is_integer(), chi_y, k_y_sq, pg_lower, q_lower })
}

/// K_Y² ≥ 16(q(Y) − 1).
pub fn albanese_gate(k_y_sq: &BigRational, q_y: &BigInt) -> bool {
    k_y_sq >= &BigRational::from_integer(16 * (q_y - 1))
}

/// R′·(h*e) > (h*e)², required for a curve with e² < 0.
pub fn ramification_check(rprime_dot_pullback: &BigRational, pullback_sq: &BigRational) -> Result<bool> {
    if !pullback_sq.is_negative() {
        return Err(Error::NonNegativeSquare(pullback_sq.to_string()));
    }
    Ok(rprime_dot_pullback > pullback_sq)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Numerology {
    pub euler: i64,
    pub h2: i64,
    pub max_disjoint_minus4: i64,
}

/// Noether's formula, b₂ for p_g = q = 0, and the Miyaoka bound
/// r·25/12 ≤ e − K²/3 on disjoint (−4)-curves.
pub fn surface_numerology(chi: i64, k_sq: i64) -> Numerology {
    let euler = 12 * chi - k_sq;
    let max_disjoint_minus4 = Integer::div_floor(&(12 * euler - 4 * k_sq), &25);
    Numerology { euler, h2: euler - 2, max_disjoint_minus4 }
}

/// x·K_S + φ*(base) on a surface whose bicanonical map φ has degree 4 onto the
/// quintic del Pezzo: K_S² = 5, K_S·φ*D = 2(−K·D), φ*D·φ*D′ = 4 D·D′.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverClass {
    pub k: BigRational,
    pub base: QDivisorClass,
}

impl CoverClass {
    pub fn canonical() -> Self {
        CoverClass { k: rat(1), base: QDivisorClass::zero() }
    }

    pub fn pullback(base: QDivisorClass) -> Self {
        CoverClass { k: rat(0), base }
    }

    pub fn add(&self, o: &CoverClass) -> CoverClass {
        CoverClass { k: &self.k + &o.k, base: &self.base + &o.base }
    }

    pub fn scale(&self, r: &BigRational) -> CoverClass {
        CoverClass { k: &self.k * r, base: self.base.scale(r) }
    }

    pub fn dot(&self, o: &CoverClass) -> BigRational {
        let mk = anticanonical_class().to_q();
        rat(5) * &self.k * &o.k
            + rat(2) * &self.k * mk.dot(&o.base)
            + rat(2) * &o.k * mk.dot(&self.base)
            + rat(4) * self.base.dot(&o.base)
    }
}

/// Double cover scenario with branch 2M, M given as a class upstairs.
pub fn scenario_from_branch(name: &str, m: &CoverClass, pg_bound: Option<BoundClass>) -> DoubleCoverScenario {
    let k = CoverClass::canonical();
    let k_plus_m = k.add(m);
    DoubleCoverScenario {
        name: name.into(),
        chi_base: 1.into(),
        m_dot_k: m.dot(&k),
        m_sq: m.dot(m),
        k_plus_m_sq: k_plus_m.dot(&k_plus_m),
        pg_bound,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BidoubleData {
    pub cfg: Configuration,
    pub d: [Vec<DivisorClass>; 3],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BidoubleInvariants {
    pub pg: BigInt,
    pub q: BigInt,
    pub k_sq: BigInt,
    pub chi: BigInt,
    pub bicanonical_is_cover: bool,
}

impl BidoubleData {
    pub fn total(&self, i: usize) -> DivisorClass {
        self.d[i].iter().cloned().sum()
    }

    pub fn branch(&self) -> DivisorClass {
        (0..3).map(|i| self.total(i)).sum()
    }

    /// Lᵢ = (Dⱼ + D_k)/2.
    pub fn l_classes(&self) -> Result<[DivisorClass; 3]> {
        let mut out: [DivisorClass; 3] = Default::default();
        for (i, slot) in out.iter_mut().enumerate() {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let s = &self.total(j) + &self.total(k);
            if s.coeffs().iter().any(|c| c.is_odd()) {
                let (a, b) = (j.min(k) + 1, j.max(k) + 1);
                return Err(Error::BranchParity(a, b));
            }
            *slot = DivisorClass::from_coeffs(s.coeffs().clone().map(|c| c / 2));
        }
        Ok(out)
    }

    /// Totals of D₁, D₂, D₃ as a sorted triple: the data up to relabelling.
    pub fn normal_form(&self) -> [DivisorClass; 3] {
        let mut t = [self.total(0), self.total(1), self.total(2)];
        t.sort();
        t
    }
}

/// Families agree up to permutation of the three indices.
pub fn same_family(a: &BidoubleData, b: &BidoubleData) -> bool {
    a.normal_form() == b.normal_form()
}

pub fn bidouble_invariants(b: &BidoubleData) -> Result<BidoubleInvariants> {
    let ls = b.l_classes()?;
    let k = canonical_class(b.cfg);
    let two_k_plus_d = &(2 * &k) + &b.branch();
    let k_sq = two_k_plus_d.sq();
    let mut twice_chi = BigInt::from(8);
    let mut pg = BigInt::zero();
    let mut bicanonical_is_cover = true;
    for l in &ls {
        let kl = &k + l;
        twice_chi += l.dot(&kl);
        pg += h0(&kl, b.cfg)?;
        if !h0(&(&(-&k) - l), b.cfg)?.is_zero() {
            bicanonical_is_cover = false;
        }
    }
    if twice_chi.is_odd() {
        return Err(Error::Parity("χ of the bidouble cover is not an integer".into()));
    }
    let chi = twice_chi / 2;
    let q = &pg + 1 - &chi;
    Ok(BidoubleInvariants { pg, q, k_sq, chi, bicanonical_is_cover })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Basis;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn std(s: &str) -> DivisorClass {
        DivisorClass::parse(s, Basis::Standard, Configuration::General).unwrap()
    }

    #[test]
    fn trivial_branch() {
        let s = DoubleCoverScenario::from_numbers("trivial", 1, rat(5), rat(0), rat(0), None);
        let inv = double_cover_invariants(&s).unwrap();
        assert_eq!((inv.chi_y, inv.k_y_sq, inv.pg_lower), (rat(2), rat(10), 0.into()));
    }

    #[test]
    fn gate() {
        assert!(!albanese_gate(&rat(14), &2.into()));
        assert!(albanese_gate(&rat(16), &2.into()));
        assert!(!albanese_gate(&rat(12), &2.into()));
        assert!(albanese_gate(&rat(0), &0.into()));
    }

    #[test]
    fn ramification() {
        assert!(!ramification_check(&rat(-2), &rat(-2)).unwrap());
        assert!(!ramification_check(&q(-4, 3), &q(-4, 3)).unwrap());
        assert!(ramification_check(&rat(0), &rat(-2)).unwrap());
        assert!(ramification_check(&rat(0), &rat(0)).is_err());
    }

    #[test]
    fn numerology() {
        assert_eq!(surface_numerology(1, 5), Numerology { euler: 7, h2: 5, max_disjoint_minus4: 2 });
        assert_eq!(surface_numerology(1, 6), Numerology { euler: 6, h2: 4, max_disjoint_minus4: 1 });
        assert_eq!(surface_numerology(2, 5).euler, 19);
    }

    #[test]
    fn empty_bidouble() {
        let b = BidoubleData { cfg: Configuration::General, d: Default::default() };
        let inv = bidouble_invariants(&b).unwrap();
        assert_eq!(inv.k_sq, 20.into());
        assert_eq!(inv.chi, 4.into());
        assert_eq!(inv.pg, 0.into());
    }

    #[test]
    fn parity_rejected() {
        let b = BidoubleData { cfg: Configuration::General, d: [vec![std("e1")], vec![], vec![]] };
        assert_eq!(b.l_classes(), Err(Error::BranchParity(1, 3)));
    }

    #[test]
    fn branch_class_numbers() {
        // M = K − φ*(l−e2−e4) − ½φ*(l−e1−e3)
        let base = &(-&std("l-e2-e4").to_q()) - &std("l-e1-e3").to_q().scale(&q(1, 2));
        let m = CoverClass::canonical().add(&CoverClass::pullback(base));
        let s = scenario_from_branch("m", &m, None);
        assert_eq!((s.m_dot_k.clone(), s.m_sq.clone(), s.k_plus_m_sq.clone()), (rat(2), rat(-2), rat(7)));
    }
}
