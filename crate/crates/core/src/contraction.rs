//! Contraction of the (−2)-curves: Mumford pullback and intersection numbers on
//! the singular surface, plus ADE typing of (−2)-configurations.

use std::fmt;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::config::Configuration;
use crate::curves::{curve_label, minus_two_curves};
use crate::error::Result;
use crate::lattice::{Basis, DivisorClass, QDivisorClass};
use crate::linalg;

/// A class on the contracted surface, named by a representative upstairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaClass {
    pub rep: DivisorClass,
    pub cfg: Configuration,
}

impl SigmaClass {
    pub fn new(rep: DivisorClass, cfg: Configuration) -> Self {
        SigmaClass { rep, cfg }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pullback {
    pub class: QDivisorClass,
    /// (θ, coefficient) for every (−2)-curve θ.
    pub corrections: Vec<(DivisorClass, BigRational)>,
}

impl Pullback {
    /// `rep + 2/3 e3 + 1/3 c` in the exceptional-curve notation.
    pub fn render(&self, rep: &DivisorClass, cfg: Configuration) -> String {
        let mut s = rep.render(Basis::Curve, cfg);
        let mut terms: Vec<_> = self.corrections.iter().map(|(t, x)| (curve_label(t, cfg), x)).collect();
        // chain curves first, the collinearity curve last
        terms.sort_by_key(|(label, _)| (label == "c", label.clone()));
        for (label, x) in terms {
            if x == &BigRational::from_integer(0.into()) {
                continue;
            }
            let sign = if x < &BigRational::from_integer(0.into()) { " - " } else { " + " };
            let a = if x < &BigRational::from_integer(0.into()) { -x.clone() } else { x.clone() };
            s.push_str(sign);
            if a != BigRational::from_integer(1.into()) {
                s.push_str(&a.to_string());
                s.push(' ');
            }
            if label.contains(['+', '-']) {
                s.push_str(&format!("({label})"));
            } else {
                s.push_str(&label);
            }
        }
        s
    }
}

fn minus_two_gram(cfg: Configuration) -> linalg::Matrix {
    let ts = minus_two_curves(cfg);
    ts.iter().map(|a| ts.iter().map(|b| BigRational::from_integer(a.cls.dot(&b.cls))).collect()).collect()
}

pub fn pullback_decomposition(s: &SigmaClass) -> Result<Pullback> {
    let ts = minus_two_curves(s.cfg);
    let mut class = s.rep.to_q();
    if ts.is_empty() {
        return Ok(Pullback { class, corrections: vec![] });
    }
    // (rep + Σ xᵢθᵢ)·θⱼ = 0
    let rhs: Vec<BigRational> = ts.iter().map(|t| -BigRational::from_integer(s.rep.dot(&t.cls))).collect();
    let x = linalg::solve(&minus_two_gram(s.cfg), &rhs)?;
    let mut corrections = Vec::new();
    for (t, xi) in ts.iter().zip(x) {
        class += &t.cls.to_q().scale(&xi);
        corrections.push((t.cls.clone(), xi));
    }
    Ok(Pullback { class, corrections })
}

pub fn mumford_pullback(s: &SigmaClass) -> Result<QDivisorClass> {
    Ok(pullback_decomposition(s)?.class)
}

pub fn sigma_intersect(s: &SigmaClass, t: &SigmaClass) -> Result<BigRational> {
    assert_eq!(s.cfg, t.cfg, "classes live on different surfaces");
    Ok(mumford_pullback(s)?.dot(&mumford_pullback(t)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum AdeType {
    A(usize),
    D(usize),
    E(usize),
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdeType::A(n) => write!(f, "A{n}"),
            AdeType::D(n) => write!(f, "D{n}"),
            AdeType::E(n) => write!(f, "E{n}"),
        }
    }
}

pub fn format_ade(types: &[AdeType]) -> String {
    if types.is_empty() {
        return "smooth".into();
    }
    types.iter().map(ToString::to_string).collect::<Vec<_>>().join("+")
}

pub fn components(gram: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = gram.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            for w in 0..n {
                if w != v && !seen[w] && gram[v][w] != 0 {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        comp.sort();
        out.push(comp);
    }
    out
}

fn classify_component(gram: &[Vec<i64>], comp: &[usize]) -> Option<AdeType> {
    let n = comp.len();
    let mut edges = 0;
    let mut deg = vec![0usize; n];
    for (a, &i) in comp.iter().enumerate() {
        if gram[i][i] != -2 {
            return None;
        }
        for (b, &j) in comp.iter().enumerate().skip(a + 1) {
            match gram[i][j] {
                0 => {}
                1 => {
                    edges += 1;
                    deg[a] += 1;
                    deg[b] += 1;
                }
                _ => return None,
            }
        }
    }
    if edges + 1 != n || deg.iter().any(|&d| d > 3) {
        return None;
    }
    let branch: Vec<usize> = (0..n).filter(|&a| deg[a] == 3).collect();
    match branch.len() {
        0 => Some(AdeType::A(n)),
        1 => {
            // arm lengths from the branch node
            let centre = branch[0];
            let mut arms = Vec::new();
            for start in 0..n {
                if start == centre || gram[comp[centre]][comp[start]] == 0 {
                    continue;
                }
                let (mut prev, mut cur, mut len) = (centre, start, 1);
                loop {
                    let next = (0..n).find(|&w| w != prev && w != cur && gram[comp[cur]][comp[w]] != 0);
                    match next {
                        Some(w) => {
                            prev = cur;
                            cur = w;
                            len += 1;
                        }
                        None => break,
                    }
                }
                arms.push(len);
            }
            arms.sort();
            match arms.as_slice() {
                [1, 1, _] => Some(AdeType::D(n)),
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => Some(AdeType::E(n)),
                _ => None,
            }
        }
        _ => None,
    }
}

/// ADE types of the components of a (−2)-Gram matrix; `None` if some
/// component is not a Dynkin diagram.
pub fn ade_types(gram: &[Vec<i64>]) -> Option<Vec<AdeType>> {
    let mut out = components(gram).iter().map(|c| classify_component(gram, c)).collect::<Option<Vec<_>>>()?;
    out.sort();
    Some(out)
}

pub fn singularity_types(cfg: Configuration) -> Vec<AdeType> {
    let ts = minus_two_curves(cfg);
    let gram: Vec<Vec<i64>> =
        ts.iter().map(|a| ts.iter().map(|b| a.cls.dot(&b.cls).to_i64().unwrap()).collect()).collect();
    ade_types(&gram).expect("(-2)-curves of a weak del Pezzo form an ADE configuration")
}

#[cfg(test)]
mod tests {
    use super::*;
    use Configuration::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn sigma(s: &str, cfg: Configuration) -> SigmaClass {
        SigmaClass::new(DivisorClass::parse(s, Basis::Curve, cfg).unwrap(), cfg)
    }

    #[test]
    fn p4_pullbacks() {
        let l3 = sigma("l-e3-e4", P4);
        let p = pullback_decomposition(&l3).unwrap();
        assert_eq!(p.render(&l3.rep, P4), "l-e3-e4 + 2/3 e3 + 1/3 c");
        let e1 = sigma("e1", P4);
        assert_eq!(sigma_intersect(&e1, &e1).unwrap(), q(-1, 3));
        assert_eq!(sigma_intersect(&l3, &e1).unwrap(), q(1, 3));
        assert_eq!(sigma_intersect(&sigma("e2", P4), &e1).unwrap(), q(2, 3));
    }

    #[test]
    fn general_is_identity() {
        let s = sigma("2l-e1", General);
        assert_eq!(mumford_pullback(&s).unwrap(), s.rep.to_q());
    }

    #[test]
    fn types() {
        let fmt = |c| format_ade(&singularity_types(c));
        assert_eq!(fmt(General), "smooth");
        assert_eq!(fmt(P1), "A1");
        assert_eq!(fmt(P2), "A1+A1");
        assert_eq!(fmt(P3), "A1+A2");
        assert_eq!(fmt(P4), "A2");
        assert_eq!(fmt(P5), "A3");
        assert_eq!(fmt(P6), "A4");
    }

    #[test]
    fn dynkin_shapes() {
        let d4 = vec![vec![-2, 1, 1, 1], vec![1, -2, 0, 0], vec![1, 0, -2, 0], vec![1, 0, 0, -2]];
        assert_eq!(ade_types(&d4), Some(vec![AdeType::D(4)]));
        let cycle = vec![vec![-2, 1, 1], vec![1, -2, 1], vec![1, 1, -2]];
        assert_eq!(ade_types(&cycle), None);
        assert_eq!(ade_types(&[]), Some(vec![]));
    }
}
