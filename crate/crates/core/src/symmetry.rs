//! The lattice automorphisms generated by point permutations and quadratic
//! Cremona involutions, their orbits on lines, and transport of branch data.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use serde::Serialize;

use crate::covers::BidoubleData;
use crate::curves::line_classes;
use crate::error::{Error, Result};
use crate::lattice::{canonical_class, DivisorClass, RANK};
use crate::Configuration;

pub const CLOSURE_CAP: usize = 1000;

/// Integer matrix acting on standard-basis column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeAutomorphism {
    m: [[i64; RANK]; RANK],
}

const GRAM: [i64; RANK] = [1, -1, -1, -1, -1];

impl LatticeAutomorphism {
    pub fn identity() -> Self {
        let mut m = [[0; RANK]; RANK];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        LatticeAutomorphism { m }
    }

    pub fn from_matrix(m: [[i64; RANK]; RANK]) -> Self {
        LatticeAutomorphism { m }
    }

    pub fn matrix(&self) -> &[[i64; RANK]; RANK] {
        &self.m
    }

    fn from_columns(cols: [DivisorClass; RANK]) -> Self {
        let mut m = [[0; RANK]; RANK];
        for (j, c) in cols.iter().enumerate() {
            let v = c.to_i64().expect("small generator entries");
            for i in 0..RANK {
                m[i][j] = v[i];
            }
        }
        LatticeAutomorphism { m }
    }

    pub fn apply(&self, d: &DivisorClass) -> DivisorClass {
        let c = d.coeffs();
        let mut out: [BigInt; RANK] = Default::default();
        for (i, o) in out.iter_mut().enumerate() {
            for j in 0..RANK {
                *o += &c[j] * self.m[i][j];
            }
        }
        DivisorClass::from_coeffs(out)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &LatticeAutomorphism) -> LatticeAutomorphism {
        let mut m = [[0; RANK]; RANK];
        for i in 0..RANK {
            for j in 0..RANK {
                m[i][j] = (0..RANK).map(|k| self.m[i][k] * other.m[k][j]).sum();
            }
        }
        LatticeAutomorphism { m }
    }

    /// Mᵀ·G·M = G.
    pub fn preserves_gram(&self) -> bool {
        (0..RANK).all(|i| {
            (0..RANK).all(|j| {
                let s: i64 = (0..RANK).map(|k| self.m[k][i] * GRAM[k] * self.m[k][j]).sum();
                s == if i == j { GRAM[i] } else { 0 }
            })
        })
    }

    pub fn fixes_canonical(&self) -> bool {
        let k = canonical_class(Configuration::General);
        self.apply(&k) == k
    }
}

/// εᵢ ↦ ε_{s(i)}, where `images[i-1] = s(i)`; L is fixed.
pub fn perm_automorphism(images: &[usize]) -> Result<LatticeAutomorphism> {
    let mut sorted = images.to_vec();
    sorted.sort();
    if sorted != [1, 2, 3, 4] {
        return Err(Error::InvalidPermutation(images.to_vec()));
    }
    let cols = [
        DivisorClass::l(),
        DivisorClass::e(images[0]),
        DivisorClass::e(images[1]),
        DivisorClass::e(images[2]),
        DivisorClass::e(images[3]),
    ];
    Ok(LatticeAutomorphism::from_columns(cols))
}

/// Quadratic transformation centred at the three base points.
pub fn cremona_automorphism(base: &[usize]) -> Result<LatticeAutomorphism> {
    let set: BTreeSet<usize> = base.iter().copied().collect();
    if base.len() != 3 || set.len() != 3 || set.iter().any(|i| !(1..=4).contains(i)) {
        return Err(Error::InvalidBase(base.to_vec()));
    }
    let l = DivisorClass::l();
    let sum_base: DivisorClass = set.iter().map(|&i| DivisorClass::e(i)).sum();
    let mut cols: [DivisorClass; RANK] = Default::default();
    cols[0] = &(2 * &l) - &sum_base;
    for i in 1..=4 {
        cols[i] = if set.contains(&i) {
            &(&l - &sum_base) + &DivisorClass::e(i)
        } else {
            DivisorClass::e(i)
        };
    }
    Ok(LatticeAutomorphism::from_columns(cols))
}

fn all_permutations() -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p = vec![1, 2, 3, 4];
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

pub fn generators() -> Vec<LatticeAutomorphism> {
    let mut gens: Vec<LatticeAutomorphism> =
        all_permutations().iter().map(|p| perm_automorphism(p).unwrap()).collect();
    for omit in 1..=4 {
        let base: Vec<usize> = (1..=4).filter(|&i| i != omit).collect();
        gens.push(cremona_automorphism(&base).unwrap());
    }
    gens
}

pub fn closure(gens: &[LatticeAutomorphism], cap: usize) -> Result<Vec<LatticeAutomorphism>> {
    let id = LatticeAutomorphism::identity();
    let mut seen: HashSet<LatticeAutomorphism> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for h in gens {
            let gh = h.compose(&g);
            if seen.insert(gh.clone()) {
                if seen.len() > cap {
                    return Err(Error::ClosureCap(cap));
                }
                queue.push_back(gh);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

pub fn generate_group() -> Result<Vec<LatticeAutomorphism>> {
    closure(&generators(), CLOSURE_CAP)
}

fn orbit<T: Clone + Eq + std::hash::Hash + Ord>(
    group: &[LatticeAutomorphism],
    x: &T,
    act: impl Fn(&LatticeAutomorphism, &T) -> T,
) -> BTreeSet<T> {
    group.iter().map(|g| act(g, x)).collect()
}

pub fn line_orbits(group: &[LatticeAutomorphism]) -> Vec<Vec<DivisorClass>> {
    let mut rest: BTreeSet<DivisorClass> = line_classes().into_iter().collect();
    let mut out = Vec::new();
    while let Some(first) = rest.iter().next().cloned() {
        let o = orbit(group, &first, |g, d| g.apply(d));
        rest.retain(|d| !o.contains(d));
        out.push(o.into_iter().collect());
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TransitivityReport {
    pub transitive_on_lines: bool,
    pub stabilizer_transitive_on_disjoint: bool,
    pub transitive_on_disjoint_pairs: bool,
}

impl TransitivityReport {
    pub fn all(&self) -> bool {
        self.transitive_on_lines && self.stabilizer_transitive_on_disjoint && self.transitive_on_disjoint_pairs
    }
}

pub fn verify_line_transitivity_with(group: &[LatticeAutomorphism]) -> TransitivityReport {
    let lines = line_classes();
    let all: BTreeSet<DivisorClass> = lines.iter().cloned().collect();
    let transitive_on_lines = orbit(group, &lines[0], |g, d| g.apply(d)) == all;

    let disjoint = |c: &DivisorClass| -> BTreeSet<DivisorClass> {
        lines.iter().filter(|d| *d != c && c.dot(d) == 0.into()).cloned().collect()
    };
    let stabilizer_transitive_on_disjoint = lines.iter().all(|c| {
        let stab: Vec<LatticeAutomorphism> = group.iter().filter(|g| &g.apply(c) == c).cloned().collect();
        let target = disjoint(c);
        let first = target.iter().next().unwrap();
        target.len() == 6 && orbit(&stab, first, |g, d| g.apply(d)) == target
    });

    let pairs: BTreeSet<(DivisorClass, DivisorClass)> =
        lines.iter().flat_map(|c| disjoint(c).into_iter().map(move |d| (c.clone(), d))).collect();
    let first = pairs.iter().next().unwrap();
    let transitive_on_disjoint_pairs =
        pairs.len() == 60 && orbit(group, first, |g, (a, b)| (g.apply(a), g.apply(b))) == pairs;

    TransitivityReport { transitive_on_lines, stabilizer_transitive_on_disjoint, transitive_on_disjoint_pairs }
}

pub fn verify_line_transitivity() -> Result<TransitivityReport> {
    Ok(verify_line_transitivity_with(&generate_group()?))
}

pub fn transport_cover_data(data: &BidoubleData, g: &LatticeAutomorphism) -> BidoubleData {
    BidoubleData {
        cfg: data.cfg,
        d: data.d.clone().map(|comps| comps.iter().map(|c| g.apply(c)).collect()),
    }
}

/// Parses `tau`, `id`, `cremona:123`, `perm:2143` (images of 1..4) or
/// `swap:34`; comma-separated names apply left to right.
pub fn parse_automorphism(spec: &str) -> Result<LatticeAutomorphism> {
    let bad = |reason: &str| Error::Parse { input: spec.into(), reason: reason.into() };
    let digits = |s: &str| -> Result<Vec<usize>> {
        s.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| bad("expected digits"))).collect()
    };
    let mut acc = LatticeAutomorphism::identity();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let lower = part.to_ascii_lowercase();
        let g = match lower.split_once(':') {
            None if lower == "id" => LatticeAutomorphism::identity(),
            None if lower == "tau" => cremona_automorphism(&[1, 2, 3])?,
            Some(("cremona", b)) => cremona_automorphism(&digits(b)?)?,
            Some(("perm", p)) => perm_automorphism(&digits(p)?)?,
            Some(("swap", p)) => {
                let ij = digits(p)?;
                if ij.len() != 2 || ij[0] == ij[1] || ij.iter().any(|i| !(1..=4).contains(i)) {
                    return Err(bad("swap needs two distinct indices in 1..4"));
                }
                let mut images = vec![1, 2, 3, 4];
                images.swap(ij[0] - 1, ij[1] - 1);
                perm_automorphism(&images)?
            }
            _ => return Err(bad("unknown automorphism")),
        };
        acc = g.compose(&acc);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn std(s: &str) -> DivisorClass {
        DivisorClass::parse(s, crate::Basis::Standard, Configuration::General).unwrap()
    }

    #[test]
    fn cremona_images() {
        let tau = cremona_automorphism(&[1, 2, 3]).unwrap();
        assert_eq!(tau.apply(&std("l")), std("2l-e1-e2-e3"));
        assert_eq!(tau.apply(&std("2l-e1-e2-e3-e4")), std("l-e4"));
        assert_eq!(tau.compose(&tau), LatticeAutomorphism::identity());
        assert!(cremona_automorphism(&[1, 2]).is_err());
        assert!(cremona_automorphism(&[1, 1, 2]).is_err());
    }

    #[test]
    fn swap_34() {
        let eta = perm_automorphism(&[1, 2, 4, 3]).unwrap();
        assert_eq!(eta.apply(&std("e3")), std("e4"));
        assert_eq!(eta.apply(&std("3l-e1-e2-e3-e4")), std("3l-e1-e2-e3-e4"));
        assert_eq!(perm_automorphism(&[1, 2, 3, 4]).unwrap(), LatticeAutomorphism::identity());
        assert!(perm_automorphism(&[1, 1, 2, 3]).is_err());
    }

    #[test]
    fn group_order_and_fact() {
        let g = generate_group().unwrap();
        assert_eq!(g.len(), 120);
        assert!(g.iter().all(|x| x.preserves_gram() && x.fixes_canonical()));
        assert!(verify_line_transitivity_with(&g).all());
        assert_eq!(line_orbits(&g).len(), 1);
    }

    #[test]
    fn small_cap_faults() {
        assert_eq!(closure(&generators(), 50), Err(Error::ClosureCap(50)));
    }

    #[test]
    fn named_sequences() {
        let g = parse_automorphism("tau,swap:34").unwrap();
        let expected = perm_automorphism(&[1, 2, 4, 3]).unwrap().compose(&cremona_automorphism(&[1, 2, 3]).unwrap());
        assert_eq!(g, expected);
        assert!(parse_automorphism("rotate:1").is_err());
    }
}
