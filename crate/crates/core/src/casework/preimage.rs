//! Which (−2)-configurations upstairs can carry a pullback of prescribed
//! self-intersection.
//!
//! For an integral class E meeting the (−2)-curves θ with kᵢ = E·θᵢ ≥ 0, the
//! pullback is E + Σ xᵢθᵢ with x = (−G)⁻¹k, and its square is E² + x·k.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::contraction::{ade_types, format_ade, AdeType};
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreimageQuery {
    pub max_curves: usize,
    /// Required Gram matrix of the pullbacks (one row per class).
    pub target_gram: Vec<Vec<BigRational>>,
    /// K·E for each class, fixing the parity of E².
    pub canonical_degree: Vec<i64>,
    /// Scan range 0..=pairing_bound for each E·θᵢ.
    pub pairing_bound: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreimageSolution {
    /// pairings[t][i] = E_t·θᵢ
    pub pairings: Vec<Vec<i64>>,
    /// coefficients[t][i] of θᵢ in the pullback of E_t, as "p/q"
    pub coefficients: Vec<Vec<String>>,
    /// E_t·E_s upstairs
    pub class_gram: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GramConfiguration {
    pub gram: Vec<Vec<i64>>,
    pub types: Vec<AdeType>,
    pub label: String,
    pub solutions: Vec<PreimageSolution>,
}

/// One representative per isomorphism class of graphs on n vertices,
/// as Gram matrices with −2 on the diagonal.
fn graphs_up_to_isomorphism(n: usize) -> Vec<Vec<Vec<i64>>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let encode = |adj: &dyn Fn(usize, usize) -> bool| -> u64 {
        pairs.iter().enumerate().fold(0u64, |acc, (b, &(i, j))| if adj(i, j) { acc | (1 << b) } else { acc })
    };
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let has = |i: usize, j: usize| {
            let (a, b) = (i.min(j), i.max(j));
            let idx = pairs.iter().position(|&p| p == (a, b)).unwrap();
            mask & (1 << idx) != 0
        };
        let canonical = perms.iter().all(|p| encode(&|i, j| has(p[i], p[j])) >= mask);
        if canonical {
            let g = (0..n)
                .map(|i| (0..n).map(|j| if i == j { -2 } else if has(i, j) { 1 } else { 0 }).collect())
                .collect();
            out.push(g);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn as_integer(x: &BigRational) -> Option<i64> {
    x.is_integer().then(|| x.to_integer().to_i64()).flatten()
}

fn solutions_for(gram: &[Vec<i64>], q: &PreimageQuery) -> Vec<PreimageSolution> {
    let n = gram.len();
    let m = q.target_gram.len();
    let neg_inv: linalg::Matrix = if n == 0 {
        vec![]
    } else {
        let neg: Vec<Vec<i64>> = gram.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        linalg::inverse(&linalg::from_ints(&neg)).expect("negative definite")
    };
    let width = (q.pairing_bound + 1) as usize;
    let total = width.checked_pow((n * m) as u32).expect("search space fits in usize");
    let mut out = Vec::new();
    'outer: for code in 0..total {
        let mut c = code;
        let k: Vec<Vec<i64>> = (0..m)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let v = (c % width) as i64;
                        c /= width;
                        v
                    })
                    .collect()
            })
            .collect();
        let kq: Vec<Vec<BigRational>> =
            k.iter().map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect();
        let x: Vec<Vec<BigRational>> = kq.iter().map(|kt| linalg::mat_vec(&neg_inv, kt)).collect();
        // every curve lies in the support of every pullback
        if x.iter().flatten().any(|v| !v.is_positive()) {
            continue;
        }
        let mut class_gram = vec![vec![0i64; m]; m];
        for t in 0..m {
            for s in t..m {
                let corr: BigRational = x[t].iter().zip(&kq[s]).map(|(a, b)| a * b).sum();
                let Some(e) = as_integer(&(&q.target_gram[t][s] - corr)) else { continue 'outer };
                if t == s && (e - q.canonical_degree[t]).is_odd() {
                    continue 'outer;
                }
                if t != s && e < 0 {
                    continue 'outer;
                }
                class_gram[t][s] = e;
                class_gram[s][t] = e;
            }
        }
        out.push(PreimageSolution {
            pairings: k,
            coefficients: x.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
            class_gram,
        });
    }
    out
}

/// All configurations of at most `max_curves` (−2)-curves admitting data with
/// the requested pullback Gram matrix, smallest configurations first.
pub fn preimage_search(q: &PreimageQuery) -> Vec<GramConfiguration> {
    assert_eq!(q.target_gram.len(), q.canonical_degree.len());
    let mut out = Vec::new();
    for n in 0..=q.max_curves {
        for gram in graphs_up_to_isomorphism(n) {
            if n > 0 && !linalg::is_negative_definite(&linalg::from_ints(&gram)) {
                continue;
            }
            let solutions = solutions_for(&gram, q);
            if solutions.is_empty() {
                continue;
            }
            let types = ade_types(&gram).expect("negative definite (-2)-graphs are Dynkin");
            let label = if n == 0 { "empty".into() } else { format_ade(&types) };
            out.push(GramConfiguration { gram, types, label, solutions });
        }
    }
    out
}

/// Single-class search with K·E even. Positive targets are accepted too; the
/// A₄ and A₂ analyses need them. `pairing_bound` caps each E·θᵢ.
pub fn preimage_configuration_search(
    chain_bound: usize,
    target_sq: &BigRational,
    pairing_bound: i64,
) -> Vec<GramConfiguration> {
    preimage_search(&PreimageQuery {
        max_curves: chain_bound,
        target_gram: vec![vec![target_sq.clone()]],
        canonical_degree: vec![0],
        pairing_bound,
    })
}

/// Distinct labels among feasible configurations.
pub fn feasible_labels(configs: &[GramConfiguration]) -> Vec<String> {
    let mut v: Vec<String> = configs.iter().map(|c| c.label.clone()).collect();
    v.sort();
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn graph_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| graphs_up_to_isomorphism(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11]);
    }

    #[test]
    fn two_curves_must_meet() {
        let r = preimage_configuration_search(2, &q(-4, 3), 4);
        assert_eq!(feasible_labels(&r), vec!["A2"]);
    }

    #[test]
    fn empty_target() {
        let r = preimage_configuration_search(0, &q(0, 1), 4);
        assert_eq!(feasible_labels(&r), vec!["empty"]);
    }

    #[test]
    fn joint_quarter_case() {
        let r = preimage_search(&PreimageQuery {
            max_curves: 3,
            target_gram: vec![vec![q(-1, 1), q(2, 1)], vec![q(2, 1), q(0, 1)]],
            canonical_degree: vec![0, 0],
            pairing_bound: 4,
        });
        assert_eq!(feasible_labels(&r), vec!["A1+A1", "A3"]);
    }
}
