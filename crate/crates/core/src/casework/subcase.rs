//! The A₂ preimage of 3ē on the P3 contraction: 3E + aθ₂ + bθ₃ with
//! (φ*3ē)² = 6 and the pullback orthogonal to both curves.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct A2Preimage {
    pub e_sq: i64,
    pub a: i64,
    pub b: i64,
    pub e_dot_theta2: i64,
    pub e_dot_theta3: i64,
}

/// All solutions with E² ∈ {0, −2, −4, −6}, a ≥ b ≥ 1 and a ≤ bound.
pub fn a2_preimages(bound: i64) -> Vec<A2Preimage> {
    let mut out = Vec::new();
    for e_sq in [0, -2, -4, -6] {
        for a in 1..=bound {
            for b in 1..=a {
                let (u, v) = (2 * a - b, 2 * b - a);
                if u < 0 || v < 0 || u % 3 != 0 || v % 3 != 0 {
                    continue;
                }
                let (k2, k3) = (u / 3, v / 3);
                if 9 * e_sq + 6 * a * k2 + 6 * b * k3 - 2 * a * a + 2 * a * b - 2 * b * b == 6 {
                    out.push(A2Preimage { e_sq, a, b, e_dot_theta2: k2, e_dot_theta3: k3 });
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

    #[test]
    fn three_solutions() {
        let got = a2_preimages(20);
        let want = vec![
            A2Preimage { e_sq: -4, a: 5, b: 4, e_dot_theta2: 2, e_dot_theta3: 1 },
            A2Preimage { e_sq: -2, a: 4, b: 2, e_dot_theta2: 2, e_dot_theta3: 0 },
            A2Preimage { e_sq: 0, a: 2, b: 1, e_dot_theta2: 1, e_dot_theta3: 0 },
        ];
        assert_eq!(got, want);
        assert_eq!(a2_preimages(40), want);
    }
}
