//! Independent h0 oracle for the blow-up of P² at four general points:
//! the dimension of plane curves of degree d with multiplicity ≥ mᵢ at pᵢ,
//! computed as (number of monomials) − rank(Taylor conditions).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

pub type Point = (i64, i64);

/// Four points of the affine plane, no three collinear.
pub fn general_points<R: Rng>(rng: &mut R) -> [Point; 4] {
    loop {
        let p: [Point; 4] = std::array::from_fn(|_| (rng.gen_range(-40..=40), rng.gen_range(-40..=40)));
        let collinear = |a: Point, b: Point, c: Point| (b.0 - a.0) * (c.1 - a.1) == (b.1 - a.1) * (c.0 - a.0);
        let ok = (0..4).all(|i| {
            (i + 1..4).all(|j| p[i] != p[j] && (j + 1..4).all(|k| !collinear(p[i], p[j], p[k])))
        });
        if ok {
            return p;
        }
    }
}

fn falling(n: i64, k: i64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, t| acc * BigInt::from(n - t))
}

fn rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        let row = m[r].clone();
        for (i, other) in m.iter_mut().enumerate() {
            if i != r && !other[c].is_zero() {
                let f = &other[c] / &pivot;
                for (x, y) in other.iter_mut().zip(&row) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// h0(dL − Σ mᵢEᵢ); negative multiplicities impose nothing (Eᵢ is then a fixed part).
pub fn plane_curve_h0(d: i64, m: [i64; 4], pts: &[Point; 4]) -> usize {
    if d < 0 {
        return 0;
    }
    let monomials: Vec<(i64, i64)> = (0..=d).flat_map(|a| (0..=d - a).map(move |b| (a, b))).collect();
    let mut rows = Vec::new();
    for (p, &mult) in pts.iter().zip(&m) {
        for i in 0..mult.max(0) {
            for j in 0..mult.max(0) - i {
                let row = monomials
                    .iter()
                    .map(|&(a, b)| {
                        if a < i || b < j {
                            return BigRational::zero();
                        }
                        let v = falling(a, i)
                            * falling(b, j)
                            * BigInt::from(p.0).pow((a - i) as u32)
                            * BigInt::from(p.1).pow((b - j) as u32);
                        BigRational::from_integer(v)
                    })
                    .collect();
                rows.push(row);
            }
        }
    }
    monomials.len() - rank(rows)
}
