//! Exact Gaussian elimination over the rationals for the small systems used here.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<BigRational>>;

pub fn from_ints(rows: &[Vec<i64>]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect()
}

/// Row-reduces in place, returning (rank, determinant of the leading square block).
fn eliminate(m: &mut Matrix, cols: usize) -> (usize, BigRational) {
    let rows = m.len();
    let mut rank = 0;
    let mut det = BigRational::one();
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            det = BigRational::zero();
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            det = -det;
        }
        let pivot = m[rank][c].clone();
        det *= &pivot;
        for x in m[rank].iter_mut() {
            *x /= &pivot;
        }
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let (top, bottom) = if r < rank { m.split_at_mut(rank) } else { m.split_at_mut(r) };
                let (src, dst) = if r < rank { (&bottom[0], &mut top[r]) } else { (&top[rank], &mut bottom[0]) };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d -= &f * s;
                }
            }
        }
        rank += 1;
    }
    (rank, det)
}

pub fn rank(m: &Matrix) -> usize {
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut a = m.clone();
    eliminate(&mut a, cols).0
}

pub fn determinant(m: &Matrix) -> BigRational {
    let n = m.len();
    if n == 0 {
        return BigRational::one();
    }
    let mut a = m.clone();
    let (r, det) = eliminate(&mut a, n);
    if r < n {
        BigRational::zero()
    } else {
        det
    }
}

/// Solves the square system a·x = b; errors when a is singular.
pub fn solve(a: &Matrix, b: &[BigRational]) -> Result<Vec<BigRational>> {
    let n = a.len();
    let mut aug: Matrix = a.iter().zip(b).map(|(row, v)| row.iter().cloned().chain([v.clone()]).collect()).collect();
    let (r, _) = eliminate(&mut aug, n);
    if r < n {
        return Err(Error::Singular);
    }
    Ok(aug.into_iter().map(|row| row[n].clone()).collect())
}

pub fn inverse(a: &Matrix) -> Result<Matrix> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    let (r, _) = eliminate(&mut aug, n);
    if r < n {
        return Err(Error::Singular);
    }
    Ok(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Sylvester's criterion on −a.
pub fn is_negative_definite(a: &Matrix) -> bool {
    let n = a.len();
    (1..=n).all(|k| {
        let minor: Matrix = a[..k].iter().map(|r| r[..k].iter().map(|x| -x).collect()).collect();
        determinant(&minor).is_positive()
    })
}

pub fn mat_vec(a: &Matrix, x: &[BigRational]) -> Vec<BigRational> {
    a.iter().map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn a2_cartan() {
        let g = from_ints(&[vec![-2, 1], vec![1, -2]]);
        assert_eq!(determinant(&g), q(3, 1));
        assert!(is_negative_definite(&g));
        let inv = inverse(&g).unwrap();
        assert_eq!(inv[0][0], q(-2, 3));
        assert_eq!(inv[0][1], q(-1, 3));
        let x = solve(&g, &[q(-1, 1), q(0, 1)]).unwrap();
        assert_eq!(mat_vec(&g, &x), vec![q(-1, 1), q(0, 1)]);
    }

    #[test]
    fn singular_and_rank() {
        let g = from_ints(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(determinant(&g), q(0, 1));
        assert_eq!(rank(&g), 1);
        assert_eq!(solve(&g, &[q(1, 1), q(1, 1)]), Err(Error::Singular));
        let wide = from_ints(&[vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 2]]);
        assert_eq!(rank(&wide), 2);
        assert!(!is_negative_definite(&from_ints(&[vec![-2, 1, 1], vec![1, -2, 1], vec![1, 1, -2]])));
    }

    #[test]
    fn det_sign_with_swaps() {
        let g = from_ints(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(determinant(&g), q(-1, 1));
        let a4 = from_ints(&[vec![-2, 1, 0, 0], vec![1, -2, 1, 0], vec![0, 1, -2, 1], vec![0, 0, 1, -2]]);
        assert_eq!(determinant(&a4), q(5, 1));
    }
}
