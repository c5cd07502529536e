//! Exact dense linear algebra over `Scalar` (small matrices only).

use crate::scalar::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

pub fn det(m: &Matrix) -> Scalar {
    let n = m.len();
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut a = m.clone();
    let mut sign = false;
    let mut result = Scalar::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            sign = !sign;
        }
        let p = a[col][col].clone();
        result = result * p.clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] = &a[r][c] - &t;
            }
        }
    }
    if sign {
        -result
    } else {
        result
    }
}

/// Row-reduces in place; returns the rank and the pivot columns.
fn row_reduce(a: &mut Matrix) -> (usize, Vec<usize>) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut rank = 0;
    let mut pivots = Vec::new();
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(pivot, rank);
        let p = a[rank][col].clone();
        for c in col..cols {
            a[rank][c] = &a[rank][c] / &p;
        }
        for r in 0..rows {
            if r != rank && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..cols {
                    let t = &f * &a[rank][c];
                    a[r][c] = &a[r][c] - &t;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    (rank, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    row_reduce(&mut a).0
}

/// Basis of the right nullspace of `m` (vectors v with m v = 0).
pub fn nullspace(m: &Matrix) -> Vec<Vec<Scalar>> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let mut a = m.clone();
    let (_, pivots) = row_reduce(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![Scalar::zero(); cols];
        v[f] = Scalar::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -a[row][f].clone();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn det_3x3() {
        let m = vec![
            vec![s(1), s(2), s(3)],
            vec![s(4), s(5), s(6)],
            vec![s(7), s(8), s(10)],
        ];
        assert_eq!(det(&m), s(-3));
    }

    #[test]
    fn nullspace_of_plane_points() {
        // Points (1,0,1), (0,1,1) span a line; its covector is the nullspace.
        let m = vec![vec![s(1), s(0), s(1)], vec![s(0), s(1), s(1)]];
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        assert!((&v[0] + &v[2]).is_zero());
        assert!((&v[1] + &v[2]).is_zero());
    }

    #[test]
    fn rank_detects_dependence() {
        let m = vec![vec![s(1), s(2), s(3)], vec![s(2), s(4), s(6)]];
        assert_eq!(rank(&m), 1);
    }
}
