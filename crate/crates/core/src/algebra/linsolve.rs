//! Small dense solves that work for every scalar, including exact rationals.

use crate::scalar::Scalar;

/// Solves the square system `m x = rhs` by Gaussian elimination with partial
/// pivoting on magnitude. Returns `None` when a pivot vanishes.
pub fn solve_square<T: Scalar>(mut m: Vec<Vec<T>>, mut rhs: Vec<T>) -> Option<Vec<T>> {
    let n = rhs.len();
    for col in 0..n {
        let p = (col..n).max_by(|&a, &b| m[a][col].magnitude().total_cmp(&m[b][col].magnitude()))?;
        if m[p][col].is_zero() {
            return None;
        }
        m.swap(col, p);
        rhs.swap(col, p);
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone() / m[col][col].clone();
            for k in col..n {
                let v = m[col][k].clone() * f.clone();
                m[r][k] = m[r][k].clone() - v;
            }
            let v = rhs[col].clone() * f;
            rhs[r] = rhs[r].clone() - v;
        }
    }
    let mut x = vec![T::zero(); n];
    for r in (0..n).rev() {
        let mut acc = rhs[r].clone();
        for k in r + 1..n {
            acc = acc - m[r][k].clone() * x[k].clone();
        }
        x[r] = acc / m[r][r].clone();
    }
    Some(x)
}

/// Rank of a row set by exact elimination; meaningful for exact scalars.
pub fn exact_rank<T: Scalar>(mut rows: Vec<Vec<T>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, p);
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone() / rows[rank][col].clone();
            for k in col..cols {
                let v = rows[rank][k].clone() * f.clone();
                rows[r][k] = rows[r][k].clone() - v;
            }
        }
        rank += 1;
    }
    rank
}

/// Least-squares solution of the overdetermined system `a x ≈ b` through the
/// normal equations. Intended for a handful of unknowns.
pub fn least_squares<T: Scalar>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut ata = vec![vec![T::zero(); cols]; cols];
    let mut atb = vec![T::zero(); cols];
    for (row, bi) in a.iter().zip(b) {
        for i in 0..cols {
            if row[i].is_zero() {
                continue;
            }
            atb[i] = atb[i].clone() + row[i].clone() * bi.clone();
            for j in 0..cols {
                ata[i][j] = ata[i][j].clone() + row[i].clone() * row[j].clone();
            }
        }
    }
    solve_square(ata, atb)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_rank_counts_dependencies() {
        let r = |v: &[i64]| v.iter().map(|&x| crate::Rational::from_ratio(x, 1)).collect::<Vec<_>>();
        assert_eq!(exact_rank(vec![r(&[1, 2, 3]), r(&[2, 4, 6]), r(&[0, 1, 1])]), 2);
        assert_eq!(exact_rank::<crate::Rational>(vec![]), 0);
    }
    use crate::scalar::Rational;

    #[test]
    fn exact_square_solve() {
        let q = |n: i64| Rational::from_integer(n.into());
        let m = vec![vec![q(0), q(2)], vec![q(3), q(1)]];
        let x = solve_square(m, vec![q(4), q(5)]).unwrap();
        assert_eq!(x, vec![q(1), q(2)]);
    }

    #[test]
    fn singular_returns_none() {
        assert!(solve_square(vec![vec![1.0, 2.0], vec![2.0, 4.0]], vec![1.0, 2.0]).is_none());
    }

    #[test]
    fn least_squares_fits_line() {
        let a: Vec<Vec<f64>> = (0..5).map(|i| vec![1.0, i as f64]).collect();
        let b: Vec<f64> = (0..5).map(|i| 2.0 + 3.0 * i as f64).collect();
        let x = least_squares(&a, &b).unwrap();
        assert!((x[0] - 2.0).abs() < 1e-12 && (x[1] - 3.0).abs() < 1e-12);
    }
}
