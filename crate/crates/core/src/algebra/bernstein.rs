//! Monomial to Bernstein conversion on `[0, 1]`.

use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn ratio<T: Scalar>(num: u128, den: u128) -> T {
    T::from_u128(num).expect("binomial fits") / T::from_u128(den).expect("binomial fits")
}

/// Bernstein coefficients `b_j` of `p` at degree `m`, so that
/// `p(t) = sum_j b_j C(m,j) t^j (1-t)^(m-j)`. `m` above the degree of `p`
/// performs degree elevation implicitly.
pub fn to_bernstein<T: Scalar>(p: &Polynomial<T>, m: usize) -> Result<Vec<T>> {
    let deg = p.degree().unwrap_or(0);
    if m < deg {
        return Err(Error::DegreeTooLow { degree: deg, requested: m });
    }
    Ok((0..=m)
        .map(|j| {
            (0..=j.min(deg)).fold(T::zero(), |acc, k| {
                acc + p.coeff(k) * ratio::<T>(binomial(j, k), binomial(m, k))
            })
        })
        .collect())
}

/// Raises Bernstein coefficients from degree `b.len()-1` to `b.len()`.
pub fn elevate<T: Scalar>(b: &[T]) -> Vec<T> {
    let m = b.len();
    (0..=m)
        .map(|j| {
            let left = if j > 0 { b[j - 1].clone() * ratio::<T>(j as u128, m as u128) } else { T::zero() };
            let right = if j < m {
                b[j].clone() * ratio::<T>((m - j) as u128, m as u128)
            } else {
                T::zero()
            };
            left + right
        })
        .collect()
}

/// Evaluates a Bernstein form by de Casteljau's algorithm.
pub fn eval_bernstein<T: Scalar>(b: &[T], t: &T) -> T {
    let mut work = b.to_vec();
    let s = T::one() - t.clone();
    for r in 1..work.len() {
        for i in 0..work.len() - r {
            work[i] = s.clone() * work[i].clone() + t.clone() * work[i + 1].clone();
        }
    }
    work.into_iter().next().unwrap_or_else(T::zero)
}
