//! Coordinates `rho = T c` in which `c` holds selected Bernstein coefficients
//! of the numerator `mu`.
//!
//! Bases built from many powers of one pole are numerically collinear on
//! `[0, 1]`, while `b_j(t) / delta(t)` with Bernstein `b_j` stays well
//! conditioned: for `delta = (t - beta)^K` it is a Bernstein basis in the
//! Moebius-transformed parameter. `T` is computed exactly for exact scalars.

use crate::algebra::{solve_square, to_bernstein, Polynomial};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::assemble::InterpolationSpace;

#[derive(Clone, Debug, PartialEq)]
pub struct Reparametrization<T> {
    /// `dim x dim`; `rho = matrix * c`. Constant elements map to themselves.
    pub matrix: Vec<Vec<T>>,
}

impl<T: Scalar> Reparametrization<T> {
    pub fn identity(dim: usize) -> Self {
        let matrix = (0..dim).map(|i| (0..dim).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect();
        Self { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn to_original(&self, c: &[T]) -> Vec<T> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(c).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
            .collect()
    }

    /// `c` with `matrix * c = rho`; `None` only if the matrix is singular.
    pub fn from_original(&self, rho: &[T]) -> Option<Vec<T>> {
        solve_square(self.matrix.clone(), rho.to_vec())
    }

    /// Rows acting on `rho`, rewritten to act on `c`.
    pub fn apply_rows(&self, rows: &[Vec<T>]) -> Vec<Vec<T>> {
        let n = self.dim();
        rows.iter()
            .map(|row| {
                (0..n)
                    .map(|j| {
                        row.iter().zip(&self.matrix).fold(T::zero(), |acc, (a, t)| {
                            if a.is_zero() || t[j].is_zero() {
                                acc
                            } else {
                                acc + a.clone() * t[j].clone()
                            }
                        })
                    })
                    .collect()
            })
            .collect()
    }

    /// Numerators of the new coordinate directions: `mu'_j = sum_i T_ij mu_i`.
    pub fn numerators(&self, space: &InterpolationSpace<T>) -> Vec<Polynomial<T>> {
        let n = self.dim();
        (0..n)
            .map(|j| {
                (0..n).fold(Polynomial::zero(), |acc, i| {
                    if self.matrix[i][j].is_zero() {
                        acc
                    } else {
                        &acc + &space.mu(i).scale(&self.matrix[i][j])
                    }
                })
            })
            .collect()
    }
}

/// Coordinates given by the Bernstein coefficients (at the largest numerator
/// degree) chosen by complete pivoting on the numerator coefficient matrix.
pub fn bernstein_reparametrization<T: Scalar>(space: &InterpolationSpace<T>) -> Result<Reparametrization<T>> {
    let dim = space.dim();
    let moving: Vec<usize> = (0..dim).filter(|&i| !space.basis[i].lambda.is_zero()).collect();
    let degree = moving.iter().filter_map(|&i| space.mu(i).degree()).max().unwrap_or(0);
    let coeffs: Vec<Vec<T>> = moving.iter().map(|&i| to_bernstein(space.mu(i), degree)).collect::<Result<_>>()?;
    let selected = pivot_columns(&coeffs);
    if selected.len() < moving.len() {
        return Err(Error::DependentBasis { rank: dim - moving.len() + selected.len(), dim });
    }
    let k = moving.len();
    // c_a = sum_b rho_b coeffs[b][selected[a]]
    let forward: Vec<Vec<T>> = (0..k).map(|a| (0..k).map(|b| coeffs[b][selected[a]].clone()).collect()).collect();
    let mut t = Reparametrization::identity(dim);
    for a in 0..k {
        let unit = (0..k).map(|r| if r == a { T::one() } else { T::zero() }).collect();
        let col = solve_square(forward.clone(), unit).ok_or(Error::DependentBasis { rank: dim - 1, dim })?;
        for b in 0..k {
            t.matrix[moving[b]][moving[a]] = col[b].clone();
        }
    }
    // Shift every new direction to pass through the origin at t = 0 so the
    // constant coordinates carry the actual start point.
    let constants: Vec<usize> = (0..dim).filter(|i| !moving.contains(i)).collect();
    if constants.len() == 3 {
        let start = space.basis_values(&T::zero())?;
        for &j in &moving {
            let mut offset = [T::zero(), T::zero(), T::zero()];
            for &i in &moving {
                for (axis, o) in offset.iter_mut().enumerate() {
                    *o = o.clone() + t.matrix[i][j].clone() * start[i][axis].clone();
                }
            }
            for &i in &constants {
                let axis = (0..3).find(|&a| !start[i][a].is_zero()).expect("unit constant");
                t.matrix[i][j] = -offset[axis].clone() / start[i][axis].clone();
            }
        }
    }
    Ok(t)
}

/// Columns picked by Gaussian elimination with complete pivoting.
fn pivot_columns<T: Scalar>(rows: &[Vec<T>]) -> Vec<usize> {
    let mut work = rows.to_vec();
    let cols = work.first().map_or(0, Vec::len);
    let mut free_rows: Vec<usize> = (0..work.len()).collect();
    let mut chosen = Vec::new();
    while !free_rows.is_empty() {
        let mut best: Option<(usize, usize, f64)> = None;
        for &r in &free_rows {
            for c in 0..cols {
                if chosen.contains(&c) || work[r][c].is_zero() {
                    continue;
                }
                let m = work[r][c].magnitude();
                if best.is_none_or(|(_, _, bm)| m > bm) {
                    best = Some((r, c, m));
                }
            }
        }
        let Some((pr, pc, _)) = best else { break };
        let tol_zero = !T::EXACT && best.is_some_and(|(_, _, m)| m <= 1e-14);
        if tol_zero {
            break;
        }
        free_rows.retain(|&r| r != pr);
        for &r in &free_rows {
            if work[r][pc].is_zero() {
                continue;
            }
            let f = work[r][pc].clone() / work[pr][pc].clone();
            for c in 0..cols {
                let v = work[pr][c].clone() * f.clone();
                work[r][c] = work[r][c].clone() - v;
            }
        }
        chosen.push(pc);
    }
    chosen
}
