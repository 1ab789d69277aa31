//! Linear Hermite constraints and Bernstein cusp-avoidance inequalities over
//! the coefficient vector `rho` of an interpolation space.

use crate::algebra::{to_bernstein, vdot, vmag, Polynomial, Vec3};
use crate::error::{Error, Result};
use crate::scalar::{from_int, Scalar};
use crate::spaces::{InterpolationSpace, Reparametrization};

/// Largest angle in radians between a prescribed derivative and the field.
pub const PARALLEL_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Continuity {
    G1,
    C1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value<T: Scalar>(self) -> T {
        match self {
            Sign::Plus => T::one(),
            Sign::Minus => -T::one(),
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HermiteData<T> {
    pub p0: Vec3<T>,
    pub p1: Vec3<T>,
    pub v0: Vec3<T>,
    pub v1: Vec3<T>,
    pub mode: Continuity,
}

/// Rows `eq_matrix rho = eq_rhs` and `ineq_matrix rho >= ineq_rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSystem<T> {
    pub eq_matrix: Vec<Vec<T>>,
    pub eq_rhs: Vec<T>,
    pub ineq_matrix: Vec<Vec<T>>,
    pub ineq_rhs: Vec<T>,
}

impl<T: Scalar> LinearSystem<T> {
    pub fn empty() -> Self {
        Self { eq_matrix: Vec::new(), eq_rhs: Vec::new(), ineq_matrix: Vec::new(), ineq_rhs: Vec::new() }
    }

    pub fn extend(&mut self, other: LinearSystem<T>) {
        self.eq_matrix.extend(other.eq_matrix);
        self.eq_rhs.extend(other.eq_rhs);
        self.ineq_matrix.extend(other.ineq_matrix);
        self.ineq_rhs.extend(other.ineq_rhs);
    }

    /// The same system over coordinates `c` with `rho = T c`.
    pub fn reparametrize(&self, t: &Reparametrization<T>) -> Self {
        LinearSystem {
            eq_matrix: t.apply_rows(&self.eq_matrix),
            eq_rhs: self.eq_rhs.clone(),
            ineq_matrix: t.apply_rows(&self.ineq_matrix),
            ineq_rhs: self.ineq_rhs.clone(),
        }
    }

    pub fn to_f64(&self) -> LinearSystem<f64> {
        let rows = |m: &Vec<Vec<T>>| m.iter().map(|r| r.iter().map(Scalar::to_f64_lossy).collect()).collect();
        let vals = |v: &Vec<T>| v.iter().map(Scalar::to_f64_lossy).collect();
        LinearSystem { eq_matrix: rows(&self.eq_matrix), eq_rhs: vals(&self.eq_rhs), ineq_matrix: rows(&self.ineq_matrix), ineq_rhs: vals(&self.ineq_rhs) }
    }
}

/// Speed-function numerators over the space's shared denominator.
pub fn mu_polynomials<T: Scalar>(space: &InterpolationSpace<T>) -> Vec<Polynomial<T>> {
    (0..space.dim()).map(|i| space.mu(i).clone()).collect()
}

/// Scalar `c` with `v = c f`, provided `v` is parallel to `f`.
fn parallel_factor<T: Scalar>(v: &Vec3<T>, f: &Vec3<T>, t: f64) -> Result<T> {
    let fv = [f[0].to_f64_lossy(), f[1].to_f64_lossy(), f[2].to_f64_lossy()];
    let vv = [v[0].to_f64_lossy(), v[1].to_f64_lossy(), v[2].to_f64_lossy()];
    let (nf, nv) = (vmag(&fv), vmag(&vv));
    if nf == 0.0 {
        return Err(Error::DerivativeIncompatible(t));
    }
    if nv > 0.0 {
        let cross = [fv[1] * vv[2] - fv[2] * vv[1], fv[2] * vv[0] - fv[0] * vv[2], fv[0] * vv[1] - fv[1] * vv[0]];
        if vmag(&cross) / (nf * nv) > PARALLEL_TOL {
            return Err(Error::DerivativeIncompatible(t));
        }
    }
    Ok(vdot(v, f) / vdot(f, f))
}

/// End-point position rows (six) and, for C1, the two speed rows
/// `sum rho_i lambda_i(t) = c_t` at `t = 0, 1`.
pub fn hermite_rows<T: Scalar>(space: &InterpolationSpace<T>, data: &HermiteData<T>) -> Result<LinearSystem<T>> {
    let mut sys = LinearSystem::empty();
    let (zero, one) = (T::zero(), T::one());
    for (t, p) in [(&zero, &data.p0), (&one, &data.p1)] {
        let values = space.basis_values(t)?;
        for axis in 0..3 {
            sys.eq_matrix.push(values.iter().map(|v| v[axis].clone()).collect());
            sys.eq_rhs.push(p[axis].clone());
        }
    }
    if data.mode == Continuity::C1 {
        for (t, v) in [(&zero, &data.v0), (&one, &data.v1)] {
            let c = parallel_factor(v, &space.field.eval(t), t.to_f64_lossy())?;
            sys.eq_matrix.push(space.basis_speeds(t)?);
            sys.eq_rhs.push(c);
        }
    }
    Ok(sys)
}

/// Largest degree among the numerators.
pub fn natural_degree<T: Scalar>(space: &InterpolationSpace<T>) -> usize {
    (0..space.dim()).filter_map(|i| space.mu(i).degree()).max().unwrap_or(0)
}

/// Bernstein coefficients of every numerator at degree `m`; row `j` holds the
/// `j`-th coefficient of each basis element.
pub fn bernstein_matrix<T: Scalar>(space: &InterpolationSpace<T>, m: usize) -> Result<Vec<Vec<T>>> {
    let natural = natural_degree(space);
    if m < natural {
        return Err(Error::DegreeTooLow { degree: natural, requested: m });
    }
    let cols = (0..space.dim())
        .map(|i| to_bernstein(space.mu(i), m))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..=m).map(|j| cols.iter().map(|c| c[j].clone()).collect()).collect())
}

/// `m + 1` rows `sign * sum_i rho_i b_ij >= bound`, one per Bernstein index.
/// `bound = 0` certifies a cusp-free curve; negative bounds relax it.
pub fn cusp_rows<T: Scalar>(space: &InterpolationSpace<T>, sign: Sign, m: usize, bound: T) -> Result<LinearSystem<T>> {
    let s = sign.value::<T>();
    let rows = bernstein_matrix(space, m)?;
    let mut sys = LinearSystem::empty();
    for row in rows {
        sys.ineq_matrix.push(row.into_iter().map(|b| b * s.clone()).collect());
        sys.ineq_rhs.push(bound.clone());
    }
    Ok(sys)
}

/// Numerator sign for which `r'(0)` points along `v0`, from the sign of
/// `<v0, F(0)>` and of the denominator. `None` when `v0` is orthogonal to
/// `F(0)`.
pub fn orientation_sign<T: Scalar>(space: &InterpolationSpace<T>, v0: &Vec3<T>) -> Option<Sign> {
    let d = vdot(v0, &space.field.eval(&T::zero())).to_f64_lossy() * space.delta.eval(&T::zero()).to_f64_lossy();
    if d > 0.0 {
        Some(Sign::Plus)
    } else if d < 0.0 {
        Some(Sign::Minus)
    } else {
        None
    }
}

/// Sign of the combined numerator at `t = 1/2`.
pub fn choose_sign<T: Scalar>(rho: &[T], space: &InterpolationSpace<T>) -> Result<Sign> {
    let half = T::one() / from_int::<T>(2);
    let v = space.combined_mu(rho).eval(&half);
    if v.is_zero() || v.magnitude() <= 1e-14 * mu_scale(space, rho) {
        return Err(Error::DegenerateInitial);
    }
    Ok(if v > T::zero() { Sign::Plus } else { Sign::Minus })
}

fn mu_scale<T: Scalar>(space: &InterpolationSpace<T>, rho: &[T]) -> f64 {
    space.combined_mu(rho).coeffs().iter().map(|c| c.magnitude()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_helpers() {
        assert_eq!(Sign::Plus.value::<f64>(), 1.0);
        assert_eq!(Sign::Minus.flip(), Sign::Plus);
    }

    #[test]
    fn parallel_factor_detects_direction() {
        assert_eq!(parallel_factor(&[2.0, 0.0, 0.0], &[1.0, 0.0, 0.0], 0.0), Ok(2.0));
        assert_eq!(parallel_factor(&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0], 0.0), Ok(0.0));
        assert_eq!(parallel_factor(&[1.0, 1e-6, 0.0], &[1.0, 0.0, 0.0], 1.0), Err(Error::DerivativeIncompatible(1.0)));
    }
}
