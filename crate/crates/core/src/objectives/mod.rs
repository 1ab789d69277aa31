//! Quadratic and linear objectives over `rho`: curve energy, arc-length and
//! squared deviation from a target arc-length.

mod quadrature;

pub use quadrature::{gauss_legendre, integrate_vec, quadrature, QuadratureOptions, DEFAULT_MAX_DEPTH, DEFAULT_ORDER, DEFAULT_TOL};

use nalgebra::{DMatrix, DVector};

use crate::algebra::{eval_bernstein, to_bernstein, vdot, Polynomial, Vec3};
use crate::constraints::{mu_polynomials, Sign};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spaces::{InterpolationSpace, Pole};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ObjectiveKind {
    Energy,
    ArcLength,
    TargetLength(f64),
}

/// `1/2 rho' H rho + g' rho + c`.
#[derive(Clone, Debug, PartialEq)]
pub struct Objective {
    pub h: DMatrix<f64>,
    pub g: DVector<f64>,
    pub c: f64,
    pub kind: ObjectiveKind,
}

impl Objective {
    pub fn value(&self, rho: &[f64]) -> f64 {
        let r = DVector::from_column_slice(rho);
        0.5 * r.dot(&(&self.h * &r)) + self.g.dot(&r) + self.c
    }
}

/// Speed functions `mu_i / delta` evaluated through Bernstein forms of the
/// numerators, which stays accurate for strongly cancelling power forms.
pub(crate) struct SpeedEvaluator {
    numerators: Vec<Option<Vec<f64>>>,
    poles: Vec<(Polynomial<f64>, usize)>,
}

impl SpeedEvaluator {
    pub(crate) fn new<T: Scalar>(space: &InterpolationSpace<T>, numerators: &[Polynomial<T>]) -> Result<Self> {
        let numerators = numerators
            .iter()
            .map(|mu| {
                if mu.is_zero() {
                    return Ok(None);
                }
                let b = to_bernstein(mu, mu.degree().unwrap_or(0))?;
                Ok(Some(b.iter().map(Scalar::to_f64_lossy).collect()))
            })
            .collect::<Result<_>>()?;
        let poles = space
            .poles
            .iter()
            .map(|p| (poly_f64(&Pole { base: p.base.clone(), order: 1 }.factor()), p.order))
            .collect();
        Ok(Self { numerators, poles })
    }

    pub(crate) fn len(&self) -> usize {
        self.numerators.len()
    }

    fn delta(&self, t: f64) -> f64 {
        self.poles.iter().map(|(f, k)| f.eval(&t).powi(*k as i32)).product()
    }

    pub(crate) fn is_zero(&self, i: usize) -> bool {
        self.numerators[i].is_none()
    }

    pub(crate) fn speeds(&self, t: f64) -> Vec<f64> {
        let d = self.delta(t);
        self.numerators.iter().map(|b| b.as_ref().map_or(0.0, |b| eval_bernstein(b, &t) / d)).collect()
    }
}

fn poly_f64<T: Scalar>(p: &Polynomial<T>) -> Polynomial<f64> {
    Polynomial::new(p.coeffs().iter().map(Scalar::to_f64_lossy).collect())
}

/// `sigma^2` when the field carries a preimage, `<F, F>` otherwise.
fn speed_weight<T: Scalar>(space: &InterpolationSpace<T>) -> Polynomial<f64> {
    match space.field.sigma() {
        Some(s) => {
            let s = poly_f64(s);
            &s * &s
        }
        None => poly_f64(&space.field.norm2()),
    }
}

/// Gram matrix of the energy `E = int_0^1 |r'|^2`, stored so that
/// `E(rho) = rho' G rho`; the returned `H = 2 G`.
pub fn energy_objective<T: Scalar>(space: &InterpolationSpace<T>, opts: &QuadratureOptions) -> Result<Objective> {
    energy_objective_for(space, &mu_polynomials(space), opts)
}

/// Energy Gram matrix for the coordinate directions with the given
/// numerators over the space's denominator.
pub fn energy_objective_for<T: Scalar>(space: &InterpolationSpace<T>, numerators: &[Polynomial<T>], opts: &QuadratureOptions) -> Result<Objective> {
    let speeds = SpeedEvaluator::new(space, numerators)?;
    let d = speeds.len();
    let w = speed_weight(space);
    let active: Vec<usize> = (0..d).filter(|&i| !speeds.is_zero(i)).collect();
    let k = active.len();
    let entries = integrate_vec(
        |t| {
            let l = speeds.speeds(t);
            let wt = w.eval(&t);
            let mut out = Vec::with_capacity(k * (k + 1) / 2);
            for a in 0..k {
                for b in a..k {
                    out.push(l[active[a]] * l[active[b]] * wt);
                }
            }
            out
        },
        0.0,
        1.0,
        opts,
    )?;
    let mut h = DMatrix::zeros(d, d);
    let mut idx = 0;
    for a in 0..k {
        for b in a..k {
            let v = 2.0 * entries[idx];
            h[(active[a], active[b])] = v;
            h[(active[b], active[a])] = v;
            idx += 1;
        }
    }
    Ok(Objective { h, g: DVector::zeros(d), c: 0.0, kind: ObjectiveKind::Energy })
}

/// Arc-length vector `L_i = int_0^1 lambda_i sigma`; the arc-length of a
/// cusp-free curve is `|L' rho|`.
pub fn arclength_vector<T: Scalar>(space: &InterpolationSpace<T>, opts: &QuadratureOptions) -> Result<DVector<f64>> {
    arclength_vector_for(space, &mu_polynomials(space), opts)
}

pub fn arclength_vector_for<T: Scalar>(space: &InterpolationSpace<T>, numerators: &[Polynomial<T>], opts: &QuadratureOptions) -> Result<DVector<f64>> {
    let sigma = space.field.sigma().map(poly_f64).ok_or(Error::ArcLengthRequiresPh)?;
    let speeds = SpeedEvaluator::new(space, numerators)?;
    let v = integrate_vec(
        |t| {
            let s = sigma.eval(&t);
            speeds.speeds(t).into_iter().map(|l| l * s).collect()
        },
        0.0,
        1.0,
        opts,
    )?;
    Ok(DVector::from_vec(v))
}

/// `+1` or `-1`: the sign of `lambda` on `[0, 1]` for a numerator of sign
/// `sign` (the denominator has no zeros there).
fn speed_sign<T: Scalar>(space: &InterpolationSpace<T>, sign: Sign) -> f64 {
    let half = T::from_ratio(1, 2);
    let d = space.delta.eval(&half).to_f64_lossy();
    sign.value::<f64>() * d.signum()
}

/// `g = s L` where `sign` is the sign of the numerator `mu` (as in the cusp
/// rows), so that `g' rho` is the arc-length of a cusp-free curve.
pub fn arclength_objective<T: Scalar>(space: &InterpolationSpace<T>, sign: Sign, opts: &QuadratureOptions) -> Result<Objective> {
    arclength_objective_for(space, &mu_polynomials(space), sign, opts)
}

pub fn arclength_objective_for<T: Scalar>(
    space: &InterpolationSpace<T>,
    numerators: &[Polynomial<T>],
    sign: Sign,
    opts: &QuadratureOptions,
) -> Result<Objective> {
    let d = numerators.len();
    let g = arclength_vector_for(space, numerators, opts)? * speed_sign(space, sign);
    Ok(Objective { h: DMatrix::zeros(d, d), g, c: 0.0, kind: ObjectiveKind::ArcLength })
}

/// `(s L' rho - target)^2` with `L` the arc-length vector and `s` derived
/// from the numerator sign as in [`arclength_objective`].
pub fn target_length_objective<T: Scalar>(
    space: &InterpolationSpace<T>,
    target: f64,
    sign: Sign,
    opts: &QuadratureOptions,
) -> Result<Objective> {
    target_length_objective_for(space, &mu_polynomials(space), target, sign, opts)
}

pub fn target_length_objective_for<T: Scalar>(
    space: &InterpolationSpace<T>,
    numerators: &[Polynomial<T>],
    target: f64,
    sign: Sign,
    opts: &QuadratureOptions,
) -> Result<Objective> {
    if !(target > 0.0) {
        return Err(Error::InvalidTarget(target));
    }
    let l = arclength_vector_for(space, numerators, opts)? * speed_sign(space, sign);
    Ok(Objective { h: 2.0 * &l * l.transpose(), g: -2.0 * target * &l, c: target * target, kind: ObjectiveKind::TargetLength(target) })
}

/// `int_0^1 |r'(t)|^2 dt` for any curve given by its derivative.
pub fn curve_energy(derivative: impl Fn(f64) -> Vec3<f64>, opts: &QuadratureOptions) -> Result<f64> {
    quadrature(|t| {
        let d = derivative(t);
        vdot(&d, &d)
    }, opts)
}

/// `int_0^1 |r'(t)| dt` for any curve given by its derivative.
pub fn curve_length(derivative: impl Fn(f64) -> Vec3<f64>, opts: &QuadratureOptions) -> Result<f64> {
    quadrature(|t| {
        let d = derivative(t);
        vdot(&d, &d).sqrt()
    }, opts)
}

/// `int_0^1 lambda(t) sigma(t) dt` for the combined speed function; differs
/// from the true arc-length when the numerator changes sign on `[0, 1]`.
pub fn signed_length<T: Scalar>(space: &InterpolationSpace<T>, rho: &[f64], opts: &QuadratureOptions) -> Result<f64> {
    let l = arclength_vector(space, opts)?;
    Ok(l.dot(&DVector::from_column_slice(rho)))
}

/// Energy of `sum rho_i q_i`, from the exactly combined numerator.
pub fn energy_of<T: Scalar>(space: &InterpolationSpace<T>, rho: &[T], opts: &QuadratureOptions) -> Result<f64> {
    let speeds = SpeedEvaluator::new(space, &[space.combined_mu(rho)])?;
    let w = speed_weight(space);
    quadrature(|t| {
        let l = speeds.speeds(t)[0];
        l * l * w.eval(&t)
    }, opts)
}

/// True arc-length `int |lambda| sigma` of `sum rho_i q_i`.
pub fn length_of<T: Scalar>(space: &InterpolationSpace<T>, rho: &[T], opts: &QuadratureOptions) -> Result<f64> {
    let sigma = space.field.sigma().map(poly_f64).ok_or(Error::ArcLengthRequiresPh)?;
    let mu = space.combined_mu(rho);
    let speeds = SpeedEvaluator::new(space, std::slice::from_ref(&mu))?;
    // |lambda| has kinks at the sign changes of mu; integrate between them.
    let mut cuts: Vec<f64> = poly_f64(&mu)
        .roots()
        .into_iter()
        .filter(|z| z.im.abs() <= 1e-9 && z.re > 0.0 && z.re < 1.0)
        .map(|z| z.re)
        .collect();
    cuts.sort_by(f64::total_cmp);
    let mut total = 0.0;
    let mut a = 0.0;
    for b in cuts.into_iter().chain(std::iter::once(1.0)) {
        if b > a {
            total += integrate_vec(|t| vec![speeds.speeds(t)[0].abs() * sigma.eval(&t)], a, b, opts)?[0];
        }
        a = b;
    }
    Ok(total)
}
