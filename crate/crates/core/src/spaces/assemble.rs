//! Interpolation spaces: ordered bases over a fixed tangent field with a
//! shared speed-function denominator.

use nalgebra::DMatrix;
use num_complex::Complex;


use super::basis::{nonregular_basis, polynomial_basis, realify_pair, regular_basis, BasisElement, ElementKind};
use super::laurent::{PolePart, RationalCurve, SpeedFunction};
use crate::algebra::{least_squares, vadd, vmag, vscale, vsub, vzero, Polynomial, Vec3, VecPolynomial};
use crate::error::{Error, Result};
use crate::hodograph::TangentField;
use crate::scalar::{cplx, from_int, Coeff, Scalar};

/// Relative singular-value threshold for the independence check.
pub const RANK_TOL: f64 = 1e-9;
/// Relative residual allowed when fitting a speed function to an external curve.
pub const TANGENT_TOL: f64 = 1e-8;
/// Largest imaginary part tolerated in a numerator that must be real.
pub const REAL_TOL: f64 = 1e-9;

/// One requested family of generators. Complex bases are realified with
/// their conjugate automatically.
#[derive(Clone, Debug, PartialEq)]
pub enum Generator<T> {
    /// `lambda = (n + ell) t^(ell - 1)`.
    Polynomial { ell: usize },
    /// `lambda = (t - beta)^r`.
    Regular { beta: Complex<T>, r: i64 },
    /// Basis of the non-regular solutions at `beta`, optionally truncated to
    /// pole order `max_order`.
    Nonregular { beta: Complex<T>, triplet: Option<[usize; 3]>, max_order: Option<usize> },
}

/// Distinct pole of a space with its maximal order; `base.im >= 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Pole<T> {
    pub base: Complex<T>,
    pub order: usize,
}

impl<T: Scalar> Pole<T> {
    pub fn is_real(&self) -> bool {
        self.base.im.is_zero()
    }

    /// Real denominator factor: `(t - b)^k` or `((t - a)^2 + b^2)^k`.
    pub fn factor(&self) -> Polynomial<T> {
        let a = self.base.re.clone();
        let base = if self.is_real() {
            Polynomial::linear_factor(a)
        } else {
            let b2 = self.base.im.clone() * self.base.im.clone();
            let two = from_int::<T>(2);
            Polynomial::new(vec![a.clone() * a.clone() + b2, -(two * a), T::one()])
        };
        base.pow(self.order)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InterpolationSpace<T> {
    pub field: TangentField<T>,
    pub basis: Vec<BasisElement<T>>,
    pub poles: Vec<Pole<T>>,
    /// Least common denominator of every speed function in the basis.
    pub delta: Polynomial<T>,
}

/// Builds the space spanned by three constants, the requested generators in
/// order and an optional external polynomial curve tangent to the field.
///
/// Rational generators are rescaled so that their lowest Laurent coefficient
/// equals `F(beta)`.
pub fn assemble_space<T: Scalar>(
    field: &TangentField<T>,
    generators: &[Generator<T>],
    external: Option<&VecPolynomial<T>>,
) -> Result<InterpolationSpace<T>> {
    if !field.is_spatial() {
        return Err(Error::NotSpatial);
    }
    let mut basis: Vec<BasisElement<T>> = (0..3).map(BasisElement::constant).collect();
    for g in generators {
        match g {
            Generator::Polynomial { ell } => basis.push(polynomial_basis(field, *ell)?),
            Generator::Regular { beta, r } => {
                check_pole(beta)?;
                let e = regular_basis(field, beta, *r)?.normalize_to_field(field);
                push_realified(&mut basis, e)?;
            }
            Generator::Nonregular { beta, triplet, max_order } => {
                check_pole(beta)?;
                for e in nonregular_basis(field, beta, *triplet, *max_order)? {
                    push_realified(&mut basis, e.normalize_to_field(field))?;
                }
            }
        }
    }
    if let Some(curve) = external {
        basis.push(external_element(field, curve)?);
    }
    let poles = collect_poles(&basis);
    let delta = poles.iter().fold(Polynomial::constant(T::one()), |acc, p| &acc * &p.factor());
    for e in &mut basis {
        e.mu = Some(numerator(&e.lambda, &delta)?);
    }
    let space = InterpolationSpace { field: field.clone(), basis, poles, delta };
    let rank = if T::EXACT { space.exact_rank() } else { space.collocation_rank() };
    if rank < space.dim() {
        return Err(Error::DependentBasis { rank, dim: space.dim() });
    }
    Ok(space)
}

fn check_pole<T: Scalar>(beta: &Complex<T>) -> Result<()> {
    if beta.im.is_zero() && beta.re >= T::zero() && beta.re <= T::one() {
        return Err(Error::PoleInsideInterval(beta.re.to_f64_lossy()));
    }
    Ok(())
}

fn push_realified<T: Scalar>(basis: &mut Vec<BasisElement<T>>, e: BasisElement<T>) -> Result<()> {
    let real_base = e.lambda.poles.iter().all(|p| p.base.im.is_zero());
    if real_base {
        basis.push(e);
        return Ok(());
    }
    let conj = conjugate_element(&e);
    let (re, im) = realify_pair(&e, &conj)?;
    basis.push(re);
    basis.push(im);
    Ok(())
}

fn conjugate_element<T: Scalar>(e: &BasisElement<T>) -> BasisElement<T> {
    BasisElement {
        curve: RationalCurve { parts: e.curve.parts.iter().map(|p| p.conj()).collect(), poly: e.curve.poly.clone() },
        lambda: SpeedFunction { poles: e.lambda.poles.iter().map(PolePart::conj).collect(), poly: e.lambda.poly.clone() },
        mu: e.mu.clone(),
        kind: e.kind,
    }
}

/// Fits a polynomial speed function to `r' = lambda F`.
fn external_element<T: Scalar>(field: &TangentField<T>, curve: &VecPolynomial<T>) -> Result<BasisElement<T>> {
    let d = curve.derivative();
    let f = field.field();
    let n = field.degree();
    let dr = d.degree().unwrap_or(0);
    if d.is_zero() || dr < n {
        return Err(Error::NotTangent(f64::INFINITY));
    }
    let k = dr - n;
    let mut a = Vec::with_capacity(3 * (dr + 1));
    let mut b = Vec::with_capacity(3 * (dr + 1));
    for m in 0..=dr {
        for axis in 0..3 {
            let row = (0..=k)
                .map(|i| if m >= i && m - i <= n { f.coeff(m - i)[axis].clone() } else { T::zero() })
                .collect();
            a.push(row);
            b.push(d.coeff(m)[axis].clone());
        }
    }
    let lam = least_squares(&a, &b).ok_or(Error::NotTangent(f64::INFINITY))?;
    let lam = Polynomial::new(lam);
    let fitted = f.mul_scalar_poly(&lam);
    let scale = d.coeffs().iter().map(vmag).fold(0.0, f64::max);
    let resid = (0..=dr).map(|m| vmag(&vsub(&fitted.coeff(m), &d.coeff(m)))).fold(0.0, f64::max) / scale;
    let ok = if T::EXACT { resid == 0.0 } else { resid <= TANGENT_TOL };
    if !ok {
        return Err(Error::NotTangent(resid));
    }
    Ok(BasisElement {
        curve: RationalCurve::polynomial(curve.clone()),
        lambda: SpeedFunction::polynomial(lam),
        mu: None,
        kind: ElementKind::External,
    })
}

fn collect_poles<T: Scalar>(basis: &[BasisElement<T>]) -> Vec<Pole<T>> {
    let mut poles: Vec<Pole<T>> = Vec::new();
    for part in basis.iter().flat_map(|e| &e.lambda.poles) {
        let base = Complex::new(part.base.re.clone(), part.base.im.abs_val());
        match poles.iter_mut().find(|p| p.base == base) {
            Some(p) => p.order = p.order.max(part.order()),
            None => poles.push(Pole { base, order: part.order() }),
        }
    }
    poles
}

/// `mu = lambda * delta` reduced to a polynomial.
pub(crate) fn numerator<T: Scalar>(lambda: &SpeedFunction<T>, delta: &Polynomial<T>) -> Result<Polynomial<T>> {
    let dc = delta.to_complex();
    let mut acc = (&lambda.poly * delta).to_complex();
    for part in &lambda.poles {
        for (j, c) in &part.coeffs {
            let mut q = dc.clone();
            for _ in 0..j.unsigned_abs() {
                let (quot, rem) = q.div_rem(&Polynomial::linear_factor(part.base.clone()));
                let scale = q.coeffs().iter().map(Coeff::magnitude).fold(0.0, f64::max);
                if !rem.coeffs().iter().all(|r| r.negligible(scale, REAL_TOL)) {
                    return Err(Error::NonzeroResidue(rem.coeff(0).magnitude()));
                }
                q = quot;
            }
            acc = &acc + &q.map(|v| v.clone() * c.clone());
        }
    }
    let scale = acc.coeffs().iter().map(Coeff::magnitude).fold(0.0, f64::max);
    if !acc.coeffs().iter().all(|v| v.im.negligible(scale, REAL_TOL)) {
        return Err(Error::NotConjugatePair(acc.coeffs().iter().map(|v| v.im.magnitude()).fold(0.0, f64::max)));
    }
    Ok(acc.map(|v| v.re.clone()))
}

impl<T: Scalar> InterpolationSpace<T> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn mu(&self, i: usize) -> &Polynomial<T> {
        self.basis[i].mu.as_ref().expect("numerators are filled during assembly")
    }

    /// `sum_i rho_i mu_i`.
    pub fn combined_mu(&self, rho: &[T]) -> Polynomial<T> {
        rho.iter()
            .enumerate()
            .fold(Polynomial::zero(), |acc, (i, r)| &acc + &self.mu(i).scale(r))
    }

    pub fn eval(&self, rho: &[T], t: &T) -> Result<Vec3<T>> {
        self.check_len(rho)?;
        let mut acc = vzero();
        for (e, r) in self.basis.iter().zip(rho) {
            acc = vadd(&acc, &vscale(r, &e.curve.eval(t)?));
        }
        Ok(acc)
    }

    pub fn derivative(&self, rho: &[T], t: &T) -> Result<Vec3<T>> {
        self.check_len(rho)?;
        let mut acc = vzero();
        for (e, r) in self.basis.iter().zip(rho) {
            acc = vadd(&acc, &vscale(r, &e.curve.derivative(t)?));
        }
        Ok(acc)
    }

    /// Combined speed function `sum_i rho_i lambda_i(t)`.
    pub fn speed(&self, rho: &[T], t: &T) -> Result<T> {
        self.check_len(rho)?;
        let mut acc = T::zero();
        for (e, r) in self.basis.iter().zip(rho) {
            if !e.lambda.is_zero() {
                acc = acc + r.clone() * e.lambda.eval(t)?;
            }
        }
        Ok(acc)
    }

    /// Values of every basis curve at `t` (columns of the collocation matrix).
    pub fn basis_values(&self, t: &T) -> Result<Vec<Vec3<T>>> {
        self.basis.iter().map(|e| e.curve.eval(t)).collect()
    }

    /// Speed-function values of every basis element at `t`.
    pub fn basis_speeds(&self, t: &T) -> Result<Vec<T>> {
        self.basis
            .iter()
            .map(|e| if e.lambda.is_zero() { Ok(T::zero()) } else { e.lambda.eval(t) })
            .collect()
    }

    /// Degree of `sum rho_i q_i` as a rational curve (numerator over its
    /// reduced denominator), counting elements with nonzero weight.
    pub fn curve_degree(&self, rho: &[T]) -> usize {
        let active: Vec<&BasisElement<T>> = self.basis.iter().zip(rho).filter(|(_, r)| !r.is_zero()).map(|(e, _)| e).collect();
        let mut denom = 0;
        let mut poles: Vec<(Complex<T>, usize)> = Vec::new();
        let mut poly = 0usize;
        for e in &active {
            poly = poly.max(e.curve.poly.degree().unwrap_or(0));
            for part in &e.curve.parts {
                if let Some((low, _)) = part.lowest() {
                    let order = if low < 0 { low.unsigned_abs() as usize } else { 0 };
                    match poles.iter_mut().find(|(b, _)| *b == part.base) {
                        Some((_, o)) => *o = (*o).max(order),
                        None => poles.push((part.base.clone(), order)),
                    }
                }
                let high = part.terms.keys().next_back().copied().unwrap_or(0);
                poly = poly.max(high.max(0) as usize);
            }
        }
        for (_, o) in &poles {
            denom += o;
        }
        denom + poly
    }

    fn check_len(&self, rho: &[T]) -> Result<()> {
        if rho.len() != self.dim() {
            return Err(Error::Dimension(format!("rho has {} entries, space has dimension {}", rho.len(), self.dim())));
        }
        Ok(())
    }

    /// Exact rank: the three constants plus the rank of the numerators of
    /// the remaining elements, since a curve is constant iff its speed is 0.
    pub fn exact_rank(&self) -> usize {
        let rows: Vec<Vec<T>> = (0..self.dim())
            .filter(|&i| !self.basis[i].lambda.is_zero())
            .map(|i| self.mu(i).coeffs().to_vec())
            .collect();
        let width = rows.iter().map(Vec::len).max().unwrap_or(0);
        let padded = rows.into_iter().map(|mut r| { r.resize(width, T::zero()); r }).collect();
        let constants = self.dim() - (0..self.dim()).filter(|&i| !self.basis[i].lambda.is_zero()).count();
        constants.min(3) + crate::algebra::exact_rank(padded)
    }

    /// Numerical rank of the curve collocation matrix at Chebyshev nodes.
    pub fn collocation_rank(&self) -> usize {
        let dim = self.dim();
        let count = 3 * (dim + 2);
        let nodes = chebyshev_nodes(count);
        let mut m = DMatrix::<f64>::zeros(3 * count, dim);
        for (r, t) in nodes.iter().enumerate() {
            let t = T::from_f64_lossy(*t);
            for (c, e) in self.basis.iter().enumerate() {
                let v = e.curve.eval_complex(&cplx(t.clone()));
                for axis in 0..3 {
                    m[(3 * r + axis, c)] = v[axis].re.to_f64_lossy();
                }
            }
        }
        for mut col in m.column_iter_mut() {
            let n = col.norm();
            if n > 0.0 {
                col /= n;
            }
        }
        let sv = m.svd(false, false).singular_values;
        let top = sv.iter().copied().fold(0.0, f64::max);
        sv.iter().filter(|s| **s > RANK_TOL * top).count()
    }
}

/// `count` Chebyshev–Lobatto nodes on `[0, 1]`, including both endpoints.
pub fn chebyshev_nodes(count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![0.5];
    }
    (0..count)
        .map(|k| 0.5 - 0.5 * (std::f64::consts::PI * k as f64 / (count - 1) as f64).cos())
        .collect()
}
