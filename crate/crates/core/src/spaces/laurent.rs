//! Speed functions and curves as sums of Laurent parts around complex poles
//! plus a real polynomial.

use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::algebra::{vadd, vmag, vscale, vzero, Polynomial, Vec3, VecPolynomial};
use crate::error::{Error, Result};
use crate::scalar::{cplx, from_int, Coeff, Scalar};

/// `sum_j c_j (t - base)^j` over strictly negative exponents `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolePart<T> {
    pub base: Complex<T>,
    pub coeffs: BTreeMap<i64, Complex<T>>,
}

impl<T: Scalar> PolePart<T> {
    pub fn new(base: Complex<T>, coeffs: impl IntoIterator<Item = (i64, Complex<T>)>) -> Self {
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self { base, coeffs }
    }

    /// Highest pole order carried by a nonzero coefficient.
    pub fn order(&self) -> usize {
        self.coeffs.keys().next().map(|j| j.unsigned_abs() as usize).unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, j: i64) -> Complex<T> {
        self.coeffs.get(&j).cloned().unwrap_or_else(Complex::zero)
    }

    pub fn eval(&self, t: &Complex<T>) -> Complex<T> {
        let u = t.clone() - self.base.clone();
        self.coeffs
            .iter()
            .fold(Complex::zero(), |acc, (j, c)| acc + c.clone() * ipow(&u, *j))
    }

    pub fn scale(&self, s: &Complex<T>) -> Self {
        Self::new(self.base.clone(), self.coeffs.iter().map(|(j, c)| (*j, c.clone() * s.clone())))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.base.conj(), self.coeffs.iter().map(|(j, c)| (*j, c.conj())))
    }
}

/// `u^j` for any integer `j`.
pub(crate) fn ipow<C: Coeff>(u: &C, j: i64) -> C {
    let mut acc = C::one();
    for _ in 0..j.unsigned_abs() {
        acc = acc * u.clone();
    }
    if j < 0 {
        C::one() / acc
    } else {
        acc
    }
}

/// Rational speed function `lambda = poly + sum of pole parts`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpeedFunction<T> {
    pub poles: Vec<PolePart<T>>,
    pub poly: Polynomial<T>,
}

impl<T: Scalar> SpeedFunction<T> {
    pub fn zero() -> Self {
        Self { poles: Vec::new(), poly: Polynomial::zero() }
    }

    pub fn polynomial(poly: Polynomial<T>) -> Self {
        Self { poles: Vec::new(), poly }
    }

    pub fn pole(part: PolePart<T>) -> Self {
        Self { poles: vec![part], poly: Polynomial::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero() && self.poles.iter().all(PolePart::is_zero)
    }

    pub fn eval_complex(&self, t: &Complex<T>) -> Complex<T> {
        self.poles
            .iter()
            .fold(self.poly.to_complex().eval(t), |acc, p| acc + p.eval(t))
    }

    /// Value at a real parameter (real part of the complex sum).
    pub fn eval(&self, t: &T) -> Result<T> {
        check_not_pole(self.poles.iter().map(|p| &p.base), t)?;
        Ok(self.eval_complex(&cplx(t.clone())).re)
    }

    /// Pole order at `base` (0 if `base` is not a pole).
    pub fn order_at(&self, base: &Complex<T>) -> usize {
        self.poles
            .iter()
            .filter(|p| &p.base == base)
            .map(PolePart::order)
            .max()
            .unwrap_or(0)
    }
}

/// `sum_j r_j (t - base)^j` over nonzero exponents; the absolute term lives in
/// the polynomial part of [`RationalCurve`].
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentCurve<T> {
    pub base: Complex<T>,
    pub terms: BTreeMap<i64, Vec3<Complex<T>>>,
}

impl<T: Scalar> LaurentCurve<T> {
    pub fn term(&self, j: i64) -> Vec3<Complex<T>> {
        self.terms.get(&j).cloned().unwrap_or_else(vzero)
    }

    /// Lowest exponent carrying a nonzero coefficient.
    pub fn lowest(&self) -> Option<(i64, &Vec3<Complex<T>>)> {
        self.terms.iter().next().map(|(j, v)| (*j, v))
    }

    pub fn eval(&self, t: &Complex<T>) -> Vec3<Complex<T>> {
        let u = t.clone() - self.base.clone();
        self.terms
            .iter()
            .fold(vzero(), |acc, (j, v)| vadd(&acc, &vscale(&ipow(&u, *j), v)))
    }

    pub fn derivative(&self, t: &Complex<T>) -> Vec3<Complex<T>> {
        let u = t.clone() - self.base.clone();
        self.terms.iter().fold(vzero(), |acc, (j, v)| {
            let s = from_int::<Complex<T>>(*j) * ipow(&u, j - 1);
            vadd(&acc, &vscale(&s, v))
        })
    }

    pub fn scale(&self, s: &Complex<T>) -> Self {
        Self {
            base: self.base.clone(),
            terms: self.terms.iter().map(|(j, v)| (*j, vscale(s, v))).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            base: self.base.conj(),
            terms: self
                .terms
                .iter()
                .map(|(j, v)| (*j, [v[0].conj(), v[1].conj(), v[2].conj()]))
                .collect(),
        }
    }
}

/// Rational curve as a real polynomial plus Laurent parts about poles.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalCurve<T> {
    pub parts: Vec<LaurentCurve<T>>,
    pub poly: VecPolynomial<T>,
}

impl<T: Scalar> RationalCurve<T> {
    pub fn constant(c: Vec3<T>) -> Self {
        Self { parts: Vec::new(), poly: VecPolynomial::new(vec![c]) }
    }

    pub fn polynomial(poly: VecPolynomial<T>) -> Self {
        Self { parts: Vec::new(), poly }
    }

    pub fn eval_complex(&self, t: &Complex<T>) -> Vec3<Complex<T>> {
        self.parts
            .iter()
            .fold(self.poly.to_complex().eval(t), |acc, p| vadd(&acc, &p.eval(t)))
    }

    pub fn derivative_complex(&self, t: &Complex<T>) -> Vec3<Complex<T>> {
        self.parts.iter().fold(self.poly.derivative().to_complex().eval(t), |acc, p| {
            vadd(&acc, &p.derivative(t))
        })
    }

    pub fn eval(&self, t: &T) -> Result<Vec3<T>> {
        check_not_pole(self.parts.iter().map(|p| &p.base), t)?;
        Ok(re3(&self.eval_complex(&cplx(t.clone()))))
    }

    pub fn derivative(&self, t: &T) -> Result<Vec3<T>> {
        check_not_pole(self.parts.iter().map(|p| &p.base), t)?;
        Ok(re3(&self.derivative_complex(&cplx(t.clone()))))
    }

    /// Largest imaginary component at `t`, for realness diagnostics.
    pub fn imaginary_residue(&self, t: &T) -> f64 {
        let v = self.eval_complex(&cplx(t.clone()));
        v.iter().map(|c| c.im.magnitude()).fold(0.0, f64::max)
    }
}

pub(crate) fn re3<T: Scalar>(v: &Vec3<Complex<T>>) -> Vec3<T> {
    [v[0].re.clone(), v[1].re.clone(), v[2].re.clone()]
}

fn check_not_pole<'a, T: Scalar>(bases: impl Iterator<Item = &'a Complex<T>>, t: &T) -> Result<()> {
    for b in bases {
        if b.im.is_zero() && &b.re == t {
            return Err(Error::EvaluationAtPole(t.to_f64_lossy()));
        }
    }
    Ok(())
}

/// Integrates `lambda F` term-wise. Each pole part must carry zero residuum;
/// integration constants are zero.
pub fn integrate<T: Scalar>(field: &VecPolynomial<T>, speed: &SpeedFunction<T>) -> Result<RationalCurve<T>> {
    let parts = speed
        .poles
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| integrate_pole(field, p))
        .collect::<Result<Vec<_>>>()?;
    let poly = field.mul_scalar_poly(&speed.poly).integral();
    Ok(RationalCurve { parts, poly })
}

/// Relative tolerance for the zero-residuum check in float mode.
pub const RESIDUE_TOL: f64 = 1e-10;

/// Laurent coefficients of `lambda F` around the pole's base.
pub fn product_coeffs<T: Scalar>(field: &VecPolynomial<T>, part: &PolePart<T>) -> BTreeMap<i64, Vec3<Complex<T>>> {
    let f = field.to_complex().taylor_shift(&part.base);
    let mut prod: BTreeMap<i64, Vec3<Complex<T>>> = BTreeMap::new();
    for (j, c) in &part.coeffs {
        for (k, fk) in f.coeffs().iter().enumerate() {
            let e = j + k as i64;
            let entry = prod.entry(e).or_insert_with(vzero);
            *entry = vadd(entry, &vscale(c, fk));
        }
    }
    prod
}

fn integrate_pole<T: Scalar>(field: &VecPolynomial<T>, part: &PolePart<T>) -> Result<LaurentCurve<T>> {
    let prod = product_coeffs(field, part);
    let scale = part.coeffs.values().map(Coeff::magnitude).fold(0.0, f64::max)
        * field.coeffs().iter().map(vmag).fold(0.0, f64::max)
        * (1.0 + part.base.magnitude()).powi(field.degree().unwrap_or(0) as i32);
    let residue = prod.get(&-1).cloned().unwrap_or_else(vzero);
    let residue_zero = residue.iter().all(|c| c.negligible(scale, RESIDUE_TOL));
    if !residue_zero {
        return Err(Error::NonzeroResidue(vmag(&residue) / scale.max(f64::MIN_POSITIVE)));
    }
    let terms = prod
        .into_iter()
        .filter(|(e, _)| *e != -1)
        .map(|(e, v)| {
            let d = Complex::<T>::one() / from_int::<Complex<T>>(e + 1);
            (e + 1, vscale(&d, &v))
        })
        .filter(|(_, v)| !v.iter().all(|c| c.is_zero()))
        .collect();
    Ok(LaurentCurve { base: part.base.clone(), terms })
}
