use num_complex::Complex;

use super::polynomial::{horner_shift, Polynomial};
use crate::scalar::{cplx, from_int, Coeff, Scalar, TRIM_TOL};

/// Three-component vector with generic entries.
pub type Vec3<C> = [C; 3];

pub fn vadd<C: Coeff>(a: &Vec3<C>, b: &Vec3<C>) -> Vec3<C> {
    [a[0].clone() + b[0].clone(), a[1].clone() + b[1].clone(), a[2].clone() + b[2].clone()]
}

pub fn vsub<C: Coeff>(a: &Vec3<C>, b: &Vec3<C>) -> Vec3<C> {
    [a[0].clone() - b[0].clone(), a[1].clone() - b[1].clone(), a[2].clone() - b[2].clone()]
}

pub fn vscale<C: Coeff>(s: &C, a: &Vec3<C>) -> Vec3<C> {
    [s.clone() * a[0].clone(), s.clone() * a[1].clone(), s.clone() * a[2].clone()]
}

pub fn vdot<C: Coeff>(a: &Vec3<C>, b: &Vec3<C>) -> C {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

pub fn vzero<C: Coeff>() -> Vec3<C> {
    [C::zero(), C::zero(), C::zero()]
}

/// Euclidean norm of the component magnitudes.
pub fn vmag<C: Coeff>(a: &Vec3<C>) -> f64 {
    a.iter().map(|c| c.magnitude().powi(2)).sum::<f64>().sqrt()
}

/// Determinant of the 3x3 matrix with columns `a`, `b`, `c`.
pub fn det3<C: Coeff>(a: &Vec3<C>, b: &Vec3<C>, c: &Vec3<C>) -> C {
    let m = |x: &C, y: &C| x.clone() * y.clone();
    m(&a[0], &(m(&b[1], &c[2]) - m(&b[2], &c[1])))
        - m(&b[0], &(m(&a[1], &c[2]) - m(&a[2], &c[1])))
        + m(&c[0], &(m(&a[1], &b[2]) - m(&a[2], &b[1])))
}

/// Polynomial with vector coefficients, ascending degree. Real tangent fields
/// use `C = T`; Taylor expansions about complex points use `C = Complex<T>`.
#[derive(Clone, Debug, PartialEq)]
pub struct VecPolynomial<C> {
    coeffs: Vec<Vec3<C>>,
}

/// Vector polynomial with complex entries.
pub type ComplexVec3Polynomial<T> = VecPolynomial<Complex<T>>;

impl<C: Coeff> VecPolynomial<C> {
    pub fn new(mut coeffs: Vec<Vec3<C>>) -> Self {
        let scale = coeffs.iter().map(vmag).fold(0.0, f64::max);
        while let Some(last) = coeffs.last() {
            let vanishes = if C::EXACT {
                last.iter().all(|c| c.is_zero())
            } else {
                vmag(last) <= TRIM_TOL * scale
            };
            if vanishes {
                coeffs.pop();
            } else {
                break;
            }
        }
        Self { coeffs }
    }

    pub fn from_components(x: &Polynomial<C>, y: &Polynomial<C>, z: &Polynomial<C>) -> Self {
        let n = x.coeffs().len().max(y.coeffs().len()).max(z.coeffs().len());
        Self::new((0..n).map(|k| [x.coeff(k), y.coeff(k), z.coeff(k)]).collect())
    }

    pub fn coeffs(&self) -> &[Vec3<C>] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Vec3<C> {
        self.coeffs.get(k).cloned().unwrap_or_else(vzero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn component(&self, axis: usize) -> Polynomial<C> {
        Polynomial::new(self.coeffs.iter().map(|v| v[axis].clone()).collect())
    }

    pub fn eval(&self, t: &C) -> Vec3<C> {
        self.coeffs.iter().rev().fold(vzero(), |acc, c| vadd(&vscale(t, &acc), c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| vscale(&from_int::<C>(k as i64), c))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn integral(&self) -> Self {
        let mut out = vec![vzero()];
        for (k, c) in self.coeffs.iter().enumerate() {
            let d = C::one() / from_int::<C>(k as i64 + 1);
            out.push(vscale(&d, c));
        }
        Self::new(out)
    }

    /// Product with a scalar polynomial.
    pub fn mul_scalar_poly(&self, p: &Polynomial<C>) -> Self {
        if self.is_zero() || p.is_zero() {
            return Self::new(Vec::new());
        }
        let mut out = vec![vzero(); self.coeffs.len() + p.coeffs().len() - 1];
        for (i, a) in p.coeffs().iter().enumerate() {
            for (j, v) in self.coeffs.iter().enumerate() {
                out[i + j] = vadd(&out[i + j], &vscale(a, v));
            }
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| vadd(&self.coeff(k), &other.coeff(k))).collect())
    }

    pub fn scale(&self, s: &C) -> Self {
        Self::new(self.coeffs.iter().map(|v| vscale(s, v)).collect())
    }

    /// `<self(t), other(t)>` as a scalar polynomial.
    pub fn dot(&self, other: &Self) -> Polynomial<C> {
        (0..3)
            .map(|a| &self.component(a) * &other.component(a))
            .fold(Polynomial::zero(), |acc, p| &acc + &p)
    }

    /// Coefficients `f_j` with `P(t) = sum_j f_j (t - beta)^j`, by repeated
    /// synthetic division.
    pub fn taylor_shift(&self, beta: &C) -> Self {
        let mut a = self.coeffs.clone();
        horner_shift(&mut a, beta, |acc, s, x| vadd(acc, &vscale(s, x)));
        Self::new(a)
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> VecPolynomial<D> {
        VecPolynomial::new(
            self.coeffs
                .iter()
                .map(|v| [f(&v[0]), f(&v[1]), f(&v[2])])
                .collect(),
        )
    }
}

impl<T: Scalar> VecPolynomial<T> {
    pub fn to_complex(&self) -> ComplexVec3Polynomial<T> {
        self.map(|c| cplx(c.clone()))
    }
}

impl<T: Scalar> ComplexVec3Polynomial<T> {
    pub fn conj(&self) -> Self {
        self.map(|c| c.conj())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use rand::{Rng, SeedableRng};

    #[test]
    fn shift_by_zero_is_identity() {
        let p = VecPolynomial::new(vec![[1.0, 2.0, 3.0], [0.0, -1.0, 4.0], [2.0, 2.0, 2.0]]);
        assert_eq!(p.taylor_shift(&0.0), p);
    }

    #[test]
    fn shift_of_t_squared_per_component() {
        let p = VecPolynomial::new(vec![[0.0; 3], [0.0; 3], [1.0, 2.0, -1.0]]);
        let s = p.taylor_shift(&1.0);
        assert_eq!(s.coeffs(), &[[1.0, 2.0, -1.0], [2.0, 4.0, -2.0], [1.0, 2.0, -1.0]]);
    }

    #[test]
    fn complex_shift_reproduces_values() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut c = || Complex::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let p = VecPolynomial::new((0..5).map(|_| [c(), c(), c()]).collect());
        let beta = c();
        let s = p.taylor_shift(&beta);
        for k in 0..10 {
            let t = Complex::new(-1.0 + 0.23 * k as f64, 0.1 * k as f64);
            let direct = p.eval(&t);
            let shifted = s.eval(&(t - beta));
            let err = vmag(&vsub(&direct, &shifted));
            assert!(err <= 1e-12 * vmag(&direct).max(1.0), "{err}");
        }
    }

    #[test]
    fn exact_round_trip_shift() {
        let q = |n: i64, d: i64| Complex::new(Rational::from_ratio(n, d), Rational::from_ratio(1 - n, 3));
        let p = VecPolynomial::new(vec![[q(1, 2), q(3, 1), q(-1, 5)], [q(0, 1), q(7, 3), q(2, 1)], [q(1, 1), q(1, 1), q(-4, 7)]]);
        let beta = q(5, 4);
        assert_eq!(p.taylor_shift(&beta).taylor_shift(&-beta), p);
    }

    #[test]
    fn determinant_of_unit_columns() {
        let d = det3(&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]);
        assert_eq!(d, 1.0);
        assert_eq!(det3(&[1.0, 1.0, 1.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 1.0]), 0.0);
    }
}
