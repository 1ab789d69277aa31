use std::ops::{Add, Mul, Neg, Sub};

use super::polynomial::Polynomial;
use super::vecpoly::{Vec3, VecPolynomial};
use crate::scalar::Scalar;

/// Quaternion `w + x i + y j + z k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Quaternion<T> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> Quaternion<T> {
    pub fn new(w: T, x: T, y: T, z: T) -> Self {
        Self { w, x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::zero())
    }

    pub fn i() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn j() -> Self {
        Self::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn k() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    /// Pure quaternion from a 3-vector.
    pub fn from_vector(v: &Vec3<T>) -> Self {
        Self::new(T::zero(), v[0].clone(), v[1].clone(), v[2].clone())
    }

    pub fn vector(&self) -> Vec3<T> {
        [self.x.clone(), self.y.clone(), self.z.clone()]
    }

    pub fn conj(&self) -> Self {
        Self::new(self.w.clone(), -self.x.clone(), -self.y.clone(), -self.z.clone())
    }

    /// `q * conj(q) = w² + x² + y² + z²`.
    pub fn norm2(&self) -> T {
        self.w.clone() * self.w.clone()
            + self.x.clone() * self.x.clone()
            + self.y.clone() * self.y.clone()
            + self.z.clone() * self.z.clone()
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(
            self.w.clone() * s.clone(),
            self.x.clone() * s.clone(),
            self.y.clone() * s.clone(),
            self.z.clone() * s.clone(),
        )
    }

    pub fn is_zero(&self) -> bool {

        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    /// `q i conj(q)`, always a pure quaternion.
    pub fn sandwich_i(&self) -> Self {
        &(self * &Self::i()) * &self.conj()
    }
}

/// Hamilton product.
pub fn quat_mul<T: Scalar>(a: &Quaternion<T>, b: &Quaternion<T>) -> Quaternion<T> {
    let (aw, ax, ay, az) = (&a.w, &a.x, &a.y, &a.z);
    let (bw, bx, by, bz) = (&b.w, &b.x, &b.y, &b.z);
    let m = |p: &T, q: &T| p.clone() * q.clone();
    Quaternion::new(
        m(aw, bw) - m(ax, bx) - m(ay, by) - m(az, bz),
        m(aw, bx) + m(ax, bw) + m(ay, bz) - m(az, by),
        m(aw, by) - m(ax, bz) + m(ay, bw) + m(az, bx),
        m(aw, bz) + m(ax, by) - m(ay, bx) + m(az, bw),
    )
}

impl<T: Scalar> Mul for &Quaternion<T> {
    type Output = Quaternion<T>;
    fn mul(self, rhs: Self) -> Quaternion<T> {
        quat_mul(self, rhs)
    }
}

impl<T: Scalar> Add for &Quaternion<T> {
    type Output = Quaternion<T>;
    fn add(self, r: Self) -> Quaternion<T> {
        Quaternion::new(
            self.w.clone() + r.w.clone(),
            self.x.clone() + r.x.clone(),
            self.y.clone() + r.y.clone(),
            self.z.clone() + r.z.clone(),
        )
    }
}

impl<T: Scalar> Sub for &Quaternion<T> {
    type Output = Quaternion<T>;
    fn sub(self, r: Self) -> Quaternion<T> {
        Quaternion::new(
            self.w.clone() - r.w.clone(),
            self.x.clone() - r.x.clone(),
            self.y.clone() - r.y.clone(),
            self.z.clone() - r.z.clone(),
        )
    }
}

impl<T: Scalar> Neg for &Quaternion<T> {
    type Output = Quaternion<T>;
    fn neg(self) -> Quaternion<T> {
        self.scale(&-T::one())
    }
}

/// Polynomial in `t` with quaternion coefficients (ascending degree); `t`
/// commutes with everything.
#[derive(Clone, Debug, PartialEq)]
pub struct QuaternionPolynomial<T> {
    coeffs: Vec<Quaternion<T>>,
}

impl<T: Scalar> QuaternionPolynomial<T> {
    pub fn new(mut coeffs: Vec<Quaternion<T>>) -> Self {
        let scale = coeffs
            .iter()
            .map(|q| q.norm2().to_f64_lossy().sqrt())
            .fold(0.0, f64::max);
        while let Some(last) = coeffs.last() {
            let vanishes = if T::EXACT {
                last.is_zero()
            } else {
                last.norm2().to_f64_lossy().sqrt() <= crate::scalar::TRIM_TOL * scale
            };
            if vanishes {
                coeffs.pop();
            } else {
                break;
            }
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Quaternion<T>] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(Quaternion::conj).collect())
    }

    pub fn eval(&self, t: &T) -> Quaternion<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Quaternion::zero(), |acc, c| &acc.scale(t) + c)
    }

    /// Right multiplication by a constant quaternion.
    pub fn mul_right(&self, q: &Quaternion<T>) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * q).collect())
    }

    /// Scalar (real) part as a polynomial.
    pub fn scalar_part(&self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|q| q.w.clone()).collect())
    }

    /// Vector part as a 3-vector polynomial.
    pub fn vector_part(&self) -> VecPolynomial<T> {
        VecPolynomial::new(self.coeffs.iter().map(Quaternion::vector).collect())
    }
}

/// Cauchy product respecting the order of the factors.
pub fn qpoly_mul<T: Scalar>(a: &QuaternionPolynomial<T>, b: &QuaternionPolynomial<T>) -> QuaternionPolynomial<T> {
    if a.is_zero() || b.is_zero() {
        return QuaternionPolynomial::new(Vec::new());
    }
    let mut out = vec![Quaternion::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, p) in a.coeffs.iter().enumerate() {
        for (j, q) in b.coeffs.iter().enumerate() {
            out[i + j] = &out[i + j] + &(p * q);
        }
    }
    QuaternionPolynomial::new(out)
}

impl<T: Scalar> Mul for &QuaternionPolynomial<T> {
    type Output = QuaternionPolynomial<T>;
    fn mul(self, rhs: Self) -> QuaternionPolynomial<T> {
        qpoly_mul(self, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use proptest::prelude::*;

    type Q = Quaternion<f64>;

    #[test]
    fn unit_relations() {
        assert_eq!(&Q::i() * &Q::j(), Q::k());
        assert_eq!(&Q::j() * &Q::k(), Q::i());
        assert_eq!(&Q::k() * &Q::i(), Q::j());
        assert_eq!(&Q::j() * &Q::i(), -&Q::k());
        assert_eq!(&Q::i() * &Q::i(), -&Q::one());
        let q = Q::new(0.3, -1.0, 2.0, 4.5);
        assert_eq!(&q * &Q::one(), q);
    }

    #[test]
    fn one_plus_i_times_one_plus_j() {
        let a = Q::new(1.0, 1.0, 0.0, 0.0);
        let b = Q::new(1.0, 0.0, 1.0, 0.0);
        assert_eq!(&a * &b, Q::new(1.0, 1.0, 1.0, 1.0));
    }

    #[test]
    fn linear_quaternion_polynomials() {
        let r = |w, x, y, z| Quaternion::new(Rational::from_ratio(w, 1), Rational::from_ratio(x, 1), Rational::from_ratio(y, 1), Rational::from_ratio(z, 1));
        let a = QuaternionPolynomial::new(vec![r(1, 0, 0, 0), r(0, 1, 0, 0)]);
        let b = QuaternionPolynomial::new(vec![r(1, 0, 0, 0), r(0, 0, 1, 0)]);
        let p = &a * &b;
        assert_eq!(p.coeffs(), &[r(1, 0, 0, 0), r(0, 1, 1, 0), r(0, 0, 0, 1)]);
        let one = QuaternionPolynomial::new(vec![r(1, 0, 0, 0)]);
        assert_eq!(&one * &b, b);
    }

    #[test]
    fn quadratic_times_quadratic_is_quartic() {
        let c = |s: f64| Q::new(s, 1.0 - s, 0.5, s * s);
        let a = QuaternionPolynomial::new(vec![c(1.0), c(2.0), c(-1.0)]);
        let b = QuaternionPolynomial::new(vec![c(0.5), c(0.0), c(3.0)]);
        assert_eq!((&a * &b).degree(), Some(4));
    }

    fn quat() -> impl Strategy<Value = Q> {
        (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64).prop_map(|(w, x, y, z)| Q::new(w, x, y, z))
    }

    fn close(a: &Q, b: &Q, tol: f64) -> bool {
        (a - b).norm2().sqrt() <= tol
    }

    proptest! {
        #[test]
        fn conjugate_reverses_products(a in quat(), b in quat()) {
            prop_assert!(close(&(&a * &b).conj(), &(&b.conj() * &a.conj()), 1e-12));
        }

        #[test]
        fn norm_is_multiplicative(a in quat(), b in quat()) {
            let lhs = (&a * &b).norm2();
            let rhs = a.norm2() * b.norm2();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
        }

        #[test]
        fn conjugation_is_involution(a in quat()) {
            prop_assert_eq!(a.conj().conj(), a);
        }

        #[test]
        fn polynomial_product_evaluates_pointwise(
            a in proptest::collection::vec(quat(), 1..4),
            b in proptest::collection::vec(quat(), 1..4),
            t in -2.0..2.0f64,
        ) {
            let pa = QuaternionPolynomial::new(a);
            let pb = QuaternionPolynomial::new(b);
            let lhs = (&pa * &pb).eval(&t);
            let rhs = &pa.eval(&t) * &pb.eval(&t);
            prop_assert!(close(&lhs, &rhs, 1e-9 * (1.0 + rhs.norm2().sqrt())));
            prop_assert!(close(&pa.conj().eval(&t), &pa.eval(&t).conj(), 1e-12));
        }
    }
}
