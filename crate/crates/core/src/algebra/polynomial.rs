use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;

use crate::scalar::{cplx, from_int, Coeff, Scalar, TRIM_TOL};

/// Univariate polynomial with coefficients in ascending order of degree.
///
/// The coefficient list never carries trailing zeros. For float coefficients
/// "zero" means below [`TRIM_TOL`] times the largest coefficient magnitude.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<C> {
    coeffs: Vec<C>,
}

fn trim<C: Coeff>(coeffs: &mut Vec<C>) {
    let scale = coeffs.iter().map(Coeff::magnitude).fold(0.0, f64::max);
    while let Some(last) = coeffs.last() {
        if last.negligible(scale, TRIM_TOL) {
            coeffs.pop();
        } else {
            break;
        }
    }
}

impl<C: Coeff> Polynomial<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        trim(&mut coeffs);
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(k: usize, c: C) -> Self {
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `t - root`.
    pub fn linear_factor(root: C) -> Self {
        Self::new(vec![-root, C::one()])
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `t^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn scale(&self, s: &C) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * from_int::<C>(k as i64))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn integral(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(C::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push(c.clone() / from_int::<C>(k as i64 + 1));
        }
        Self::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::constant(C::one()), |acc, _| &acc * self)
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    /// Coefficients of `p(t + shift)`, i.e. the expansion of `p` in powers of
    /// `t - shift`.
    pub fn taylor_shift(&self, shift: &C) -> Self {
        let mut a = self.coeffs.clone();
        horner_shift(&mut a, shift, |acc, s, x| acc.clone() + s.clone() * x.clone());
        Self::new(a)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return (Self::zero(), self.clone());
        };
        let mut quot = vec![C::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = rem[k + dd].clone() / lead.clone();
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - q.clone() * d.clone();
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }
}

/// In-place Ruffini-Horner shift shared by scalar and vector polynomials.
pub(crate) fn horner_shift<X: Clone, S>(a: &mut [X], shift: &S, fma: impl Fn(&X, &S, &X) -> X) {
    let n = a.len();
    if n < 2 {
        return;
    }
    for i in 0..n - 1 {
        for j in (i..n - 1).rev() {
            a[j] = fma(&a[j], shift, &a[j + 1]);
        }
    }
}

impl<T: Scalar> Polynomial<T> {
    pub fn to_complex(&self) -> Polynomial<Complex<T>> {
        self.map(|c| cplx(c.clone()))
    }

    pub fn eval_complex(&self, z: &Complex<T>) -> Complex<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(T::zero(), T::zero()), |acc, c| {
                acc * z.clone() + cplx(c.clone())
            })
    }

    /// Monic greatest common divisor by the Euclidean algorithm. Exact
    /// scalars only; floats should use root-based tests instead.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        match a.leading().cloned() {
            Some(l) => a.scale(&(T::one() / l)),
            None => a,
        }
    }
}

impl<C: Coeff> Polynomial<Complex<C>>
where
    C: Scalar,
{
    /// Real and imaginary coefficient parts.
    pub fn split(&self) -> (Polynomial<C>, Polynomial<C>) {
        (self.map(|c| c.re.clone()), self.map(|c| c.im.clone()))
    }
}

impl Polynomial<f64> {
    /// Complex roots via the eigenvalues of the companion matrix, polished by
    /// a few Newton steps.
    pub fn roots(&self) -> Vec<Complex<f64>> {
        let Some(n) = self.degree() else {
            return Vec::new();
        };
        if n == 0 {
            return Vec::new();
        }
        let lead = self.coeffs[n];
        let mut comp = nalgebra::DMatrix::<f64>::zeros(n, n);
        for i in 1..n {
            comp[(i, i - 1)] = 1.0;
        }
        for i in 0..n {
            comp[(i, n - 1)] = -self.coeffs[i] / lead;
        }
        let cp = self.to_complex();
        let dcp = cp.derivative();
        comp.complex_eigenvalues()
            .iter()
            .map(|z0| {
                let mut z = *z0;
                for _ in 0..4 {
                    let d = dcp.eval(&z);
                    if d.norm() == 0.0 {
                        break;
                    }
                    let step = cp.eval(&z) / d;
                    if !step.re.is_finite() || !step.im.is_finite() {
                        break;
                    }
                    z -= step;
                }
                z
            })
            .collect()
    }
}

impl<C: Coeff> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<C: Coeff> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<C: Coeff> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<C: Coeff> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = Polynomial::new(vec![1.0, 2.0, 0.0, 1e-14]);
        assert_eq!(p.degree(), Some(1));
        let e = Polynomial::new(vec![q(1), q(0)]);
        assert_eq!(e.degree(), Some(0));
        assert!(Polynomial::<f64>::new(vec![0.0, 0.0]).is_zero());
    }

    #[test]
    fn product_degree_is_additive() {
        let a = Polynomial::new(vec![1.0, -2.0, 3.0]);
        let b = Polynomial::new(vec![0.5, 4.0]);
        assert_eq!((&a * &b).degree(), Some(3));
        assert!((&a * &Polynomial::zero()).is_zero());
    }

    #[test]
    fn shift_of_t_squared_is_binomial() {
        let p = Polynomial::new(vec![q(0), q(0), q(1)]);
        assert_eq!(p.taylor_shift(&q(1)).coeffs(), &[q(1), q(2), q(1)]);
        assert_eq!(p.taylor_shift(&q(0)), p);
    }

    #[test]
    fn division_recombines_exactly() {
        let a = Polynomial::new(vec![q(3), q(-1), q(0), q(2), q(5)]);
        let b = Polynomial::new(vec![q(1), q(1), q(1)]);
        let (quot, rem) = a.div_rem(&b);
        assert_eq!(&(&quot * &b) + &rem, a);
        assert!(rem.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_finds_shared_factor() {
        let f = Polynomial::new(vec![q(-2), q(1)]);
        let a = &f * &Polynomial::new(vec![q(1), q(0), q(1)]);
        let b = &f * &Polynomial::new(vec![q(7), q(3)]);
        assert_eq!(a.gcd(&b), f);
    }

    #[test]
    fn companion_roots() {
        // (t-1)(t+2)(t^2+1)
        let p = &(&Polynomial::new(vec![-1.0, 1.0]) * &Polynomial::new(vec![2.0, 1.0]))
            * &Polynomial::new(vec![1.0, 0.0, 1.0]);
        let mut roots = p.roots();
        roots.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
        let expect = [
            Complex::new(-2.0, 0.0),
            Complex::new(0.0, -1.0),
            Complex::new(0.0, 1.0),
            Complex::new(1.0, 0.0),
        ];
        for (r, e) in roots.iter().zip(expect.iter()) {
            assert!((r - e).norm() < 1e-12, "{r} vs {e}");
        }
    }

    #[test]
    fn integral_then_derivative() {
        let p = Polynomial::new(vec![q(3), q(-4), q(6)]);
        assert_eq!(p.integral().derivative(), p);
        assert_eq!(p.integral().coeff(0), q(0));
    }
}
