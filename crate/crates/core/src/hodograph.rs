//! Tangent fields `F = A i conj(A)` and the norm polynomial `sigma = A conj(A)`.

use num_complex::Complex;

use crate::algebra::{det3, qpoly_mul, vmag, Polynomial, Quaternion, QuaternionPolynomial, Vec3, VecPolynomial};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Relative determinant threshold deciding linear independence of three
/// coefficient vectors in float mode.
pub const INDEPENDENCE_TOL: f64 = 1e-9;

/// Polynomial tangent field of a family of curves.
///
/// `sigma` and `preimage` are present exactly when the field was built from a
/// quaternion polynomial, in which case `|F(t)| = sigma(t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentField<T> {
    field: VecPolynomial<T>,
    sigma: Option<Polynomial<T>>,
    preimage: Option<QuaternionPolynomial<T>>,
}

impl<T: Scalar> TangentField<T> {
    pub fn field(&self) -> &VecPolynomial<T> {
        &self.field
    }

    pub fn sigma(&self) -> Option<&Polynomial<T>> {
        self.sigma.as_ref()
    }

    pub fn preimage(&self) -> Option<&QuaternionPolynomial<T>> {
        self.preimage.as_ref()
    }

    pub fn degree(&self) -> usize {
        self.field.degree().unwrap_or(0)
    }

    pub fn is_ph(&self) -> bool {
        self.sigma.is_some()
    }

    /// `<F, F>`, which equals `sigma²` for PH fields.
    pub fn norm2(&self) -> Polynomial<T> {
        self.field.dot(&self.field)
    }

    pub fn eval(&self, t: &T) -> Vec3<T> {
        self.field.eval(t)
    }

    /// Whether the coefficient vectors span R^3.
    pub fn is_spatial(&self) -> bool {
        is_spatial(self.field.coeffs())
    }
}

/// Builds `F = A i conj(A)` and `sigma = A conj(A)`.
///
/// Fields with a real common factor are rejected. Spatiality is not required
/// here (`A = 1` yields the constant field `i`); space construction checks it.
pub fn make_tangent_field<T: Scalar>(a: &QuaternionPolynomial<T>) -> Result<TangentField<T>> {
    if a.is_zero() {
        return Err(Error::ZeroPreimage);
    }
    let ai = a.mul_right(&Quaternion::i());
    let sandwich = qpoly_mul(&ai, &a.conj());
    let sigma = qpoly_mul(a, &a.conj()).scalar_part();
    let field = sandwich.vector_part();
    let degree = real_factor_degree(&field);
    if degree > 0 {
        return Err(Error::RealFactor { degree });
    }
    Ok(TangentField { field, sigma: Some(sigma), preimage: Some(a.clone()) })
}

/// Wraps a user supplied field without PH structure.
pub fn validate_field<T: Scalar>(field: VecPolynomial<T>) -> Result<TangentField<T>> {
    check_field(&field)?;
    Ok(TangentField { field, sigma: None, preimage: None })
}

fn check_field<T: Scalar>(field: &VecPolynomial<T>) -> Result<()> {
    if !is_spatial(field.coeffs()) {
        return Err(Error::NotSpatial);
    }
    let degree = real_factor_degree(field);
    if degree > 0 {
        return Err(Error::RealFactor { degree });
    }
    Ok(())
}

/// Independence test for three vectors: exact for exact scalars, relative
/// determinant threshold otherwise.
pub(crate) fn independent<C: crate::scalar::Coeff>(a: &Vec3<C>, b: &Vec3<C>, c: &Vec3<C>) -> bool {
    let scale = vmag(a) * vmag(b) * vmag(c);
    if scale == 0.0 {
        return false;
    }
    !det3(a, b, c).negligible(scale, INDEPENDENCE_TOL)
}

fn is_spatial<T: Scalar>(coeffs: &[Vec3<T>]) -> bool {
    let n = coeffs.len();
    (0..n).any(|i| {
        (i + 1..n).any(|j| (j + 1..n).any(|k| independent(&coeffs[i], &coeffs[j], &coeffs[k])))
    })
}

/// Degree of the common real factor of the three components (0 if none).
fn real_factor_degree<T: Scalar>(field: &VecPolynomial<T>) -> usize {
    let comps: Vec<Polynomial<T>> = (0..3).map(|a| field.component(a)).filter(|p| !p.is_zero()).collect();
    if comps.is_empty() {
        return 0;
    }
    if T::EXACT {
        let g = comps.iter().skip(1).fold(comps[0].clone(), |g, p| g.gcd(p));
        return g.degree().unwrap_or(0);
    }
    // Float mode: a common factor shows up as a shared complex root.
    let f64field = field.map(|c| c.to_f64_lossy());
    let Some(pivot) = comps
        .iter()
        .map(|p| p.map(|c| c.to_f64_lossy()))
        .min_by_key(|p| p.degree().unwrap_or(0))
    else {
        return 0;
    };
    let cfield = f64field.to_complex();
    pivot
        .roots()
        .into_iter()
        .filter(|z| {
            let value = vmag(&cfield.eval(z));
            let scale: f64 = f64field
                .coeffs()
                .iter()
                .enumerate()
                .map(|(j, f)| vmag(f) * z.norm().powi(j as i32))
                .sum();
            value <= 1e-8 * scale
        })
        .count()
}

/// Unit quaternion `q` with `q i conj(q)` pointing along `v`; `phi` walks the
/// one-parameter fibre of such quaternions by right multiplication with
/// `cos(phi) + i sin(phi)`.
pub fn direction_preimage(v: &Vec3<f64>, phi: f64) -> Result<Quaternion<f64>> {
    let len = vmag(v);
    if len == 0.0 || !len.is_finite() {
        return Err(Error::ZeroDirection);
    }
    let u = [v[0] / len, v[1] / len, v[2] / len];
    // rotation carrying (1,0,0) onto u: normalize((1 + i.u) + i x u)
    let w = 1.0 + u[0];
    let base = if w <= 1e-12 {
        Quaternion::j()
    } else {
        let q = Quaternion::new(w, 0.0, -u[2], u[1]);
        q.scale(&(1.0 / q.norm2().sqrt()))
    };
    Ok(&base * &Quaternion::new(phi.cos(), phi.sin(), 0.0, 0.0))
}

/// Complex evaluation of a real field.
pub fn eval_complex<T: Scalar>(field: &VecPolynomial<T>, z: &Complex<T>) -> Vec3<Complex<T>> {
    field.to_complex().eval(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use rand::{Rng, SeedableRng};

    fn rq(w: i64, x: i64, y: i64, z: i64) -> Quaternion<Rational> {
        let r = |n: i64| Rational::from_integer(n.into());
        Quaternion::new(r(w), r(x), r(y), r(z))
    }

    #[test]
    fn slant_helix_field() {
        // A(t) = 1 - (1 - i - j - k) t
        let a = QuaternionPolynomial::new(vec![rq(1, 0, 0, 0), rq(-1, 1, 1, 1)]);
        let tf = make_tangent_field(&a).unwrap();
        let r = |n: i64| Rational::from_integer(n.into());
        let expect = VecPolynomial::new(vec![
            [r(1), r(0), r(0)],
            [r(-2), r(2), r(-2)],
            [r(0), r(0), r(4)],
        ]);
        assert_eq!(tf.field(), &expect);
        assert_eq!(&tf.norm2(), &(tf.sigma().unwrap() * tf.sigma().unwrap()));
    }

    #[test]
    fn constant_preimage() {
        let a = QuaternionPolynomial::new(vec![Quaternion::<f64>::one()]);
        let tf = make_tangent_field(&a).unwrap();
        assert_eq!(tf.field().coeffs(), &[[1.0, 0.0, 0.0]]);
        assert_eq!(tf.sigma().unwrap().coeffs(), &[1.0]);
        assert!(!tf.is_spatial());
        let zero = QuaternionPolynomial::<f64>::new(vec![]);
        assert_eq!(make_tangent_field(&zero), Err(Error::ZeroPreimage));
    }

    #[test]
    fn random_quadratic_preimages_are_pythagorean() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for deg in 1..=3usize {
            for _ in 0..34 {
                let coeffs: Vec<Quaternion<f64>> = (0..=deg)
                    .map(|_| Quaternion::new(rng.gen_range(-2.0f64..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
                    .collect();
                let a = QuaternionPolynomial::new(coeffs);
                let sandwich = qpoly_mul(&a.mul_right(&Quaternion::i()), &a.conj());
                let scale = sandwich.coeffs().iter().map(|q| q.norm2().sqrt()).fold(0.0, f64::max);
                assert!(sandwich.scalar_part().coeffs().iter().all(|w| w.abs() <= 1e-12 * scale));
                let Ok(tf) = make_tangent_field(&a) else { continue };
                let sigma = tf.sigma().unwrap();
                let diff = &tf.norm2() - &(sigma * sigma);
                let s2 = (sigma * sigma).coeffs().iter().map(|c| c.abs()).fold(0.0, f64::max);
                assert!(diff.coeffs().iter().all(|c| c.abs() <= 1e-10 * s2));
            }
        }
    }

    #[test]
    fn example_field_is_accepted() {
        let f = VecPolynomial::new(vec![[1.0, 1.0, 1.0], [1.0, 0.0, -1.0], [1.0, 1.0, 0.0], [0.0, 1.0, -1.0], [1.0, -1.0, 1.0]]);
        let tf = validate_field(f).unwrap();
        assert!(!tf.is_ph());
        assert_eq!(tf.degree(), 4);
    }

    #[test]
    fn planar_field_is_rejected() {
        let d = [1.0, 2.0, 3.0];
        let f = VecPolynomial::new(vec![d, [2.0, 4.0, 6.0], [-1.0, -2.0, -3.0]]);
        assert_eq!(validate_field(f), Err(Error::NotSpatial));
        let g = VecPolynomial::new(vec![[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 1.0, 0.0]]);
        assert_eq!(validate_field(g), Err(Error::NotSpatial));
    }

    #[test]
    fn shared_factor_is_rejected() {
        // t * (spatial quadratic field)
        let f = VecPolynomial::new(vec![[0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
        assert_eq!(validate_field(f), Err(Error::RealFactor { degree: 1 }));
        let r = |n: i64| Rational::from_integer(n.into());
        // (t^2 + 1) * (1, t, t^2): factor without real roots
        let g = VecPolynomial::new(vec![
            [r(1), r(0), r(0)],
            [r(0), r(1), r(0)],
            [r(1), r(0), r(1)],
            [r(0), r(1), r(0)],
            [r(0), r(0), r(1)],
        ]);
        assert_eq!(validate_field(g.clone()), Err(Error::RealFactor { degree: 2 }));
        let gf = g.map(|c| c.to_f64_lossy());
        assert_eq!(validate_field(gf), Err(Error::RealFactor { degree: 2 }));
    }

    fn image(q: &Quaternion<f64>) -> Vec3<f64> {
        q.sandwich_i().vector()
    }

    #[test]
    fn preimage_of_axes() {
        let q = direction_preimage(&[1.0, 0.0, 0.0], 0.0).unwrap();
        assert_eq!(q, Quaternion::one());
        let q = direction_preimage(&[0.0, 1.0, 0.0], 0.0).unwrap();
        let im = image(&q);
        assert!((im[0]).abs() < 1e-15 && (im[1] - 1.0).abs() < 1e-15 && im[2].abs() < 1e-15);
        let q = direction_preimage(&[-2.0, 0.0, 0.0], 0.3).unwrap();
        let im = image(&q);
        assert!((im[0] + 1.0).abs() < 1e-15);
        assert_eq!(direction_preimage(&[0.0; 3], 0.0), Err(Error::ZeroDirection));
    }

    #[test]
    fn preimage_family_is_fibre() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let v = [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)];
            let phi = rng.gen_range(-4.0..4.0);
            let q = direction_preimage(&v, phi).unwrap();
            assert!((q.norm2().sqrt() - 1.0).abs() < 1e-12);
            let im = image(&q);
            let len = vmag(&v);
            let dot = (im[0] * v[0] + im[1] * v[1] + im[2] * v[2]) / len;
            assert!((dot - 1.0).abs() < 1e-10);
            let im0 = image(&direction_preimage(&v, 0.0).unwrap());
            assert!((0..3).all(|a| (im[a] - im0[a]).abs() < 1e-12));
        }
    }
}
