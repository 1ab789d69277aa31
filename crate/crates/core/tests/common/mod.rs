#![allow(dead_code)]

use num_complex::Complex;
use phspace::algebra::{Quaternion, QuaternionPolynomial, VecPolynomial};
use phspace::hodograph::{make_tangent_field, TangentField};
use phspace::{Rational, Scalar};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn quat<T: Scalar>(w: f64, x: f64, y: f64, z: f64) -> Quaternion<T> {
    Quaternion::new(T::from_f64_lossy(w), T::from_f64_lossy(x), T::from_f64_lossy(y), T::from_f64_lossy(z))
}

/// `A(t) = 1 - (1 - i - j - k) t`.
pub fn slant_helix<T: Scalar>() -> TangentField<T> {
    let a = QuaternionPolynomial::new(vec![quat(1.0, 0.0, 0.0, 0.0), quat(-1.0, 1.0, 1.0, 1.0)]);
    make_tangent_field(&a).unwrap()
}

/// Quadratic preimage of the quintic C1 example, exact.
pub fn quintic_preimage() -> QuaternionPolynomial<Rational> {
    let c = |x: i64, y: i64, z: i64| Quaternion::new(q(0, 1), q(x, 240), q(y, 240), q(z, 240));
    QuaternionPolynomial::new(vec![c(600, 120, 0), c(-864, -672, 816), c(840, 427, -816)])
}

pub fn quintic_field() -> TangentField<Rational> {
    make_tangent_field(&quintic_preimage()).unwrap()
}

/// The optimal quintic C1 interpolant (exact coefficients).
pub fn quintic_curve() -> VecPolynomial<Rational> {
    let rows: [[i64; 6]; 3] = [
        [0, 345600, -437760, 178192, 113520, -28517],
        [0, 144000, -506880, 625072, -466704, 143472],
        [0, 0, 489600, -796416, 695232, -274176],
    ];
    VecPolynomial::new((0..6).map(|k| [q(rows[0][k], 57600), q(rows[1][k], 57600), q(rows[2][k], 57600)]).collect())
}

pub fn length_preimage() -> QuaternionPolynomial<Rational> {
    QuaternionPolynomial::new(vec![
        Quaternion::new(q(-4, 7), q(-1, 1), q(1, 7), q(1, 2)),
        Quaternion::new(q(1, 3), q(3, 1), q(2, 3), q(-1, 1)),
        Quaternion::new(q(1, 1), q(-1, 5), q(2, 1), q(3, 4)),
    ])
}

pub fn complex_roots_preimage() -> QuaternionPolynomial<f64> {
    QuaternionPolynomial::new(vec![
        quat(1.0, 0.0, 0.0, 0.0),
        quat(-1.2721, 0.3309, -0.6618, 0.8272),
        quat(-0.5673, -0.2579, 0.5158, -0.6447),
    ])
}

pub fn complex_roots_beta() -> Complex<f64> {
    Complex::new(0.5, 6071202867f64.sqrt() / 124526.0)
}

pub fn to_f64_field(tf: &TangentField<Rational>) -> TangentField<f64> {
    let a = tf.preimage().unwrap();
    let a = QuaternionPolynomial::new(
        a.coeffs()
            .iter()
            .map(|c| Quaternion::new(c.w.to_f64_lossy(), c.x.to_f64_lossy(), c.y.to_f64_lossy(), c.z.to_f64_lossy()))
            .collect(),
    );
    make_tangent_field(&a).unwrap()
}

/// End-point data of the quintic C1 example.
pub fn quintic_data() -> phspace::constraints::HermiteData<Rational> {
    phspace::constraints::HermiteData {
        p0: [q(0, 1), q(0, 1), q(0, 1)],
        p1: [q(34207, 11520), q(-12208, 11520), q(22848, 11520)],
        v0: [q(6, 1), q(5, 2), q(0, 1)],
        v1: [q(316151, 57600), q(-144000, 57600), q(0, 1)],
        mode: phspace::constraints::Continuity::C1,
    }
}

/// Quintic PH curve of the arc-length example.
pub fn length_curve() -> VecPolynomial<Rational> {
    let rows: [[i64; 6]; 3] = [
        [0, 2794500, -7371000, 4941300, -1124550, -1864107],
        [0, -2268000, 1323000, -512400, 6769350, 370440],
        [0, -2214000, 7497000, -5419400, 1477350, -2275560],
    ];
    VecPolynomial::new((0..6).map(|k| [q(rows[0][k], 2646000), q(rows[1][k], 2646000), q(rows[2][k], 2646000)]).collect())
}

/// Constants, nonregular parts at -1 and 2, polynomial elements 1..=3.
pub fn length_space() -> phspace::spaces::InterpolationSpace<Rational> {
    use phspace::scalar::cplx;
    use phspace::spaces::{assemble_space, Generator};
    let tf = make_tangent_field(&length_preimage()).unwrap();
    let mut gens = vec![
        Generator::Nonregular { beta: cplx(q(-1, 1)), triplet: None, max_order: None },
        Generator::Nonregular { beta: cplx(q(2, 1)), triplet: None, max_order: None },
    ];
    gens.extend((1..=3).map(|ell| Generator::Polynomial { ell }));
    assemble_space(&tf, &gens, None).unwrap()
}

/// G1 data taken from the quintic of the arc-length example.
pub fn length_data() -> phspace::constraints::HermiteData<Rational> {
    let c = length_curve();
    let d = c.derivative();
    phspace::constraints::HermiteData {
        p0: c.eval(&q(0, 1)),
        p1: c.eval(&q(1, 1)),
        v0: d.eval(&q(0, 1)),
        v1: d.eval(&q(1, 1)),
        mode: phspace::constraints::Continuity::G1,
    }
}

pub fn exact(x: &[f64]) -> Vec<Rational> {
    x.iter().map(|v| Rational::from_f64_lossy(*v)).collect()
}
