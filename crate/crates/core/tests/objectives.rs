mod common;

use common::*;
use nalgebra::DVector;
use phspace::algebra::{vdot, VecPolynomial};
use phspace::constraints::Sign;
use phspace::hodograph::{make_tangent_field, validate_field};
use phspace::objectives::*;
use phspace::scalar::cplx;
use phspace::spaces::*;
use phspace::{Error, Rational, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn polynomial_space(top: usize) -> InterpolationSpace<Rational> {
    let gens: Vec<_> = (1..=top).map(|ell| Generator::Polynomial { ell }).collect();
    assemble_space(&quintic_field(), &gens, None).unwrap()
}

fn mixed_space_f64() -> InterpolationSpace<f64> {
    let gens = vec![
        Generator::Nonregular { beta: Complex64::new(-1.0, 0.0), triplet: None, max_order: None },
        Generator::Polynomial { ell: 1 },
        Generator::Polynomial { ell: 2 },
    ];
    assemble_space(&to_f64_field(&quintic_field()), &gens, None).unwrap()
}

type Complex64 = num_complex::Complex<f64>;

fn random_rho(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

fn trapezoid(f: impl Fn(f64) -> f64, n: usize) -> f64 {
    let h = 1.0 / n as f64;
    let inner: f64 = (1..n).map(|k| f(k as f64 * h)).sum();
    h * (0.5 * (f(0.0) + f(1.0)) + inner)
}

#[test]
fn gram_matrix_is_symmetric_and_positive_semidefinite() {
    let space = polynomial_space(6);
    let obj = energy_objective(&space, &QuadratureOptions::default()).unwrap();
    let h = &obj.h;
    assert!((h - h.transpose()).amax() <= 1e-12 * h.amax());
    let eig = h.clone().symmetric_eigen().eigenvalues;
    assert!(eig.min() >= -1e-10 * eig.max());
    assert_eq!(obj.g, DVector::zeros(space.dim()));
}

#[test]
fn quadratic_form_matches_direct_energy() {
    let space = polynomial_space(6);
    let opts = QuadratureOptions::default();
    let obj = energy_objective(&space, &opts).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let rho = random_rho(&mut rng, space.dim());
        let direct = energy_of(&space, &exact(&rho), &opts).unwrap();
        let form = obj.value(&rho);
        assert!((form - direct).abs() <= 1e-7 * direct.max(1.0), "{form} vs {direct}");
    }
}

#[test]
fn energy_agrees_with_fine_trapezoid_rule() {
    let space = mixed_space_f64();
    let obj = energy_objective(&space, &QuadratureOptions::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let rho = random_rho(&mut rng, space.dim());
    let reference = trapezoid(
        |t| {
            let d = space.derivative(&rho, &t).unwrap();
            vdot(&d, &d)
        },
        1_000_000,
    );
    assert!((obj.value(&rho) - reference).abs() <= 1e-8 * reference);
}

#[test]
fn constant_curves_have_zero_energy_and_length() {
    let space = polynomial_space(3);
    let opts = QuadratureOptions::default();
    let mut rho = vec![q(0, 1); space.dim()];
    rho[0] = q(3, 1);
    rho[2] = q(-2, 7);
    assert_eq!(energy_of(&space, &rho, &opts).unwrap(), 0.0);
    assert_eq!(length_of(&space, &rho, &opts).unwrap(), 0.0);
    let l = arclength_vector(&space, &opts).unwrap();
    assert_eq!(&l.as_slice()[..3], &[0.0, 0.0, 0.0]);
}

#[test]
fn energy_bounds_squared_length() {
    let space = length_space();
    let opts = QuadratureOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..10 {
        let rho = exact(&random_rho(&mut rng, space.dim()));
        let (e, l) = (energy_of(&space, &rho, &opts).unwrap(), length_of(&space, &rho, &opts).unwrap());
        assert!(e >= l * l * (1.0 - 1e-9), "{e} < {l}^2");
    }
}

#[test]
fn quintic_energy() {
    let d = quintic_curve().derivative();
    let e = curve_energy(|t| d.eval(&Rational::from_f64_lossy(t)).map(|c| c.to_f64_lossy()), &QuadratureOptions::default()).unwrap();
    assert!((e - 17.75).abs() <= 0.02, "{e}");
    let gens = vec![Generator::Nonregular { beta: cplx(q(-1, 1)), triplet: None, max_order: None }];
    let space = assemble_space(&quintic_field(), &gens, Some(&quintic_curve())).unwrap();
    let mut rho = vec![0.0; space.dim()];
    *rho.last_mut().unwrap() = 1.0;
    let obj = energy_objective(&space, &QuadratureOptions::default()).unwrap();
    assert!((obj.value(&rho) - e).abs() <= 1e-8 * e);
}

#[test]
fn complex_pole_curve_energy() {
    let rows = [
        [0.0, 1.8173, -2.7375, -0.4547, 0.6574, 3.2798, -1.5063],
        [0.0, 0.0, 1.5033, -0.4475, -4.3635, 4.7702, -0.9345],
        [0.0, 0.0, 1.2027, 0.1859, -3.0460, 2.1318, 0.5818],
    ];
    let b = complex_roots_beta();
    let alpha = phspace::Polynomial64::new(vec![0.25 + b.im * b.im, -1.0, 1.0]).pow(3);
    let num = VecPolynomial::new((0..7).map(|k| [rows[0][k], rows[1][k], rows[2][k]]).collect());
    let (dn, da) = (num.derivative(), alpha.derivative());
    let e = curve_energy(
        |t| {
            let (a, n, d) = (alpha.eval(&t), num.eval(&t), dn.eval(&t));
            let s = da.eval(&t);
            [0, 1, 2].map(|k| (d[k] * a - n[k] * s) / (a * a))
        },
        &QuadratureOptions::default(),
    )
    .unwrap();
    assert!((e - 134.10).abs() <= 0.05, "{e}");
}

#[test]
fn length_example_curve() {
    let d = length_curve().derivative();
    let l = curve_length(|t| d.eval(&Rational::from_f64_lossy(t)).map(|c| c.to_f64_lossy()), &QuadratureOptions::default()).unwrap();
    assert!((l - 2.99).abs() <= 0.01, "{l}");
}

#[test]
fn arclength_vector_is_linear_and_matches_true_length() {
    let space = length_space();
    let opts = QuadratureOptions::default();
    let l = arclength_vector(&space, &opts).unwrap();
    // The lowest polynomial element has constant speed: no sign change.
    let k = (0..space.dim()).find(|&i| space.basis[i].kind == ElementKind::Polynomial).unwrap();
    let mut rho = vec![0.0; space.dim()];
    rho[k] = 1.0;
    let true_len = length_of(&space, &exact(&rho), &opts).unwrap();
    assert!((l[k].abs() - true_len).abs() <= 1e-10 * true_len);
    assert!((signed_length(&space, &rho, &opts).unwrap() - l[k]).abs() <= 1e-14);
    rho[k] = 2.0;
    assert!((signed_length(&space, &rho, &opts).unwrap() - 2.0 * l[k]).abs() <= 1e-12);
}

#[test]
fn true_length_handles_sign_changes() {
    let space = length_space();
    let opts = QuadratureOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let mut changed = 0;
    for _ in 0..5 {
        let rho = random_rho(&mut rng, space.dim());
        let mu = space.combined_mu(&exact(&rho));
        let values: Vec<f64> = (0..=200).map(|k| mu.eval(&q(k, 200)).to_f64_lossy()).collect();
        if values.windows(2).any(|w| w[0] * w[1] < 0.0) {
            changed += 1;
        }
        let fspace = mixed_length_space_f64();
        let reference = trapezoid(
            |t| {
                let d = fspace.derivative(&rho, &t).unwrap();
                vdot(&d, &d).sqrt()
            },
            200_000,
        );
        let l = length_of(&space, &exact(&rho), &opts).unwrap();
        assert!((l - reference).abs() <= 1e-7 * reference, "{l} vs {reference}");
    }
    assert!(changed > 0, "no sampled numerator changed sign");
}

fn mixed_length_space_f64() -> InterpolationSpace<f64> {
    let tf = to_f64_field(&make_tangent_field(&length_preimage()).unwrap());
    let mut gens = vec![
        Generator::Nonregular { beta: Complex64::new(-1.0, 0.0), triplet: None, max_order: None },
        Generator::Nonregular { beta: Complex64::new(2.0, 0.0), triplet: None, max_order: None },
    ];
    gens.extend((1..=3).map(|ell| Generator::Polynomial { ell }));
    assemble_space(&tf, &gens, None).unwrap()
}

#[test]
fn target_length_vanishes_at_matching_curve() {
    let space = length_space();
    let opts = QuadratureOptions::default();
    let k = (0..space.dim()).find(|&i| space.basis[i].kind == ElementKind::Polynomial).unwrap();
    let mut rho = vec![0.0; space.dim()];
    rho[k] = 1.0;
    let mu_sign = if space.combined_mu(&exact(&rho)).eval(&q(1, 2)) > q(0, 1) { Sign::Plus } else { Sign::Minus };
    let s = length_of(&space, &exact(&rho), &opts).unwrap();
    let obj = target_length_objective(&space, s, mu_sign, &opts).unwrap();
    assert!(obj.value(&rho).abs() <= 1e-12 * s * s);
    let arc = arclength_objective(&space, mu_sign, &opts).unwrap();
    assert!((arc.value(&rho) - s).abs() <= 1e-10 * s);
    assert_eq!(target_length_objective(&space, 0.0, mu_sign, &opts), Err(Error::InvalidTarget(0.0)));
    assert_eq!(target_length_objective(&space, -1.0, mu_sign, &opts), Err(Error::InvalidTarget(-1.0)));
}

#[test]
fn arclength_requires_ph_field() {
    let f = VecPolynomial::new(vec![[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 2.0, -1.0]]);
    let tf = validate_field(f).unwrap();
    let space = assemble_space(&tf, &[Generator::Polynomial { ell: 1 }], None).unwrap();
    let opts = QuadratureOptions::default();
    assert_eq!(arclength_vector(&space, &opts), Err(Error::ArcLengthRequiresPh));
    assert!(energy_objective(&space, &opts).is_ok());
}

#[test]
fn reparametrization_round_trips_exactly() {
    let gens: Vec<_> = std::iter::once(Generator::Nonregular { beta: cplx(q(-1, 1)), triplet: None, max_order: None })
        .chain((6..=12).map(|ell| Generator::Regular { beta: cplx(q(-1, 1)), r: -ell }))
        .collect();
    let space = assemble_space(&quintic_field(), &gens, Some(&quintic_curve())).unwrap();
    let rp = bernstein_reparametrization(&space).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let c = exact(&random_rho(&mut rng, space.dim()));
    let rho = rp.to_original(&c);
    assert_eq!(rp.from_original(&rho).unwrap(), c);
    let combined = rp.numerators(&space).iter().zip(&c).fold(phspace::RationalPolynomial::zero(), |acc, (m, ci)| &acc + &m.scale(ci));
    assert_eq!(combined, space.combined_mu(&rho));
    // New directions pass through the origin at t = 0.
    let start = space.basis_values(&q(0, 1)).unwrap();
    for j in 0..space.dim() {
        let is_constant = space.basis[j].lambda.is_zero();
        let p = (0..space.dim()).fold([q(0, 1), q(0, 1), q(0, 1)], |acc, i| {
            [0, 1, 2].map(|a| acc[a].clone() + rp.matrix[i][j].clone() * start[i][a].clone())
        });
        if !is_constant {
            assert_eq!(p, [q(0, 1), q(0, 1), q(0, 1)]);
        }
    }
}
