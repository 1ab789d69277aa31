//! Generators of the curve space: polynomial, regular rational and
//! non-regular rational solutions, and realification of conjugate pairs.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::laurent::{integrate, LaurentCurve, PolePart, RationalCurve, SpeedFunction};
use crate::algebra::{det3, vmag, vsub, Polynomial, Vec3};
use crate::error::{Error, Result};
use crate::hodograph::{independent, TangentField};
use crate::scalar::{from_int, Coeff, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementKind {
    Constant,
    Polynomial,
    Regular,
    Nonregular,
    External,
}

/// One generator `q_i` of an interpolation space with its speed function.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisElement<T> {
    pub curve: RationalCurve<T>,
    pub lambda: SpeedFunction<T>,
    /// Numerator of `lambda` over the space's shared denominator.
    pub mu: Option<Polynomial<T>>,
    pub kind: ElementKind,
}

impl<T: Scalar> BasisElement<T> {
    pub fn constant(axis: usize) -> Self {
        let mut c = [T::zero(), T::zero(), T::zero()];
        c[axis] = T::one();
        Self {
            curve: RationalCurve::constant(c),
            lambda: SpeedFunction::zero(),
            mu: None,
            kind: ElementKind::Constant,
        }
    }

    /// Element whose speed function is a single pole part at one base.
    pub fn from_pole(field: &TangentField<T>, part: PolePart<T>, kind: ElementKind) -> Result<Self> {
        let lambda = SpeedFunction::pole(part);
        let curve = integrate(field.field(), &lambda)?;
        Ok(Self { curve, lambda, mu: None, kind })
    }

    /// Scales curve and speed function by a complex factor. Only meaningful
    /// for elements without a real polynomial part unless `s` is real.
    pub fn scale_complex(&self, s: &Complex<T>) -> Self {
        let curve = RationalCurve {
            parts: self.curve.parts.iter().map(|p| p.scale(s)).collect(),
            poly: self.curve.poly.scale(&s.re),
        };
        let lambda = SpeedFunction {
            poles: self.lambda.poles.iter().map(|p| p.scale(s)).collect(),
            poly: self.lambda.poly.scale(&s.re),
        };
        Self { curve, lambda, mu: self.mu.clone(), kind: self.kind }
    }

    /// Rescales a single-pole element so its lowest Laurent coefficient
    /// equals `F(beta)`.
    pub fn normalize_to_field(&self, field: &TangentField<T>) -> Self {
        let Some(part) = self.curve.parts.first() else {
            return self.clone();
        };
        let Some((_, low)) = part.lowest() else {
            return self.clone();
        };
        let fb = field.field().to_complex().eval(&part.base);
        let axis = (0..3)
            .max_by(|&a, &b| fb[a].magnitude().total_cmp(&fb[b].magnitude()))
            .unwrap_or(0);
        let ratio = fb[axis].clone() / low[axis].clone();
        self.scale_complex(&ratio)
    }
}

/// Taylor coefficients `f_0 .. f_n` of `F` about `beta`; column `j` multiplies
/// `lambda_{-1-j}` in the zero-residuum system.
pub fn residuum_matrix<T: Scalar>(field: &TangentField<T>, beta: &Complex<T>) -> Result<Vec<Vec3<Complex<T>>>> {
    let n = field.degree();
    if n < 2 {
        return Err(Error::FieldDegree(n));
    }
    if !field.is_spatial() {
        return Err(Error::NotSpatial);
    }
    let f = field.field().to_complex().taylor_shift(beta);
    Ok((0..=n).map(|j| f.coeff(j)).collect())
}

/// Lexicographically smallest independent triplet among the first `columns`
/// Taylor coefficients, or a validated `override_triplet`.
pub fn select_triplet<T: Scalar>(
    field: &TangentField<T>,
    beta: &Complex<T>,
    override_triplet: Option<[usize; 3]>,
) -> Result<[usize; 3]> {
    let f = residuum_matrix(field, beta)?;
    select_among(&f, f.len(), override_triplet)
}

fn select_among<C: Coeff>(f: &[Vec3<C>], columns: usize, override_triplet: Option<[usize; 3]>) -> Result<[usize; 3]> {
    if let Some(t) = override_triplet {
        let ok = t[0] < t[1] && t[1] < t[2] && t[2] < columns && independent(&f[t[0]], &f[t[1]], &f[t[2]]);
        return if ok { Ok(t) } else { Err(Error::TripletNotIndependent(t)) };
    }
    for a in 0..columns {
        for b in a + 1..columns {
            for c in b + 1..columns {
                if independent(&f[a], &f[b], &f[c]) {
                    return Ok([a, b, c]);
                }
            }
        }
    }
    Err(Error::NoIndependentTriplet)
}

/// Solution of the zero-residuum system with `lambda_{-1-free} = 1` and all
/// other free variables zero. Returned as `(j, lambda_j)` pairs.
fn residuum_solution<C: Coeff>(f: &[Vec3<C>], triplet: [usize; 3], free: usize) -> Result<Vec<(i64, C)>> {
    let [a, b, c] = triplet;
    let det = det3(&f[a], &f[b], &f[c]);
    if det.is_zero() {
        return Err(Error::TripletNotIndependent(triplet));
    }
    let rhs = vsub(&[C::zero(), C::zero(), C::zero()], &f[free]);
    let xa = det3(&rhs, &f[b], &f[c]) / det.clone();
    let xb = det3(&f[a], &rhs, &f[c]) / det.clone();
    let xc = det3(&f[a], &f[b], &rhs) / det;
    let idx = |k: usize| -1 - k as i64;
    Ok(vec![(idx(free), C::one()), (idx(a), xa), (idx(b), xb), (idx(c), xc)])
}

/// Basis of the non-regular solutions at `beta` whose speed functions have
/// pole order at most `max_order` (default `n + 1`, the full space of
/// dimension `n - 2`). Free variables are one-hot, highest pole order first.
pub fn nonregular_basis<T: Scalar>(
    field: &TangentField<T>,
    beta: &Complex<T>,
    triplet: Option<[usize; 3]>,
    max_order: Option<usize>,
) -> Result<Vec<BasisElement<T>>> {
    let f = residuum_matrix(field, beta)?;
    let columns = max_order.unwrap_or(f.len()).min(f.len());
    if columns < 3 {
        return Ok(Vec::new());
    }
    let triplet = match select_among(&f, columns, triplet) {
        Ok(t) => t,
        Err(Error::NoIndependentTriplet) => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };
    (0..columns)
        .rev()
        .filter(|k| !triplet.contains(k))
        .map(|free| {
            let coeffs = residuum_solution(&f, triplet, free)?;
            BasisElement::from_pole(field, PolePart::new(beta.clone(), coeffs), crate::spaces::ElementKind::Nonregular)
        })
        .collect()
}

/// Regular solution for `lambda = (t - beta)^r`, `r <= -n - 2`.
pub fn regular_basis<T: Scalar>(field: &TangentField<T>, beta: &Complex<T>, r: i64) -> Result<BasisElement<T>> {
    let bound = -(field.degree() as i64) - 2;
    if r > bound {
        return Err(Error::NotRegularExponent { r, bound });
    }
    BasisElement::from_pole(field, PolePart::new(beta.clone(), [(r, Complex::one())]), ElementKind::Regular)
}

/// Polynomial solution for `lambda = (n + ell) t^(ell - 1)`; its leading
/// coefficient equals that of `F`.
pub fn polynomial_basis<T: Scalar>(field: &TangentField<T>, ell: usize) -> Result<BasisElement<T>> {
    if ell == 0 {
        return Err(Error::Dimension("polynomial generator index must be >= 1".into()));
    }
    let n = field.degree();
    let lambda = Polynomial::monomial(ell - 1, from_int::<T>((n + ell) as i64));
    let speed = SpeedFunction::polynomial(lambda);
    let curve = integrate(field.field(), &speed)?;
    Ok(BasisElement { curve, lambda: speed, mu: None, kind: ElementKind::Polynomial })
}

/// Tolerance for recognising conjugate pairs.
pub const CONJUGATE_TOL: f64 = 1e-10;

/// Real and imaginary parts of a conjugate pair: `(e+ + e-)/2` and
/// `(e+ - e-)/(2i)`. For a real base with `e- == e+` the second element is
/// zero and should be dropped by the caller.
pub fn realify_pair<T: Scalar>(plus: &BasisElement<T>, minus: &BasisElement<T>) -> Result<(BasisElement<T>, BasisElement<T>)> {
    let mismatch = conjugate_mismatch(plus, minus);
    if mismatch > CONJUGATE_TOL {
        return Err(Error::NotConjugatePair(mismatch));
    }
    let two = from_int::<T>(2);
    let half = Complex::new(T::one() / two.clone(), T::zero());
    let minus_half_i = Complex::new(T::zero(), -T::one() / two.clone());
    let half_i = Complex::new(T::zero(), T::one() / two);
    let re = combine(plus, &half, minus, &half);
    let im = combine(plus, &minus_half_i, minus, &half_i);
    Ok((re, im))
}

fn combine<T: Scalar>(a: &BasisElement<T>, sa: &Complex<T>, b: &BasisElement<T>, sb: &Complex<T>) -> BasisElement<T> {
    let ea = a.scale_complex(sa);
    let eb = b.scale_complex(sb);
    // Real polynomial parts: (p+ ± p-) with the complex weights reduces to the
    // real part of the weight sum applied to one copy.
    let poly_weight = sa.clone() + sb.clone();
    let mut parts = ea.curve.parts;
    parts.extend(eb.curve.parts);
    let mut poles = ea.lambda.poles;
    poles.extend(eb.lambda.poles);
    let (parts, poles) = merge_same_base(parts, poles);
    BasisElement {
        curve: RationalCurve { parts, poly: a.curve.poly.scale(&poly_weight.re) },
        lambda: SpeedFunction { poles, poly: a.lambda.poly.scale(&poly_weight.re) },
        mu: None,
        kind: a.kind,
    }
}

/// Real bases pair an element with itself; merge coincident parts so the
/// imaginary combination collapses to an empty element.
fn merge_same_base<T: Scalar>(parts: Vec<LaurentCurve<T>>, poles: Vec<PolePart<T>>) -> (Vec<LaurentCurve<T>>, Vec<PolePart<T>>) {
    let mut merged_parts: Vec<LaurentCurve<T>> = Vec::new();
    for p in parts {
        match merged_parts.iter_mut().find(|m| m.base == p.base) {
            Some(m) => {
                for (j, v) in p.terms {
                    let e = m.terms.entry(j).or_insert_with(crate::algebra::vzero);
                    *e = crate::algebra::vadd(e, &v);
                }
                m.terms.retain(|_, v| !v.iter().all(|c| c.is_zero()));
            }
            None => merged_parts.push(p),
        }
    }
    let mut merged_poles: Vec<PolePart<T>> = Vec::new();
    for p in poles {
        match merged_poles.iter_mut().find(|m| m.base == p.base) {
            Some(m) => {
                for (j, c) in p.coeffs {
                    let e = m.coeffs.entry(j).or_insert_with(Complex::zero);
                    *e = e.clone() + c;
                }
                m.coeffs.retain(|_, c| !c.is_zero());
            }
            None => merged_poles.push(p),
        }
    }
    merged_parts.retain(|p| !p.terms.is_empty());
    merged_poles.retain(|p| !p.is_zero());
    (merged_parts, merged_poles)
}

/// Relative deviation of `minus` from the conjugate of `plus`.
fn conjugate_mismatch<T: Scalar>(plus: &BasisElement<T>, minus: &BasisElement<T>) -> f64 {
    if plus.curve.parts.len() != minus.curve.parts.len() || plus.lambda.poles.len() != minus.lambda.poles.len() {
        return f64::INFINITY;
    }
    let mut scale: f64 = 0.0;
    let mut diff: f64 = 0.0;
    for (p, m) in plus.curve.parts.iter().zip(&minus.curve.parts) {
        let pc = p.conj();
        diff = diff.max((pc.base.clone() - m.base.clone()).magnitude());
        let keys: std::collections::BTreeSet<i64> = pc.terms.keys().chain(m.terms.keys()).copied().collect();
        for j in keys {
            let a = pc.term(j);
            let b = m.term(j);
            scale = scale.max(vmag(&a)).max(vmag(&b));
            diff = diff.max(vmag(&vsub(&a, &b)));
        }
    }
    for (p, m) in plus.lambda.poles.iter().zip(&minus.lambda.poles) {
        let pc = p.conj();
        let keys: std::collections::BTreeSet<i64> = pc.coeffs.keys().chain(m.coeffs.keys()).copied().collect();
        for j in keys {
            let a = pc.coeff(j);
            let b = m.coeff(j);
            scale = scale.max(a.magnitude()).max(b.magnitude());
            diff = diff.max((a - b).magnitude());
        }
    }
    if plus.curve.poly != minus.curve.poly || plus.lambda.poly != minus.lambda.poly {
        return f64::INFINITY;
    }
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::VecPolynomial;
    use crate::hodograph::validate_field;
    use crate::scalar::{cplx, Rational};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn example1() -> TangentField<Rational> {
        let v = |a, b, c| [q(a), q(b), q(c)];
        validate_field(VecPolynomial::new(vec![v(1, 1, 1), v(1, 0, -1), v(1, 1, 0), v(0, 1, -1), v(1, -1, 1)])).unwrap()
    }

    #[test]
    fn residuum_columns_at_zero_are_coefficients() {
        let field = example1();
        let cols = residuum_matrix(&field, &cplx(q(0))).unwrap();
        assert_eq!(cols.len(), 5);
        assert_eq!(cols[3], [cplx(q(0)), cplx(q(1)), cplx(q(-1))]);
        let beta = Complex::new(q(1), q(2));
        let cols = residuum_matrix(&field, &beta).unwrap();
        assert_eq!(cols[0], field.field().to_complex().eval(&beta));
    }

    #[test]
    fn triplet_rules() {
        let field = example1();
        let zero = cplx(q(0));
        assert_eq!(select_triplet(&field, &zero, None).unwrap(), [0, 1, 2]);
        assert_eq!(select_triplet(&field, &zero, Some([1, 2, 3])).unwrap(), [1, 2, 3]);
        assert_eq!(select_triplet(&field, &zero, Some([2, 1, 3])), Err(Error::TripletNotIndependent([2, 1, 3])));
    }

    #[test]
    fn regular_exponent_bounds() {
        let field = example1();
        let beta = cplx(q(-1));
        assert_eq!(regular_basis(&field, &beta, -5), Err(Error::NotRegularExponent { r: -5, bound: -6 }));
        let e = regular_basis(&field, &beta, -6).unwrap();
        let exps: Vec<i64> = e.curve.parts[0].terms.keys().copied().collect();
        assert_eq!(exps, vec![-5, -4, -3, -2, -1]);
    }

    #[test]
    fn polynomial_generator_matches_leading_coefficient() {
        let field = example1();
        let e = polynomial_basis(&field, 1).unwrap();
        assert_eq!(e.lambda.poly.coeffs(), &[q(5)]);
        assert_eq!(e.curve.poly.degree(), Some(5));
        assert_eq!(e.curve.poly.coeff(5), field.field().coeff(4));
        assert_eq!(e.curve.poly.coeff(0), [q(0), q(0), q(0)]);
    }

    #[test]
    fn realify_real_base_yields_zero_imaginary_part() {
        let field = example1();
        let e = regular_basis(&field, &cplx(q(-1)), -7).unwrap();
        let (re, im) = realify_pair(&e, &e).unwrap();
        assert_eq!(re.curve, e.curve);
        assert!(im.curve.parts.is_empty() && im.lambda.is_zero());
    }

    #[test]
    fn realify_rejects_non_conjugates() {
        let field = example1();
        let beta = Complex::new(q(2), q(1));
        let a = regular_basis(&field, &beta, -6).unwrap();
        let b = regular_basis(&field, &beta, -6).unwrap();
        assert!(matches!(realify_pair(&a, &b), Err(Error::NotConjugatePair(_))));
    }
}
