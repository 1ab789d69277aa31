//! Scalar abstraction shared by the algebraic parts of the crate.
//!
//! The Laurent and polynomial machinery runs over any [`Scalar`]: `f64` and
//! `f32` for numerical work, [`Rational`] when basis identities have to hold
//! exactly. Coefficients may additionally be complex, which is captured by the
//! weaker [`Coeff`] trait.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, ToPrimitive};

/// Arbitrary precision rational numbers.
pub type Rational = BigRational;

/// Relative magnitude below which floating point coefficients are trimmed.
pub const TRIM_TOL: f64 = 1e-12;

/// Anything that can sit in a polynomial coefficient slot: real scalars and
/// complex numbers over them.
pub trait Coeff:
    Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static
{
    /// `true` when arithmetic is exact; zero tests are then literal.
    const EXACT: bool;

    /// Modulus as a float, used for tolerance decisions and diagnostics.
    fn magnitude(&self) -> f64;

    /// Zero test relative to `scale`: literal for exact types, `|x| <= tol*scale`
    /// for floats.
    fn negligible(&self, scale: f64, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= tol * scale
        }
    }
}

/// Real scalar field.
pub trait Scalar: Coeff + PartialOrd + FromPrimitive + ToPrimitive {
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact conversion from an `f64` (binary rationals convert without loss).
    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("finite float")
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).expect("integer") / Self::from_i64(den).expect("integer")
    }

    fn abs_val(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Square root, where the scalar type has one.
    fn sqrt_opt(&self) -> Option<Self>;
}

macro_rules! impl_float_scalar {
    ($f:ty) => {
        impl Coeff for $f {
            const EXACT: bool = false;
            fn magnitude(&self) -> f64 {
                (*self as f64).abs()
            }
        }

        impl Scalar for $f {
            fn sqrt_opt(&self) -> Option<Self> {
                Some(<$f>::sqrt(*self))
            }
        }
    };
}

impl_float_scalar!(f32);
impl_float_scalar!(f64);

impl Coeff for BigRational {
    const EXACT: bool = true;
    fn magnitude(&self) -> f64 {
        self.to_f64().map(f64::abs).unwrap_or(f64::INFINITY)
    }
}

impl Scalar for BigRational {
    fn from_f64_lossy(x: f64) -> Self {
        BigRational::from_float(x).expect("finite float")
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn sqrt_opt(&self) -> Option<Self> {
        None
    }
}

impl<T: Scalar> Coeff for Complex<T> {
    const EXACT: bool = T::EXACT;
    fn magnitude(&self) -> f64 {
        let re = self.re.to_f64_lossy();
        let im = self.im.to_f64_lossy();
        re.hypot(im)
    }
}

/// Lifts a real scalar into the complex plane.
pub fn cplx<T: Scalar>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

/// Converts a complex scalar of any real type to `Complex<f64>`.
pub fn to_c64<T: Scalar>(z: &Complex<T>) -> Complex<f64> {
    Complex::new(z.re.to_f64_lossy(), z.im.to_f64_lossy())
}

/// `n` as a scalar; used for integration divisors and binomials.
pub fn from_int<C: Coeff>(n: i64) -> C {
    let mut acc = C::zero();
    let one = C::one();
    let mut k = n.unsigned_abs();
    let mut pow = one;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc + pow.clone();
        }
        pow = pow.clone() + pow;
        k >>= 1;
    }
    if n < 0 {
        -acc
    } else {
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_lift_into_every_coeff_type() {
        assert_eq!(from_int::<f64>(-37), -37.0);
        assert_eq!(from_int::<Rational>(12), Rational::from_integer(12.into()));
        assert_eq!(from_int::<Complex<f64>>(5), Complex::new(5.0, 0.0));
        assert_eq!(from_int::<f64>(0), 0.0);
    }

    #[test]
    fn exact_types_only_vanish_at_zero() {
        let tiny = Rational::from_ratio(1, 1_000_000_000_000_000);
        assert!(!tiny.negligible(1.0, 1e-3));
        assert!(1e-15_f64.negligible(1.0, 1e-12));
        assert!(!1e-9_f64.negligible(1.0, 1e-12));
    }
}
