//! Rational space curves with polynomial tangent fields: construction of
//! curve spaces, Hermite and cusp constraints, quadratic objectives and a
//! dense active-set QP solver.
//!
//! Everything is generic over [`Scalar`]; exact arithmetic uses
//! [`Rational`]. The aliases below fix the scalar for common use.

pub mod algebra;
pub mod constraints;
pub mod error;
pub mod hodograph;
pub mod objectives;
pub mod qpsolve;
pub mod scalar;
pub mod spaces;

pub use error::{Error, Result};
pub use scalar::{Coeff, Rational, Scalar};

pub type Polynomial64 = algebra::Polynomial<f64>;
pub type RationalPolynomial = algebra::Polynomial<Rational>;
pub type VecPolynomial64 = algebra::VecPolynomial<f64>;
pub type RationalVecPolynomial = algebra::VecPolynomial<Rational>;
pub type Quaternion64 = algebra::Quaternion<f64>;
pub type QuaternionPolynomial64 = algebra::QuaternionPolynomial<f64>;
pub type RationalQuaternionPolynomial = algebra::QuaternionPolynomial<Rational>;
pub type TangentField64 = hodograph::TangentField<f64>;
pub type RationalTangentField = hodograph::TangentField<Rational>;
