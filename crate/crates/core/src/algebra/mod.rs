//! Scalar, complex, quaternion and polynomial arithmetic.

mod bernstein;
mod linsolve;
mod polynomial;
mod quaternion;
mod vecpoly;

pub use bernstein::{elevate, eval_bernstein, to_bernstein};
pub use linsolve::{exact_rank, least_squares, solve_square};
pub use polynomial::Polynomial;
pub use quaternion::{qpoly_mul, quat_mul, Quaternion, QuaternionPolynomial};
pub use vecpoly::{det3, vadd, vdot, vmag, vscale, vsub, vzero, ComplexVec3Polynomial, Vec3, VecPolynomial};

/// Shifts `p` so that the returned coefficients expand it in powers of
/// `t - beta`.
pub fn taylor_shift<C: crate::scalar::Coeff>(p: &VecPolynomial<C>, beta: &C) -> VecPolynomial<C> {
    p.taylor_shift(beta)
}
