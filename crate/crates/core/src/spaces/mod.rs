//! Bases of the curve space for a fixed tangent field.

mod assemble;
mod basis;
mod laurent;
mod reparam;

pub use assemble::{assemble_space, chebyshev_nodes, Generator, InterpolationSpace, Pole, RANK_TOL, REAL_TOL, TANGENT_TOL};
pub use basis::{
    nonregular_basis, polynomial_basis, realify_pair, regular_basis, residuum_matrix, select_triplet, BasisElement,
    ElementKind, CONJUGATE_TOL,
};
pub use laurent::{integrate, product_coeffs, LaurentCurve, PolePart, RationalCurve, SpeedFunction, RESIDUE_TOL};
pub use reparam::{bernstein_reparametrization, Reparametrization};
