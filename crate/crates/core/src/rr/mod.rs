//! Functions on the curve, Riemann–Roch spaces and the maps between them.
//!
//! Cohomology in degree one is never represented directly: `H^1(D)` is the
//! dual of `L(K - D)`, and classes are [`LinearFunctional`]s.
//!
//! Bases depend on the chosen divisor, not only on its class. Two linearly
//! equivalent divisors give bases related by multiplication with a fixed
//! function, which [`RRBasis::inclusion_matrix`] exposes.

mod basis;
mod function;

pub use basis::{
    coordinates, h0, h1, is_principal, product_coordinates, rr_basis, LinearFunctional, RRBasis,
};
pub use function::RationalFunction;
