//! Exact arithmetic: prime fields and rationals, polynomials, matrices,
//! factorization, and the closed-point geometry of the projective line.

pub mod factor;
pub mod field;
pub mod matrix;
pub mod points;
pub mod poly;

pub use factor::{is_monic_irreducible, poly_factor, Factorization, RATIONAL_DEGREE_CAP};
pub use field::{FieldSpec, Scalar};
pub use matrix::{intersect, linear_kit, preimage, LinearKit, Matrix};
pub use points::{enumerate_points, unify_fields, ClosedPoint, ClosedPoints, Point, PointSet};
pub use poly::Poly;
