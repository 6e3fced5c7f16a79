//! Exact arithmetic for ruling out equiangular line systems: Seidel
//! characteristic polynomials, their congruence classes, enumeration of
//! totally real candidates, interlacing families, Farkas certificates and
//! algebraic angle checks.

pub mod algebraic;
pub mod angles;
pub mod classes;
pub mod enumerate;
pub mod error;
pub mod feasibility;
pub mod interlace;
pub mod modtype;
pub mod pipeline;
pub mod poly;
pub mod seidel;

pub use error::{Error, Result};
pub use poly::{FactoredPoly, Poly};

/// Dense polynomial over ℤ.
pub type IntPoly = poly::Poly<num_bigint::BigInt>;
/// Dense polynomial over ℚ.
pub type RatPoly = poly::Poly<num_rational::BigRational>;
