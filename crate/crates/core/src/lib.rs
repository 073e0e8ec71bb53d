//! Exact arithmetic for etale cubic algebras, twisted Bhargava cubes, and
//! rank-2 twisted composition algebras.
//!
//! Everything is computed exactly over either the rationals ([`field::Rat`])
//! or a prime field `F_p` with `p >= 5` ([`field::Fp`]); there is no
//! floating point anywhere. The crate is generic over the scalar through
//! the [`field::Scalar`] trait, with concrete aliases at the root.

pub mod comp;
pub mod cube;
pub mod emat;
pub mod etale;
pub mod field;
pub mod gauss;
pub mod jordan;
mod intfactor;
pub mod linalg;
pub mod orbits;
pub mod quad;
pub mod tori;

pub use field::{FieldCtx, FieldError, Fp, FpCtx, QCtx, Rat, Scalar, SquareClass};

/// Etale cubic algebra over the rationals.
pub type CubicAlgQ = etale::CubicAlg<Rat>;
/// Etale cubic algebra over a prime field.
pub type CubicAlgFp = etale::CubicAlg<Fp>;
