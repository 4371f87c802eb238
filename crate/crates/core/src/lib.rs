//! Exact arithmetic in skew-polynomial rings `F[x;θ]` over small finite
//! fields, together with `(θ,a)`-circulant matrices and skew-constacyclic
//! codes.

pub mod error;
pub mod circulant;
pub mod codes;
pub mod divisors;
pub mod gf;
pub mod matrix;
pub mod parse;
pub mod quotient;
pub mod report;
pub mod skewpoly;
pub mod suites;

pub use error::{Error, Result};
pub use gf::{field_of_size, make_field, Automorphism, ElementStyle, FieldCtx, Gf};
pub use skewpoly::{Degree, Gcrd, RingExt, SkewPoly, SkewRing};
