//! Exact computation of asymptotic critical values and global infima of
//! real polynomials, with Newton-polytope bifurcation supersets and explicit
//! degree and bit-size bound calculators.

pub mod error;
pub mod modp;
pub mod polyring;
pub mod realroots;

pub use error::{Error, Result};
pub use polyring::{parse, parse_poly, MPoly, UPoly};
pub use realroots::AlgebraicNumber;
pub mod elimination;
pub mod acv;
pub mod groebner;
pub mod polytope;
pub mod newton;
pub mod bounds;
pub mod optimize;
pub mod constrained;
pub mod cli;

pub(crate) fn ser_bigint<S: serde::Serializer>(
    v: &num_bigint::BigInt,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
