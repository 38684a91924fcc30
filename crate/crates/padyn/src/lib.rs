//! Arithmetic dynamics of rational self-maps of the projective line over Q.
//!
//! The crate provides exact integer and rational polynomial arithmetic
//! ([`poly`]), normalized rational maps with reduction data ([`ratmap`]),
//! p-adic root counting and Newton polygons ([`padic`]), periodic-point
//! machinery ([`dynamics`]), certified canonical heights ([`heights`]) and
//! higher-level diagnostic reports ([`analyzer`]).
//!
//! Polynomials are generic over their coefficient ring; the concrete
//! instantiations used almost everywhere are [`IntPoly`] and [`RatPoly`].

pub mod arith;
pub mod poly;
pub mod ratmap;
pub mod padic;
pub mod dynamics;
pub mod heights;
pub mod analyzer;

mod numeric;

pub use arith::{ExtInt, Prime, Rational};
pub use poly::{IntPoly, Polynomial, RatPoly};
