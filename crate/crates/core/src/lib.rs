//! Exact arithmetic for the Riordan group in several variables.
//!
//! Coefficients live in a runtime-selected ring ([`Ring`]): the integers,
//! the rationals, or a prime field. Series are truncated at total degree
//! `k` and every stored coefficient is exact.

pub mod campaign;
pub mod error;
pub mod expr;
pub mod formal_map;
pub mod layout;
pub mod matrix;
pub mod monomial;
pub mod par;
pub mod projective;
pub mod random;
pub mod riordan;
pub mod ring;
pub mod series;
pub mod verde_star;

pub use error::{Error, Result};
pub use formal_map::{FormalMap, LinearPart};
pub use layout::Layout;
pub use matrix::{homomorphism_check, injectivity_probe, MonomialMatrix};
pub use monomial::{enumerate_upto, Monomial, SignedMonomial};
pub use riordan::RiordanElement;
pub use ring::{Elem, Ring};
pub use series::Series;
pub use verde_star::{Convention, LaurentSeries, StarTuple, VsrElement};
