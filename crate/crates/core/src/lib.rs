//! Exact computational algebra over small finite fields, centered on
//! products of involutions in the matrix algebra and on the linear maps of
//! that algebra which preserve them.
//!
//! The crate provides:
//!
//! - exact arithmetic in GF(p^k) ([`field`]) and univariate polynomials with
//!   reciprocal/self-reciprocal structure and factorization ([`poly`]);
//! - dense exact matrices with companion constructors, characteristic and
//!   minimal polynomials ([`matrix`]);
//! - the rational canonical form in elementary-divisor shape, with an
//!   explicit conjugator, and similarity testing ([`canonical`]);
//! - membership oracles and constructive factorizations for products of
//!   two, three, and four involutions, plus the witness constructions used
//!   to separate those sets ([`involution`]);
//! - brute-force enumeration kernels: involution enumeration, product
//!   closures, and the left-multiplier census ([`census`]);
//! - linear maps on the matrix algebra as first-class objects: standard
//!   preserver forms, set-preservation checking, and structure recognition
//!   ([`preserver`]);
//! - the end-to-end verification suite behind `verify` ([`verify`]).

pub mod canonical;
pub mod census;
pub mod error;
pub mod field;
pub mod involution;
pub mod matrix;
pub mod poly;
pub mod preserver;
pub mod sample;
pub mod text;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use matrix::Matrix;
pub use poly::Polynomial;
