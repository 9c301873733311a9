//! Exact computational algebra over binary fields GF(2^m), built around the
//! generalized Fermat quotients
//!
//! ```text
//!     phi_j(x,y,z) = (x^j + y^j + z^j + (x+y+z)^j) / ((x+y)(x+z)(y+z))
//! ```
//!
//! and their role in the study of almost perfect nonlinear (APN) functions.
//! The crate provides field arithmetic ([`gf2m`]), sparse multivariate and
//! dense univariate polynomials ([`mpoly`], [`upoly`]), construction of the
//! phi polynomials ([`phi`]), differential-uniformity testing ([`apn`]),
//! univariate and bivariate factorization with an absolute-irreducibility
//! decision ([`factor`]), local singularity analysis ([`singular`]), and
//! batch verification of structural facts about the Kasami-Welch curves
//! ([`verify`]).

pub mod apn;
pub mod error;
pub mod factor;
pub mod gf2m;
pub mod mpoly;
pub mod phi;
pub mod singular;
pub mod upoly;
pub mod verify;

pub use error::{Error, Result};
pub use gf2m::{FFElt, FieldCtx};
pub use mpoly::{MPoly, Var};
pub use upoly::UPoly;
