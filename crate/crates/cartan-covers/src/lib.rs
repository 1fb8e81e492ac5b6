//! Exact-arithmetic toolkit for building and verifying explicit models of
//! Cartan modular curves: q-expansion relation finding, double-cover
//! construction, and pointwise verification over finite fields.
//!
//! Everything is exact: rationals are arbitrary precision, finite-field
//! arithmetic is modular, and every verification is an equality check with
//! zero tolerance. The embedded dataset ([`paperdata`]) carries the level-13
//! models (the genus-3 plane quartic shared by `X_s^+(13)` and `X_ns^+(13)`,
//! the genus-8 canonical models of `X_s(13)` and `X_ns(13)` in P^7, the
//! double-cover data `q_s`/`q_ns`, and the maps between the models), and the
//! [`cli`] module drives a one-shot verification suite over it.

pub mod error;
pub mod exactnum;
pub mod ffgeom;
pub mod polyalg;
pub mod qseries;
pub mod relfinder;

pub use error::{Error, Result};
