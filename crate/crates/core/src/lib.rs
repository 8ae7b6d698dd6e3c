//! Exact enumeration of planar tight maps with prescribed boundary lengths.
//!
//! Closed-form quasi-polynomial counts live in [`polys`] and [`counts`]; the
//! brute-force oracles that check them live in [`codes`], [`forests`] and [`mapgen`].

pub mod codes;
pub mod counts;
pub mod error;
pub mod forests;
pub mod mapgen;
pub mod numeric;
pub mod polys;
pub mod report;
pub mod verify;

pub use error::Error;
pub use numeric::{HalfInt, Rational};
pub use report::Report;
