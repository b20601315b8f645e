//! Exact computation of Grothendieck-Witt valued Euler characteristics of
//! cyclic branched coverings.
//!
//! The crate provides exact field towers over Q and F_p, univariate and
//! multivariate polynomial algebra, Grothendieck-Witt ring arithmetic with a
//! decidable equality test, Scheja-Storch bilinear forms, the closed-form
//! covering calculus, and the end-to-end pipeline for double covers of the
//! projective plane branched over a smooth plane curve.

pub mod error;
pub mod factor;
pub mod multipoly;
pub mod series;
pub mod field;
pub mod gw;
pub mod poly;
pub mod tower;

pub use error::{Error, Result};
