//! Exact computations around free 2-group actions on products of spheres.
//!
//! The crate is organised bottom-up:
//!
//! * [`gf2`]: packed linear algebra over the two-element field.
//! * [`forms`]: alternating form families, quadratic refinements and
//!   common-zero search.
//! * [`phigroup`]: the class-two groups presented by a form family, their
//!   ranks and extension profiles.
//! * [`repaction`]: finite groups as multiplication oracles and monomial
//!   (induced) representations, with freeness and isotropy checks.
//! * [`polyalg`]: graded polynomial algebra over F₂: Hilbert functions,
//!   regular sequences and Euler classes.
//! * [`extbounds`]: numeric bounds in exact big-integer arithmetic and
//!   exhaustive rank audits.
//! * [`json`]: the file formats used by the command-line tool.

pub mod elemab;
pub mod error;
pub mod extbounds;
pub mod forms;
pub mod gf2;
pub mod json;
pub mod phigroup;
pub mod polyalg;
pub mod repaction;
pub mod rng;

pub use error::{Error, Result};
