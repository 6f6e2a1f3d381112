//! Exact computational group theory over finite fields.
//!
//! The crate verifies sharp element-order bounds in `GL_n(F_q)`, `PGL_n(F_q)`
//! and `PSL_2(F_q)` together with their explicit maximal-order witnesses,
//! computes Jordan constants (minimal index of a normal abelian subgroup) of
//! fully enumerated matrix groups, classifies finite subgroups of `PGL_2`,
//! and evaluates the closed-form Jordan-constant bounds for the plane
//! Cremona group over `F_q`.
//!
//! Everything is exact: field elements are coefficient vectors mod `p`,
//! group enumeration is breadth-first closure, and all bound tables use
//! arbitrary-precision integers.

// (q + 1) / 2 with odd q is exact division, not ceiling division
#![allow(clippy::manual_div_ceil)]

pub mod arith;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod gf;
pub mod grpenum;
pub mod matgrp;
pub mod maxorder;
pub mod polyring;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
