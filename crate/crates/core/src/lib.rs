//! Integral points on the cubic twists `y^2 = x^3 + kB^2` studied through
//! integer-matrix binary cubic forms.
//!
//! The crate is organised bottom-up:
//!
//! - [`arith`]: valuations, Legendre symbols, perfect squares, factorization
//!   and the gcd / cube-full / `m`-`n` decompositions of `B`.
//! - [`forms`]: binary cubic forms `ax^3 + 3bx^2y + 3cxy^2 + dy^3`, their
//!   seminvariants, the `GL_2(Z)` action, reduction and equivalence search.
//! - [`mordell`]: the point <-> form correspondence and two explicit point
//!   families.
//! - [`lowering`]: the discriminant-lowering substitution and the `(h, u)`
//!   seminvariant bookkeeping.
//! - [`census`]: brute-force enumeration of integral points and the counting
//!   harnesses built on it.
//! - [`heuristic`]: the predicted order of magnitude of the point count.
//! - [`cli`]: the command-line front end.
//!
//! Everything except [`heuristic`] is exact integer arithmetic.

pub mod arith;
pub mod census;
pub mod cli;
mod error;
pub mod forms;
pub mod heuristic;
pub mod lowering;
pub mod mordell;

pub use error::{Error, Result};
pub use forms::{BinaryCubicForm, MarkedForm, QuadraticForm, Seminvariants, Unimodular};
pub use mordell::MordellPoint;
