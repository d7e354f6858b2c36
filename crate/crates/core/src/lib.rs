//! Qudit stabilizer codes built from classical linear codes over GF(p^{2m}).
//!
//! The crate works entirely in the symplectic picture: an error or stabilizer
//! generator on `n` qudits of dimension `p^m` is a vector `(a|b)` over `F_p` of
//! length `2mn`, and commutation is the vanishing of the alternating form.
//!
//! - [`field`]: exact GF(p^k) arithmetic, normal bases and dual bases.
//! - [`symplectic`]: the alternating form, symplectic weight and the maps from
//!   `GF(p^2)^n` / `GF(p^{2m})^n` onto `F_p^{2mn}`.
//! - [`classical`]: linear, cyclic and punctured codes over GF(q).
//! - [`stabilizer`]: stabilizer code records and their verification.
//! - [`decoders`]: syndrome conversion and classical decoders.
//! - [`sim`]: exhaustive and Monte-Carlo error-correction cycles.
//! - [`format`]: the text formats used by the command-line tool.

pub mod classical;
pub mod decoders;
mod error;
pub mod exec;
pub mod field;
pub mod format;
pub mod linalg;
pub mod poly;
pub mod sim;
pub mod stabilizer;
pub mod symplectic;

pub use error::{Error, Result};
pub use exec::Execution;
pub use field::{Elem, Field, FieldConfig};
pub use linalg::Matrix;
pub use poly::Poly;
