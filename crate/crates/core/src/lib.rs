//! Nullstellensatz certificates of graph non-colourability.
//!
//! A graph is k-colourable exactly when the system `x_u^k = 1`,
//! `q_uv(x) = 0` has a common zero. This crate searches for degree-bounded
//! certificates that it has none ([`primal`]), for dual certificates that no
//! such certificate exists ([`dual`]), and computes Gröbner bases of the
//! colouring ideals of subgraphs ([`groebner`]).
//!
//! All arithmetic is exact, either in a prime field `GF(p)` or over the
//! rationals; see [`field`].

pub mod algebra;
pub mod dual;
pub mod error;
pub mod exec;
pub mod field;
pub mod graph;
pub mod groebner;
pub mod linsys;
pub mod primal;

pub use error::{AlgebraError, FieldError, GraphError, PatchError};
pub use exec::Execution;
pub use field::{Field, FieldSpec, PrimeField, Rationals};
