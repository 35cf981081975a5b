//! Exact computations in the universal enveloping algebra `U(gl(n))` and in the
//! polynomial algebra `C[M_{n,d}]`.
//!
//! The crate builds column Capelli bitableaux, Capelli and Young-Capelli
//! bitableaux, Capelli immanants, quantum immanants and Schur elements in PBW
//! normal form, and checks them against polarization and differential operators
//! acting on polynomials in the entries of a generic `n x d` matrix.
//!
//! Module map:
//! - [`combinatorics`]: partitions, Young tableaux, permutations, enumeration.
//! - [`characters`]: irreducible characters of the symmetric group.
//! - [`ugl`]: PBW-normal-ordered elements of `U(gl(n))`.
//! - [`polyalg`]: polynomials, bitableaux, immanants, straightening and the
//!   representation of `U(gl(n))` by polarizations.
//! - [`capelli`]: the distinguished elements of `U(gl(n))`.
//! - [`verify`]: invariant suites shared by the CLI and the tests.

pub mod capelli;
pub mod characters;
pub mod combinatorics;
mod error;
pub mod expansion;
pub mod linalg;
pub mod polyalg;
pub mod rational;
pub mod ugl;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Coeff;
