//! Finite groups and the converse of Lagrange's theorem.
//!
//! * [`constructions`] builds, for any `d` that is not a prime power, a
//!   solvable group whose order is divisible by `d`, has the same prime
//!   divisors, and has no subgroup of order `d`.
//! * [`spectrum`] enumerates every subgroup of a small permutation group and
//!   reports its CLT-degree `D(G)/τ(|G|)` as an exact rational.
//! * [`density`] realizes any target in `(0, 1]` to within `ε` as the
//!   CLT-degree of an explicit product of groups.

pub mod builtins;
pub mod cli;
pub mod constructions;
pub mod density;
pub mod error;
pub mod finitefield;
pub mod numtheory;
pub mod permgroup;
pub mod rational;
pub mod spectrum;

pub use error::{Error, Result};
