//! Largest-cycle statistics of finite group automorphisms.
//!
//! A permutation of a finite set decomposes into disjoint cycles; its
//! lambda value is the largest cycle length divided by the set size. For a
//! finite group the lambda value maximizes over all automorphisms, and the
//! affine variant maximizes over all bijective maps `g -> g0 * phi(g)`.
//!
//! This crate computes these statistics exactly (rational arithmetic
//! throughout, no floating point on any mathematical path) and implements
//! an effective classification: given a rational `rho` in `[1/2, 1]`, it
//! returns a complete, duplicate-free description of all isomorphism
//! classes of pairs (finite group, automorphism) whose lambda value equals
//! `rho`. Supporting machinery includes polynomial arithmetic over prime
//! fields with primitivity testing, the integer-matrix model of abelian
//! p-group endomorphisms, certified rational interval bounds for the two
//! spectral gap constants above 1/2 and 3/4, and full-period certification
//! of congruential and vector generators.
//!
//! The `lcc` binary exposes the same functionality on the command line;
//! everything is reachable from Python via the companion `lcc-py` crate.

pub mod abelian;
pub mod bounds;
pub mod classify;
pub mod cli;
pub mod cycles;
pub mod error;
pub mod fdg;
pub mod ffpoly;
pub mod fpmatrix;
pub mod numtheory;
pub mod oracle;
pub mod prng;
pub mod spectrum;

pub use error::Error;

/// Exact rational number used for every lambda value and interval bound.
pub type Rat = num_rational::BigRational;

/// Convenience constructor for small exact rationals.
pub fn rat(num: i64, den: i64) -> Rat {
    use num_bigint::BigInt;
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Exact rational from u64 parts.
pub fn rat_u64(num: u64, den: u64) -> Rat {
    use num_bigint::BigInt;
    Rat::new(BigInt::from(num), BigInt::from(den))
}
