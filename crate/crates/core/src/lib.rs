//! Iwasawa-theoretic invariants of elliptic curves over the rationals.
//!
//! The crate is `no_std` and only needs `alloc`. It covers
//!
//! * exact p-adic numbers at a fixed digit budget ([`padic`]),
//! * the truncated Iwasawa algebra `Z_p[[T]]` and its module invariants ([`lambda`]),
//! * Weierstrass curves, Tate's algorithm, point counts, torsion, periods and
//!   Tate parameters ([`ec`]),
//! * Euler characteristics and the finiteness/vanishing criteria for
//!   cyclotomic Selmer groups ([`selmer`]),
//! * lower bounds and zero certificates for the mu-invariant ([`mu`]),
//! * exact arithmetic in `Q[x]/(g)` for checking points over number fields ([`nf`]),
//! * construction of curves with prescribed local behaviour ([`forge`]).
//!
//! Every routine is a pure function of its inputs.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod arith;
pub mod ec;
mod error;
pub mod field;
pub mod forge;
pub mod lambda;
pub mod mu;
pub mod nf;
pub mod padic;
pub mod poly;
pub mod selmer;

pub use error::{Error, Result};

/// Arbitrary precision integers used throughout.
pub type Int = num_bigint::BigInt;
/// Exact rationals.
pub type Rat = num_rational::BigRational;

/// Default p-adic digit budget.
pub const DEFAULT_DIGITS: u32 = 30;
/// Default T-adic truncation for power series.
pub const DEFAULT_T_PRECISION: usize = 40;
/// Default cap on the size `p^n` of companion matrices.
pub const DEFAULT_MAX_PN: u64 = 128;
