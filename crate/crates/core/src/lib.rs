//! Exact-arithmetic library for eigenvalue-1 ("unisingularity") questions in
//! finite linear groups: finite-field and matrix primitives, the semidirect
//! products built from a pair of primes (r, p) with their covering, coset,
//! and monomial-representation views, and weight-lattice criteria for
//! representations of the classical and exceptional types.

// index loops read better than iterator chains in the dense linear algebra
#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod cli;
pub mod cover;
pub mod error;
pub mod ff;
pub mod grp;
pub mod matfq;
pub mod poly;
pub mod report;
pub mod rng;
pub mod weights;

pub use error::{Error, Result};
