//! Permutations that almost commute: counting and constructing `alpha` with
//! `H(alpha beta, beta alpha) = k` under the Hamming metric.

pub mod arith;
pub mod blocks;
pub mod cli;
pub mod constructor;
pub mod error;
pub mod formulas;
pub mod oracle;
pub mod perm;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use perm::{compose, conjugate, hamming, kdist, parse, CycleType, Permutation, Point};
