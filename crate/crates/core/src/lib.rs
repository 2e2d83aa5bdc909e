//! fockforge-core: an exact-arithmetic engine for charged level-`l` Fock
//! spaces of affine `sl_m`.
//!
//! The crate is organized around the combinatorial model: partitions and
//! `l`-partitions index everything, the ring of symmetric functions (and its
//! wreath-product extension) carries the Heisenberg action, and the Fock
//! space glues both together. On top sit exact linear algebra for the
//! Casimir bigrading, crystal operators, and level-rank weight
//! combinatorics. All arithmetic is over the rationals with
//! arbitrary-precision integers; there is no floating point anywhere.

pub mod checks;
pub mod crystal;
pub mod fock;
pub mod grading;
pub mod levelrank;
pub mod linalg;
pub mod partitions;
pub mod symfunc;

pub use num::BigInt;
pub use num::BigRational as Rat;

pub(crate) fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}
