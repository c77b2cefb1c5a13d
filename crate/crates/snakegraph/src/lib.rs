//! Exact computation of cluster-variable Laurent expansions for cluster
//! algebras with principal coefficients attached to triangulated unpunctured
//! surfaces.
//!
//! The pipeline: a [`surface::Triangulation`] plus an arc given by its
//! crossing sequence ([`surface::ArcSpec`]) determines a snake graph
//! ([`snake::SnakeGraph`]), whose perfect matchings ([`matching`]) carry
//! weight and coefficient monomials. Summing them ([`expansion`]) yields the
//! Laurent expansion, the F-polynomial and the g-vector. An independent
//! seed-mutation engine ([`oracle`]) recomputes the same cluster variable by
//! replaying a flip sequence, which cross-validates every convention in the
//! combinatorial route.
//!
//! The crate is `no_std` (with `alloc`); all arithmetic is exact, with
//! arbitrary-precision integer coefficients.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod expansion;
pub mod matching;
pub mod oracle;
pub mod poly;
pub mod polygon;
pub mod snake;
pub mod surface;

// coefficient and count types appear in public signatures
pub use num_bigint;
