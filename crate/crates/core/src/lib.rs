//! Exact arithmetic in the semiring of injective partial transformations
//! with coefficients in F2.
//!
//! An injective partial transformation decomposes into disjoint chains `L_d`
//! and cycles `C_d`. Counting components modulo 2 turns the semiring of such
//! transformations into the ring `F2(L ∪ C)`, where
//!
//! * `C_m · C_n = C_lcm(m,n)` when `gcd(m,n)` is odd and `0` otherwise,
//! * `L_e · L_d = L_min(d,e)` when `d ≡ e (mod 2)` and `0` otherwise,
//! * `L_e · C_d = L_e` when `d` is odd and `0` otherwise.
//!
//! The crate is organised bottom-up:
//!
//! * [`formal_sum`]: generic F2 formal sums with a pluggable product rule and
//!   a semiring axiom checker.
//! * [`cycle_ring`]: the ring `S = F2 C` in dyadic coordinates.
//! * [`boolean_lattice`]: the Boolean algebra `V(L)` of a finite lattice,
//!   its atoms and parity codes, and the divisor lattices `C_k`.
//! * [`division`]: the complete solution set of `a·x = b` in `S`.
//! * [`structure`]: units, regular and co-regular elements, Green's
//!   relations and principal-ideal intersections.
//! * [`poly`]: bijective cubic polynomials over `S`.
//! * [`chain_cycle`]: the full ring `F2(L ∪ C)` and its division theory.
//! * [`oracle`]: explicit functional digraphs used as ground truth.
//! * [`sample`]: seeded random element generators for property checks.

pub mod boolean_lattice;
pub mod chain_cycle;
pub mod cycle_ring;
pub mod division;
mod error;
pub mod formal_sum;
pub mod oracle;
pub mod poly;
pub mod sample;
pub mod structure;

pub use chain_cycle::{ChainSum, Element};
pub use cycle_ring::{CycleSum, OddSet};
pub use error::{Error, Result};
