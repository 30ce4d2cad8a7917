use thiserror::Error;

/// Errors raised by the algebra layer.
///
/// Axiom violations and failed verifications are reported as values, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length must be at least 1")]
    ZeroLength,
    #[error("modulus {0} must be odd")]
    EvenModulus(u64),
    #[error("{0} is even and cannot belong to an odd set")]
    EvenLength(u64),
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),
    #[error("product rule is undefined for the pair ({0}, {1})")]
    RuleUndefined(String, String),
    #[error("operands belong to different lattices")]
    MixedLattices,
    #[error("not a lattice: {0}")]
    NotALattice(String),
    #[error("not meet-closed: {0} ∧ {1} leaves the ground set")]
    NotMeetClosed(String, String),
    #[error("{d} does not divide {k}")]
    NotADivisor { k: u64, d: u64 },
    #[error("chain sum mixes parity classes")]
    MixedParity,
    #[error("equation has no solution")]
    Unsolvable,
    #[error("polynomial is not bijective")]
    NotBijective,
    #[error("polynomial is bijective, no degeneracy witness exists")]
    Bijective,
    #[error("restriction to divisors of {k} is unsound: {required} must divide it")]
    UnsoundRestriction { k: u64, required: u64 },
    #[error("level horizon {given} is below the required {required}")]
    HorizonTooSmall { given: u32, required: u32 },
    #[error("search space has {0} generators, more than the limit of 24")]
    SpaceTooLarge(usize),
    #[error("digraph is not injective: vertex {0} has in-degree at least 2")]
    NonInjective(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
