use num_bigint::BigInt;

use crate::mat::IntMatrix;

/// Everything that can go wrong while validating or computing.
///
/// Variants carry enough payload to point at the offending input (a root
/// index, a generator index, the group element where a cocycle clash was
/// detected) so callers can surface precise diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix is not an involution")]
    NotInvolution,

    #[error("dimension mismatch: {0}")]
    Shape(String),

    #[error("root {index} pairs with its coroot to {value}, expected 2")]
    PairingNotTwo { index: usize, value: BigInt },

    #[error("reflection in root {index} does not permute the root and coroot lists")]
    ReflectionNotClosed { index: usize },

    #[error("root {index} has no matching negative in the list")]
    UnmatchedNegatives { index: usize },

    #[error("root index {index} out of range ({len} roots)")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("matrix does not permute the coroot set")]
    CorootsNotPermuted,

    #[error("matrix is not a lattice automorphism (determinant is not a unit)")]
    NotUnimodular,

    #[error("enumeration cutoff exceeded after {reached} elements")]
    CutoffExceeded { reached: usize },

    #[error("generator does not preserve the subspace")]
    NotInvariant,

    #[error("sigma_star does not map the coroot set onto itself")]
    NotCorootStable,

    #[error("root {root_index} vanishes identically on the compact cocharacter sublattice")]
    FundamentalityViolation { root_index: usize },

    #[error("generator {index} does not commute with sigma_star")]
    NotCommuting { index: usize },

    #[error("generator {index} is not the identity but acts trivially on the compact cocharacter sublattice")]
    NotEffective { index: usize },

    #[error("stabilizer element does not commute with sigma_star")]
    StabilizerNotCommuting,

    #[error("shift class for generator {index} does not lie in the H1 space")]
    ShiftOutsideH1 { index: usize },

    #[error("shift assignment is not a cocycle: the group element {element:?} received both {left:?} and {right:?}")]
    InconsistentCocycle {
        element: Box<IntMatrix>,
        left: Vec<u8>,
        right: Vec<u8>,
    },

    #[error("vector is not a 2-torsion real point of the torus")]
    NotAPoint2,

    #[error("H1 space dimension {dim} exceeds the configured bound {bound}")]
    DimensionTooLarge { dim: usize, bound: usize },

    #[error("internal error: three-type decomposition failed its own verification")]
    DecompositionFailure,
}

pub type Result<T> = std::result::Result<T, Error>;
