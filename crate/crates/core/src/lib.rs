//! Exact-arithmetic lattice toolkit for Kummer surfaces.
//!
//! Everything here is computed over arbitrary-precision integers and
//! rationals; there is no floating point anywhere. The crate provides
//!
//! * integer/rational matrix algebra with Hermite and Smith normal forms
//!   ([`linalg`]),
//! * lattices inside a fixed quadratic space, with duals, orthogonal
//!   complements, saturation and discriminant forms ([`lattice`]),
//! * the 22-generator Kummer model of the K3 lattice with its 16 curve
//!   classes and six glue classes ([`kummer`]),
//! * translation subgroups of `(Z/2Z)^4` acting on that model, their fixed
//!   lattices, branch-curve lattices and theta-images ([`quotient`]),
//! * integral cohomology of finite abelian groups via the cyclic formula
//!   and the Kunneth formula with Tor terms ([`cohomology`]),
//! * a reproduction report over all the tabulated identities ([`report`]).

pub mod abelian;
pub mod cohomology;
pub mod kummer;
pub mod lattice;
pub mod linalg;
pub mod quotient;
pub mod report;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("degenerate lattice has no dual in its span")]
    DegenerateLattice,
    #[error("operation requires an integral lattice")]
    NonIntegralLattice,
    #[error("operation requires an even lattice")]
    OddLattice,
    #[error("basis rows are linearly dependent")]
    DependentBasis,
    #[error("gram matrix must be square, symmetric and integral")]
    BadGram,
    #[error("lattices live in different ambient quadratic spaces")]
    SpaceMismatch,
    #[error("vector lies outside the rational span")]
    OutsideSpan,
    #[error("not a sublattice: {0}")]
    NotASublattice(String),
    #[error("sublattice and overlattice have different ranks")]
    RankMismatch,
    #[error("scale of a standard lattice must be nonzero")]
    ZeroScale,
    #[error("set is not affinely closed")]
    NotAffinelyClosed,
    #[error("discriminant census needs a 2-elementary even lattice")]
    CensusUnsupported,
    #[error("action does not preserve the lattice")]
    ActionNotIntegral,
    #[error("element is outside the translation subgroup")]
    OutsideSubgroup,
    #[error("invalid subgroup coordinates: {0}")]
    BadSubgroup(String),
    #[error("theta undefined on class")]
    ThetaUndefined,
    #[error("cyclic order must be positive")]
    ZeroOrder,
    #[error("group shape {0} is not in the tabulated list")]
    UntabulatedGroup(String),
}

pub type Result<T> = std::result::Result<T, Error>;
