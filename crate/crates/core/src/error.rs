use alloc::string::String;

/// Errors raised by the core algorithms.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("closure exceeded the cap of {cap} elements")]
    ClosureCapExceeded { cap: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("random class-matrix combination failed to separate eigenspaces after {attempts} draws")]
    DegenerateSpectrum { attempts: usize },
    #[error("numerical residual {residual:.3e} exceeds tolerance {tolerance:.1e} in {context}")]
    NumericalResidual {
        context: String,
        residual: f64,
        tolerance: f64,
    },
    #[error("element {0} is not central")]
    NotCentral(usize),
    #[error("fusion product straddles chain classes: {0}")]
    WellDefinednessViolation(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("labels belong to different families")]
    FamilyMismatch,
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("unknown irrep index {0}")]
    UnknownIrrep(usize),
    #[error("not unitary: {0}")]
    NotUnitary(String),
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error(
        "group is not abelian: a d-dimensional algebraic Hilbert space with support 1 \
         in a finite-dimensional algebra consists of unitaries, so only characters can be realized"
    )]
    NonAbelianGroup,
    #[error("endomorphism does not leave the algebra invariant: {0}")]
    NotInvariant(String),
}

pub type Result<T> = core::result::Result<T, Error>;
